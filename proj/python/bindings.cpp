#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "telesim/cli.hpp"
#include "telesim/oracle.hpp"
#include "telesim/protocol.hpp"
#include "telesim/visibility.hpp"

namespace py = pybind11;

using namespace telesim;

namespace {

std::map<std::pair<int, int>, double> two_mode_entries(const fock::TwoModeDistribution& dist) {
    std::map<std::pair<int, int>, double> out;
    for (const auto& [occ, p] : dist.entries()) {
        out[occ] = p;
    }
    return out;
}

std::map<int, double> one_mode_entries(const fock::PhotonDistribution& dist) {
    std::map<int, double> out;
    for (int n = 0; n <= dist.truncation(); ++n) {
        if (dist.prob(n) != 0.0) {
            out[n] = dist.prob(n);
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Photon-number simulation of a narrowband photonic teleportation relay";

    py::class_<fock::PhotonDistribution>(m, "PhotonDistribution")
        .def(py::init<std::vector<double>>(), py::arg("probs"))
        .def("prob", &fock::PhotonDistribution::prob, py::arg("n"))
        .def("total", &fock::PhotonDistribution::total)
        .def("truncation", &fock::PhotonDistribution::truncation)
        .def("entries", &one_mode_entries)
        .def("__getitem__",
             [](const fock::PhotonDistribution& d, int n) { return d.prob(n); });

    py::class_<fock::TwoModeDistribution>(m, "TwoModeDistribution")
        .def("prob", &fock::TwoModeDistribution::prob, py::arg("n_left"), py::arg("n_right"))
        .def("total", &fock::TwoModeDistribution::total)
        .def("truncation", &fock::TwoModeDistribution::truncation)
        .def("entries", &two_mode_entries)
        .def("__getitem__", [](const fock::TwoModeDistribution& d, std::pair<int, int> occ) {
            return d.prob(occ.first, occ.second);
        });

    m.def("split_balanced", &fock::split_balanced, py::arg("n"),
          py::arg("truncation") = fock::kDefaultTruncation);
    m.def("apply_loss", &fock::apply_loss, py::arg("dist"), py::arg("transmission"));
    m.def("click_probability", &fock::click_probability, py::arg("n"), py::arg("transmission"),
          py::arg("efficiency"));
    m.def("interfere_indistinguishable", &fock::interfere_indistinguishable, py::arg("n"),
          py::arg("m"), py::arg("truncation") = fock::kDefaultTruncation);
    m.def("interfere_distinguishable", &fock::interfere_distinguishable, py::arg("n"),
          py::arg("m"), py::arg("truncation") = fock::kDefaultTruncation);
    m.def(
        "dual_click_probability",
        [](const fock::TwoModeDistribution& dist, double eta_left, double eta_right) {
            return fock::dual_click_probability(dist, {eta_left, 0.0}, {eta_right, 0.0});
        },
        py::arg("dist"), py::arg("eta_left"), py::arg("eta_right"));

    py::enum_<sources::KappaCalibration>(m, "KappaCalibration")
        .value("PEAK450", sources::KappaCalibration::Peak450)
        .value("FIT350", sources::KappaCalibration::Fit350);

    m.def(
        "spdc_distribution",
        [](double p1) {
            sources::SpdcSpec spec;
            spec.p1 = p1;
            return sources::spdc_distribution(spec);
        },
        py::arg("p1"));
    m.def(
        "laser_distribution",
        [](double l1) {
            sources::LaserSpec spec;
            spec.l1 = l1;
            return sources::laser_distribution(spec);
        },
        py::arg("l1"));
    m.def(
        "dfg_efficiency",
        [](double pump_mw, sources::KappaCalibration mode) {
            return sources::dfg_efficiency(pump_mw, sources::DfgSpec::calibrated(mode));
        },
        py::arg("pump_mw"), py::arg("mode") = sources::KappaCalibration::Fit350);
    m.def(
        "raman_noise_rate",
        [](double pump_mw, sources::KappaCalibration mode) {
            return sources::raman_noise_rate(pump_mw, sources::DfgSpec::calibrated(mode));
        },
        py::arg("pump_mw"), py::arg("mode") = sources::KappaCalibration::Fit350);
    m.def("noise_to_signal", &sources::noise_to_signal, py::arg("signal_rate"),
          py::arg("noise_rate"), py::arg("dark_rate"));
    m.def(
        "qubit_budget",
        [](double pump_mw, sources::KappaCalibration mode) {
            const auto spec = sources::DfgSpec::calibrated(mode);
            const auto chain = sources::qubit_budget_chain(pump_mw, spec);
            const auto rates = sources::evaluate_budget(chain);
            std::vector<std::pair<std::string, double>> out;
            out.emplace_back("input", chain.input_rate);
            for (size_t i = 0; i < chain.stages.size(); ++i) {
                out.emplace_back(chain.stages[i].label, rates[i]);
            }
            return out;
        },
        py::arg("pump_mw") = 350.0, py::arg("mode") = sources::KappaCalibration::Fit350);

    py::class_<protocol::PolarizationQubit>(m, "PolarizationQubit")
        .def(py::init([](std::complex<double> alpha, std::complex<double> beta) {
                 return protocol::PolarizationQubit{alpha, beta};
             }),
             py::arg("alpha"), py::arg("beta"))
        .def_readonly("alpha", &protocol::PolarizationQubit::alpha)
        .def_readonly("beta", &protocol::PolarizationQubit::beta)
        .def_static("diagonal", &protocol::PolarizationQubit::diagonal, py::arg("phi1") = 0.0)
        .def_static("rotated", &protocol::PolarizationQubit::rotated, py::arg("theta"));

    py::enum_<protocol::BellOutcome>(m, "BellOutcome")
        .value("PHI_PLUS", protocol::BellOutcome::PhiPlus)
        .value("PHI_MINUS", protocol::BellOutcome::PhiMinus)
        .value("PSI_PLUS", protocol::BellOutcome::PsiPlus)
        .value("PSI_MINUS", protocol::BellOutcome::PsiMinus);

    py::enum_<protocol::CorrectionUnitary>(m, "CorrectionUnitary")
        .value("IDENTITY", protocol::CorrectionUnitary::Identity)
        .value("SIGMA_Z", protocol::CorrectionUnitary::SigmaZ)
        .value("SIGMA_X", protocol::CorrectionUnitary::SigmaX)
        .value("SIGMA_Y", protocol::CorrectionUnitary::SigmaY);

    py::enum_<protocol::AnalysisBasis>(m, "AnalysisBasis")
        .value("H", protocol::AnalysisBasis::H)
        .value("V", protocol::AnalysisBasis::V);

    m.def("bell_decompose", &protocol::bell_decompose, py::arg("qubit"));
    m.def("correction_for", &protocol::correction_for, py::arg("outcome"));
    m.def("apply_correction", &protocol::apply_correction, py::arg("unitary"), py::arg("qubit"));
    m.def("fidelity", &protocol::fidelity, py::arg("a"), py::arg("b"));
    m.def("psi_minus_reduced_state", &protocol::psi_minus_reduced_state, py::arg("phi1"),
          py::arg("phi"));
    m.def("analyzer_probability", &protocol::analyzer_probability, py::arg("state"),
          py::arg("phi3"));
    m.def("threefold_fringe", &protocol::threefold_fringe, py::arg("phi1"), py::arg("phi"),
          py::arg("phi3"));
    m.def("polarization_scan_rate", &protocol::polarization_scan_rate, py::arg("theta"),
          py::arg("analyzed"));

    py::class_<visibility::ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init([](double p1, double l1, double t2, double t3, double eta, double overlap,
                         double window_ns, double dark1, double dark2, double dark3,
                         std::uint64_t trials, std::uint64_t seed) {
                 visibility::ExperimentConfig config;
                 config.p1 = p1;
                 config.l1 = l1;
                 config.t2 = t2;
                 config.t3 = t3;
                 config.eta = eta;
                 config.overlap = overlap;
                 config.window_ns = window_ns;
                 config.dark_rates = {dark1, dark2, dark3};
                 config.trials = trials;
                 config.seed = seed;
                 config.validate();
                 return config;
             }),
             py::arg("p1") = 0.02, py::arg("l1") = 0.02, py::arg("t2") = 0.1,
             py::arg("t3") = 0.1, py::arg("eta") = 0.2, py::arg("overlap") = 0.91,
             py::arg("window_ns") = 15.0, py::arg("dark1") = 1e-6, py::arg("dark2") = 1e-6,
             py::arg("dark3") = 1e-6, py::arg("trials") = 1'000'000, py::arg("seed") = 42)
        .def_readwrite("p1", &visibility::ExperimentConfig::p1)
        .def_readwrite("l1", &visibility::ExperimentConfig::l1)
        .def_readwrite("t2", &visibility::ExperimentConfig::t2)
        .def_readwrite("t3", &visibility::ExperimentConfig::t3)
        .def_readwrite("eta", &visibility::ExperimentConfig::eta)
        .def_readwrite("overlap", &visibility::ExperimentConfig::overlap)
        .def_readwrite("window_ns", &visibility::ExperimentConfig::window_ns)
        .def_readwrite("trials", &visibility::ExperimentConfig::trials)
        .def_readwrite("seed", &visibility::ExperimentConfig::seed);

    py::class_<visibility::HeraldStats>(m, "HeraldStats")
        .def_property_readonly("h",
                               [](const visibility::HeraldStats& s) {
                                   return std::vector<double>(s.h.begin(), s.h.end());
                               })
        .def("total", &visibility::HeraldStats::total);

    py::class_<visibility::BsmRates>(m, "BsmRates")
        .def_readonly("c_dis", &visibility::BsmRates::c_dis)
        .def_readonly("c_indis", &visibility::BsmRates::c_indis);

    py::enum_<visibility::Variant>(m, "Variant")
        .value("RAW", visibility::Variant::Raw)
        .value("NET", visibility::Variant::Net);

    py::class_<visibility::VisibilityResult>(m, "VisibilityResult")
        .def_readonly("c_max", &visibility::VisibilityResult::c_max)
        .def_readonly("c_min", &visibility::VisibilityResult::c_min)
        .def_readonly("v_two_photon", &visibility::VisibilityResult::v_two_photon)
        .def_readonly("v_ent", &visibility::VisibilityResult::v_ent)
        .def_readonly("fidelity", &visibility::VisibilityResult::fidelity)
        .def_readonly("variant", &visibility::VisibilityResult::variant)
        .def_readonly("clamped", &visibility::VisibilityResult::clamped);

    py::class_<visibility::PipelineResult>(m, "PipelineResult")
        .def_readonly("herald", &visibility::PipelineResult::herald)
        .def_readonly("clean", &visibility::PipelineResult::clean)
        .def_readonly("dark_contribution", &visibility::PipelineResult::dark_contribution)
        .def_readonly("raw_rates", &visibility::PipelineResult::raw_rates)
        .def_readonly("raw", &visibility::PipelineResult::raw)
        .def_readonly("net", &visibility::PipelineResult::net);

    m.def("herald_distribution", &visibility::herald_distribution, py::arg("config"));
    m.def("apply_overlap", &visibility::apply_overlap, py::arg("c_dis"), py::arg("c_indis"),
          py::arg("overlap"));
    m.def("visibility_two_photon", &visibility::visibility_two_photon, py::arg("c_max"),
          py::arg("c_min"));
    m.def(
        "visibility_ent",
        [](double c_max, double c_min) {
            const auto r = visibility::visibility_ent(c_max, c_min);
            return std::make_pair(r.v_ent, r.fidelity);
        },
        py::arg("c_max"), py::arg("c_min"));
    m.def("evaluate_pipeline", &visibility::evaluate_pipeline, py::arg("config"));

    py::class_<oracle::OracleEstimate>(m, "OracleEstimate")
        .def_readonly("c_dis_hat", &oracle::OracleEstimate::c_dis_hat)
        .def_readonly("c_indis_hat", &oracle::OracleEstimate::c_indis_hat)
        .def_readonly("std_err_dis", &oracle::OracleEstimate::std_err_dis)
        .def_readonly("std_err_indis", &oracle::OracleEstimate::std_err_indis)
        .def_readonly("trials", &oracle::OracleEstimate::trials)
        .def_readonly("seed", &oracle::OracleEstimate::seed)
        .def_readonly("algorithm", &oracle::OracleEstimate::algorithm);

    m.def("run_oracle", &oracle::run_oracle, py::arg("config"), py::arg("trials"),
          py::arg("seed"));

    m.def("parse_config", &cli::parse_config, py::arg("text"));
}
