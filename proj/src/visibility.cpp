#include "telesim/visibility.hpp"

#include <cmath>

namespace telesim::visibility {

namespace {

void require_range(double value, double lo, double hi, const char* key) {
    if (!(value >= lo && value <= hi)) {
        throw std::domain_error(std::string("ExperimentConfig: ") + key + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

// Laser statistics for the configured l1.
fock::PhotonDistribution config_laser(const ExperimentConfig& config) {
    sources::LaserSpec laser;
    laser.l1 = config.l1;
    laser.pulse_window_ns = config.window_ns;
    return sources::laser_distribution(laser);
}

// P(detector clicks) for photons on one side of a two-mode distribution.
double side_click(const fock::TwoModeDistribution& dist, int side, double eta) {
    return fock::single_click_probability(dist, side, fock::DetectorSpec{eta, 0.0});
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!(p1 >= 0.0) || p1 >= 0.3) {
        throw std::domain_error("ExperimentConfig: p1 outside [0, 0.3)");
    }
    if (!(l1 >= 0.0) || l1 >= 0.3) {
        throw std::domain_error("ExperimentConfig: l1 outside [0, 0.3)");
    }
    require_range(t2, 0.0, 1.0, "t2");
    require_range(t3, 0.0, 1.0, "t3");
    require_range(eta, 0.0, 1.0, "eta");
    require_range(overlap, 0.0, 1.0, "overlap");
    if (!(window_ns > 0.0)) {
        throw std::domain_error("ExperimentConfig: window_ns must be positive");
    }
    const char* dark_keys[3] = {"dark1", "dark2", "dark3"};
    for (int i = 0; i < 3; ++i) {
        if (!(dark_rates[static_cast<size_t>(i)] >= 0.0)) {
            throw std::domain_error(std::string("ExperimentConfig: ") + dark_keys[i] +
                                    " must be >= 0");
        }
        if (dark_prob(i) > 1.0) {
            throw std::domain_error(std::string("ExperimentConfig: ") + dark_keys[i] +
                                    " exceeds one count per window");
        }
    }
    if (!(pump_mw >= 0.0)) {
        throw std::domain_error("ExperimentConfig: pump_mw must be >= 0");
    }
    if (trials == 0) {
        throw std::domain_error("ExperimentConfig: trials must be >= 1");
    }
}

void DarkCountSet::validate() const {
    const double rates[6] = {dc1, dc2, dc3, dc12, dc13, dc23};
    for (double r : rates) {
        if (!(r >= 0.0)) {
            throw std::domain_error("DarkCountSet: negative rate");
        }
    }
    // Inclusion-exclusion sanity: blocking a second detector cannot raise
    // the coincidence rate.
    const double tol = 1e-9 * (1.0 + dc1 + dc2 + dc3);
    if (dc12 > std::min(dc1, dc2) + tol || dc13 > std::min(dc1, dc3) + tol ||
        dc23 > std::min(dc2, dc3) + tol) {
        throw std::domain_error("DarkCountSet: pairwise rate exceeds singles");
    }
}

VisibilityResult VisibilityResult::from_rates(double c_max, double c_min, Variant variant,
                                              bool clamped) {
    if (c_min > c_max) {
        throw std::domain_error("VisibilityResult: c_min exceeds c_max");
    }
    VisibilityResult r;
    r.c_max = c_max;
    r.c_min = c_min;
    r.v_two_photon = visibility_two_photon(c_max, c_min);
    const auto ent = visibility_ent(c_max, c_min);
    r.v_ent = ent.v_ent;
    r.fidelity = ent.fidelity;
    r.variant = variant;
    r.clamped = clamped;
    return r;
}

HeraldStats herald_distribution(const ExperimentConfig& config) {
    config.validate();
    sources::SpdcSpec spdc;
    spdc.p1 = config.p1;
    spdc.coherence_window_ns = config.window_ns;
    const fock::PhotonDistribution pairs = sources::spdc_distribution(spdc);

    HeraldStats stats;
    for (int n_pairs = 0; n_pairs <= 2; ++n_pairs) {
        const double w = pairs.prob(n_pairs);
        if (w == 0.0) {
            continue;
        }
        const int photons = 2 * n_pairs;
        const fock::TwoModeDistribution split = fock::split_balanced(photons);
        for (int n2 = 0; n2 <= photons; ++n2) {
            const int n3 = photons - n2;
            const double herald = fock::click_probability(n3, config.t3, config.eta);
            if (herald == 0.0) {
                continue;
            }
            const double w_split = w * split.prob(n2, n3) * herald;
            for (int k = 0; k <= n2 && k <= 3; ++k) {
                stats.h[static_cast<size_t>(k)] +=
                    w_split * fock::binomial_coefficient(n2, k) * std::pow(config.t2, k) *
                    std::pow(1.0 - config.t2, n2 - k);
            }
        }
    }
    return stats;
}

fock::PhotonDistribution unheralded_bsm_input(const ExperimentConfig& config) {
    config.validate();
    sources::SpdcSpec spdc;
    spdc.p1 = config.p1;
    spdc.coherence_window_ns = config.window_ns;
    const fock::PhotonDistribution pairs = sources::spdc_distribution(spdc);

    fock::PhotonDistribution out(fock::kDefaultTruncation);
    for (int n_pairs = 0; n_pairs <= 2; ++n_pairs) {
        const double w = pairs.prob(n_pairs);
        if (w == 0.0) {
            continue;
        }
        const int photons = 2 * n_pairs;
        const fock::TwoModeDistribution split = fock::split_balanced(photons);
        for (int n2 = 0; n2 <= photons; ++n2) {
            const double w_split = w * split.prob(n2, photons - n2);
            for (int k = 0; k <= n2; ++k) {
                out.add(k, w_split * fock::binomial_coefficient(n2, k) * std::pow(config.t2, k) *
                               std::pow(1.0 - config.t2, n2 - k));
            }
        }
    }
    return out;
}

BsmRates bsm_rates(const HeraldStats& herald, const fock::PhotonDistribution& laser, double eta) {
    const fock::DetectorSpec det{eta, 0.0};
    BsmRates rates;
    for (int k = 0; k <= 3; ++k) {
        const double hk = herald.h[static_cast<size_t>(k)];
        if (hk == 0.0) {
            continue;
        }
        for (int j = 0; j <= laser.truncation(); ++j) {
            const double w = hk * laser.prob(j);
            if (w == 0.0) {
                continue;
            }
            rates.c_dis +=
                w * fock::dual_click_probability(fock::interfere_distinguishable(k, j), det, det);
            rates.c_indis +=
                w * fock::dual_click_probability(fock::interfere_indistinguishable(k, j), det, det);
        }
    }
    return rates;
}

double apply_overlap(double c_dis, double c_indis, double overlap) {
    if (overlap < 0.0 || overlap > 1.0) {
        throw std::domain_error("apply_overlap: overlap outside [0, 1]");
    }
    return overlap * c_indis + (1.0 - overlap) * c_dis;
}

double visibility_two_photon(double c_max, double c_min) {
    if (!(c_max > 0.0)) {
        throw UndefinedVisibilityError("visibility_two_photon: c_max is zero");
    }
    if (c_min < 0.0) {
        throw std::domain_error("visibility_two_photon: negative c_min");
    }
    return (c_max - c_min) / c_max;
}

EntanglementVisibility visibility_ent(double c_max, double c_min) {
    if (!(c_max + c_min > 0.0)) {
        throw UndefinedVisibilityError("visibility_ent: both rates are zero");
    }
    const double v = (c_max - c_min) / (c_max + c_min);
    return {v, 0.5 * (1.0 + v)};
}

double total_dark_rate(const DarkCountSet& dc) {
    dc.validate();
    return dc.dc1 + dc.dc2 + dc.dc3 - dc.dc12 - dc.dc13 - dc.dc23;
}

VisibilityResult net_correct(const VisibilityResult& raw, double dc_rate, double herald_rate) {
    if (dc_rate < 0.0) {
        throw std::domain_error("net_correct: negative dark rate");
    }
    if (!(herald_rate > 0.0)) {
        throw std::domain_error("net_correct: herald rate must be positive");
    }
    const double contribution = dc_rate / herald_rate;
    const double c_max = raw.c_max - contribution;
    double c_min = raw.c_min - contribution;
    bool clamped = false;
    if (c_min < 0.0) {
        c_min = 0.0;
        clamped = true;
    }
    if (!(c_max > 0.0)) {
        throw UndefinedVisibilityError("net_correct: correction exhausted c_max");
    }
    return VisibilityResult::from_rates(c_max, c_min, Variant::Net, clamped);
}

DarkCountSet synthesize_dark_counts(const ExperimentConfig& config) {
    config.validate();
    const HeraldStats herald = herald_distribution(config);
    const fock::PhotonDistribution laser = config_laser(config);
    const fock::PhotonDistribution bsm_input = unheralded_bsm_input(config);
    const fock::DetectorSpec det{config.eta, 0.0};

    // Light-only click rates per window, from the non-interfering regime.
    double r13 = 0.0;  // herald AND SPD1
    double r23 = 0.0;  // herald AND SPD2
    for (int k = 0; k <= 3; ++k) {
        for (int j = 0; j <= laser.truncation(); ++j) {
            const double w = herald.h[static_cast<size_t>(k)] * laser.prob(j);
            if (w == 0.0) {
                continue;
            }
            const auto dist = fock::interfere_distinguishable(k, j);
            r13 += w * side_click(dist, 0, config.eta);
            r23 += w * side_click(dist, 1, config.eta);
        }
    }
    double r12 = 0.0;  // SPD1 AND SPD2, unheralded
    double r1 = 0.0;
    double r2 = 0.0;
    for (int k = 0; k <= bsm_input.truncation(); ++k) {
        for (int j = 0; j <= laser.truncation(); ++j) {
            const double w = bsm_input.prob(k) * laser.prob(j);
            if (w == 0.0 || k + j > fock::kDefaultTruncation) {
                continue;
            }
            const auto dist = fock::interfere_distinguishable(k, j);
            r12 += w * fock::dual_click_probability(dist, det, det);
            r1 += w * side_click(dist, 0, config.eta);
            r2 += w * side_click(dist, 1, config.eta);
        }
    }
    const double r3 = herald.total();

    const double d1 = config.dark_prob(0);
    const double d2 = config.dark_prob(1);
    const double d3 = config.dark_prob(2);
    const double windows_per_second = 1e9 / config.window_ns;

    // A blocked detector fires only via darks; the unblocked ones see light
    // and their own darks, exactly as in the measurement the rates mimic.
    // P((La v Da) and (Lb v Db)) from the light-only single and pair rates:
    const auto pair_or_dark = [](double rab, double ra, double rb, double da, double db) {
        return rab + da * (rb - rab) + db * (ra - rab) + da * db * (1.0 - ra - rb + rab);
    };
    const auto single_or_dark = [](double ra, double da) { return ra + da * (1.0 - ra); };

    DarkCountSet dc;
    dc.dc1 = d1 * pair_or_dark(r23, r2, r3, d2, d3) * windows_per_second;
    dc.dc2 = d2 * pair_or_dark(r13, r1, r3, d1, d3) * windows_per_second;
    dc.dc3 = d3 * pair_or_dark(r12, r1, r2, d1, d2) * windows_per_second;
    dc.dc12 = d1 * d2 * single_or_dark(r3, d3) * windows_per_second;
    dc.dc13 = d1 * d3 * single_or_dark(r2, d2) * windows_per_second;
    dc.dc23 = d2 * d3 * single_or_dark(r1, d1) * windows_per_second;
    return dc;
}

PipelineResult evaluate_pipeline(const ExperimentConfig& config) {
    config.validate();
    PipelineResult out;
    out.herald = herald_distribution(config);
    out.clean = bsm_rates(out.herald, config_laser(config), config.eta);

    out.dark_set = synthesize_dark_counts(config);
    const double window_s = config.window_ns * 1e-9;
    out.dark_contribution = total_dark_rate(out.dark_set) * window_s;

    // Dark coincidences are phase-independent, so they shift both fringe
    // extremes by the same amount.
    out.raw_rates.c_dis = out.clean.c_dis + out.dark_contribution;
    out.raw_rates.c_indis = out.clean.c_indis + out.dark_contribution;

    const double c_max_raw = out.raw_rates.c_dis;
    const double c_min_raw =
        apply_overlap(out.clean.c_dis, out.clean.c_indis, config.overlap) + out.dark_contribution;
    out.raw = VisibilityResult::from_rates(c_max_raw, c_min_raw, Variant::Raw);
    out.net = net_correct(out.raw, out.dark_contribution, 1.0);
    return out;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base,
                            const std::vector<double>& p1_values,
                            const std::vector<double>& l1_values) {
    if (p1_values.empty() || l1_values.empty()) {
        throw std::invalid_argument("sweep: empty grid");
    }
    std::vector<SweepRow> rows;
    rows.reserve(p1_values.size() * l1_values.size());
    for (double p1 : p1_values) {
        for (double l1 : l1_values) {
            SweepRow row;
            row.p1 = p1;
            row.l1 = l1;
            try {
                ExperimentConfig config = base;
                config.p1 = p1;
                config.l1 = l1;
                row.result = evaluate_pipeline(config);
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace telesim::visibility
