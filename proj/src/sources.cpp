#include "telesim/sources.hpp"

#include <cmath>
#include <stdexcept>

namespace telesim::sources {

namespace {

// Beyond ~0.3 the two-term truncation of the emission statistics is off at
// the percent level; reject rather than silently degrade.
constexpr double kMaxSingleProbability = 0.3;

}  // namespace

void SpdcSpec::validate() const {
    if (!(p1 >= 0.0) || p1 >= kMaxSingleProbability) {
        throw std::domain_error("SpdcSpec: p1 outside [0, 0.3)");
    }
    if (coherence_window_ns <= 0.0) {
        throw std::domain_error("SpdcSpec: coherence window must be positive");
    }
}

void LaserSpec::validate() const {
    if (!(l1 >= 0.0) || l1 >= kMaxSingleProbability) {
        throw std::domain_error("LaserSpec: l1 outside [0, 0.3)");
    }
    if (pulse_window_ns <= 0.0) {
        throw std::domain_error("LaserSpec: pulse window must be positive");
    }
}

DfgSpec DfgSpec::calibrated(KappaCalibration mode) {
    DfgSpec spec{};
    switch (mode) {
        case KappaCalibration::Peak450:
            // sin^2(kappa sqrt(450)) = 1
            spec.kappa = (M_PI / 2.0) / std::sqrt(450.0);
            break;
        case KappaCalibration::Fit350:
            // sin^2(kappa sqrt(350)) = 0.9
            spec.kappa = std::asin(std::sqrt(0.9)) / std::sqrt(350.0);
            break;
    }
    return spec;
}

void DfgSpec::validate() const {
    if (kappa <= 0.0 || p_opt_mw <= 0.0 || raman_coeff <= 0.0) {
        throw std::domain_error("DfgSpec: all fields must be positive");
    }
}

void BudgetChain::validate() const {
    if (stages.empty()) {
        throw std::invalid_argument("BudgetChain: empty chain");
    }
    if (input_rate < 0.0) {
        throw std::domain_error("BudgetChain: negative input rate");
    }
    for (const auto& stage : stages) {
        if (stage.transmission < 0.0 || stage.transmission > 1.0) {
            throw std::domain_error("BudgetChain: transmission outside [0, 1] at stage '" +
                                    stage.label + "'");
        }
    }
}

fock::PhotonDistribution spdc_distribution(const SpdcSpec& spec) {
    spec.validate();
    fock::PhotonDistribution d(2);
    d.set(0, spec.p0());
    d.set(1, spec.p1);
    d.set(2, spec.p2());
    return d;
}

fock::PhotonDistribution laser_distribution(const LaserSpec& spec) {
    spec.validate();
    fock::PhotonDistribution d(2);
    d.set(0, spec.l0());
    d.set(1, spec.l1);
    d.set(2, spec.l2());
    return d;
}

double dfg_efficiency(double pump_mw, const DfgSpec& spec) {
    spec.validate();
    if (pump_mw < 0.0) {
        throw std::domain_error("dfg_efficiency: negative pump power");
    }
    const double s = std::sin(spec.kappa * std::sqrt(pump_mw));
    return s * s;
}

double raman_noise_rate(double pump_mw, const DfgSpec& spec) {
    spec.validate();
    if (pump_mw < 0.0) {
        throw std::domain_error("raman_noise_rate: negative pump power");
    }
    return spec.raman_coeff * pump_mw * pump_mw;
}

std::vector<double> evaluate_budget(const BudgetChain& chain) {
    chain.validate();
    std::vector<double> rates;
    rates.reserve(chain.stages.size());
    double rate = chain.input_rate;
    for (const auto& stage : chain.stages) {
        rate *= stage.transmission;
        rates.push_back(rate);
    }
    return rates;
}

double noise_to_signal(double signal_rate, double noise_rate, double dark_rate) {
    if (noise_rate < 0.0 || dark_rate < 0.0) {
        throw std::domain_error("noise_to_signal: negative rate");
    }
    if (signal_rate <= 0.0) {
        throw std::domain_error("noise_to_signal: signal rate must be positive");
    }
    return (noise_rate + dark_rate) / signal_rate;
}

BudgetChain qubit_budget_chain(double pump_mw, const DfgSpec& spec, double input_rate) {
    BudgetChain chain;
    chain.input_rate = input_rate;
    chain.stages = {
        {"dfg_conversion", dfg_efficiency(pump_mw, spec)},
        {"raman_filtering", kFilterChainTransmission},
        {"intensity_modulator", kModulatorTransmission},
    };
    return chain;
}

}  // namespace telesim::sources
