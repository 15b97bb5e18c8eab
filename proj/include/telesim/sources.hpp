#pragma once

#include <string>
#include <vector>

#include "telesim/fock.hpp"

namespace telesim::sources {

// Pair-emission statistics of the SPDC source, truncated at two pairs per
// coherence time: p0 = 1 - p1 - p1^2, p2 = p1^2. The truncation degrades
// past p1 ~ 0.3, which is far above any operating point here.
struct SpdcSpec {
    double p1 = 0.02;                  // one-pair probability per coherence time
    double coherence_window_ns = 15.0;

    double p0() const { return 1.0 - p1 - p1 * p1; }
    double p2() const { return p1 * p1; }
    void validate() const;
};

// Photon statistics of the attenuated laser, truncated at two photons per
// pulse: l0 = 1 - l1 - l1^2/2, l2 = l1^2/2.
struct LaserSpec {
    double l1 = 0.02;               // one-photon probability per pulse
    double pulse_window_ns = 15.0;

    double l0() const { return 1.0 - l1 - 0.5 * l1 * l1; }
    double l2() const { return 0.5 * l1 * l1; }
    void validate() const;
};

// Two ways to pin the coupling of the sin^2(kappa sqrt(P)) conversion
// curve: unit efficiency at 450 mW, or 90% efficiency at 350 mW. The
// measured curve is consistent with either to within a few percent.
enum class KappaCalibration {
    Peak450,
    Fit350,
};

struct DfgSpec {
    double kappa;                      // conversion coupling, per sqrt(mW)
    double p_opt_mw = 450.0;           // pump power of peak conversion
    double raman_coeff = 4.94e-10;     // noise photons per ns per mW^2

    static DfgSpec calibrated(KappaCalibration mode);
    void validate() const;
};

struct BudgetStage {
    std::string label;
    double transmission;  // [0, 1]
};

// Loss chain applied to a mean photon rate (photons per window).
struct BudgetChain {
    double input_rate = 0.0;
    std::vector<BudgetStage> stages;

    void validate() const;
};

// Lumped transmission of the Raman-noise filtering stage, back-solved so
// that 0.8 photons/window into a 90%-efficient converter leave 0.2.
inline constexpr double kFilterChainTransmission = 5.0 / 18.0;

inline constexpr double kModulatorTransmission = 0.5;  // 3 dB

// Pair-count distribution {0: p0, 1: p1, 2: p2}.
fock::PhotonDistribution spdc_distribution(const SpdcSpec& spec);

// Photon-count distribution {0: l0, 1: l1, 2: l2}.
fock::PhotonDistribution laser_distribution(const LaserSpec& spec);

// Internal conversion efficiency sin^2(kappa * sqrt(pump)).
double dfg_efficiency(double pump_mw, const DfgSpec& spec);

// Raman scattering noise photons per ns; quadratic in pump power.
double raman_noise_rate(double pump_mw, const DfgSpec& spec);

// Mean photon rate after each stage of the chain, in order.
std::vector<double> evaluate_budget(const BudgetChain& chain);

// (noise + dark) / signal, all rates per ns.
double noise_to_signal(double signal_rate, double noise_rate, double dark_rate);

// The qubit-generator chain: DFG conversion at the given pump power,
// lumped Raman filtering, then the pulsing modulator.
BudgetChain qubit_budget_chain(double pump_mw, const DfgSpec& spec,
                               double input_rate = 0.8);

}  // namespace telesim::sources
