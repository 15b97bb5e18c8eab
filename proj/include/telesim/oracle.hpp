#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "telesim/visibility.hpp"

namespace telesim::oracle {

enum class Regime { Distinguishable, Indistinguishable };

const char* to_string(Regime regime);

// Outcome of one sampled coincidence window.
struct TrialOutcome {
    bool herald_click = false;
    bool spd1_click = false;
    bool spd2_click = false;
    Regime regime = Regime::Distinguishable;

    bool threefold() const { return herald_click && spd1_click && spd2_click; }
};

struct OracleEstimate {
    double c_dis_hat = 0.0;
    double c_indis_hat = 0.0;
    double std_err_dis = 0.0;    // sqrt(p(1-p)/trials)
    double std_err_indis = 0.0;
    std::uint64_t coincidences_dis = 0;
    std::uint64_t coincidences_indis = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string algorithm;
};

// Samples `trials` windows per regime: pair emission, splitting, herald
// detection, loss, laser emission, BSM-splitter routing, threshold clicks
// and per-detector dark counts. Identical (config, trials, seed) always
// reproduce the same estimate bit for bit.
OracleEstimate run_oracle(const visibility::ExperimentConfig& config, std::uint64_t trials,
                          std::uint64_t seed);

// Samples one window in the given regime.
TrialOutcome sample_trial(const visibility::ExperimentConfig& config, Regime regime,
                          std::mt19937_64& gen);

struct RegimeComparison {
    double analytic = 0.0;
    double estimate = 0.0;
    double std_err = 0.0;   // effective sigma used for the bound (see below)
    double z = 0.0;
    bool pass = false;
};

struct ComparisonReport {
    RegimeComparison dis;
    RegimeComparison indis;
    double sigma = 0.0;
    bool pass = false;

    std::string summary() const;
};

// Checks |analytic - estimate| <= sigma * s for both regimes. The bound
// uses s = sqrt(p(1-p)/trials) at p = max(estimate, analytic) so that a
// zero-count run of a rare configuration is judged against the rate it was
// asked to confirm instead of an empty empirical error bar.
ComparisonReport compare(const visibility::BsmRates& analytic, const OracleEstimate& estimate,
                         double sigma);

}  // namespace telesim::oracle
