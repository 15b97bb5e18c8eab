#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "telesim/fock.hpp"
#include "telesim/sources.hpp"

namespace telesim::visibility {

// Both extremal coincidence rates vanished; no visibility is defined.
class UndefinedVisibilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Full parameter set of one experiment configuration. All rates are per
// coincidence window unless stated otherwise; dark rates are per ns.
struct ExperimentConfig {
    double p1 = 0.02;        // SPDC pair probability per coherence time
    double l1 = 0.02;        // laser photon probability per pulse
    double t2 = 0.1;         // transmission of the path feeding the BSM splitter
    double t3 = 0.1;         // transmission of the herald path
    double eta = 0.2;        // detector efficiency, identical for all three
    double overlap = 0.91;   // temporal-mode overlap of the interfering photons
    double window_ns = 15.0; // coincidence window
    std::array<double, 3> dark_rates = {1e-6, 1e-6, 1e-6};  // SPD1, SPD2, SPD3, per ns

    double pump_mw = 350.0;
    sources::KappaCalibration kappa_mode = sources::KappaCalibration::Fit350;

    std::uint64_t trials = 1'000'000;  // Monte Carlo cross-check sample size
    std::uint64_t seed = 42;

    void validate() const;  // throws std::domain_error naming the offending key

    // Per-window dark-count probability of detector i (0-based).
    double dark_prob(int detector) const { return dark_rates[static_cast<size_t>(detector)] * window_ns; }
};

// Threefold-coincidence rates measured with detectors blocked, following
// the blocked-detector bookkeeping: dcN has detector N blocked, dcNM has
// both N and M blocked. Units are counts per second.
struct DarkCountSet {
    double dc1 = 0.0, dc2 = 0.0, dc3 = 0.0;
    double dc12 = 0.0, dc13 = 0.0, dc23 = 0.0;

    void validate() const;
};

// Joint probabilities of a herald click AND k photons arriving at the BSM
// splitter, k = 0..3. Sub-normalized: the total is the herald probability.
struct HeraldStats {
    std::array<double, 4> h = {0.0, 0.0, 0.0, 0.0};

    double total() const { return h[0] + h[1] + h[2] + h[3]; }
};

enum class Variant { Raw, Net };

struct VisibilityResult {
    double c_max = 0.0;
    double c_min = 0.0;
    double v_two_photon = 0.0;
    double v_ent = 0.0;
    double fidelity = 0.0;
    Variant variant = Variant::Raw;
    bool clamped = false;  // c_min was driven below zero by a correction

    static VisibilityResult from_rates(double c_max, double c_min, Variant variant,
                                       bool clamped = false);
};

struct BsmRates {
    double c_dis = 0.0;    // no interference: upper fringe extreme
    double c_indis = 0.0;  // full interference: lower fringe extreme
};

// Steps 1-3: propagate the pair source through the splitting, herald and
// loss stages, accumulating the joint h_k.
HeraldStats herald_distribution(const ExperimentConfig& config);

// Photon-number distribution in front of the BSM splitter with no herald
// conditioning (used for the blocked-detector rate synthesis).
fock::PhotonDistribution unheralded_bsm_input(const ExperimentConfig& config);

// Step 4: mix every (k photons, j laser photons) input pair through the
// BSM splitter for both regimes and apply dual threshold detection.
BsmRates bsm_rates(const HeraldStats& herald, const fock::PhotonDistribution& laser, double eta);

// Convex mixture of the interfering and non-interfering populations:
// overlap * c_indis + (1 - overlap) * c_dis.
double apply_overlap(double c_dis, double c_indis, double overlap);

// (c_max - c_min) / c_max.
double visibility_two_photon(double c_max, double c_min);

struct EntanglementVisibility {
    double v_ent;
    double fidelity;
};

// (c_max - c_min) / (c_max + c_min) and F = (1 + V)/2.
EntanglementVisibility visibility_ent(double c_max, double c_min);

// DC = dc1 + dc2 + dc3 - dc12 - dc13 - dc23.
double total_dark_rate(const DarkCountSet& dc);

// Subtracts dc_rate / herald_rate from both extremal rates and recomputes
// the metrics. Pass herald_rate = 1 when dc_rate already shares the units
// of the result's rates. A c_min driven below zero is clamped and flagged.
VisibilityResult net_correct(const VisibilityResult& raw, double dc_rate,
                             double herald_rate = 1.0);

// One full evaluation of the analytic pipeline.
struct PipelineResult {
    HeraldStats herald;
    BsmRates clean;              // light-only rates, per window, joint with herald
    double dark_contribution;    // per-window threefold rate added by dark counts
    DarkCountSet dark_set;       // synthesized blocked-detector rates, counts/s
    BsmRates raw_rates;          // clean plus the dark contribution
    VisibilityResult raw;        // after the overlap reduction
    VisibilityResult net;
};

PipelineResult evaluate_pipeline(const ExperimentConfig& config);

// Blocked-detector rates implied by the configuration's dark specs and the
// light-only single/double click rates of the pipeline.
DarkCountSet synthesize_dark_counts(const ExperimentConfig& config);

struct SweepRow {
    double p1 = 0.0;
    double l1 = 0.0;
    bool ok = false;
    std::string error;
    PipelineResult result;
};

// Evaluates the pipeline over the p1 x l1 grid, row-major in the given
// order. Per-point failures are recorded in the row, never thrown.
std::vector<SweepRow> sweep(const ExperimentConfig& base,
                            const std::vector<double>& p1_values,
                            const std::vector<double>& l1_values);

}  // namespace telesim::visibility
