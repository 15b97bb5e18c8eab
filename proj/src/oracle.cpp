#include "telesim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "telesim/rng.hpp"

namespace telesim::oracle {

namespace {

using visibility::ExperimentConfig;

// Cumulative weights of a small discrete distribution, for inverse-CDF
// sampling.
struct Sampler {
    std::vector<double> cumulative;
    std::vector<std::pair<int, int>> outcomes;

    size_t sample_index(double u) const {
        for (size_t i = 0; i + 1 < cumulative.size(); ++i) {
            if (u < cumulative[i]) {
                return i;
            }
        }
        return cumulative.size() - 1;
    }
};

Sampler make_sampler(const fock::TwoModeDistribution& dist) {
    Sampler s;
    double acc = 0.0;
    for (const auto& [occ, p] : dist.entries()) {
        acc += p;
        s.cumulative.push_back(acc);
        s.outcomes.push_back(occ);
    }
    return s;
}

// Exact interference output laws for every (k, j) input pair at the BSM
// splitter; sampling from them is the only non-classical step of a trial.
struct InterferenceTables {
    static constexpr int kMaxLeft = 4;
    static constexpr int kMaxRight = 2;
    Sampler table[kMaxLeft + 1][kMaxRight + 1];

    InterferenceTables() {
        for (int k = 0; k <= kMaxLeft; ++k) {
            for (int j = 0; j <= kMaxRight; ++j) {
                table[k][j] = make_sampler(fock::interfere_indistinguishable(k, j));
            }
        }
    }
};

const InterferenceTables& interference_tables() {
    static const InterferenceTables tables;
    return tables;
}

int sample_count(double u, const double* cumulative2) {
    // cumulative2 holds the cumulative weights of counts {0, 1, 2}.
    if (u < cumulative2[0]) {
        return 0;
    }
    return u < cumulative2[1] ? 1 : 2;
}

// Everything a trial needs, precomputed once per run.
struct TrialContext {
    double pair_cum[2];   // cumulative {p0, p0+p1}
    double laser_cum[2];  // cumulative {l0, l0+l1}
    double herald_click[5];  // 1-(1-t3 eta)^n for n = 0..4
    double bsm_click[7];     // 1-(1-eta)^n for n = 0..6
    double t2 = 0.0;
    double dark1 = 0.0;
    double dark2 = 0.0;
    double dark3 = 0.0;

    explicit TrialContext(const ExperimentConfig& config) {
        sources::SpdcSpec spdc;
        spdc.p1 = config.p1;
        sources::LaserSpec laser;
        laser.l1 = config.l1;
        pair_cum[0] = spdc.p0();
        pair_cum[1] = spdc.p0() + spdc.p1;
        laser_cum[0] = laser.l0();
        laser_cum[1] = laser.l0() + laser.l1;
        for (int n = 0; n <= 4; ++n) {
            herald_click[n] = fock::click_probability(n, config.t3, config.eta);
        }
        for (int n = 0; n <= 6; ++n) {
            bsm_click[n] = fock::click_probability(n, 1.0, config.eta);
        }
        t2 = config.t2;
        dark1 = config.dark_prob(0);
        dark2 = config.dark_prob(1);
        dark3 = config.dark_prob(2);
    }

    TrialOutcome sample(Regime regime, std::mt19937_64& gen) const {
        TrialOutcome outcome;
        outcome.regime = regime;

        // Pair emission and splitting at the first splitter.
        const int n_pairs = sample_count(rng::uniform01(gen), pair_cum);
        int n2 = 0;
        int n3 = 0;
        for (int i = 0; i < 2 * n_pairs; ++i) {
            (rng::uniform01(gen) < 0.5 ? n2 : n3) += 1;
        }

        // Herald detection and loss toward the BSM splitter.
        const bool herald_light = n3 > 0 && rng::uniform01(gen) < herald_click[n3];
        int k = 0;
        for (int i = 0; i < n2; ++i) {
            if (rng::uniform01(gen) < t2) {
                ++k;
            }
        }

        // Laser input and BSM-splitter routing.
        const int j = sample_count(rng::uniform01(gen), laser_cum);
        int n_left = 0;
        int n_right = 0;
        if (regime == Regime::Distinguishable) {
            for (int i = 0; i < k + j; ++i) {
                (rng::uniform01(gen) < 0.5 ? n_left : n_right) += 1;
            }
        } else if (k + j > 0) {
            const auto& s = interference_tables().table[k][j];
            const auto [nl, nr] = s.outcomes[s.sample_index(rng::uniform01(gen))];
            n_left = nl;
            n_right = nr;
        }

        // Threshold detection plus independent dark counts.
        const bool spd1_light = n_left > 0 && rng::uniform01(gen) < bsm_click[n_left];
        const bool spd2_light = n_right > 0 && rng::uniform01(gen) < bsm_click[n_right];
        outcome.spd1_click = spd1_light || (dark1 > 0.0 && rng::uniform01(gen) < dark1);
        outcome.spd2_click = spd2_light || (dark2 > 0.0 && rng::uniform01(gen) < dark2);
        outcome.herald_click = herald_light || (dark3 > 0.0 && rng::uniform01(gen) < dark3);
        return outcome;
    }
};

RegimeComparison compare_one(double analytic, double estimate, std::uint64_t trials,
                             double sigma) {
    RegimeComparison c;
    c.analytic = analytic;
    c.estimate = estimate;
    const double p_ref = std::clamp(std::max(estimate, analytic), 0.0, 1.0);
    c.std_err = std::sqrt(p_ref * (1.0 - p_ref) / static_cast<double>(trials));
    const double diff = std::abs(analytic - estimate);
    c.z = (c.std_err > 0.0) ? diff / c.std_err : (diff == 0.0 ? 0.0 : INFINITY);
    c.pass = diff <= sigma * c.std_err;
    return c;
}

}  // namespace

const char* to_string(Regime regime) {
    return regime == Regime::Distinguishable ? "distinguishable" : "indistinguishable";
}

TrialOutcome sample_trial(const ExperimentConfig& config, Regime regime, std::mt19937_64& gen) {
    return TrialContext(config).sample(regime, gen);
}

OracleEstimate run_oracle(const ExperimentConfig& config, std::uint64_t trials,
                          std::uint64_t seed) {
    config.validate();
    if (trials == 0) {
        throw std::invalid_argument("run_oracle: trials must be >= 1");
    }
    const TrialContext context(config);

    OracleEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.algorithm = rng::kAlgorithmId;

    const Regime regimes[2] = {Regime::Distinguishable, Regime::Indistinguishable};
    for (int r = 0; r < 2; ++r) {
        std::mt19937_64 gen = rng::make_stream(seed, static_cast<std::uint64_t>(r));
        std::uint64_t coincidences = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            if (context.sample(regimes[r], gen).threefold()) {
                ++coincidences;
            }
        }
        const double p = static_cast<double>(coincidences) / static_cast<double>(trials);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
        if (r == 0) {
            est.coincidences_dis = coincidences;
            est.c_dis_hat = p;
            est.std_err_dis = se;
        } else {
            est.coincidences_indis = coincidences;
            est.c_indis_hat = p;
            est.std_err_indis = se;
        }
    }
    return est;
}

ComparisonReport compare(const visibility::BsmRates& analytic, const OracleEstimate& estimate,
                         double sigma) {
    if (estimate.trials == 0) {
        throw std::invalid_argument("compare: estimate has no trials");
    }
    if (sigma < 0.0) {
        throw std::domain_error("compare: negative sigma");
    }
    ComparisonReport report;
    report.sigma = sigma;
    report.dis = compare_one(analytic.c_dis, estimate.c_dis_hat, estimate.trials, sigma);
    report.indis = compare_one(analytic.c_indis, estimate.c_indis_hat, estimate.trials, sigma);
    report.pass = report.dis.pass && report.indis.pass;
    return report;
}

std::string ComparisonReport::summary() const {
    std::ostringstream os;
    os << (pass ? "pass" : "FAIL") << " (sigma=" << sigma << "): "
       << "distinguishable z=" << dis.z << (dis.pass ? "" : " [exceeded]")
       << ", indistinguishable z=" << indis.z << (indis.pass ? "" : " [exceeded]");
    return os.str();
}

}  // namespace telesim::oracle
