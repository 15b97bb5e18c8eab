#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace telesim::fock {

// Default cap on the total photon number tracked by the distributions below.
// Two SPDC pairs plus two laser photons never exceed six at the operating
// points of interest; terms beyond that carry < 1e-8 of probability.
inline constexpr int kDefaultTruncation = 6;

// Requested occupation exceeds the configured truncation.
class TruncationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

double binomial_coefficient(int n, int k);
double factorial(int n);

// Probability mass over the photon number of a single optical mode.
// Entries index photon count 0..truncation. A distribution may be
// sub-normalized (total < 1) when it is joint with another event.
class PhotonDistribution {
public:
    PhotonDistribution() : probs_(kDefaultTruncation + 1, 0.0) {}
    explicit PhotonDistribution(int truncation);
    explicit PhotonDistribution(std::vector<double> probs);

    static PhotonDistribution vacuum(int truncation = kDefaultTruncation);

    double prob(int n) const {
        return (n >= 0 && n <= truncation()) ? probs_[static_cast<size_t>(n)] : 0.0;
    }
    void set(int n, double p);
    void add(int n, double p);

    int truncation() const { return static_cast<int>(probs_.size()) - 1; }
    double total() const;
    bool is_normalized(double tol = 1e-12) const;
    const std::vector<double>& probs() const { return probs_; }

private:
    std::vector<double> probs_;
};

// Joint probability mass over the photon numbers (n_left, n_right) of two
// optical modes, with n_left + n_right <= truncation for every entry.
class TwoModeDistribution {
public:
    explicit TwoModeDistribution(int truncation = kDefaultTruncation);

    double prob(int n_left, int n_right) const;
    void set(int n_left, int n_right, double p);
    void add(int n_left, int n_right, double p);

    int truncation() const { return truncation_; }
    double total() const;
    bool is_normalized(double tol = 1e-12) const;

    // Marginal over one mode. side 0 = left, 1 = right.
    PhotonDistribution marginal(int side) const;

    std::vector<std::pair<std::pair<int, int>, double>> entries() const;

private:
    size_t index(int n_left, int n_right) const;
    void check(int n_left, int n_right) const;

    int truncation_;
    std::vector<double> p_;
};

// Two-mode state written in the photon-number basis; squared magnitudes
// of a normalized state sum to 1.
class TwoModeAmplitudes {
public:
    explicit TwoModeAmplitudes(int truncation = kDefaultTruncation);

    std::complex<double> amplitude(int n_left, int n_right) const;
    void set(int n_left, int n_right, std::complex<double> a);

    int truncation() const { return truncation_; }
    double norm_squared() const;
    TwoModeDistribution probabilities() const;

private:
    size_t index(int n_left, int n_right) const;

    int truncation_;
    std::vector<std::complex<double>> amp_;
};

// Threshold detector: clicks on >= 1 detected photon, no number resolution.
struct DetectorSpec {
    double efficiency = 1.0;   // [0, 1]
    double dark_rate = 0.0;    // dark-count probability per ns, >= 0

    void validate() const;
};

// Routes n photons through a balanced splitter with classical statistics:
// each photon picks an output independently. Entry (k, n-k) carries
// C(n,k) * 2^-n.
TwoModeDistribution split_balanced(int n, int truncation = kDefaultTruncation);

// Binomial thinning: each photon survives independently with probability t.
// Preserves the total probability of the input.
PhotonDistribution apply_loss(const PhotonDistribution& dist, double transmission);

// Click probability of a threshold detector behind a lossy path:
// 1 - (1 - t*eta)^n.
double click_probability(int n, double transmission, double efficiency);

// Output state of the balanced splitter for the Fock input |n, m>, under
// the convention a -> (c + d)/sqrt(2), b -> (c - d)/sqrt(2).
TwoModeAmplitudes beamsplitter_amplitudes(int n, int m, int truncation = kDefaultTruncation);

// Output photon-number statistics for |n, m> into a balanced splitter when
// the photons are mutually indistinguishable (full bosonic interference).
TwoModeDistribution interfere_indistinguishable(int n, int m, int truncation = kDefaultTruncation);

// Same geometry but fully distinguishable photons: every photon routes
// independently, giving the convolution of two symmetric binomials.
TwoModeDistribution interfere_distinguishable(int n, int m, int truncation = kDefaultTruncation);

// Probability that both detectors click, one per output mode. Transmission
// to the detectors must already be folded into dist; dark counts are
// accounted for at the coincidence-rate level elsewhere, never here.
double dual_click_probability(const TwoModeDistribution& dist,
                              const DetectorSpec& left,
                              const DetectorSpec& right);

// Probability that the detector on one side clicks, irrespective of the
// other mode. side 0 = left, 1 = right.
double single_click_probability(const TwoModeDistribution& dist,
                                int side,
                                const DetectorSpec& det);

}  // namespace telesim::fock
