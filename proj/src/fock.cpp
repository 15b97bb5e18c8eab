#include "telesim/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace telesim::fock {

namespace {

constexpr int kMaxTableN = 24;

// Pascal's triangle; exact in double well beyond the photon numbers used.
const std::array<std::array<double, kMaxTableN + 1>, kMaxTableN + 1>& binomial_table() {
    static const auto table = [] {
        std::array<std::array<double, kMaxTableN + 1>, kMaxTableN + 1> t{};
        for (int n = 0; n <= kMaxTableN; ++n) {
            t[n][0] = 1.0;
            for (int k = 1; k <= n; ++k) {
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0.0);
            }
        }
        return t;
    }();
    return table;
}

}  // namespace

double binomial_coefficient(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        return 0.0;
    }
    if (n > kMaxTableN) {
        throw std::invalid_argument("binomial_coefficient: n out of table range");
    }
    return binomial_table()[n][k];
}

double factorial(int n) {
    if (n < 0) {
        throw std::invalid_argument("factorial: negative argument");
    }
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

PhotonDistribution::PhotonDistribution(int truncation) {
    if (truncation < 0) {
        throw std::invalid_argument("PhotonDistribution: negative truncation");
    }
    probs_.assign(static_cast<size_t>(truncation) + 1, 0.0);
}

PhotonDistribution::PhotonDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::invalid_argument("PhotonDistribution: empty probability vector");
    }
    for (double p : probs_) {
        if (p < -1e-15 || p > 1.0 + 1e-15) {
            throw std::domain_error("PhotonDistribution: probability outside [0, 1]");
        }
    }
}

PhotonDistribution PhotonDistribution::vacuum(int truncation) {
    PhotonDistribution d(truncation);
    d.set(0, 1.0);
    return d;
}

void PhotonDistribution::set(int n, double p) {
    if (n < 0) {
        throw std::invalid_argument("PhotonDistribution::set: negative occupation");
    }
    if (n > truncation()) {
        throw TruncationError("PhotonDistribution::set: occupation exceeds truncation");
    }
    probs_[static_cast<size_t>(n)] = p;
}

void PhotonDistribution::add(int n, double p) {
    set(n, prob(n) + p);
}

double PhotonDistribution::total() const {
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

bool PhotonDistribution::is_normalized(double tol) const {
    return std::abs(total() - 1.0) <= tol;
}

TwoModeDistribution::TwoModeDistribution(int truncation) : truncation_(truncation) {
    if (truncation < 0) {
        throw std::invalid_argument("TwoModeDistribution: negative truncation");
    }
    p_.assign(static_cast<size_t>(truncation + 1) * static_cast<size_t>(truncation + 1), 0.0);
}

size_t TwoModeDistribution::index(int n_left, int n_right) const {
    return static_cast<size_t>(n_left) * static_cast<size_t>(truncation_ + 1) +
           static_cast<size_t>(n_right);
}

void TwoModeDistribution::check(int n_left, int n_right) const {
    if (n_left < 0 || n_right < 0) {
        throw std::invalid_argument("TwoModeDistribution: negative occupation");
    }
    if (n_left + n_right > truncation_) {
        throw TruncationError("TwoModeDistribution: total occupation exceeds truncation");
    }
}

double TwoModeDistribution::prob(int n_left, int n_right) const {
    if (n_left < 0 || n_right < 0 || n_left + n_right > truncation_) {
        return 0.0;
    }
    return p_[index(n_left, n_right)];
}

void TwoModeDistribution::set(int n_left, int n_right, double p) {
    check(n_left, n_right);
    p_[index(n_left, n_right)] = p;
}

void TwoModeDistribution::add(int n_left, int n_right, double p) {
    check(n_left, n_right);
    p_[index(n_left, n_right)] += p;
}

double TwoModeDistribution::total() const {
    double s = 0.0;
    for (int nl = 0; nl <= truncation_; ++nl) {
        for (int nr = 0; nr + nl <= truncation_; ++nr) {
            s += p_[index(nl, nr)];
        }
    }
    return s;
}

bool TwoModeDistribution::is_normalized(double tol) const {
    return std::abs(total() - 1.0) <= tol;
}

PhotonDistribution TwoModeDistribution::marginal(int side) const {
    PhotonDistribution out(truncation_);
    for (int nl = 0; nl <= truncation_; ++nl) {
        for (int nr = 0; nr + nl <= truncation_; ++nr) {
            out.add(side == 0 ? nl : nr, p_[index(nl, nr)]);
        }
    }
    return out;
}

std::vector<std::pair<std::pair<int, int>, double>> TwoModeDistribution::entries() const {
    std::vector<std::pair<std::pair<int, int>, double>> out;
    for (int nl = 0; nl <= truncation_; ++nl) {
        for (int nr = 0; nr + nl <= truncation_; ++nr) {
            double p = p_[index(nl, nr)];
            if (p != 0.0) {
                out.push_back({{nl, nr}, p});
            }
        }
    }
    return out;
}

TwoModeAmplitudes::TwoModeAmplitudes(int truncation) : truncation_(truncation) {
    if (truncation < 0) {
        throw std::invalid_argument("TwoModeAmplitudes: negative truncation");
    }
    amp_.assign(static_cast<size_t>(truncation + 1) * static_cast<size_t>(truncation + 1),
                std::complex<double>(0.0, 0.0));
}

size_t TwoModeAmplitudes::index(int n_left, int n_right) const {
    return static_cast<size_t>(n_left) * static_cast<size_t>(truncation_ + 1) +
           static_cast<size_t>(n_right);
}

std::complex<double> TwoModeAmplitudes::amplitude(int n_left, int n_right) const {
    if (n_left < 0 || n_right < 0 || n_left + n_right > truncation_) {
        return {0.0, 0.0};
    }
    return amp_[index(n_left, n_right)];
}

void TwoModeAmplitudes::set(int n_left, int n_right, std::complex<double> a) {
    if (n_left < 0 || n_right < 0) {
        throw std::invalid_argument("TwoModeAmplitudes: negative occupation");
    }
    if (n_left + n_right > truncation_) {
        throw TruncationError("TwoModeAmplitudes: total occupation exceeds truncation");
    }
    amp_[index(n_left, n_right)] = a;
}

double TwoModeAmplitudes::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amp_) {
        s += std::norm(a);
    }
    return s;
}

TwoModeDistribution TwoModeAmplitudes::probabilities() const {
    TwoModeDistribution out(truncation_);
    for (int nl = 0; nl <= truncation_; ++nl) {
        for (int nr = 0; nr + nl <= truncation_; ++nr) {
            out.set(nl, nr, std::norm(amp_[index(nl, nr)]));
        }
    }
    return out;
}

void DetectorSpec::validate() const {
    if (efficiency < 0.0 || efficiency > 1.0) {
        throw std::domain_error("DetectorSpec: efficiency outside [0, 1]");
    }
    if (dark_rate < 0.0) {
        throw std::domain_error("DetectorSpec: negative dark rate");
    }
}

TwoModeDistribution split_balanced(int n, int truncation) {
    if (n < 0) {
        throw std::invalid_argument("split_balanced: negative photon count");
    }
    if (n > truncation) {
        throw TruncationError("split_balanced: photon count exceeds truncation");
    }
    TwoModeDistribution out(truncation);
    for (int k = 0; k <= n; ++k) {
        out.set(k, n - k, binomial_coefficient(n, k) * std::ldexp(1.0, -n));
    }
    return out;
}

PhotonDistribution apply_loss(const PhotonDistribution& dist, double transmission) {
    if (transmission < 0.0 || transmission > 1.0) {
        throw std::domain_error("apply_loss: transmission outside [0, 1]");
    }
    PhotonDistribution out(dist.truncation());
    for (int n = 0; n <= dist.truncation(); ++n) {
        double p = dist.prob(n);
        if (p == 0.0) {
            continue;
        }
        for (int k = 0; k <= n; ++k) {
            out.add(k, p * binomial_coefficient(n, k) * std::pow(transmission, k) *
                           std::pow(1.0 - transmission, n - k));
        }
    }
    return out;
}

double click_probability(int n, double transmission, double efficiency) {
    if (n < 0) {
        throw std::invalid_argument("click_probability: negative photon count");
    }
    if (transmission < 0.0 || transmission > 1.0) {
        throw std::domain_error("click_probability: transmission outside [0, 1]");
    }
    if (efficiency < 0.0 || efficiency > 1.0) {
        throw std::domain_error("click_probability: efficiency outside [0, 1]");
    }
    return 1.0 - std::pow(1.0 - transmission * efficiency, n);
}

TwoModeAmplitudes beamsplitter_amplitudes(int n, int m, int truncation) {
    if (n < 0 || m < 0) {
        throw std::invalid_argument("beamsplitter_amplitudes: negative photon count");
    }
    const int total = n + m;
    if (total > truncation) {
        throw TruncationError("beamsplitter_amplitudes: input exceeds truncation");
    }
    // (a^)^n (b^)^m -> 2^{-total/2} (c^+d^)^n (c^-d^)^m; collecting the
    // coefficient of (c^)^p (d^)^q and restoring Fock normalization gives
    //   amp(p) = 2^{-total/2} sqrt(p! q! / (n! m!))
    //            * sum_i C(n,i) C(m,p-i) (-1)^{m-p+i}.
    TwoModeAmplitudes out(truncation);
    for (int p = 0; p <= total; ++p) {
        const int q = total - p;
        double s = 0.0;
        for (int i = std::max(0, p - m); i <= std::min(n, p); ++i) {
            const double sign = ((m - p + i) % 2 == 0) ? 1.0 : -1.0;
            s += binomial_coefficient(n, i) * binomial_coefficient(m, p - i) * sign;
        }
        const double amp = s * std::sqrt(std::ldexp(1.0, -total)) *
                           std::sqrt(factorial(p) * factorial(q) / (factorial(n) * factorial(m)));
        out.set(p, q, amp);
    }
    return out;
}

TwoModeDistribution interfere_indistinguishable(int n, int m, int truncation) {
    if (n < 0 || m < 0) {
        throw std::invalid_argument("interfere_indistinguishable: negative photon count");
    }
    const int total = n + m;
    if (total > truncation) {
        throw TruncationError("interfere_indistinguishable: input exceeds truncation");
    }
    // |amp|^2 evaluated without the square-root round trip, so dyadic
    // probabilities (1/2, 3/8, ...) come out exact.
    TwoModeDistribution out(truncation);
    for (int p = 0; p <= total; ++p) {
        const int q = total - p;
        double s = 0.0;
        for (int i = std::max(0, p - m); i <= std::min(n, p); ++i) {
            const double sign = ((m - p + i) % 2 == 0) ? 1.0 : -1.0;
            s += binomial_coefficient(n, i) * binomial_coefficient(m, p - i) * sign;
        }
        out.set(p, q, s * s * std::ldexp(1.0, -total) * factorial(p) * factorial(q) /
                          (factorial(n) * factorial(m)));
    }
    return out;
}

TwoModeDistribution interfere_distinguishable(int n, int m, int truncation) {
    if (n < 0 || m < 0) {
        throw std::invalid_argument("interfere_distinguishable: negative photon count");
    }
    const int total = n + m;
    if (total > truncation) {
        throw TruncationError("interfere_distinguishable: input exceeds truncation");
    }
    TwoModeDistribution out(truncation);
    for (int p = 0; p <= total; ++p) {
        double s = 0.0;
        for (int i = std::max(0, p - m); i <= std::min(n, p); ++i) {
            s += binomial_coefficient(n, i) * binomial_coefficient(m, p - i);
        }
        out.set(p, total - p, s * std::ldexp(1.0, -total));
    }
    return out;
}

double dual_click_probability(const TwoModeDistribution& dist,
                              const DetectorSpec& left,
                              const DetectorSpec& right) {
    left.validate();
    right.validate();
    double rate = 0.0;
    for (int nl = 0; nl <= dist.truncation(); ++nl) {
        for (int nr = 0; nr + nl <= dist.truncation(); ++nr) {
            double p = dist.prob(nl, nr);
            if (p == 0.0) {
                continue;
            }
            rate += p * click_probability(nl, 1.0, left.efficiency) *
                    click_probability(nr, 1.0, right.efficiency);
        }
    }
    return rate;
}

double single_click_probability(const TwoModeDistribution& dist,
                                int side,
                                const DetectorSpec& det) {
    det.validate();
    double rate = 0.0;
    for (int nl = 0; nl <= dist.truncation(); ++nl) {
        for (int nr = 0; nr + nl <= dist.truncation(); ++nr) {
            double p = dist.prob(nl, nr);
            if (p == 0.0) {
                continue;
            }
            rate += p * click_probability(side == 0 ? nl : nr, 1.0, det.efficiency);
        }
    }
    return rate;
}

}  // namespace telesim::fock
