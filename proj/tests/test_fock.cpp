#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "telesim/fock.hpp"

using namespace telesim;

namespace {

// Independent creation-operator oracle: expands (c+d)^n (c-d)^m by exact
// integer polynomial convolution instead of the closed-form binomial sum
// used by the library.
std::vector<std::int64_t> convolve(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::int64_t int_factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

// Probability of |p, n+m-p> behind the balanced splitter for input |n, m>.
double oracle_indistinguishable_prob(int n, int m, int p) {
    std::vector<std::int64_t> poly = {1};
    for (int i = 0; i < n; ++i) {
        poly = convolve(poly, {1, 1});  // (c + d)
    }
    for (int i = 0; i < m; ++i) {
        poly = convolve(poly, {-1, 1});  // (c - d), coefficient of c^1 is 1
    }
    // poly[p] is the integer coefficient of c^p d^{n+m-p}.
    const int total = n + m;
    const int q = total - p;
    const double amp2 = static_cast<double>(poly[static_cast<size_t>(p)]) *
                        static_cast<double>(poly[static_cast<size_t>(p)]) *
                        static_cast<double>(int_factorial(p)) *
                        static_cast<double>(int_factorial(q)) /
                        (static_cast<double>(int_factorial(n)) *
                         static_cast<double>(int_factorial(m)) * std::pow(2.0, total));
    return amp2;
}

// Distinguishable photons route independently; probability of p photons on
// the left out of n + m.
double oracle_distinguishable_prob(int n, int m, int p) {
    double sum = 0.0;
    for (int i = std::max(0, p - m); i <= std::min(n, p); ++i) {
        sum += fock::binomial_coefficient(n, i) * fock::binomial_coefficient(m, p - i);
    }
    return sum / std::pow(2.0, n + m);
}

}  // namespace

TEST_CASE("split_balanced base cases") {
    const auto vac = fock::split_balanced(0);
    CHECK(vac.prob(0, 0) == 1.0);
    CHECK(vac.total() == doctest::Approx(1.0).epsilon(1e-15));

    const auto one = fock::split_balanced(1);
    CHECK(one.prob(1, 0) == 0.5);
    CHECK(one.prob(0, 1) == 0.5);

    const auto two = fock::split_balanced(2);
    CHECK(two.prob(2, 0) == 0.25);
    CHECK(two.prob(1, 1) == 0.5);
    CHECK(two.prob(0, 2) == 0.25);
}

TEST_CASE("split_balanced is symmetric and normalized") {
    for (int n = 0; n <= fock::kDefaultTruncation; ++n) {
        const auto dist = fock::split_balanced(n);
        CHECK(dist.is_normalized(1e-12));
        for (int k = 0; k <= n; ++k) {
            CHECK(dist.prob(k, n - k) == dist.prob(n - k, k));
        }
    }
}

TEST_CASE("split_balanced rejects bad inputs") {
    CHECK_THROWS_AS(fock::split_balanced(-1), std::invalid_argument);
    CHECK_THROWS_AS(fock::split_balanced(7), fock::TruncationError);
    CHECK_THROWS_AS(fock::split_balanced(3, 2), fock::TruncationError);
}

TEST_CASE("apply_loss limits") {
    fock::PhotonDistribution single(2);
    single.set(1, 1.0);

    const auto lossless = fock::apply_loss(single, 1.0);
    CHECK(lossless.prob(1) == 1.0);
    CHECK(lossless.prob(0) == 0.0);

    const auto opaque = fock::apply_loss(single, 0.0);
    CHECK(opaque.prob(0) == 1.0);

    const auto thinned = fock::apply_loss(single, 0.1);
    CHECK(thinned.prob(1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(thinned.prob(0) == doctest::Approx(0.9).epsilon(1e-15));

    CHECK_THROWS_AS(fock::apply_loss(single, -0.1), std::domain_error);
    CHECK_THROWS_AS(fock::apply_loss(single, 1.1), std::domain_error);
}

TEST_CASE("apply_loss preserves total probability") {
    std::mt19937_64 gen(7);
    for (int rep = 0; rep < 50; ++rep) {
        fock::PhotonDistribution dist(fock::kDefaultTruncation);
        double total = 0.0;
        std::vector<double> w(static_cast<size_t>(dist.truncation()) + 1);
        for (auto& x : w) {
            x = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            total += x;
        }
        for (int n = 0; n <= dist.truncation(); ++n) {
            dist.set(n, w[static_cast<size_t>(n)] / total);
        }
        const double t = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const auto out = fock::apply_loss(dist, t);
        CHECK(out.total() == doctest::Approx(dist.total()).epsilon(1e-12));
    }
}

TEST_CASE("click_probability closed form") {
    CHECK(fock::click_probability(0, 0.3, 0.7) == 0.0);
    CHECK(fock::click_probability(1, 1.0, 1.0) == 1.0);
    CHECK(fock::click_probability(2, 0.5, 0.5) == doctest::Approx(0.4375).epsilon(1e-15));
    CHECK_THROWS_AS(fock::click_probability(-1, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(fock::click_probability(1, 1.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(fock::click_probability(1, 0.5, -0.2), std::domain_error);
}

TEST_CASE("click_probability is monotone in every argument") {
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (double t : grid) {
        for (double eta : grid) {
            for (int n = 0; n < 6; ++n) {
                CHECK(fock::click_probability(n, t, eta) <=
                      fock::click_probability(n + 1, t, eta) + 1e-15);
            }
            CHECK(fock::click_probability(3, t, eta) <=
                  fock::click_probability(3, std::min(1.0, t + 0.25), eta) + 1e-15);
            CHECK(fock::click_probability(3, t, eta) <=
                  fock::click_probability(3, t, std::min(1.0, eta + 0.25)) + 1e-15);
        }
    }
}

TEST_CASE("Hong-Ou-Mandel coalescence is exact") {
    const auto dist = fock::interfere_indistinguishable(1, 1);
    CHECK(dist.prob(1, 1) == 0.0);
    CHECK(dist.prob(2, 0) == 0.5);
    CHECK(dist.prob(0, 2) == 0.5);
}

TEST_CASE("interfere_distinguishable base cases") {
    const auto dist = fock::interfere_distinguishable(1, 1);
    CHECK(dist.prob(2, 0) == 0.25);
    CHECK(dist.prob(1, 1) == 0.5);
    CHECK(dist.prob(0, 2) == 0.25);

    const auto vac = fock::interfere_distinguishable(0, 0);
    CHECK(vac.prob(0, 0) == 1.0);

    const auto mixed = fock::interfere_distinguishable(2, 1);
    CHECK(mixed.prob(3, 0) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    CHECK(mixed.prob(2, 1) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(mixed.prob(1, 2) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(mixed.prob(0, 3) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
}

TEST_CASE("interfere_indistinguishable matches the polynomial oracle") {
    // Includes the (2,1) case: {3/8, 1/8, 1/8, 3/8}.
    CHECK(oracle_indistinguishable_prob(2, 1, 3) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(oracle_indistinguishable_prob(2, 1, 2) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    for (int n = 0; n <= fock::kDefaultTruncation; ++n) {
        for (int m = 0; n + m <= fock::kDefaultTruncation; ++m) {
            const auto dist = fock::interfere_indistinguishable(n, m);
            for (int p = 0; p <= n + m; ++p) {
                CHECK(dist.prob(p, n + m - p) ==
                      doctest::Approx(oracle_indistinguishable_prob(n, m, p)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("interfere_distinguishable matches the binomial-convolution oracle") {
    for (int n = 0; n <= fock::kDefaultTruncation; ++n) {
        for (int m = 0; n + m <= fock::kDefaultTruncation; ++m) {
            const auto dist = fock::interfere_distinguishable(n, m);
            for (int p = 0; p <= n + m; ++p) {
                CHECK(dist.prob(p, n + m - p) ==
                      doctest::Approx(oracle_distinguishable_prob(n, m, p)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("interference conserves photon number and normalization") {
    for (int n = 0; n <= fock::kDefaultTruncation; ++n) {
        for (int m = 0; n + m <= fock::kDefaultTruncation; ++m) {
            for (const auto& dist :
                 {fock::interfere_indistinguishable(n, m), fock::interfere_distinguishable(n, m)}) {
                CHECK(dist.is_normalized(1e-12));
                for (const auto& [occ, p] : dist.entries()) {
                    CHECK(occ.first + occ.second == n + m);
                    CHECK(p >= 0.0);
                }
            }
        }
    }
}

TEST_CASE("one-port inputs are regime independent") {
    for (int n = 0; n <= fock::kDefaultTruncation; ++n) {
        const auto in_left = fock::interfere_indistinguishable(n, 0);
        const auto dis_left = fock::interfere_distinguishable(n, 0);
        const auto in_right = fock::interfere_indistinguishable(0, n);
        const auto dis_right = fock::interfere_distinguishable(0, n);
        for (int p = 0; p <= n; ++p) {
            CHECK(in_left.prob(p, n - p) ==
                  doctest::Approx(dis_left.prob(p, n - p)).epsilon(1e-12));
            CHECK(in_right.prob(p, n - p) ==
                  doctest::Approx(dis_right.prob(p, n - p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("interference truncation errors") {
    CHECK_THROWS_AS(fock::interfere_indistinguishable(4, 3), fock::TruncationError);
    CHECK_THROWS_AS(fock::interfere_distinguishable(5, 2), fock::TruncationError);
}

TEST_CASE("beamsplitter amplitudes are normalized") {
    for (int n = 0; n <= fock::kDefaultTruncation; ++n) {
        for (int m = 0; n + m <= fock::kDefaultTruncation; ++m) {
            CHECK(fock::beamsplitter_amplitudes(n, m).norm_squared() ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("dual_click_probability composition") {
    fock::TwoModeDistribution one_each(6);
    one_each.set(1, 1, 1.0);
    CHECK(fock::dual_click_probability(one_each, {1.0, 0.0}, {1.0, 0.0}) == 1.0);

    fock::TwoModeDistribution lopsided(6);
    lopsided.set(2, 0, 1.0);
    CHECK(fock::dual_click_probability(lopsided, {0.7, 0.0}, {0.7, 0.0}) == 0.0);

    fock::TwoModeDistribution mixed(6);
    mixed.set(1, 1, 0.5);
    mixed.set(2, 0, 0.5);
    CHECK(fock::dual_click_probability(mixed, {0.5, 0.0}, {0.5, 0.0}) ==
          doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("single_click_probability marginals") {
    fock::TwoModeDistribution dist(6);
    dist.set(1, 0, 0.5);
    dist.set(0, 2, 0.5);
    const fock::DetectorSpec det{0.5, 0.0};
    CHECK(fock::single_click_probability(dist, 0, det) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(fock::single_click_probability(dist, 1, det) ==
          doctest::Approx(0.5 * 0.75).epsilon(1e-15));
}

TEST_CASE("distribution containers validate occupations") {
    fock::PhotonDistribution d(3);
    CHECK_THROWS_AS(d.set(4, 0.1), fock::TruncationError);
    CHECK_THROWS_AS(d.set(-1, 0.1), std::invalid_argument);

    fock::TwoModeDistribution t(3);
    CHECK_THROWS_AS(t.set(2, 2, 0.1), fock::TruncationError);
    CHECK(t.prob(2, 2) == 0.0);
}
