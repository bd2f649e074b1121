#include <doctest.h>

#include <cmath>
#include <vector>

#include "bulsol/stats.hpp"

using namespace bulsol;

TEST_SUITE_BEGIN("stats");

TEST_CASE("binomial pmf agrees with the recurrence table") {
    for (const double p : {0.1, 0.5, 0.9}) {
        const auto table = binomial_pmf_table(30, p);
        double sum = 0.0;
        for (std::int64_t k = 0; k <= 30; ++k) {
            CHECK(table[static_cast<std::size_t>(k)] ==
                  doctest::Approx(binomial_pmf(30, p, k)).epsilon(1e-12));
            sum += table[static_cast<std::size_t>(k)];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact two-sided tail, hand-checked values") {
    // Bin(4, 1/2), gamma = 2: P(|X-2| >= 2) = P(0) + P(4) = 2/16
    CHECK(binomial_two_sided_tail(4, 0.5, 2.0) == doctest::Approx(0.125).epsilon(1e-12));
    // Bin(100, 1/2), gamma = 25: frozen from exact rational summation
    CHECK(binomial_two_sided_tail(100, 0.5, 25.0) ==
          doctest::Approx(5.636282034205e-7).epsilon(1e-9));
}

TEST_CASE("regularized gamma Q sanity") {
    // Q(1, x) = exp(-x)
    for (const double x : {0.1, 1.0, 5.0, 20.0})
        CHECK(regularized_gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
    // chi-square with 2 df: sf(x) = exp(-x/2)
    CHECK(chi_square_sf(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
    // known quantile: P(chi2_1 > 3.841459) ~ 0.05
    CHECK(chi_square_sf(3.841459, 1) == doctest::Approx(0.05).epsilon(1e-4));
}

TEST_CASE("chi-square gof pools sparse bins and accepts the true law") {
    const auto expected_raw = binomial_pmf_table(20, 0.3);
    std::vector<double> expected(expected_raw);
    for (auto& e : expected) e *= 10000.0;
    // observed drawn close to expected
    std::vector<std::int64_t> observed(expected.size(), 0);
    for (std::size_t i = 0; i < expected.size(); ++i)
        observed[i] = static_cast<std::int64_t>(std::llround(expected[i]));
    const auto result = chi_square_gof(observed, expected);
    CHECK(result.p_value > 0.5);
    CHECK(result.bins >= 5);
}

TEST_CASE("total variation") {
    const std::vector<double> a{0.5, 0.5, 0.0};
    const std::vector<double> b{0.25, 0.25, 0.5};
    CHECK(total_variation(a, b) == doctest::Approx(0.5));
    CHECK(total_variation(a, a) == 0.0);
}

TEST_SUITE_END();
