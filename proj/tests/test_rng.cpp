#include <doctest.h>

#include <cmath>
#include <vector>

#include "bulsol/rng.hpp"
#include "bulsol/stats.hpp"

using namespace bulsol;

TEST_SUITE_BEGIN("rng");

TEST_CASE("identical coordinates reproduce identical draws") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 7, 500);
    RngStream d(42, 7);
    for (int i = 0; i < 500; ++i) d.next_u64();
    for (int i = 0; i < 100; ++i) CHECK(c.next_u64() == d.next_u64());

    CHECK(RngStream(42, 7).at(123) == RngStream(42, 7).at(123));
}

TEST_CASE("different streams and seeds decorrelate") {
    RngStream a(42, 0);
    RngStream b(42, 1);
    RngStream c(43, 0);
    int equal_ab = 0, equal_ac = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto va = a.next_u64();
        if (va == b.next_u64()) ++equal_ab;
        if (va == c.next_u64()) ++equal_ac;
    }
    CHECK(equal_ab == 0);
    CHECK(equal_ac == 0);
}

TEST_CASE("unit draws are uniform-ish") {
    RngStream rng(7);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum_sq += u * u;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 0.005);          // ~17 sigma headroom
    CHECK(std::abs(var - 1.0 / 12.0) < 0.005);
}

namespace {

// Empirical pmf over many draws must match the exact binomial pmf; the
// chi-square threshold 0.001 matches the sampler's distributional contract.
void check_binomial_exactness(std::int64_t trials, double p, std::uint64_t seed) {
    RngStream rng(seed);
    const std::int64_t draws = 1'000'000;
    std::vector<std::int64_t> observed(static_cast<std::size_t>(trials) + 1, 0);
    for (std::int64_t i = 0; i < draws; ++i)
        ++observed[static_cast<std::size_t>(sample_binomial(rng, trials, p))];
    std::vector<double> expected = binomial_pmf_table(trials, p);
    for (auto& e : expected) e *= static_cast<double>(draws);
    const auto result = chi_square_gof(observed, expected);
    INFO("trials=", trials, " p=", p, " chi2=", result.statistic, " df=", result.df);
    CHECK(result.p_value >= 0.001);
}

} // namespace

TEST_CASE("binomial sampler matches the exact pmf (both sampling paths)") {
    check_binomial_exactness(5, 0.3, 11);    // Bernoulli-sum path
    check_binomial_exactness(12, 0.05, 12);  // Bernoulli-sum path, skewed
    check_binomial_exactness(40, 0.5, 13);   // inversion path
    check_binomial_exactness(200, 0.02, 14); // inversion path, small mean
    check_binomial_exactness(100, 0.9, 15);  // inversion path, high p
}

TEST_CASE("binomial sampler edge cases") {
    RngStream rng(1);
    CHECK(sample_binomial(rng, 0, 0.5) == 0);
    CHECK(sample_binomial(rng, 100, 0.0) == 0);
    CHECK(sample_binomial(rng, 100, 1.0) == 100);
    for (int i = 0; i < 100; ++i) {
        const auto v = sample_binomial(rng, 7, 0.4);
        CHECK(v >= 0);
        CHECK(v <= 7);
    }
}

TEST_SUITE_END();
