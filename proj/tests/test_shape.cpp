#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "bulsol/partition.hpp"
#include "bulsol/rng.hpp"
#include "bulsol/shape.hpp"

#include "sup_oracle.hpp"

using namespace bulsol;

TEST_SUITE_BEGIN("shape");

TEST_CASE("shape evaluation") {
    const auto exp_shape = LimitShape::exponential();
    CHECK(exp_shape(0.0) == 1.0);
    CHECK(exp_shape(1.0) == doctest::Approx(0.36787944117144233).epsilon(1e-15));

    const auto tri = LimitShape::triangle();
    CHECK(tri(0.0) == 1.0);
    CHECK(tri(2.0) == 0.0);
    CHECK(tri(1.0) == doctest::Approx(0.5));
    CHECK(tri(5.0) == 0.0);

    const auto tab = LimitShape::tabulated({{0.0, 1.0}, {1.0, 0.5}, {2.0, 0.5}});
    CHECK(tab(0.5) == doctest::Approx(0.75));
    CHECK(tab(1.5) == doctest::Approx(0.5));
    CHECK(tab(2.5) == 0.0);   // clamped beyond the grid
    CHECK(tab(0.0) == 1.0);
    CHECK_THROWS_AS(LimitShape::tabulated({{0.0, 0.5}, {1.0, 0.7}}), std::invalid_argument);
}

TEST_CASE("rescaled boundary, hand-evaluated") {
    const Partition lambda({4, 3, 2, 1});
    const auto by_first = ScalingFactor::by_first_part(lambda);
    CHECK(by_first.value == doctest::Approx(2.5));
    CHECK(rescaled_boundary(lambda, by_first, 0.0) == 1.0);
    CHECK(rescaled_boundary(lambda, by_first, 0.5) == doctest::Approx(0.75));

    // equal scaling values give equal rescaling regardless of mode
    const auto theo = ScalingFactor::theoretical(0.8, Rational(1, 2)); // a = 2.5
    CHECK(theo.value == doctest::Approx(2.5));
    for (double x = 0.0; x < 2.0; x += 0.1)
        CHECK(rescaled_boundary(lambda, theo, x) ==
              rescaled_boundary(lambda, by_first, x));

    CHECK_THROWS_AS(ScalingFactor::by_first_part(WeakComposition({0, 0})),
                    std::domain_error);
    CHECK_THROWS_AS(rescaled_boundary(lambda, by_first, -1.0), std::domain_error);
}

TEST_CASE("by-first-part scaling pins height to exactly 1") {
    RngStream rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::int64_t> parts;
        const int len = 1 + static_cast<int>(rng.next_u64() % 10);
        for (int i = 0; i < len; ++i)
            parts.push_back(1 + static_cast<std::int64_t>(rng.next_u64() % 20));
        std::sort(parts.begin(), parts.end(), std::greater<>());
        const Partition lambda(parts);
        CHECK(rescaled_boundary(lambda, ScalingFactor::by_first_part(lambda), 0.0) == 1.0);
    }
}

TEST_CASE("deviation report basics") {
    const Partition lambda({2, 1, 1});
    const auto a = ScalingFactor::by_first_part(lambda);
    const std::vector<double> grid{0.0};
    const auto report =
        deviation(lambda, a, LimitShape::exponential(), grid, 0.0, 0.0, 0.5);
    CHECK(report.pointwise.size() == 1);
    CHECK(report.pointwise[0].second == 0.0); // height normalized, e^0 = 1
    CHECK(report.fraction_within == 1.0);

    // triangle matches (4,3,2,1) under height-1 scaling at x = 0.5
    const Partition staircase({4, 3, 2, 1});
    const auto a2 = ScalingFactor::by_first_part(staircase);
    CHECK(std::abs(rescaled_boundary(staircase, a2, 0.5) - LimitShape::triangle()(0.5)) ==
          0.0);

    CHECK_THROWS_AS(deviation(lambda, a, LimitShape::exponential(), grid, 1.0, 0.5, 0.1),
                    std::domain_error);
    CHECK_THROWS_AS(deviation(lambda, a, LimitShape::exponential(), grid, 0.0, 1.0, 0.0),
                    std::domain_error);
    const std::vector<double> bad_grid{0.5, 0.5};
    CHECK_THROWS_AS(deviation(lambda, a, LimitShape::exponential(), bad_grid, 0.0, 1.0, 0.1),
                    std::domain_error);
}

TEST_CASE("exact sup dominates any sampled deviation") {
    RngStream rng(2024);
    const auto shape = LimitShape::exponential();
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::int64_t> parts;
        const int len = 1 + static_cast<int>(rng.next_u64() % 15);
        for (int i = 0; i < len; ++i)
            parts.push_back(static_cast<std::int64_t>(rng.next_u64() % 9));
        const WeakComposition alpha(parts);
        if (alpha.total() == 0) continue;
        const auto a = ScalingFactor::by_first_part(alpha);
        const double sup = sup_deviation(alpha, a, shape, 0.0, 3.0);
        for (int i = 0; i <= 300; ++i) {
            const double x = 3.0 * i / 300.0;
            const double dev = std::abs(rescaled_boundary(alpha, a, x) - shape(x));
            CHECK(dev <= sup + 1e-12);
        }
    }
}


TEST_CASE("sorting never increases the sup distance to a decreasing target") {
    RngStream rng(555);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<std::int64_t> parts;
        const int len = 1 + static_cast<int>(rng.next_u64() % 14);
        for (int i = 0; i < len; ++i)
            parts.push_back(static_cast<std::int64_t>(rng.next_u64() % 8));
        const WeakComposition alpha(parts);
        if (alpha.total() == 0) continue;
        const Partition sorted = ord(alpha);
        const auto a = ScalingFactor::by_first_part(alpha);
        const WeakComposition sorted_as_composition(
            std::vector<std::int64_t>(sorted.parts()));

        std::function<double(double)> f;
        std::vector<double> breaks;
        if (trial % 2 == 0) {
            const double amp = 0.2 + rng.next_unit() * 1.8;
            const double tau = 0.2 + rng.next_unit() * 2.8;
            f = [amp, tau](double x) { return amp * std::exp(-x / tau); };
        } else {
            // Random decreasing right-continuous step function: level 1
            // before the first breakpoint, multiplicatively shrinking
            // levels between breakpoints, 0 after the last one.
            const int steps = 1 + static_cast<int>(rng.next_u64() % 5);
            std::vector<double> xs, ys;
            double x = 0.0, y = 1.0;
            for (int s = 0; s < steps; ++s) {
                x += 0.1 + rng.next_unit();
                y *= rng.next_unit();
                xs.push_back(x);
                ys.push_back(s + 1 == steps ? 0.0 : y);
            }
            breaks = xs;
            f = [xs, ys](double v) {
                double level = 1.0;
                for (std::size_t i = 0; i < xs.size(); ++i)
                    if (v >= xs[i]) level = ys[i];
                return level;
            };
        }
        const double before = test_oracle::sup_norm_against(alpha, a, f, breaks);
        const double after =
            test_oracle::sup_norm_against(sorted_as_composition, a, f, breaks);
        CHECK(after <= before + 1e-12);
        ++checked;
    }
    CHECK(checked > 1500);
}

TEST_SUITE_END();
