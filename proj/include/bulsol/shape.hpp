#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bulsol/partition.hpp"
#include "bulsol/rational.hpp"

namespace bulsol {

enum class ScalingMode { ByFirstPart, Theoretical };

/// Diagram scaling a: row lengths shrink by 1/a and heights by a/n, so the
/// rescaled diagram always has area 1. ByFirstPart (a = n / height) pins
/// the rescaled height to exactly 1; Theoretical uses a = 1/(p*q).
struct ScalingFactor {
    ScalingMode mode = ScalingMode::ByFirstPart;
    double value = 1.0;
    // Heights divide by n/a. Keeping the divisor explicit makes the
    // ByFirstPart height exactly 1 at x = 0 (lambda_1 / lambda_1); when 0
    // it is derived from the configuration total.
    double height_divisor = 0.0;

    static ScalingFactor by_first_part(const Partition& config);
    static ScalingFactor by_first_part(const WeakComposition& config);
    static ScalingFactor theoretical(double p, const Rational& q);
};

/// Reference shape the rescaled boundary is compared with.
class LimitShape {
public:
    enum class Kind { Exponential, Triangle, Tabulated };

    static LimitShape exponential() { return LimitShape(Kind::Exponential); }
    static LimitShape triangle() { return LimitShape(Kind::Triangle); }

    /// Piecewise-linear shape through (x, y) samples; x strictly increasing
    /// and non-negative, y non-negative and weakly decreasing. Evaluates to
    /// zero beyond the last sample and extends the first value to the left.
    static LimitShape tabulated(std::vector<std::pair<double, double>> samples);

    /// Exponential -> e^{-x}; Triangle -> max(0, 1 - x/2) (the height-1,
    /// area-1 right triangle); Tabulated -> interpolation as above.
    double operator()(double x) const;

    Kind kind() const { return kind_; }

private:
    explicit LimitShape(Kind kind) : kind_(kind) {}
    Kind kind_;
    std::vector<std::pair<double, double>> samples_;
};

/// Value of the rescaled diagram-boundary function at x >= 0:
/// (a/n) * boundary(config, a*x).
double rescaled_boundary(const Partition& config, const ScalingFactor& a, double x);
double rescaled_boundary(const WeakComposition& config, const ScalingFactor& a, double x);

/// Exact sup of |rescaled boundary - shape| over [lo, hi].
///
/// The rescaled boundary is a right-continuous step function and the shape
/// is weakly decreasing, so the sup over each step piece is attained at the
/// piece ends; every piece overlapping [lo, hi] is checked at both ends
/// (grid-only evaluation would underestimate).
double sup_deviation(const Partition& config, const ScalingFactor& a,
                     const LimitShape& shape, double lo, double hi);
double sup_deviation(const WeakComposition& config, const ScalingFactor& a,
                     const LimitShape& shape, double lo, double hi);

struct DeviationReport {
    std::vector<std::pair<double, double>> pointwise; // (x, |dev|) at grid points
    double sup_on_interval = 0.0;
    std::array<double, 2> interval{0.0, 0.0};
    double epsilon = 0.0;
    double fraction_within = 0.0; // grid points with deviation < epsilon
};

/// Pointwise deviations on the grid plus the exact sup over [lo, hi].
/// grid must be non-empty, strictly increasing and non-negative; eps > 0.
DeviationReport deviation(const Partition& config, const ScalingFactor& a,
                          const LimitShape& shape, std::span<const double> grid,
                          double lo, double hi, double eps);
DeviationReport deviation(const WeakComposition& config, const ScalingFactor& a,
                          const LimitShape& shape, std::span<const double> grid,
                          double lo, double hi, double eps);

} // namespace bulsol
