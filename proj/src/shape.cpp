#include "bulsol/shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bulsol {

namespace {

std::int64_t max_part(const std::vector<std::int64_t>& parts) {
    std::int64_t best = 0;
    for (const auto v : parts) best = std::max(best, v);
    return best;
}

ScalingFactor make_by_first_part(std::int64_t total, std::int64_t height) {
    if (height <= 0)
        throw std::domain_error("scaling: by-first-part requires a nonempty configuration");
    return ScalingFactor{ScalingMode::ByFirstPart,
                         static_cast<double>(total) / static_cast<double>(height),
                         static_cast<double>(height)};
}

double boundary_at(std::span<const std::int64_t> parts, double x) {
    if (x >= static_cast<double>(parts.size())) return 0.0;
    return static_cast<double>(parts[static_cast<std::size_t>(x)]);
}

double divisor_of(const ScalingFactor& a, std::int64_t total) {
    return a.height_divisor > 0.0 ? a.height_divisor
                                  : static_cast<double>(total) / a.value;
}

double rescaled_at(std::span<const std::int64_t> parts, std::int64_t total,
                   const ScalingFactor& a, double x) {
    if (x < 0.0 || std::isnan(x))
        throw std::domain_error("rescaled_boundary: x must be non-negative");
    if (a.value <= 0.0) throw std::domain_error("rescaled_boundary: scaling must be positive");
    if (total == 0) return 0.0;
    return boundary_at(parts, a.value * x) / divisor_of(a, total);
}

// Sup of |step - shape| over [lo, hi]. Pieces are [i/a, (i+1)/a) with value
// parts[i]*(a/n), then 0 on [N/a, inf). The shape is weakly decreasing, so
// per piece the two ends bound the deviation.
double sup_deviation_impl(std::span<const std::int64_t> parts, std::int64_t total,
                          const ScalingFactor& a, const LimitShape& shape,
                          double lo, double hi) {
    if (lo > hi) throw std::domain_error("sup_deviation: interval must satisfy lo <= hi");
    if (lo < 0.0) throw std::domain_error("sup_deviation: interval must be non-negative");
    if (total == 0) return std::max(std::abs(shape(lo)), std::abs(shape(hi)));

    const double inv_a = 1.0 / a.value;
    const double divisor = divisor_of(a, total);
    const auto n_parts = static_cast<std::int64_t>(parts.size());

    const double first_piece = std::floor(lo * a.value);
    const std::int64_t first =
        first_piece >= static_cast<double>(n_parts)
            ? n_parts
            : std::max<std::int64_t>(0, static_cast<std::int64_t>(first_piece));

    double sup = 0.0;
    for (std::int64_t i = first; i <= n_parts; ++i) {
        const double piece_lo = static_cast<double>(i) * inv_a;
        const double piece_hi = (i == n_parts)
                                    ? hi
                                    : static_cast<double>(i + 1) * inv_a;
        const double xl = std::max(lo, piece_lo);
        const double xr = std::min(hi, piece_hi);
        if (xl > hi) break;
        if (xl > xr) continue; // piece entirely left of [lo, hi] after clamping
        const double value =
            (i == n_parts) ? 0.0
                           : static_cast<double>(parts[static_cast<std::size_t>(i)]) / divisor;
        sup = std::max(sup, std::abs(value - shape(xl)));
        sup = std::max(sup, std::abs(value - shape(xr)));
        if (piece_hi >= hi) break;
    }
    return sup;
}

DeviationReport deviation_impl(std::span<const std::int64_t> parts, std::int64_t total,
                               const ScalingFactor& a, const LimitShape& shape,
                               std::span<const double> grid, double lo, double hi,
                               double eps) {
    if (grid.empty()) throw std::domain_error("deviation: grid must be non-empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0) throw std::domain_error("deviation: grid must be non-negative");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw std::domain_error("deviation: grid must be strictly increasing");
    }
    if (eps <= 0.0) throw std::domain_error("deviation: epsilon must be positive");
    if (lo > hi) throw std::domain_error("deviation: interval must satisfy lo <= hi");

    DeviationReport report;
    report.interval = {lo, hi};
    report.epsilon = eps;
    report.pointwise.reserve(grid.size());
    std::size_t within = 0;
    for (const double x : grid) {
        const double dev = std::abs(rescaled_at(parts, total, a, x) - shape(x));
        report.pointwise.emplace_back(x, dev);
        if (dev < eps) ++within;
    }
    report.fraction_within = static_cast<double>(within) / static_cast<double>(grid.size());
    report.sup_on_interval = sup_deviation_impl(parts, total, a, shape, lo, hi);
    return report;
}

} // namespace

ScalingFactor ScalingFactor::by_first_part(const Partition& config) {
    return make_by_first_part(config.total(), config.part(1));
}

ScalingFactor ScalingFactor::by_first_part(const WeakComposition& config) {
    return make_by_first_part(config.total(), max_part(config.parts()));
}

ScalingFactor ScalingFactor::theoretical(double p, const Rational& q) {
    if (p <= 0.0 || !q.positive())
        throw std::domain_error("scaling: theoretical requires p > 0 and q > 0");
    return ScalingFactor{ScalingMode::Theoretical, 1.0 / (p * q.value())};
}

LimitShape LimitShape::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.empty())
        throw std::invalid_argument("limit shape: tabulated samples must be non-empty");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].first < 0.0 || samples[i].second < 0.0)
            throw std::invalid_argument("limit shape: samples must be non-negative");
        if (i > 0) {
            if (samples[i].first <= samples[i - 1].first)
                throw std::invalid_argument("limit shape: sample xs must be increasing");
            if (samples[i].second > samples[i - 1].second)
                throw std::invalid_argument("limit shape: sample ys must be weakly decreasing");
        }
    }
    LimitShape shape(Kind::Tabulated);
    shape.samples_ = std::move(samples);
    return shape;
}

double LimitShape::operator()(double x) const {
    switch (kind_) {
    case Kind::Exponential:
        return std::exp(-x);
    case Kind::Triangle:
        return std::max(0.0, 1.0 - 0.5 * x);
    case Kind::Tabulated: {
        if (x <= samples_.front().first) return samples_.front().second;
        if (x > samples_.back().first) return 0.0;
        const auto it = std::lower_bound(
            samples_.begin(), samples_.end(), x,
            [](const std::pair<double, double>& s, double v) { return s.first < v; });
        const auto& [x1, y1] = *it;
        if (x1 == x) return y1;
        const auto& [x0, y0] = *(it - 1);
        const double t = (x - x0) / (x1 - x0);
        return y0 + t * (y1 - y0);
    }
    }
    return 0.0;
}

double rescaled_boundary(const Partition& config, const ScalingFactor& a, double x) {
    return rescaled_at(config.parts(), config.total(), a, x);
}

double rescaled_boundary(const WeakComposition& config, const ScalingFactor& a, double x) {
    return rescaled_at(config.parts(), config.total(), a, x);
}

double sup_deviation(const Partition& config, const ScalingFactor& a,
                     const LimitShape& shape, double lo, double hi) {
    return sup_deviation_impl(config.parts(), config.total(), a, shape, lo, hi);
}

double sup_deviation(const WeakComposition& config, const ScalingFactor& a,
                     const LimitShape& shape, double lo, double hi) {
    return sup_deviation_impl(config.parts(), config.total(), a, shape, lo, hi);
}

DeviationReport deviation(const Partition& config, const ScalingFactor& a,
                          const LimitShape& shape, std::span<const double> grid,
                          double lo, double hi, double eps) {
    return deviation_impl(config.parts(), config.total(), a, shape, grid, lo, hi, eps);
}

DeviationReport deviation(const WeakComposition& config, const ScalingFactor& a,
                          const LimitShape& shape, std::span<const double> grid,
                          double lo, double hi, double eps) {
    return deviation_impl(config.parts(), config.total(), a, shape, grid, lo, hi, eps);
}

} // namespace bulsol
