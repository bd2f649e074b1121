#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bulsol {

/// P(X = k) for X ~ Bin(n, p), computed through log-gamma.
double binomial_pmf(std::int64_t n, double p, std::int64_t k);

/// Full pmf table pmf[0..n] built by the ratio recurrence (cheap and
/// accurate for the small n used in exact kernels).
std::vector<double> binomial_pmf_table(std::int64_t n, double p);

/// Exact two-sided tail P(|X - np| >= gamma) for X ~ Bin(n, p).
double binomial_two_sided_tail(std::int64_t n, double p, double gamma);

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double regularized_gamma_q(double a, double x);

/// Survival function of the chi-square distribution with df degrees.
double chi_square_sf(double statistic, int df);

struct ChiSquareResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    std::size_t bins = 0;
};

/// Pearson goodness-of-fit. Adjacent cells are pooled until every bin's
/// expected count reaches min_expected. observed and expected must be
/// aligned and of equal length; expected is scaled to the observed total.
ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed,
                               std::span<const double> expected,
                               double min_expected = 5.0);

/// 0.5 * sum |a_i - b_i|
double total_variation(std::span<const double> a, std::span<const double> b);

} // namespace bulsol
