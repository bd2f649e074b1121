#include "bulsol/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace bulsol {

double binomial_pmf(std::int64_t n, double p, std::int64_t k) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    const double lp = std::lgamma(static_cast<double>(n) + 1.0) -
                      std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0) +
                      static_cast<double>(k) * std::log(p) +
                      static_cast<double>(n - k) * std::log1p(-p);
    return std::exp(lp);
}

std::vector<double> binomial_pmf_table(std::int64_t n, double p) {
    if (n < 0) throw std::invalid_argument("binomial_pmf_table: negative n");
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    if (p <= 0.0) { pmf[0] = 1.0; return pmf; }
    if (p >= 1.0) { pmf[static_cast<std::size_t>(n)] = 1.0; return pmf; }
    // Start at the mode to dodge underflow for skewed p.
    const auto mode = static_cast<std::int64_t>(std::floor((n + 1) * p));
    pmf[static_cast<std::size_t>(mode)] = binomial_pmf(n, p, mode);
    const double odds = p / (1.0 - p);
    for (std::int64_t k = mode; k < n; ++k)
        pmf[static_cast<std::size_t>(k + 1)] =
            pmf[static_cast<std::size_t>(k)] * static_cast<double>(n - k) /
            static_cast<double>(k + 1) * odds;
    for (std::int64_t k = mode; k > 0; --k)
        pmf[static_cast<std::size_t>(k - 1)] =
            pmf[static_cast<std::size_t>(k)] * static_cast<double>(k) /
            (static_cast<double>(n - k + 1) * odds);
    return pmf;
}

double binomial_two_sided_tail(std::int64_t n, double p, double gamma) {
    const double mu = static_cast<double>(n) * p;
    double tail = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        if (std::abs(static_cast<double>(k) - mu) >= gamma)
            tail += binomial_pmf(n, p, k);
    }
    return tail;
}

namespace {

// Q(a,x) by series for x < a+1, Lentz continued fraction otherwise.
double gamma_q_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    // P(a,x) = series * exp(-x + a ln x - lgamma(a))
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0) throw std::domain_error("regularized_gamma_q: a must be positive");
    if (x < 0.0) throw std::domain_error("regularized_gamma_q: x must be non-negative");
    if (x == 0.0) return 1.0;
    return (x < a + 1.0) ? gamma_q_series(a, x) : gamma_q_contfrac(a, x);
}

double chi_square_sf(double statistic, int df) {
    if (df <= 0) throw std::domain_error("chi_square_sf: df must be positive");
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * df, 0.5 * statistic);
}

ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed,
                               std::span<const double> expected,
                               double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: mismatched or empty inputs");

    std::int64_t total_obs = 0;
    double total_exp = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        total_obs += observed[i];
        total_exp += expected[i];
    }
    if (total_obs <= 0 || total_exp <= 0.0)
        throw std::invalid_argument("chi_square_gof: empty sample");
    const double scale = static_cast<double>(total_obs) / total_exp;

    // Pool left to right; fold a trailing underweight bin into its neighbor.
    std::vector<double> obs_bins, exp_bins;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += static_cast<double>(observed[i]);
        e_acc += expected[i] * scale;
        if (e_acc >= min_expected) {
            obs_bins.push_back(o_acc);
            exp_bins.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0) {
        if (exp_bins.empty()) {
            obs_bins.push_back(o_acc);
            exp_bins.push_back(e_acc);
        } else {
            obs_bins.back() += o_acc;
            exp_bins.back() += e_acc;
        }
    }

    ChiSquareResult result;
    result.bins = obs_bins.size();
    for (std::size_t i = 0; i < obs_bins.size(); ++i) {
        const double diff = obs_bins[i] - exp_bins[i];
        result.statistic += diff * diff / exp_bins[i];
    }
    result.df = static_cast<int>(obs_bins.size()) - 1;
    result.p_value = result.df > 0 ? chi_square_sf(result.statistic, result.df) : 1.0;
    return result;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("total_variation: size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return 0.5 * sum;
}

} // namespace bulsol
