#include "bulsol/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "bulsol/errors.hpp"
#include "bulsol/rng.hpp"
#include "bulsol/stats.hpp"

namespace bulsol {

std::size_t StateIndex::VecHash::operator()(const std::vector<std::int64_t>& v) const {
    std::uint64_t h = 0x243F6A8885A308D3ULL ^ (v.size() * 0x9E3779B97F4A7C15ULL);
    for (const auto x : v)
        h = mix64(h ^ static_cast<std::uint64_t>(x));
    return static_cast<std::size_t>(h);
}

StateIndex StateIndex::enumerate(std::int64_t n, std::int64_t cap) {
    if (n < 1) throw std::invalid_argument("state index: n must be at least 1");
    if (n > cap)
        throw CapacityError("state index: n = " + std::to_string(n) +
                            " exceeds the configured cap of " + std::to_string(cap));
    StateIndex index;
    index.total_ = n;
    std::vector<std::int64_t> prefix;
    // Descending-first recursion emits reverse-lexicographic order.
    std::function<void(std::int64_t, std::int64_t)> emit =
        [&](std::int64_t remaining, std::int64_t max_part) {
            if (remaining == 0) {
                index.lookup_.emplace(prefix, index.states_.size());
                index.states_.emplace_back(Partition(prefix));
                return;
            }
            for (std::int64_t part = std::min(remaining, max_part); part >= 1; --part) {
                prefix.push_back(part);
                emit(remaining - part, part);
                prefix.pop_back();
            }
        };
    emit(n, n);
    return index;
}

std::size_t StateIndex::index_of(std::span<const std::int64_t> parts) const {
    thread_local std::vector<std::int64_t> key;
    key.assign(parts.begin(), parts.end());
    const auto it = lookup_.find(key);
    if (it == lookup_.end())
        throw std::invalid_argument("state index: partition not in the state space");
    return it->second;
}

SparseRow transition_row(const Partition& lambda, const SolitaireParams& params,
                         const StateIndex& states, std::uint64_t work_budget) {
    if (lambda.total() != states.total())
        throw std::invalid_argument("transition_row: partition total does not match state space");

    const auto& piles = lambda.parts();
    const std::size_t n_piles = piles.size();

    std::vector<std::int64_t> cand(n_piles);
    double terms = 1.0;
    for (std::size_t i = 0; i < n_piles; ++i) {
        cand[i] = candidates(piles[i], params.proportion);
        terms *= static_cast<double>(cand[i] + 1);
    }
    if (terms > static_cast<double>(work_budget))
        throw CapacityError("transition_row: enumeration of " + std::to_string(terms) +
                            " pick vectors exceeds the work budget of " +
                            std::to_string(work_budget));

    std::vector<std::vector<double>> pmf(n_piles);
    for (std::size_t i = 0; i < n_piles; ++i)
        pmf[i] = binomial_pmf_table(cand[i], params.pick_prob);

    std::vector<double> dense(states.size(), 0.0);
    std::vector<std::int64_t> remainder(piles.begin(), piles.end());
    std::vector<std::int64_t> scratch;

    std::function<void(std::size_t, double, std::int64_t)> walk =
        [&](std::size_t pile, double weight, std::int64_t taken) {
            if (pile == n_piles) {
                scratch.clear();
                for (const auto v : remainder)
                    if (v > 0) scratch.push_back(v);
                if (taken > 0) scratch.push_back(taken);
                std::sort(scratch.begin(), scratch.end(), std::greater<>());
                dense[states.index_of(scratch)] += weight;
                return;
            }
            for (std::int64_t x = 0; x <= cand[pile]; ++x) {
                const double w = pmf[pile][static_cast<std::size_t>(x)];
                if (w == 0.0) continue;
                remainder[pile] = piles[pile] - x;
                walk(pile + 1, weight * w, taken + x);
            }
            remainder[pile] = piles[pile];
        };
    walk(0, 1.0, 0);

    SparseRow row;
    for (std::size_t j = 0; j < dense.size(); ++j)
        if (dense[j] != 0.0) row.emplace_back(static_cast<std::uint32_t>(j), dense[j]);
    return row;
}

TransitionKernel build_kernel(StateIndex states, const SolitaireParams& params,
                              Exec mode, std::uint64_t work_budget) {
    TransitionKernel kernel{std::move(states), {}, params};
    kernel.rows.resize(kernel.states.size());
    std::exception_ptr failure;
    parallel_for(kernel.states.size(), mode, [&](std::size_t i) {
        try {
            kernel.rows[i] =
                transition_row(kernel.states.state(i), params, kernel.states, work_budget);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return kernel;
}

double max_row_sum_error(const TransitionKernel& kernel) {
    double worst = 0.0;
    for (const auto& row : kernel.rows) {
        double sum = 0.0;
        for (const auto& [j, p] : row) sum += p;
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

namespace {

double stationarity_residual(const TransitionKernel& kernel, const std::vector<double>& pi) {
    std::vector<double> next(pi.size(), 0.0);
    for (std::size_t i = 0; i < kernel.rows.size(); ++i)
        for (const auto& [j, p] : kernel.rows[i]) next[j] += pi[i] * p;
    double res = 0.0;
    for (std::size_t j = 0; j < pi.size(); ++j) res += std::abs(next[j] - pi[j]);
    return res;
}

bool check_irreducible(const TransitionKernel& kernel) {
    const std::size_t m = kernel.rows.size();
    std::vector<std::vector<std::uint32_t>> back(m);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [j, p] : kernel.rows[i])
            if (p > 0.0) back[j].push_back(static_cast<std::uint32_t>(i));

    const auto reach = [&](bool forward) {
        std::vector<char> seen(m, 0);
        std::vector<std::uint32_t> queue{0};
        seen[0] = 1;
        while (!queue.empty()) {
            const auto i = queue.back();
            queue.pop_back();
            if (forward) {
                for (const auto& [j, p] : kernel.rows[i])
                    if (p > 0.0 && !seen[j]) { seen[j] = 1; queue.push_back(j); }
            } else {
                for (const auto j : back[i])
                    if (!seen[j]) { seen[j] = 1; queue.push_back(j); }
            }
        }
        return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1)) == m;
    };
    return reach(true) && reach(false);
}

// (P^T - I) pi = 0 with the first equation replaced by sum(pi) = 1;
// Gaussian elimination with partial pivoting. Small chains are well
// conditioned so nothing fancier is needed.
std::vector<double> solve_dense(const TransitionKernel& kernel) {
    const std::size_t m = kernel.rows.size();
    std::vector<double> a(m * m, 0.0);
    std::vector<double> b(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) a[j] = 1.0; // normalization row
    b[0] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [j, p] : kernel.rows[i]) {
            if (j == 0) continue;
            a[static_cast<std::size_t>(j) * m + i] += p;
        }
    }
    for (std::size_t j = 1; j < m; ++j) a[j * m + j] -= 1.0;

    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[perm[col] * m + col]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double v = std::abs(a[perm[r] * m + col]);
            if (v > best) { best = v; pivot = r; }
        }
        if (best == 0.0)
            throw std::runtime_error("stationary: singular system (chain not irreducible?)");
        std::swap(perm[col], perm[pivot]);
        const double* prow = &a[perm[col] * m];
        const double pv = prow[col];
        for (std::size_t r = col + 1; r < m; ++r) {
            double* row = &a[perm[r] * m];
            const double f = row[col] / pv;
            if (f == 0.0) continue;
            row[col] = 0.0;
            for (std::size_t c = col + 1; c < m; ++c) row[c] -= f * prow[c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    std::vector<double> x(m, 0.0);
    for (std::size_t col = m; col-- > 0;) {
        const double* row = &a[perm[col] * m];
        double acc = b[perm[col]];
        for (std::size_t c = col + 1; c < m; ++c) acc -= row[c] * x[c];
        x[col] = acc / row[col];
    }
    return x;
}

std::vector<double> solve_power(const TransitionKernel& kernel, double& residual_out) {
    const std::size_t m = kernel.rows.size();
    std::vector<double> pi(m, 1.0 / static_cast<double>(m));
    std::vector<double> next(m, 0.0);
    double residual = 1.0;
    for (std::uint64_t iter = 0; iter < 1'000'000; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (const auto& [j, p] : kernel.rows[i]) next[j] += pi[i] * p;
        double sum = 0.0;
        for (const auto v : next) sum += v;
        for (auto& v : next) v /= sum;
        residual = 0.0;
        for (std::size_t j = 0; j < m; ++j) residual += std::abs(next[j] - pi[j]);
        pi.swap(next);
        if (residual <= 1e-12) {
            residual_out = residual;
            return pi;
        }
    }
    throw ConvergenceError("stationary: power iteration did not reach 1e-12 within 1e6 sweeps"
                           " (last residual " + std::to_string(residual) + ")",
                           residual);
}

} // namespace

StationaryDistribution stationary(const TransitionKernel& kernel, StationaryMethod method) {
    if (kernel.params.pick_prob >= 1.0)
        throw std::domain_error(
            "stationary: p = 1 rejected; the deterministic chain may be periodic or "
            "reducible, so no unique stationary distribution is guaranteed");
    if (kernel.rows.empty()) throw std::invalid_argument("stationary: empty kernel");

    StationaryDistribution dist;
    const bool dense = method == StationaryMethod::Dense ||
                       (method == StationaryMethod::Auto && kernel.rows.size() <= 5000);
    if (dense) {
        dist.probabilities = solve_dense(kernel);
        dist.method = "dense-lu";
        // Clip the tiny negative rounding residue a direct solve can leave.
        double sum = 0.0;
        for (auto& v : dist.probabilities) {
            if (v < 0.0 && v > -1e-13) v = 0.0;
            sum += v;
        }
        for (auto& v : dist.probabilities) v /= sum;
        dist.residual = stationarity_residual(kernel, dist.probabilities);
    } else {
        double residual = 0.0;
        dist.probabilities = solve_power(kernel, residual);
        dist.method = "power-iteration";
        dist.residual = stationarity_residual(kernel, dist.probabilities);
    }
    dist.irreducible_reported = check_irreducible(kernel);
    return dist;
}

double stationary_shape_mass(const StationaryDistribution& dist,
                             const StateIndex& states, const LimitShape& shape,
                             ScalingMode mode, const SolitaireParams& params,
                             double eps, double x) {
    if (eps <= 0.0) throw std::domain_error("shape mass: epsilon must be positive");
    if (x < 0.0) throw std::domain_error("shape mass: x must be non-negative");
    if (dist.probabilities.size() != states.size())
        throw std::invalid_argument("shape mass: distribution does not match state space");

    const double target = shape(x);
    double mass = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& lambda = states.state(i);
        const ScalingFactor a = mode == ScalingMode::ByFirstPart
                                    ? ScalingFactor::by_first_part(lambda)
                                    : ScalingFactor::theoretical(params.pick_prob,
                                                                 params.proportion);
        if (std::abs(rescaled_boundary(lambda, a, x) - target) < eps)
            mass += dist.probabilities[i];
    }
    return mass;
}

} // namespace bulsol
