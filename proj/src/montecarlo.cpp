#include "bulsol/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bulsol/errors.hpp"

namespace bulsol {

Schedule make_schedule(const SolitaireParams& params) {
    const double n = static_cast<double>(params.cards);
    const double p = params.pick_prob;
    const double q = params.proportion.value();
    const double log_n = std::log(n);

    Schedule schedule;
    schedule.burn_in = static_cast<std::uint64_t>(
        std::max(1.0, std::ceil(14.0 * log_n / (p * q))));
    schedule.window_paper = std::ceil(n * n / p);
    schedule.window_practical =
        std::max<std::uint64_t>(10 * schedule.burn_in, 10'000);
    schedule.regime_density = p * q * q * n / (1.0 + log_n);
    schedule.chunk_moves = static_cast<std::int64_t>(
        std::max(1.0, std::ceil(std::pow(schedule.regime_density, -1.0 / 3.0) / p)));
    schedule.union_threshold =
        q * (1.0 + 2.0 * p * static_cast<double>(schedule.chunk_moves));
    return schedule;
}

namespace {

std::vector<double> default_grid() {
    std::vector<double> grid;
    grid.reserve(81);
    for (int i = 0; i <= 80; ++i) grid.push_back(0.05 * i);
    return grid;
}

ScalingFactor scaling_for(const WeakComposition& state, ScalingMode mode,
                          double theoretical_value) {
    if (mode == ScalingMode::ByFirstPart)
        return ScalingFactor::by_first_part(state);
    return ScalingFactor{ScalingMode::Theoretical, theoretical_value};
}

} // namespace

ChainStats run_chain(const WeakComposition& start, const SolitaireParams& params,
                     const ChainRunSpec& spec, std::uint64_t seed,
                     std::uint64_t stream) {
    if (start.total() != params.cards)
        throw std::invalid_argument("run_chain: configuration total does not match n");
    if (spec.stride < 1) throw std::invalid_argument("run_chain: stride must be positive");
    if (spec.snapshot_budget < 1)
        throw std::invalid_argument("run_chain: snapshot budget must be positive");

    ChainStats stats;
    stats.seed = seed;
    stats.stream = stream;
    stats.scaling = spec.scaling;
    stats.theoretical_scale =
        ScalingFactor::theoretical(params.pick_prob, params.proportion).value;
    stats.shape = spec.shape;
    stats.grid = spec.grid.empty() ? default_grid() : spec.grid;

    // Thin the snapshot stride so the stored states stay within budget.
    std::uint64_t stride = spec.stride;
    while (spec.window / stride > spec.snapshot_budget) {
        stride *= 2;
    }

    RngStream rng(seed, stream);
    std::vector<std::int64_t> parts = start.parts();
    MoveOutcome outcome;

    for (std::uint64_t t = 0; t < spec.burn_in; ++t)
        detail::step_in_place(parts, params, rng, nullptr, false);

    stats.pile_count_trace.reserve(spec.window);
    stats.new_pile_trace.reserve(spec.window);
    for (std::uint64_t t = 1; t <= spec.window; ++t) {
        detail::step_in_place(parts, params, rng, &outcome, false);
        stats.pile_count_trace.push_back(static_cast<std::int64_t>(parts.size()));
        stats.new_pile_trace.push_back(outcome.new_pile);
        if (t % stride == 0) {
            stats.snapshot_moves.push_back(t);
            stats.snapshots.emplace_back(parts);
        }
    }
    stats.final_state = WeakComposition(std::move(parts));

    const auto shape_scaling = [&](const WeakComposition& state) {
        return scaling_for(state, spec.scaling, stats.theoretical_scale);
    };
    stats.final_report =
        deviation(stats.final_state, shape_scaling(stats.final_state), spec.shape,
                  stats.grid, spec.interval_lo, spec.interval_hi, spec.epsilon);

    stats.reports.reserve(stats.snapshots.size());
    std::vector<std::size_t> within_at_grid(stats.grid.size(), 0);
    double sup_sum = 0.0;
    for (const auto& snapshot : stats.snapshots) {
        stats.reports.push_back(deviation(snapshot, shape_scaling(snapshot), spec.shape,
                                          stats.grid, spec.interval_lo,
                                          spec.interval_hi, spec.epsilon));
        const auto& report = stats.reports.back();
        sup_sum += report.sup_on_interval;
        stats.max_sup = std::max(stats.max_sup, report.sup_on_interval);
        for (std::size_t g = 0; g < stats.grid.size(); ++g)
            if (report.pointwise[g].second < spec.epsilon) ++within_at_grid[g];
    }
    if (!stats.reports.empty()) {
        stats.mean_sup = sup_sum / static_cast<double>(stats.reports.size());
        stats.fraction_within_at_grid.resize(stats.grid.size());
        for (std::size_t g = 0; g < stats.grid.size(); ++g)
            stats.fraction_within_at_grid[g] =
                static_cast<double>(within_at_grid[g]) /
                static_cast<double>(stats.reports.size());
    }
    return stats;
}

std::vector<ChainStats> run_ensemble(const WeakComposition& start,
                                     const SolitaireParams& params,
                                     const ChainRunSpec& spec,
                                     std::span<const std::uint64_t> seeds,
                                     Exec mode) {
    std::vector<ChainStats> all(seeds.size());
    std::exception_ptr failure;
    parallel_for(seeds.size(), mode, [&](std::size_t i) {
        try {
            all[i] = run_chain(start, params, spec, seeds[i]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return all;
}

double deviation_timeseries(const ChainStats& stats, double eps, double lo, double hi) {
    if (stats.snapshots.empty())
        throw std::domain_error("deviation_timeseries: no recorded states");
    if (eps < 0.0) throw std::domain_error("deviation_timeseries: epsilon must be >= 0");
    std::size_t within = 0;
    for (const auto& snapshot : stats.snapshots) {
        const ScalingFactor a =
            scaling_for(snapshot, stats.scaling, stats.theoretical_scale);
        if (sup_deviation(snapshot, a, stats.shape, lo, hi) < eps) ++within;
    }
    return static_cast<double>(within) / static_cast<double>(stats.snapshots.size());
}

std::vector<std::int64_t> empirical_state_counts(const SolitaireParams& params,
                                                 const StateIndex& states,
                                                 std::uint64_t samples,
                                                 std::uint64_t burn_in,
                                                 std::uint64_t seed) {
    if (states.total() != params.cards)
        throw std::invalid_argument("empirical counts: state space does not match n");
    std::vector<std::int64_t> counts(states.size(), 0);
    RngStream rng(seed);
    std::vector<std::int64_t> parts = triangular_start(params.cards).parts();
    std::vector<std::int64_t> sorted;
    for (std::uint64_t t = 0; t < burn_in; ++t)
        detail::step_in_place(parts, params, rng, nullptr, false);
    for (std::uint64_t t = 0; t < samples; ++t) {
        detail::step_in_place(parts, params, rng, nullptr, false);
        sorted.clear();
        for (const auto v : parts)
            if (v > 0) sorted.push_back(v);
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        ++counts[states.index_of(sorted)];
    }
    return counts;
}

std::uint64_t consumption_time(const Partition& start, const SolitaireParams& params,
                               std::uint64_t max_moves, std::uint64_t seed) {
    const auto& initial = start.parts();
    const std::size_t tracked =
        static_cast<std::size_t>(std::max_element(initial.begin(), initial.end()) -
                                 initial.begin());
    RngStream rng(seed);
    std::vector<std::int64_t> parts = initial;
    for (std::uint64_t t = 1; t <= max_moves; ++t) {
        detail::step_in_place(parts, params, rng, nullptr, false);
        const std::size_t bowl = tracked + static_cast<std::size_t>(t);
        if (bowl >= parts.size() || parts[bowl] == 0) return t;
    }
    return max_moves + 1;
}

std::vector<RegimeRow> regime_scan(std::span<const RegimePoint> points,
                                   const RegimeScanConfig& config) {
    std::vector<RegimeRow> rows(points.size());
    parallel_for(points.size(), config.mode, [&](std::size_t i) {
        const auto& point = points[i];
        const SolitaireParams params(point.n, point.p, point.q);
        const double q = point.q.value();
        const double log_n = std::log(static_cast<double>(point.n));

        RegimeRow row;
        row.point = point;
        row.classification = point.p * q * q * static_cast<double>(point.n);
        row.classification_log = row.classification / log_n;

        std::uint64_t moves = config.moves;
        if (moves == 0)
            moves = static_cast<std::uint64_t>(std::min(
                50'000.0, std::max(200.0, std::ceil(2.0 * log_n / (point.p * q)))));

        const WeakComposition start(
            std::vector<std::int64_t>(triangular_start(point.n).parts()));
        double dev_exp = 0.0, dev_tri = 0.0;
        for (std::uint64_t s = 0; s < config.seeds; ++s) {
            RngStream rng(config.master_seed, /*stream=*/i * config.seeds + s);
            const auto final_state = play(start, params, moves, rng).final_state;
            const auto a = ScalingFactor::by_first_part(final_state);
            dev_exp += sup_deviation(final_state, a, LimitShape::exponential(),
                                     config.interval_lo, config.interval_hi);
            dev_tri += sup_deviation(final_state, a, LimitShape::triangle(),
                                     config.interval_lo, config.interval_hi);
        }
        row.dev_exponential = dev_exp / static_cast<double>(config.seeds);
        row.dev_triangle = dev_tri / static_cast<double>(config.seeds);

        row.neither_fits =
            std::min(row.dev_exponential, row.dev_triangle) > config.fit_epsilon;
        if (std::abs(row.dev_exponential - row.dev_triangle) <= config.tie_window)
            row.label = "ambiguous";
        else
            row.label = row.dev_exponential < row.dev_triangle ? "exponential" : "triangle";
        rows[i] = std::move(row);
    });
    return rows;
}

} // namespace bulsol
