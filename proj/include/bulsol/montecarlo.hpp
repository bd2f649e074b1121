#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bulsol/exact.hpp"
#include "bulsol/parallel.hpp"
#include "bulsol/partition.hpp"
#include "bulsol/shape.hpp"
#include "bulsol/solitaire.hpp"

namespace bulsol {

/// Burn-in and chunking constants for B(n, p, q). Logs are natural.
struct Schedule {
    std::uint64_t burn_in = 1;          // ceil(14 ln(n) / (p q)), at least 1
    double window_paper = 1.0;          // ceil(n^2 / p); reported, far too big to run
    std::uint64_t window_practical = 1; // max(10 * burn_in, 10^4)
    std::int64_t chunk_moves = 1;       // ceil(rho^(-1/3) / p), at least 1
    double regime_density = 0.0;        // rho = p q^2 n / (1 + ln n)
    double union_threshold = 0.0;       // s = q (1 + 2 p r)
};

Schedule make_schedule(const SolitaireParams& params);

/// Run configuration for a single chain: burn_in unrecorded moves, then
/// `window` recorded moves. Traces get one entry per recorded move;
/// snapshots are taken every `stride` recorded moves and auto-thinned so
/// at most snapshot_budget states are kept.
struct ChainRunSpec {
    std::uint64_t burn_in = 0;
    std::uint64_t window = 0;
    std::uint64_t stride = 1;
    std::size_t snapshot_budget = 1000;
    ScalingMode scaling = ScalingMode::Theoretical;
    LimitShape shape = LimitShape::exponential();
    std::vector<double> grid;          // empty = 0..4 step 0.05
    double interval_lo = 0.0;
    double interval_hi = 3.0;
    double epsilon = 0.1;
};

struct ChainStats {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    WeakComposition final_state;
    DeviationReport final_report;

    std::vector<std::uint64_t> snapshot_moves;     // recorded-move indices (1-based)
    std::vector<WeakComposition> snapshots;
    std::vector<DeviationReport> reports;          // per snapshot

    std::vector<std::int64_t> pile_count_trace;    // N(alpha) per recorded move
    std::vector<std::int64_t> new_pile_trace;      // alpha_1 per recorded move

    double mean_sup = 0.0;
    double max_sup = 0.0;
    std::vector<double> fraction_within_at_grid;   // per grid x, over snapshots

    // context for recomputing deviations from stored snapshots
    ScalingMode scaling = ScalingMode::Theoretical;
    double theoretical_scale = 1.0;
    LimitShape shape = LimitShape::exponential();
    std::vector<double> grid;
};

ChainStats run_chain(const WeakComposition& start, const SolitaireParams& params,
                     const ChainRunSpec& spec, std::uint64_t seed,
                     std::uint64_t stream = 0);

/// Independent chains, one per seed; Exec::Parallel distributes them over
/// threads with results identical to the serial order.
std::vector<ChainStats> run_ensemble(const WeakComposition& start,
                                     const SolitaireParams& params,
                                     const ChainRunSpec& spec,
                                     std::span<const std::uint64_t> seeds,
                                     Exec mode = Exec::Serial);

/// Fraction of stored snapshots whose exact sup-deviation on [lo, hi] is
/// below eps. Monotone non-decreasing in eps.
double deviation_timeseries(const ChainStats& stats, double eps, double lo, double hi);

/// Post-burn-in visit counts of the sorted states, aligned with `states`.
std::vector<std::int64_t> empirical_state_counts(const SolitaireParams& params,
                                                 const StateIndex& states,
                                                 std::uint64_t samples,
                                                 std::uint64_t burn_in,
                                                 std::uint64_t seed);

/// Moves until the bowl that initially held the largest pile is emptied
/// (tracked through the per-move bowl prepends); max_moves + 1 when the
/// pile survives the whole run.
std::uint64_t consumption_time(const Partition& start, const SolitaireParams& params,
                               std::uint64_t max_moves, std::uint64_t seed);

struct RegimePoint {
    std::int64_t n = 0;
    double p = 0.0;
    Rational q;
};

struct RegimeScanConfig {
    std::uint64_t moves = 0;        // 0 = auto: ceil(2 ln(n)/(p q)), capped at 50000
    std::uint64_t seeds = 3;
    std::uint64_t master_seed = 1;
    double interval_lo = 0.0;
    double interval_hi = 3.0;
    double fit_epsilon = 0.05;      // neither shape closer than this => intermediate
    double tie_window = 0.01;       // |exp - tri| within this => ambiguous
    Exec mode = Exec::Serial;
};

struct RegimeRow {
    RegimePoint point;
    double classification = 0.0;      // p q^2 n
    double classification_log = 0.0;  // p q^2 n / ln(n)
    double dev_exponential = 0.0;     // seed-averaged sup, height-1 scaling
    double dev_triangle = 0.0;
    std::string label;                // best fit: exponential | triangle | ambiguous
    bool neither_fits = false;        // both deviations above fit_epsilon
};

/// Comparison table only: conjectured regimes are reported, never asserted.
std::vector<RegimeRow> regime_scan(std::span<const RegimePoint> points,
                                   const RegimeScanConfig& config);

} // namespace bulsol
