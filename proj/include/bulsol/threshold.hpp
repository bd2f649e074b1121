#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bulsol/parallel.hpp"
#include "bulsol/rational.hpp"
#include "bulsol/rng.hpp"

namespace bulsol {

/// Pick indicators X_{i,k} for card labels i = 1..labels and moves
/// k = 1..moves, P(X = 1) = p. Entries are either derived lazily from a
/// counter-based stream keyed by (seed, i, k), or materialized from an
/// explicit bit pattern for exhaustive small-grid runs. Both paths feed
/// the same process code.
class BernoulliMatrix {
public:
    BernoulliMatrix(std::int64_t labels, std::int64_t moves, double p,
                    std::uint64_t seed, std::uint64_t stream = 0);

    /// Bit (i, k) of `bits` is at position (k-1)*labels + (i-1);
    /// requires labels*moves <= 64.
    static BernoulliMatrix from_bits(std::int64_t labels, std::int64_t moves,
                                     std::uint64_t bits);

    bool entry(std::int64_t label, std::int64_t move) const;

    std::int64_t labels() const { return labels_; }
    std::int64_t moves() const { return moves_; }

private:
    BernoulliMatrix() = default;
    std::int64_t labels_ = 0;
    std::int64_t moves_ = 0;
    bool lazy_ = true;
    double p_ = 0.0;
    RngStream source_{0};
    std::uint64_t bits_ = 0;
};

/// Fixed-threshold comparison process: move k removes card i when
/// X_{i,k} = 1 and i <= cutoff, where cutoff = ceil(s * initial_size)
/// (clamped to the pile; labels above the cutoff are never touched).
struct ThresholdProcessState {
    std::int64_t initial_size = 0;             // A_1
    double threshold = 0.0;                    // s as requested
    std::int64_t cutoff = 0;                   // effective integer cutoff
    bool threshold_rounded = false;            // s * A_1 was not an integer
    std::vector<std::int64_t> sizes;           // A_k for k = 1..r+1
    std::int64_t surviving_low = 0;            // B: remaining labels <= cutoff
    std::vector<std::int64_t> remaining;       // surviving labels, ascending
};

/// The pile evolution itself: move k removes card i when X_{i,k} = 1 and
/// i is among the ceil(q * A_k) top-most (lowest-label) remaining cards.
struct QProcessState {
    std::int64_t initial_size = 0;
    Rational q;
    std::vector<std::int64_t> sizes;           // A_k for k = 1..r+1
    std::vector<std::int64_t> remaining;
};

ThresholdProcessState run_threshold(std::int64_t initial_size, double s,
                                    const BernoulliMatrix& picks);
/// Exact-cutoff variant used by the domination grid.
ThresholdProcessState run_threshold_cutoff(std::int64_t initial_size,
                                           std::int64_t cutoff,
                                           const BernoulliMatrix& picks);
QProcessState run_qprocess(std::int64_t initial_size, const Rational& q,
                           const BernoulliMatrix& picks);

/// Outcome of coupled threshold/q-process comparisons on shared matrices.
///
/// Over-estimation applies when ceil(s*A1) <= ceil(q*A1) and requires
/// A^[s]_k >= A_k for every k; under-estimation applies on runs whose
/// final sizes satisfy (1-q) A^[s]_{r+1} >= A1 - ceil(s*A1) and requires
/// A^[s]_k <= A_k for every k.
struct DominationReport {
    std::uint64_t runs = 0;
    bool over_hypothesis = false;        // static in (A1, s, q)
    std::uint64_t under_hypothesis_runs = 0;
    std::uint64_t violations_over = 0;
    std::uint64_t violations_under = 0;

    bool clean() const { return violations_over == 0 && violations_under == 0; }
};

/// Seed-sampled check: one lazy matrix per seed drives both processes.
DominationReport check_domination(std::int64_t initial_size, const Rational& q,
                                  const Rational& s, double p, std::int64_t moves,
                                  std::span<const std::uint64_t> seeds,
                                  Exec mode = Exec::Serial);

/// Complete check over all 2^(A1*moves) pick matrices. Runs as a forward
/// dynamic program over joint (threshold-set, q-set, comparison-flag)
/// states, so every matrix is covered without enumerating each one;
/// counts are exact. Requires initial_size <= 10 and
/// initial_size*moves <= 48.
DominationReport check_domination_exhaustive(std::int64_t initial_size,
                                             const Rational& q, const Rational& s,
                                             std::int64_t moves);

/// Concatenation of independent threshold processes, each `chunk_moves`
/// moves long and re-seeded from the next entry of chunk_starts.
struct UnionProcess {
    std::vector<std::int64_t> sizes;       // chunk_starts.size() * (r+1) entries
    std::int64_t chunk_moves = 0;          // r
    double threshold = 0.0;                // s
    std::vector<std::int64_t> chunk_starts;
};

UnionProcess run_union(std::span<const std::int64_t> chunk_starts,
                       std::int64_t chunk_moves, double s, double p,
                       std::uint64_t seed);

/// Tail bound 2 exp(-gamma^2 / (3 mu)) for Bin(trials, p), mu = trials*p.
/// Only stated for 0 < gamma < mu; anything else is a domain error.
double chernoff_bound(std::int64_t trials, double p, double gamma);

/// Expected pile size after k thinning moves: a1 * (1 - p*q)^k.
double expected_decay(double a1, double p, double q, std::int64_t k);

} // namespace bulsol
