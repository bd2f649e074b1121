#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bulsol/partition.hpp"
#include "bulsol/rational.hpp"
#include "bulsol/rng.hpp"

namespace bulsol {

/// Parameters of the chain B(n, p, q): n cards, each candidate card picked
/// with probability p, and ceil(q*h) candidates in a pile of size h.
struct SolitaireParams {
    std::int64_t cards;   // n
    double pick_prob;     // p in (0, 1]
    Rational proportion;  // q in (0, 1], exact

    SolitaireParams(std::int64_t n, double p, Rational q);
};

/// Candidate count for one pile: 0 for an empty pile, otherwise
/// ceil(q*h) in exact integer arithmetic (always in [1, h] for q in (0,1]).
std::int64_t candidates(std::int64_t pile, const Rational& q);

/// Cards removed per pile in the deterministic game: classic takes one card
/// from every nonempty pile, proportion takes ceil(q*h).
class SigmaRule {
public:
    static SigmaRule classic() { return SigmaRule{true, Rational(1, 1)}; }
    static SigmaRule proportion(Rational q);

    std::int64_t operator()(std::int64_t pile) const {
        if (pile <= 0) return 0;
        return classic_ ? 1 : q_.ceil_times(pile);
    }

    bool is_classic() const { return classic_; }
    const Rational& q() const { return q_; }

private:
    SigmaRule(bool classic, Rational q) : classic_(classic), q_(std::move(q)) {}
    bool classic_;
    Rational q_;
};

/// What one random move did.
struct MoveOutcome {
    std::vector<std::int64_t> picked_per_pile; // aligned with the pre-move bowls
    std::int64_t candidate_total = 0;          // kappa
    std::int64_t new_pile = 0;
    Rational rounding_total;                   // R = kappa - q*n, exact
};

/// One deterministic move: every nonempty pile i loses sigma(a_i) cards and
/// the removed cards form a new pile prepended as the newest bowl.
WeakComposition step_deterministic(const WeakComposition& alpha, const SigmaRule& sigma);

/// One random move: pile i loses Binomial(candidates(a_i, q), p) cards,
/// drawn newest bowl first; the picked cards form the new (possibly empty)
/// bowl. The card total is conserved.
std::pair<WeakComposition, MoveOutcome> step_random(const WeakComposition& alpha,
                                                    const SolitaireParams& params,
                                                    RngStream& rng);

struct SnapshotPolicy {
    std::uint64_t stride = 0;     // 0 = keep the final state only
    std::size_t budget = 1024;    // hard cap on stored snapshots
};

struct Trajectory {
    WeakComposition final_state;
    std::vector<std::uint64_t> snapshot_moves;
    std::vector<WeakComposition> snapshots;
};

/// Plays `moves` deterministic moves. Throws CapacityError if the snapshot
/// policy would exceed its budget.
Trajectory play(const WeakComposition& start, const SigmaRule& sigma,
                std::uint64_t moves, const SnapshotPolicy& policy = {});

/// Plays `moves` random moves of B(n, p, q).
Trajectory play(const WeakComposition& start, const SolitaireParams& params,
                std::uint64_t moves, RngStream& rng, const SnapshotPolicy& policy = {});

/// Staircase (K, K-1, ..., 1) for the largest K with K(K+1)/2 <= n, with
/// the remainder added to the largest part.
Partition triangular_start(std::int64_t n);

namespace detail {
/// In-place move on a raw newest-first bowl vector; used by the hot loops.
/// Fills `outcome` when non-null (picked_per_pile only when want_picks).
void step_in_place(std::vector<std::int64_t>& parts, const SolitaireParams& params,
                   RngStream& rng, MoveOutcome* outcome, bool want_picks);
void step_in_place(std::vector<std::int64_t>& parts, const SigmaRule& sigma);
} // namespace detail

} // namespace bulsol
