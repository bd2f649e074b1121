#include "bulsol/solitaire.hpp"

#include <cassert>
#include <stdexcept>

#include "bulsol/errors.hpp"

namespace bulsol {

SolitaireParams::SolitaireParams(std::int64_t n, double p, Rational q)
    : cards(n), pick_prob(p), proportion(std::move(q)) {
    if (n < 1) throw std::invalid_argument("solitaire: n must be at least 1");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("solitaire: p must be in (0,1]");
    if (!proportion.in_unit_interval())
        throw std::invalid_argument("q must be in (0,1]");
    // keeps q.num * h exact in 64 bits for every pile size h <= n
    if (n > 1'000'000'000'000LL)
        throw std::invalid_argument("solitaire: n is capped at 10^12");
    if (proportion.den > 1'000'000)
        throw std::invalid_argument("solitaire: q denominator is capped at 10^6");
}

std::int64_t candidates(std::int64_t pile, const Rational& q) {
    if (pile < 0) throw std::invalid_argument("candidates: negative pile size");
    return q.ceil_times(pile);
}

SigmaRule SigmaRule::proportion(Rational q) {
    if (!q.in_unit_interval())
        throw std::invalid_argument("q must be in (0,1]");
    return SigmaRule{false, std::move(q)};
}

namespace detail {

namespace {

void prune_trailing(std::vector<std::int64_t>& parts) {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
}

} // namespace

void step_in_place(std::vector<std::int64_t>& parts, const SigmaRule& sigma) {
    std::int64_t taken = 0;
    for (auto& pile : parts) {
        const std::int64_t s = sigma(pile);
        assert(s >= 0 && s <= pile);
        pile -= s;
        taken += s;
    }
    parts.insert(parts.begin(), taken);
    prune_trailing(parts);
}

void step_in_place(std::vector<std::int64_t>& parts, const SolitaireParams& params,
                   RngStream& rng, MoveOutcome* outcome, bool want_picks) {
    std::int64_t taken = 0;
    std::int64_t kappa = 0;
    if (outcome && want_picks) {
        outcome->picked_per_pile.clear();
        outcome->picked_per_pile.reserve(parts.size());
    }
    // Draws run newest bowl first so trajectories are reproducible.
    for (auto& pile : parts) {
        const std::int64_t c = candidates(pile, params.proportion);
        const std::int64_t picked = sample_binomial(rng, c, params.pick_prob);
        assert(picked >= 0 && picked <= c && c <= pile);
        pile -= picked;
        taken += picked;
        kappa += c;
        if (outcome && want_picks) outcome->picked_per_pile.push_back(picked);
    }
    if (outcome) {
        outcome->candidate_total = kappa;
        outcome->new_pile = taken;
        const auto& q = params.proportion;
        // R = kappa - q*n over the common denominator.
        outcome->rounding_total =
            Rational(kappa * q.den - q.num * params.cards, q.den);
    }
    parts.insert(parts.begin(), taken);
    prune_trailing(parts);
}

} // namespace detail

WeakComposition step_deterministic(const WeakComposition& alpha, const SigmaRule& sigma) {
    std::vector<std::int64_t> parts = alpha.parts();
    detail::step_in_place(parts, sigma);
    WeakComposition next(std::move(parts));
    assert(next.total() == alpha.total());
    return next;
}

std::pair<WeakComposition, MoveOutcome> step_random(const WeakComposition& alpha,
                                                    const SolitaireParams& params,
                                                    RngStream& rng) {
    if (alpha.total() != params.cards)
        throw std::invalid_argument("step_random: configuration total does not match n");
    std::vector<std::int64_t> parts = alpha.parts();
    MoveOutcome outcome;
    detail::step_in_place(parts, params, rng, &outcome, true);
    WeakComposition next(std::move(parts));
    assert(next.total() == alpha.total());
    return {std::move(next), std::move(outcome)};
}

namespace {

template <typename StepFn>
Trajectory play_impl(const WeakComposition& start, std::uint64_t moves,
                     const SnapshotPolicy& policy, StepFn&& step) {
    if (policy.stride > 0) {
        const std::uint64_t wanted = moves / policy.stride;
        if (wanted > policy.budget)
            throw CapacityError("play: snapshot budget of " +
                                std::to_string(policy.budget) + " exceeded (" +
                                std::to_string(wanted) + " snapshots requested)");
    }
    Trajectory out;
    std::vector<std::int64_t> parts = start.parts();
    for (std::uint64_t t = 1; t <= moves; ++t) {
        step(parts);
        if (policy.stride > 0 && t % policy.stride == 0) {
            out.snapshot_moves.push_back(t);
            out.snapshots.emplace_back(parts);
        }
    }
    out.final_state = WeakComposition(std::move(parts));
    return out;
}

} // namespace

Trajectory play(const WeakComposition& start, const SigmaRule& sigma,
                std::uint64_t moves, const SnapshotPolicy& policy) {
    return play_impl(start, moves, policy,
                     [&](std::vector<std::int64_t>& parts) { detail::step_in_place(parts, sigma); });
}

Trajectory play(const WeakComposition& start, const SolitaireParams& params,
                std::uint64_t moves, RngStream& rng, const SnapshotPolicy& policy) {
    if (start.total() != params.cards)
        throw std::invalid_argument("play: configuration total does not match n");
    return play_impl(start, moves, policy, [&](std::vector<std::int64_t>& parts) {
        detail::step_in_place(parts, params, rng, nullptr, false);
    });
}

Partition triangular_start(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("triangular_start: n must be at least 1");
    std::int64_t k = 1;
    while ((k + 1) * (k + 2) / 2 <= n) ++k;
    std::vector<std::int64_t> parts;
    parts.reserve(static_cast<std::size_t>(k));
    for (std::int64_t v = k; v >= 1; --v) parts.push_back(v);
    parts[0] += n - k * (k + 1) / 2;
    return Partition(std::move(parts));
}

} // namespace bulsol
