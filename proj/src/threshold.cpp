#include "bulsol/threshold.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bulsol/errors.hpp"

namespace bulsol {

BernoulliMatrix::BernoulliMatrix(std::int64_t labels, std::int64_t moves, double p,
                                 std::uint64_t seed, std::uint64_t stream)
    : labels_(labels), moves_(moves), lazy_(true), p_(p), source_(seed, stream) {
    if (labels < 1 || moves < 1)
        throw std::invalid_argument("bernoulli matrix: needs at least one label and one move");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("bernoulli matrix: p must be in [0,1]");
}

BernoulliMatrix BernoulliMatrix::from_bits(std::int64_t labels, std::int64_t moves,
                                           std::uint64_t bits) {
    if (labels < 1 || moves < 1)
        throw std::invalid_argument("bernoulli matrix: needs at least one label and one move");
    if (labels * moves > 64)
        throw std::invalid_argument("bernoulli matrix: bit form limited to 64 entries");
    BernoulliMatrix m;
    m.labels_ = labels;
    m.moves_ = moves;
    m.lazy_ = false;
    m.bits_ = bits;
    return m;
}

bool BernoulliMatrix::entry(std::int64_t label, std::int64_t move) const {
    if (label < 1 || label > labels_ || move < 1 || move > moves_)
        throw std::out_of_range("bernoulli matrix: entry out of range");
    const std::uint64_t index =
        static_cast<std::uint64_t>(move - 1) * static_cast<std::uint64_t>(labels_) +
        static_cast<std::uint64_t>(label - 1);
    if (!lazy_) return (bits_ >> index) & 1u;
    return static_cast<double>(source_.at(index) >> 11) * 0x1.0p-53 < p_;
}

ThresholdProcessState run_threshold_cutoff(std::int64_t initial_size,
                                           std::int64_t cutoff,
                                           const BernoulliMatrix& picks) {
    if (initial_size < 1)
        throw std::invalid_argument("threshold process: pile must be nonempty");
    if (picks.labels() < initial_size)
        throw std::invalid_argument("threshold process: matrix has too few labels");

    ThresholdProcessState state;
    state.initial_size = initial_size;
    state.cutoff = std::clamp<std::int64_t>(cutoff, 0, initial_size);
    state.remaining.resize(static_cast<std::size_t>(initial_size));
    std::iota(state.remaining.begin(), state.remaining.end(), std::int64_t{1});
    state.sizes.reserve(static_cast<std::size_t>(picks.moves()) + 1);
    state.sizes.push_back(initial_size);

    for (std::int64_t k = 1; k <= picks.moves(); ++k) {
        std::erase_if(state.remaining, [&](std::int64_t label) {
            return label <= state.cutoff && picks.entry(label, k);
        });
        state.sizes.push_back(static_cast<std::int64_t>(state.remaining.size()));
    }
    for (const auto label : state.remaining)
        if (label <= state.cutoff) ++state.surviving_low;
    return state;
}

ThresholdProcessState run_threshold(std::int64_t initial_size, double s,
                                    const BernoulliMatrix& picks) {
    if (s < 0.0) throw std::invalid_argument("threshold process: s must be non-negative");
    const double exact = s * static_cast<double>(initial_size);
    const auto cutoff = static_cast<std::int64_t>(std::ceil(exact));
    ThresholdProcessState state = run_threshold_cutoff(
        initial_size, std::min<std::int64_t>(cutoff, initial_size), picks);
    state.threshold = s;
    state.threshold_rounded = std::floor(exact) != exact;
    return state;
}

QProcessState run_qprocess(std::int64_t initial_size, const Rational& q,
                           const BernoulliMatrix& picks) {
    if (initial_size < 1)
        throw std::invalid_argument("q-process: pile must be nonempty");
    if (!q.in_unit_interval())
        throw std::invalid_argument("q must be in (0,1]");
    if (picks.labels() < initial_size)
        throw std::invalid_argument("q-process: matrix has too few labels");

    QProcessState state;
    state.initial_size = initial_size;
    state.q = q;
    state.remaining.resize(static_cast<std::size_t>(initial_size));
    std::iota(state.remaining.begin(), state.remaining.end(), std::int64_t{1});
    state.sizes.reserve(static_cast<std::size_t>(picks.moves()) + 1);
    state.sizes.push_back(initial_size);

    for (std::int64_t k = 1; k <= picks.moves(); ++k) {
        // Candidate window: the lowest-label (top-most) remaining cards,
        // recomputed from the current size.
        const auto window =
            static_cast<std::size_t>(q.ceil_times(static_cast<std::int64_t>(state.remaining.size())));
        std::size_t write = 0;
        for (std::size_t idx = 0; idx < state.remaining.size(); ++idx) {
            const auto label = state.remaining[idx];
            if (idx < window && picks.entry(label, k)) continue;
            state.remaining[write++] = label;
        }
        state.remaining.resize(write);
        state.sizes.push_back(static_cast<std::int64_t>(write));
    }
    return state;
}

namespace {

// Exact hypothesis of the under-estimation case:
// (1 - q) * final_low_size >= A1 - ceil(s*A1), evaluated in integers.
bool under_hypothesis(std::int64_t a1, const Rational& q, std::int64_t cutoff_raw,
                      std::int64_t final_size) {
    return (q.den - q.num) * final_size >= q.den * (a1 - cutoff_raw);
}

} // namespace

DominationReport check_domination(std::int64_t initial_size, const Rational& q,
                                  const Rational& s, double p, std::int64_t moves,
                                  std::span<const std::uint64_t> seeds, Exec mode) {
    if (!q.in_unit_interval()) throw std::invalid_argument("q must be in (0,1]");
    if (!s.positive()) throw std::invalid_argument("domination: s must be positive");

    const std::int64_t cutoff_raw = s.ceil_times(initial_size);
    const std::int64_t cutoff = std::min(cutoff_raw, initial_size);

    DominationReport report;
    report.runs = seeds.size();
    report.over_hypothesis = cutoff_raw <= q.ceil_times(initial_size);

    std::vector<std::uint8_t> under_hyp(seeds.size(), 0);
    std::vector<std::uint8_t> saw_lt(seeds.size(), 0);
    std::vector<std::uint8_t> saw_gt(seeds.size(), 0);

    parallel_for(seeds.size(), mode, [&](std::size_t i) {
        const BernoulliMatrix picks(initial_size, moves, p, seeds[i]);
        const auto thresh = run_threshold_cutoff(initial_size, cutoff, picks);
        const auto qproc = run_qprocess(initial_size, q, picks);
        for (std::size_t k = 0; k < thresh.sizes.size(); ++k) {
            if (thresh.sizes[k] < qproc.sizes[k]) saw_lt[i] = 1;
            if (thresh.sizes[k] > qproc.sizes[k]) saw_gt[i] = 1;
        }
        under_hyp[i] = under_hypothesis(initial_size, q, cutoff_raw,
                                        thresh.sizes.back())
                           ? 1
                           : 0;
    });

    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (report.over_hypothesis && saw_lt[i]) ++report.violations_over;
        if (under_hyp[i]) {
            ++report.under_hypothesis_runs;
            if (saw_gt[i]) ++report.violations_under;
        }
    }
    return report;
}

namespace {

std::uint32_t lowest_set_bits(std::uint32_t mask, int count) {
    std::uint32_t out = 0;
    for (int i = 0; i < count && mask; ++i) {
        const std::uint32_t bit = mask & (0u - mask);
        out |= bit;
        mask ^= bit;
    }
    return out;
}

} // namespace

DominationReport check_domination_exhaustive(std::int64_t initial_size,
                                             const Rational& q, const Rational& s,
                                             std::int64_t moves) {
    if (!q.in_unit_interval()) throw std::invalid_argument("q must be in (0,1]");
    if (!s.positive()) throw std::invalid_argument("domination: s must be positive");
    if (initial_size < 1 || moves < 1)
        throw std::invalid_argument("domination: need a pile and at least one move");
    if (initial_size > 10 || initial_size * moves > 48)
        throw CapacityError("exhaustive domination limited to piles of 10 cards and 48 total "
                            "pick outcomes");

    const int labels = static_cast<int>(initial_size);
    const std::uint32_t full = (labels == 32) ? 0xFFFFFFFFu : ((1u << labels) - 1u);
    const std::int64_t cutoff_raw = s.ceil_times(initial_size);
    const std::uint32_t low_mask =
        lowest_set_bits(full, static_cast<int>(std::min<std::int64_t>(cutoff_raw, initial_size)));

    // Window sizes depend only on the q-set population.
    std::vector<int> window_of_size(static_cast<std::size_t>(labels) + 1, 0);
    for (int c = 0; c <= labels; ++c)
        window_of_size[static_cast<std::size_t>(c)] = static_cast<int>(q.ceil_times(c));

    // Joint state: threshold-set | q-set | (saw S<Q) | (saw S>Q).
    const std::size_t space = std::size_t{1} << (2 * labels + 2);
    std::vector<std::uint64_t> current(space, 0), next(space, 0);
    const std::size_t start = static_cast<std::size_t>(full) |
                              (static_cast<std::size_t>(full) << labels);
    current[start] = 1;

    for (std::int64_t k = 1; k <= moves; ++k) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t key = 0; key < space; ++key) {
            const std::uint64_t count = current[key];
            if (count == 0) continue;
            const auto sset = static_cast<std::uint32_t>(key & full);
            const auto qset = static_cast<std::uint32_t>((key >> labels) & full);
            const std::size_t flags = key >> (2 * labels);

            const std::uint32_t s_active = sset & low_mask;
            const std::uint32_t window =
                lowest_set_bits(qset, window_of_size[static_cast<std::size_t>(std::popcount(qset))]);
            const std::uint32_t queried = s_active | window;
            // Bits outside `queried` cannot affect either process this move.
            const std::uint64_t silent =
                std::uint64_t{1} << (labels - std::popcount(queried));

            std::uint32_t picks = queried;
            while (true) {
                const std::uint32_t s_next = sset & ~(picks & s_active);
                const std::uint32_t q_next = qset & ~(picks & window);
                std::size_t f = flags;
                if (std::popcount(s_next) < std::popcount(q_next)) f |= 1u;
                if (std::popcount(s_next) > std::popcount(q_next)) f |= 2u;
                const std::size_t key_next =
                    static_cast<std::size_t>(s_next) |
                    (static_cast<std::size_t>(q_next) << labels) | (f << (2 * labels));
                next[key_next] += count * silent;
                if (picks == 0) break;
                picks = (picks - 1) & queried;
            }
        }
        current.swap(next);
    }

    DominationReport report;
    report.over_hypothesis = cutoff_raw <= q.ceil_times(initial_size);
    for (std::size_t key = 0; key < space; ++key) {
        const std::uint64_t count = current[key];
        if (count == 0) continue;
        report.runs += count;
        const auto sset = static_cast<std::uint32_t>(key & full);
        const std::size_t flags = key >> (2 * labels);
        if (report.over_hypothesis && (flags & 1u)) report.violations_over += count;
        if (under_hypothesis(initial_size, q, cutoff_raw, std::popcount(sset))) {
            report.under_hypothesis_runs += count;
            if (flags & 2u) report.violations_under += count;
        }
    }
    return report;
}

UnionProcess run_union(std::span<const std::int64_t> chunk_starts,
                       std::int64_t chunk_moves, double s, double p,
                       std::uint64_t seed) {
    if (chunk_starts.empty())
        throw std::invalid_argument("union process: need at least one chunk start");
    if (chunk_moves < 1)
        throw std::invalid_argument("union process: chunk length must be positive");

    UnionProcess out;
    out.chunk_moves = chunk_moves;
    out.threshold = s;
    out.chunk_starts.assign(chunk_starts.begin(), chunk_starts.end());
    out.sizes.reserve(chunk_starts.size() * static_cast<std::size_t>(chunk_moves + 1));
    for (std::size_t j = 0; j < chunk_starts.size(); ++j) {
        const BernoulliMatrix picks(chunk_starts[j], chunk_moves, p, seed,
                                    /*stream=*/j);
        const auto chunk = run_threshold(chunk_starts[j], s, picks);
        out.sizes.insert(out.sizes.end(), chunk.sizes.begin(), chunk.sizes.end());
    }
    return out;
}

double chernoff_bound(std::int64_t trials, double p, double gamma) {
    if (trials < 1 || p <= 0.0 || p > 1.0)
        throw std::domain_error("chernoff bound: need trials >= 1 and p in (0,1]");
    const double mu = static_cast<double>(trials) * p;
    if (!(gamma > 0.0) || !(gamma < mu))
        throw std::domain_error("chernoff bound: stated only for 0 < gamma < mu");
    return 2.0 * std::exp(-gamma * gamma / (3.0 * mu));
}

double expected_decay(double a1, double p, double q, std::int64_t k) {
    if (k < 0) throw std::domain_error("expected_decay: k must be non-negative");
    return a1 * std::pow(1.0 - p * q, static_cast<double>(k));
}

} // namespace bulsol
