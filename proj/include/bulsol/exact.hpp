#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bulsol/parallel.hpp"
#include "bulsol/partition.hpp"
#include "bulsol/shape.hpp"
#include "bulsol/solitaire.hpp"

namespace bulsol {

/// Canonical enumeration of the partitions of n in reverse-lexicographic
/// order ((n) first, (1,...,1) last), with a bijective index.
class StateIndex {
public:
    static constexpr std::int64_t kDefaultCap = 26;

    static StateIndex enumerate(std::int64_t n, std::int64_t cap = kDefaultCap);

    std::size_t size() const { return states_.size(); }
    const Partition& state(std::size_t i) const { return states_[i]; }
    std::int64_t total() const { return total_; }

    /// Index of a partition given as a descending parts vector.
    std::size_t index_of(std::span<const std::int64_t> parts) const;
    std::size_t index_of(const Partition& p) const { return index_of(p.parts()); }

private:
    struct VecHash {
        std::size_t operator()(const std::vector<std::int64_t>& v) const;
    };
    std::int64_t total_ = 0;
    std::vector<Partition> states_;
    std::unordered_map<std::vector<std::int64_t>, std::size_t, VecHash> lookup_;
};

/// Sparse row of the transition kernel: (target index, probability),
/// sorted by target index.
using SparseRow = std::vector<std::pair<std::uint32_t, double>>;

/// Exact one-move distribution from lambda under B(n, p, q), by complete
/// enumeration of picked-count vectors weighted with binomial pmfs.
/// Throws CapacityError when the enumeration would exceed work_budget terms.
SparseRow transition_row(const Partition& lambda, const SolitaireParams& params,
                         const StateIndex& states,
                         std::uint64_t work_budget = 100'000'000);

struct TransitionKernel {
    StateIndex states;
    std::vector<SparseRow> rows;
    SolitaireParams params;
};

/// Builds every row of the kernel; rows are independent, so Exec::Parallel
/// fans them out across threads with identical results to the serial path.
TransitionKernel build_kernel(StateIndex states, const SolitaireParams& params,
                              Exec mode = Exec::Serial,
                              std::uint64_t work_budget = 100'000'000);

/// Largest |row sum - 1| over the kernel.
double max_row_sum_error(const TransitionKernel& kernel);

enum class StationaryMethod { Auto, Dense, PowerIteration };

struct StationaryDistribution {
    std::vector<double> probabilities;
    std::string method;            // "dense-lu" or "power-iteration"
    double residual = 0.0;         // ||pi P - pi||_1
    bool irreducible_reported = true;
};

/// Solves pi P = pi. Auto uses a dense solve up to 5000 states and power
/// iteration (residual 1e-12, at most 1e6 sweeps) beyond. p = 1 is
/// rejected: with every candidate always picked the chain may be periodic
/// or reducible and no unique stationary law is guaranteed.
StationaryDistribution stationary(const TransitionKernel& kernel,
                                  StationaryMethod method = StationaryMethod::Auto);

/// pi-mass of the event |rescaled boundary(x) - shape(x)| < eps, with the
/// scaling resolved per state (ByFirstPart) or from the parameters
/// (Theoretical).
double stationary_shape_mass(const StationaryDistribution& dist,
                             const StateIndex& states, const LimitShape& shape,
                             ScalingMode mode, const SolitaireParams& params,
                             double eps, double x);

} // namespace bulsol
