#pragma once

#include <cstdint>

namespace bulsol {

/// Counter-based random stream. A draw is a pure function of
/// (seed, stream, position), so identical coordinates always reproduce
/// identical values, streams never share state, and random access by
/// position is O(1). Quality is that of the splitmix64 finalizer applied
/// to a per-stream key plus a golden-ratio counter walk.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                       std::uint64_t position = 0);

    std::uint64_t next_u64() { return at(position_++); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    /// Value at an absolute position without disturbing the cursor.
    std::uint64_t at(std::uint64_t position) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t position() const { return position_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t position_;
};

/// splitmix64 finalizer; good avalanche, passes the usual batteries.
std::uint64_t mix64(std::uint64_t z);

/// Exact-in-distribution Binomial(trials, p) variate.
///
/// Small trial counts sum explicit Bernoulli draws; larger ones invert a
/// single uniform against the pmf walked outward from the mode, so the
/// expected cost is O(sqrt(trials*p*(1-p))). The number of stream draws
/// consumed depends only on (trials branch), keeping trajectories
/// reproducible per stream.
std::int64_t sample_binomial(RngStream& rng, std::int64_t trials, double p);

} // namespace bulsol
