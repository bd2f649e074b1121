#include "bulsol/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bulsol {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
} // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t position)
    : seed_(seed), stream_(stream), position_(position) {
    // Two mixing rounds decorrelate nearby (seed, stream) pairs.
    key_ = mix64(mix64(seed + kGolden) ^ (stream * 0xC2B2AE3D27D4EB4FULL + 1));
}

std::uint64_t RngStream::at(std::uint64_t position) const {
    return mix64(key_ + (position + 1) * kGolden);
}

namespace {

// Inversion from the mode: walk k = mode, mode+1, mode-1, ... subtracting
// pmf terms from one uniform. Reordering outcomes does not change the
// sampled law, and starting at the mode bounds the expected walk length
// by a few standard deviations.
std::int64_t binomial_by_inversion(RngStream& rng, std::int64_t n, double p) {
    const std::int64_t mode = static_cast<std::int64_t>(
        std::floor(static_cast<double>(n + 1) * p));
    const double log_pmf_mode =
        std::lgamma(static_cast<double>(n) + 1.0) -
        std::lgamma(static_cast<double>(mode) + 1.0) -
        std::lgamma(static_cast<double>(n - mode) + 1.0) +
        static_cast<double>(mode) * std::log(p) +
        static_cast<double>(n - mode) * std::log1p(-p);
    const double pmf_mode = std::exp(log_pmf_mode);
    const double odds = p / (1.0 - p);

    double u = rng.next_unit();
    // pmf(k+1) = pmf(k) * (n-k)/(k+1) * odds
    double up = pmf_mode;      // pmf at `hi`
    double down = pmf_mode;    // pmf at `lo`
    std::int64_t hi = mode, lo = mode;

    u -= pmf_mode;
    if (u < 0) return mode;
    while (lo > 0 || hi < n) {
        if (hi < n) {
            up *= static_cast<double>(n - hi) / static_cast<double>(hi + 1) * odds;
            ++hi;
            u -= up;
            if (u < 0) return hi;
        }
        if (lo > 0) {
            down *= static_cast<double>(lo) / (static_cast<double>(n - lo + 1) * odds);
            --lo;
            u -= down;
            if (u < 0) return lo;
        }
    }
    // Residual mass below ~1e-14 from rounding; attribute it to the mode.
    return mode;
}

} // namespace

std::int64_t sample_binomial(RngStream& rng, std::int64_t trials, double p) {
    if (trials < 0) throw std::invalid_argument("sample_binomial: negative trial count");
    if (trials == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    if (trials <= 16) {
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < trials; ++i)
            hits += rng.bernoulli(p) ? 1 : 0;
        return hits;
    }
    return binomial_by_inversion(rng, trials, p);
}

} // namespace bulsol
