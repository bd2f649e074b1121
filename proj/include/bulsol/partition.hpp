#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace bulsol {

/// Integer partition: positive parts in non-increasing order. Parts beyond
/// the stored ones read as zero.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::int64_t> parts);

    const std::vector<std::int64_t>& parts() const { return parts_; }
    std::int64_t total() const { return total_; }

    /// Number of positive parts.
    std::size_t count() const { return parts_.size(); }

    /// 1-based part access; zero beyond the last part.
    std::int64_t part(std::size_t i) const {
        return (i >= 1 && i <= parts_.size()) ? parts_[i - 1] : 0;
    }

    bool empty() const { return parts_.empty(); }

    /// "4+3+1" style rendering (empty partition renders as "0").
    std::string to_string() const;

    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<std::int64_t> parts_;
    std::int64_t total_ = 0;
};

/// Pile sizes ordered by creation time, newest first. Interior zeros are
/// kept (empty bowls between live piles); trailing zeros are not stored,
/// so the sequence is empty or ends in a nonzero part.
class WeakComposition {
public:
    WeakComposition() = default;
    explicit WeakComposition(std::vector<std::int64_t> parts);

    const std::vector<std::int64_t>& parts() const { return parts_; }
    std::int64_t total() const { return total_; }
    std::size_t count() const { return parts_.size(); }

    std::int64_t part(std::size_t i) const {
        return (i >= 1 && i <= parts_.size()) ? parts_[i - 1] : 0;
    }

    bool empty() const { return parts_.empty(); }

    std::string to_string() const;

    friend auto operator<=>(const WeakComposition&, const WeakComposition&) = default;

private:
    std::vector<std::int64_t> parts_;
    std::int64_t total_ = 0;
};

/// Sorts the nonzero parts in descending order.
Partition ord(const WeakComposition& alpha);

/// Diagram-boundary function: the part at index floor(x)+1, zero beyond
/// the stored parts. x must be non-negative.
std::int64_t boundary(const Partition& config, double x);
std::int64_t boundary(const WeakComposition& config, double x);

} // namespace bulsol
