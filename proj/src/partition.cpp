#include "bulsol/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bulsol {

namespace {

std::int64_t checked_sum(const std::vector<std::int64_t>& parts) {
    std::int64_t sum = 0;
    for (const auto v : parts) sum += v;
    return sum;
}

std::string join_plus(const std::vector<std::int64_t>& parts) {
    if (parts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '+';
        out += std::to_string(parts[i]);
    }
    return out;
}

std::int64_t boundary_impl(const std::vector<std::int64_t>& parts, double x) {
    if (x < 0.0 || std::isnan(x))
        throw std::domain_error("boundary: x must be non-negative");
    if (x >= static_cast<double>(parts.size())) return 0;
    return parts[static_cast<std::size_t>(x)];
}

} // namespace

Partition::Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0)
            throw std::invalid_argument("partition: parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("partition: parts must be non-increasing");
    }
    total_ = checked_sum(parts_);
}

std::string Partition::to_string() const { return join_plus(parts_); }

WeakComposition::WeakComposition(std::vector<std::int64_t> parts)
    : parts_(std::move(parts)) {
    for (const auto v : parts_) {
        if (v < 0)
            throw std::invalid_argument("composition: parts must be non-negative");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    total_ = checked_sum(parts_);
}

std::string WeakComposition::to_string() const { return join_plus(parts_); }

Partition ord(const WeakComposition& alpha) {
    std::vector<std::int64_t> sorted;
    sorted.reserve(alpha.count());
    for (const auto v : alpha.parts())
        if (v > 0) sorted.push_back(v);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    return Partition(std::move(sorted));
}

std::int64_t boundary(const Partition& config, double x) {
    return boundary_impl(config.parts(), x);
}

std::int64_t boundary(const WeakComposition& config, double x) {
    return boundary_impl(config.parts(), x);
}

} // namespace bulsol
