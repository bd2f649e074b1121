#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bulsol {

/// Exact rational with positive denominator, stored in lowest terms.
/// Used for the pick proportion q so that ceilings like ceil(q*h) never
/// suffer floating-point boundary errors.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool positive() const { return num > 0; }
    bool in_unit_interval() const { return num > 0 && num <= den; } // (0, 1]

    /// ceil(num*h / den) in exact integer arithmetic, h >= 0.
    std::int64_t ceil_times(std::int64_t h) const {
        if (h <= 0) return 0;
        return (num * h + den - 1) / den;
    }

    std::string to_string() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }

    /// Parses "a/b" or a bare integer "a" (meaning a/1).
    static Rational parse(const std::string& text);

    friend bool operator==(const Rational&, const Rational&) = default;
};

inline Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(std::stoll(text), 1);
        return Rational(std::stoll(text.substr(0, slash)),
                        std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("rational: cannot parse '" + text + "'");
    }
}

} // namespace bulsol
