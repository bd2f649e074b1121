#pragma once

#include <stdexcept>
#include <string>

namespace bulsol {

/// Thrown when a request exceeds a configured work or storage budget.
/// The CLI maps this to exit code 3.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a checked mathematical invariant fails at runtime
/// (e.g. a domination violation). The CLI maps this to exit code 4.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative solver gave up; carries the last residual seen.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

} // namespace bulsol
