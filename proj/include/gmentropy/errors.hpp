#pragma once

#include <stdexcept>
#include <string>

namespace gmentropy {

/// Input outside an estimator's admissible parameter range (e.g. m below the
/// Taylor convergence radius, or a fit interval that misses the density).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation whose size would exceed a hard resource cap.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation requested in a dimension the method cannot handle.
class UnsupportedDimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Should-not-happen numerical failure (e.g. a Gram matrix failing to factor).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// No mode-finder start converged within the iteration cap.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double best_value)
        : std::runtime_error(what), best_value_(best_value) {}

    double best_value() const noexcept { return best_value_; }

private:
    double best_value_;
};

}  // namespace gmentropy
