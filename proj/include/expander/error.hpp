#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace expander {

/// Input violates an operation's precondition (CLI exit code 1).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size, order or enumeration cap was hit (CLI exit code 2).
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, std::uint64_t partial = 0)
        : std::runtime_error(what), partial_(partial) {}

    /// Progress made before the cap stopped the computation.
    std::uint64_t partial() const noexcept { return partial_; }

private:
    std::uint64_t partial_;
};

/// An iterative method stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Two independent routes disagreed (e.g. spectral and BFS connectivity).
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace expander
