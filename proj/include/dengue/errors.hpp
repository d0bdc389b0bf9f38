#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dengue {

// Bad input: non-finite values, out-of-range parameters, states outside the
// admissible region.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The requested object does not exist in the current parameter regime
// (mosquito collapse, no endemic equilibrium, ...).
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical routine failed to converge or to make progress.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integration stopped because the step size underflowed.
class StepSizeError : public NumericalError {
public:
    StepSizeError(double t, const std::string& what)
        : NumericalError(what), time_(t) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

// Newton refinement did not reach the residual target.
class RefinementError : public NumericalError {
public:
    RefinementError(double last_residual, const std::string& what)
        : NumericalError(what), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

// Malformed or inconsistent scenario input. line() is 1-based, 0 when the
// problem is not tied to a single line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace dengue
