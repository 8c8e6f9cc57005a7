#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace bvpkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violated precondition on an argument (bad interval, too few nodes, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The adaptive integrator could not advance.
class IntegrationError : public Error {
public:
    enum class Kind { step_underflow, step_budget };

    IntegrationError(Kind kind, double position, std::optional<double> parameter = std::nullopt);

    Kind kind() const noexcept { return kind_; }
    /// Abscissa at which the integrator gave up.
    double position() const noexcept { return position_; }
    /// Shooting parameter p of the failing IVP, when raised from the shooting engine.
    std::optional<double> parameter() const noexcept { return parameter_; }

    IntegrationError with_parameter(double p) const { return {kind_, position_, p}; }

private:
    Kind kind_;
    double position_;
    std::optional<double> parameter_;
};

/// Bisection bracket whose endpoints do not straddle the target in the configured orientation.
class BracketError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(std::size_t pivot);
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// Newton iterate became non-finite.
class DivergenceError : public Error {
public:
    explicit DivergenceError(int iteration);
    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

}  // namespace bvpkit
