#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aqm {

/// Raised when an argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a trustworthy result
/// (leaking states, unconverged bases, failed internal verification).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A propagation aborted part-way through; carries the failing step.
class PropagationAborted : public NumericalError {
public:
    PropagationAborted(const std::string& what, std::size_t step)
        : NumericalError(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// The chosen basis cannot represent the requested eigenstates.
class BasisInsufficient : public NumericalError {
public:
    BasisInsufficient(std::size_t worst_index, double worst_residual)
        : NumericalError("basis insufficient: state " + std::to_string(worst_index) +
                         " has grid residual " + std::to_string(worst_residual)),
          worst_index_(worst_index),
          worst_residual_(worst_residual) {}

    std::size_t worst_index() const noexcept { return worst_index_; }
    double worst_residual() const noexcept { return worst_residual_; }

private:
    std::size_t worst_index_;
    double worst_residual_;
};

}  // namespace aqm
