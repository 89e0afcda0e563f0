#pragma once

#include <stdexcept>
#include <string>

namespace collent {

/// Input outside the mathematical domain of an operation (bad coupling,
/// malformed block layout, non-positive mass, ...). Maps to CLI exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical procedure on valid input. Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series did not reach its tolerance within the term cap.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A correlation table is too short for the requested block geometry.
class LagBoundError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Covariance entries that no physical state can have (delta1 or delta2 <= 0).
class InvalidStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace collent
