#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sflab {

/// Violated operation precondition (bad argument, wrong function class).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical procedure on valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value left the representable double range.
class OverflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature hit its panel budget; carries the estimate reached.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, std::complex<double> partial,
                  double error_estimate)
      : NumericalError(what), partial_(partial), error_(error_estimate) {}

  std::complex<double> partial() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_; }

 private:
  std::complex<double> partial_;
  double error_;
};

class RootFindingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Exact resonance lambda^(n-1) = 1 met by the Schroeder recursion.
class ResonanceError : public NumericalError {
 public:
  ResonanceError(const std::string& what, int index)
      : NumericalError(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Self-check inside a computation failed (should not happen on valid input).
class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sflab
