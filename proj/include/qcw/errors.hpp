#pragma once

#include <stdexcept>
#include <string>

namespace qcw {

/// Caller violated an operation's contract (wrong sizes, bad parameters).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input lies outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A map is not in the normalization the operation expects (e.g. F'(0) != 1).
class NormalizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical procedure failed (root finder, quadrature check, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Constructed object failed its own validation (e.g. Gram test).
class ConstructionError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Fixed-point iteration hit its iteration cap.
class IterationLimitError : public NumericError {
 public:
  IterationLimitError(const std::string& what, int iterations, double residual)
      : NumericError(what), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace qcw
