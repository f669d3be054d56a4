#pragma once

#include <stdexcept>
#include <string>

namespace vgm {

/// Argument outside the mathematical domain of a function or distribution.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A gamma-function argument (or a hypergeometric lower parameter) sits on a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Argument combination that is valid mathematically but not implemented.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A series, recurrence or quadrature failed to reach its tolerance.
///
/// Carries the best value obtained so far so callers can decide whether to
/// fall back to a different method.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value)
      : std::runtime_error(what), partial_value_(partial_value) {}

  double partial_value() const noexcept { return partial_value_; }

 private:
  double partial_value_;
};

/// Result exceeds the representable double range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace vgm
