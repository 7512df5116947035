#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cornercut {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Paired arrays (alpha/beta, knots/values, ...) disagree in length.
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

/// A weight pair violates the admissible-class condition.
/// Reports which of the three guarded quantities failed and where.
class ClassViolationError : public Error {
 public:
  enum class Quantity { alpha, one_minus_beta, beta_minus_alpha };

  ClassViolationError(Quantity q, std::size_t index, double value, double margin);

  Quantity quantity() const noexcept { return quantity_; }
  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  Quantity quantity_;
  std::size_t index_;
  double value_;
};

class EmptyScheduleError : public Error {
 public:
  using Error::Error;
};

/// Evaluation request outside the function/surface domain.
class OutOfDomainError : public Error {
 public:
  using Error::Error;
};

/// A run was requested with a schedule that fails its convergence test
/// and the caller did not set the force flag.
class NotCertifiedError : public Error {
 public:
  using Error::Error;
};

/// Boundary functions of a patch disagree at a corner, or net u-functions
/// disagree at a grid crossing, beyond the allowed tolerance.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// The shared evaluation budget of a net run was exhausted.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// Closed polylines require the weight period to divide the edge count;
/// otherwise the refined polygon would not close up.
class PeriodMismatchError : public Error {
 public:
  using Error::Error;
};

/// Configuration parsing/validation failure; carries a path to the field.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace cornercut
