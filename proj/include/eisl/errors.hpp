#pragma once

#include <stdexcept>
#include <string>

namespace eisl {

/// Argument outside the documented domain of a function (y <= 0, x <= 0, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a pole (L(s, principal) at s = 1, Gamma at a non-positive integer, ...).
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A parameter combination outside the closed forms this library implements.
class unsupported_case : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Violated precondition on integer data (non-primitive character, v*w != q, ...).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature or truncation could not reach the requested tolerance.
class quadrature_failure : public std::runtime_error {
 public:
  quadrature_failure(const std::string& what, double error_estimate)
      : std::runtime_error(what + " (error estimate " + std::to_string(error_estimate) + ")"),
        error_estimate_(error_estimate) {}

  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

/// A truncated series whose remainder cannot be certified below tolerance.
class truncation_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by a quantity that vanishes to within tolerance.
class division_hazard : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace eisl
