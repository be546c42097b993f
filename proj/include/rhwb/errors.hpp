#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rhwb {

/// Bad input: malformed configuration, invalid curve, infeasible geometry.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation that started from valid input but could not finish reliably.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative kernel ran out of its iteration budget.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A differential that should lie in the span of a basis does not.
/// This always indicates a basis construction bug, never user error.
class MembershipError : public std::logic_error {
 public:
  MembershipError(const std::string& what, std::vector<std::string> residual)
      : std::logic_error(what), residual_(std::move(residual)) {}

  const std::vector<std::string>& residual() const { return residual_; }

 private:
  std::vector<std::string> residual_;
};

}  // namespace rhwb
