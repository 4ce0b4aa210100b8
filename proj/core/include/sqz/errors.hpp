#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

/// Adaptive integration could not proceed (step size underflow).
/// Carries the last time that was reached successfully.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double last_t)
      : std::runtime_error(what), last_t_(last_t) {}
  double last_t() const noexcept { return last_t_; }

 private:
  double last_t_;
};

/// A series or asymptotic expansion failed to converge to the target.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation
/// (pole of Gamma, non-contraction Z, invalid Bogoliubov pair, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sqz
