#pragma once

#include <stdexcept>
#include <string>

namespace stochord {

/// Caller broke a precondition (shape mismatch, wrong structure, bad id).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the region where the quantity is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative solver gave up. Carries the last bracket it held.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Randomized instance generation exceeded its retry cap.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem scenario could not build an instance meeting its hypotheses.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stochord
