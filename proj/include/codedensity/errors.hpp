#pragma once

#include <stdexcept>
#include <string>

namespace codedensity {

/// A parameter tuple violates a stated constraint. `constraint()` names it.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string constraint, const std::string& detail)
      : std::invalid_argument(constraint + ": " + detail), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// An operation that needs a finite field received a q that is not a prime power.
class NotPrimePowerError : public ParameterError {
 public:
  explicit NotPrimePowerError(unsigned long long q)
      : ParameterError("prime power", "q = " + std::to_string(q) + " is not a prime power") {}
};

/// The ambient set is too small for the denominators of the bound formulas.
class DegenerateAmbientError : public ParameterError {
 public:
  explicit DegenerateAmbientError(const std::string& detail)
      : ParameterError("degenerate ambient space", detail) {}
};

/// An enumeration or brute-force count would exceed its configured budget.
class WorkLimitExceeded : public std::runtime_error {
 public:
  explicit WorkLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace codedensity
