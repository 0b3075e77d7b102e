#pragma once

#include <stdexcept>
#include <string>

namespace lowlying {

/// Input outside the mathematical domain of an operation (both-zero gcd,
/// modulus sharing a factor with 3, even k, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A desk-scale bound was exceeded (norm too large, prime table too short).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical procedure did not reach its target accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace lowlying
