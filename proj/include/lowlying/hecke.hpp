#pragma once

// Coefficients of the weight-12 level-1 cusp form Delta: exact tau(n), the
// normalized a(n) = tau(n) / n^{11/2}, prime-power coefficients and the
// prime-sum statistics used by the explicit formula.

#include <iosfwd>
#include <vector>

#include "lowlying/arith.hpp"

namespace lowlying {

/// Largest truncation tau_series accepts; |tau(n)| < 2^119 up to here.
inline constexpr i64 kMaxTauN = 1'000'000;

/// tau(0..N) with tau(0) = 0, from the pentagonal series of prod(1 - q^n)
/// raised to the 24th power by number-theoretic transforms modulo three
/// 62-bit primes; two primes reconstruct, the third checks.
std::vector<i128> tau_series(i64 N);

/// Normalized coefficients of a holomorphic eigenform of the given weight.
class EigenformCoeffs {
 public:
  /// Delta truncated at N.
  explicit EigenformCoeffs(i64 N);
  /// Externally supplied integer coefficients c(0..N) of weight k; c(1) must be 1.
  EigenformCoeffs(std::vector<i128> coeffs, int weight);

  i64 size() const noexcept { return static_cast<i64>(coeffs_.size()) - 1; }
  int weight() const noexcept { return weight_; }
  i128 raw(i64 n) const;
  /// a(n) = c(n) / n^{(k-1)/2}.
  double a(i64 n) const;
  const std::vector<i128>& raw_coefficients() const noexcept { return coeffs_; }

 private:
  std::vector<i128> coeffs_;
  std::vector<double> normalized_;
  int weight_;
};

double coeff_normalized(const EigenformCoeffs& f, i64 n);

/// c_j(a_p) = alpha^j + alpha^{-j} where alpha + 1/alpha = a_p:
/// c_0 = 2, c_1 = a_p, c_{j+1} = a_p c_j - c_{j-1}.
double coeff_prime_power(double a_p, int j);

struct CoeffStats {
  double x = 0;
  long primes = 0;
  double mertens_sum = 0;    // sum_{p <= x} log p / p
  double mertens_main = 0;   // log x
  double square_sum = 0;     // sum_{p <= x} a(p)^2 log^2 p / p
  double square_main = 0;    // log^2 x / 2
  double square_ratio = 0;
};

CoeffStats coeff_stat_checks(const EigenformCoeffs& f, double x);

/// CSV rows "n,tau" for n = 1..N.
void write_tau_csv(std::ostream& os, const std::vector<i128>& tau);
/// Inverse of write_tau_csv; rows must be consecutive from n = 1.
std::vector<i128> read_tau_csv(std::istream& is);

}  // namespace lowlying
