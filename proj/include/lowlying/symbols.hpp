#pragma once

// Quadratic (Kronecker/Jacobi), cubic and quartic residue symbols.

#include <complex>

#include "lowlying/rings.hpp"

namespace lowlying {

/// e^{2 pi i index / order}, or the distinguished zero value.
class RootOfUnity {
 public:
  constexpr RootOfUnity() = default;
  constexpr RootOfUnity(int order, int index) : order_(order), index_(((index % order) + order) % order) {}

  static constexpr RootOfUnity zero(int order) {
    RootOfUnity z(order, 0);
    z.zero_ = true;
    return z;
  }

  int order() const noexcept { return order_; }
  int index() const noexcept { return index_; }
  bool is_zero() const noexcept { return zero_; }

  RootOfUnity conj() const { return zero_ ? *this : RootOfUnity(order_, -index_); }
  RootOfUnity pow(int e) const;
  std::complex<double> value() const;

  friend RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y);
  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

 private:
  int order_ = 1;
  int index_ = 0;
  bool zero_ = false;
};

/// Kronecker symbol (a/n) for arbitrary integers a, n.
int kronecker(i64 a, i64 n);

/// Jacobi symbol (a/n) for odd positive n.
int jacobi(i64 a, i64 n);

/// Cubic residue symbol (a/n)_3 in Z[w]. Requires gcd(N(n), 3) = 1; throws
/// DomainError otherwise. Units give 1.
RootOfUnity cubic_symbol(const EisensteinInt& a, const EisensteinInt& n);

/// Quartic residue symbol (a/n)_4 in Z[i]. Requires N(n) odd.
RootOfUnity quartic_symbol(const GaussianInt& a, const GaussianInt& n);

/// (a/pi) for a prime pi: a^{(N(pi)-1)/order} reduced mod pi, identified with
/// the unique power of the root of unity it matches.
RootOfUnity cubic_symbol_prime(const EisensteinInt& a, const EisensteinInt& pi);
RootOfUnity quartic_symbol_prime(const GaussianInt& a, const GaussianInt& pi);

/// x^e mod m by square-and-multiply with Euclidean reduction at each step.
template <class T>
QuadInt<T> power_mod(QuadInt<T> x, u64 e, const QuadInt<T>& m) {
  QuadInt<T> result = reduce(QuadInt<T>{1, 0}, m);
  x = reduce(x, m);
  while (e) {
    if (e & 1) result = reduce(result * x, m);
    x = reduce(x * x, m);
    e >>= 1;
  }
  return result;
}

}  // namespace lowlying
