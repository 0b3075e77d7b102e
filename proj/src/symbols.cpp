#include "lowlying/symbols.hpp"

#include <cmath>
#include <numbers>

#include "lowlying/errors.hpp"

namespace lowlying {

RootOfUnity RootOfUnity::pow(int e) const {
  if (zero_) return e == 0 ? RootOfUnity(order_, 0) : *this;
  return RootOfUnity(order_, static_cast<int>((static_cast<long long>(index_) * e) % order_));
}

std::complex<double> RootOfUnity::value() const {
  if (zero_) return {0.0, 0.0};
  switch (order_) {
    case 1:
      return {1.0, 0.0};
    case 2:
      return {index_ == 0 ? 1.0 : -1.0, 0.0};
    case 4: {
      static constexpr std::complex<double> kFourth[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return kFourth[index_];
    }
    default:
      return std::polar(1.0, 2.0 * std::numbers::pi * index_ / order_);
  }
}

RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y) {
  const int order = x.order_ == 1 ? y.order_ : x.order_;
  if (x.order_ != y.order_ && x.order_ != 1 && y.order_ != 1)
    throw DomainError("RootOfUnity: mixing different orders");
  if (x.zero_ || y.zero_) return RootOfUnity::zero(order);
  const int ix = x.order_ == 1 ? 0 : x.index_;
  const int iy = y.order_ == 1 ? 0 : y.index_;
  return RootOfUnity(order, ix + iy);
}

int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw DomainError("jacobi: modulus must be odd and positive");
  a = mod_floor(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const i64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    const i64 r = mod_floor(a, 8);
    if ((v & 1) && (r == 3 || r == 5)) result = -result;
  }
  return result * jacobi(a, n);
}

namespace {

template <class T>
RootOfUnity symbol_prime(const QuadInt<T>& a, const QuadInt<T>& pi, int order) {
  const i64 np = norm(pi);
  if ((np - 1) % order != 0) throw DomainError("residue symbol: N(pi) - 1 not divisible by the order");
  if (divides(pi, a)) return RootOfUnity::zero(order);
  const QuadInt<T> r = power_mod(a, static_cast<u64>((np - 1) / order), pi);
  // compare with every root of unity reduced mod pi; exactly one must match
  // w in Z[w], i in Z[i]: both are the coordinate (0, 1)
  const QuadInt<T> zeta{0, 1};
  int match = -1;
  QuadInt<T> root{1, 0};
  for (int k = 0; k < order; ++k) {
    if (divides(pi, r - root)) {
      if (match >= 0) throw DomainError("residue symbol: ambiguous root identification");
      match = k;
    }
    root = root * zeta;
  }
  if (match < 0) throw DomainError("residue symbol: power is not a root of unity mod pi (pi not prime?)");
  return RootOfUnity(order, match);
}

template <class T>
RootOfUnity symbol_composite(const QuadInt<T>& a, const QuadInt<T>& n, int order) {
  if (is_zero(n)) throw DomainError("residue symbol: zero modulus");
  if (norm_wide(n) % ramified_rational_prime<T>() == 0)
    throw DomainError("residue symbol: modulus norm not coprime to " +
                      std::to_string(ramified_rational_prime<T>()));
  RootOfUnity acc(order, 0);
  for (const auto& [pi, e] : factor_in_ring(n).factors) {
    acc = acc * symbol_prime(a, pi, order).pow(e);
    if (acc.is_zero()) break;
  }
  return acc;
}

}  // namespace

RootOfUnity cubic_symbol_prime(const EisensteinInt& a, const EisensteinInt& pi) { return symbol_prime(a, pi, 3); }
RootOfUnity quartic_symbol_prime(const GaussianInt& a, const GaussianInt& pi) { return symbol_prime(a, pi, 4); }

RootOfUnity cubic_symbol(const EisensteinInt& a, const EisensteinInt& n) { return symbol_composite(a, n, 3); }
RootOfUnity quartic_symbol(const GaussianInt& a, const GaussianInt& n) { return symbol_composite(a, n, 4); }

}  // namespace lowlying
