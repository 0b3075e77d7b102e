#pragma once

// Exact arithmetic in the Eisenstein integers Z[w] (w = e^{2 pi i/3}) and the
// Gaussian integers Z[i]. Both rings are norm-Euclidean, which is all the
// machinery the residue symbols and character families need.

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lowlying/arith.hpp"
#include "lowlying/errors.hpp"

namespace lowlying {

struct EisensteinTag {};
struct GaussianTag {};

/// a + b*w (Eisenstein) or a + b*i (Gaussian).
template <class Tag>
struct QuadInt {
  i64 a = 0;
  i64 b = 0;

  constexpr QuadInt() = default;
  constexpr QuadInt(i64 a_, i64 b_ = 0) : a(a_), b(b_) {}  // NOLINT: integers embed

  static constexpr bool kEisenstein = std::is_same_v<Tag, EisensteinTag>;

  friend constexpr bool operator==(const QuadInt&, const QuadInt&) = default;
};

using EisensteinInt = QuadInt<EisensteinTag>;
using GaussianInt = QuadInt<GaussianTag>;

namespace detail {
inline i64 narrow(i128 v) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
    throw CapacityError("ring arithmetic overflow beyond 64-bit coordinates");
  return static_cast<i64>(v);
}
}  // namespace detail

template <class T>
QuadInt<T> operator+(const QuadInt<T>& x, const QuadInt<T>& y) {
  return {detail::narrow(static_cast<i128>(x.a) + y.a), detail::narrow(static_cast<i128>(x.b) + y.b)};
}
template <class T>
QuadInt<T> operator-(const QuadInt<T>& x, const QuadInt<T>& y) {
  return {detail::narrow(static_cast<i128>(x.a) - y.a), detail::narrow(static_cast<i128>(x.b) - y.b)};
}
template <class T>
QuadInt<T> operator-(const QuadInt<T>& x) {
  return {-x.a, -x.b};
}
template <class T>
QuadInt<T> operator*(const QuadInt<T>& x, const QuadInt<T>& y) {
  const i128 ac = static_cast<i128>(x.a) * y.a;
  const i128 bd = static_cast<i128>(x.b) * y.b;
  const i128 cross = static_cast<i128>(x.a) * y.b + static_cast<i128>(x.b) * y.a;
  if constexpr (QuadInt<T>::kEisenstein) {
    // w^2 = -1 - w
    return {detail::narrow(ac - bd), detail::narrow(cross - bd)};
  } else {
    return {detail::narrow(ac - bd), detail::narrow(cross)};
  }
}

template <class T>
QuadInt<T> conj(const QuadInt<T>& x) {
  if constexpr (QuadInt<T>::kEisenstein) {
    return {x.a - x.b, -x.b};  // conj(w) = w^2 = -1 - w
  } else {
    return {x.a, -x.b};
  }
}

/// Exact norm as a 128-bit value.
template <class T>
i128 norm_wide(const QuadInt<T>& x) {
  const i128 a = x.a, b = x.b;
  if constexpr (QuadInt<T>::kEisenstein) {
    return a * a - a * b + b * b;
  } else {
    return a * a + b * b;
  }
}

/// Norm; throws CapacityError beyond 2^63.
template <class T>
i64 norm(const QuadInt<T>& x) {
  return detail::narrow(norm_wide(x));
}

template <class T>
std::complex<double> to_complex(const QuadInt<T>& x) {
  if constexpr (QuadInt<T>::kEisenstein) {
    return {static_cast<double>(x.a) - 0.5 * static_cast<double>(x.b),
            0.8660254037844386467637 * static_cast<double>(x.b)};
  } else {
    return {static_cast<double>(x.a), static_cast<double>(x.b)};
  }
}

template <class T>
std::vector<QuadInt<T>> units() {
  if constexpr (QuadInt<T>::kEisenstein) {
    // successive powers of the primitive sixth root 1 + w = -w^2
    return {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  } else {
    return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  }
}

template <class T>
bool is_unit(const QuadInt<T>& x) {
  return norm_wide(x) == 1;
}

template <class T>
bool is_zero(const QuadInt<T>& x) {
  return x.a == 0 && x.b == 0;
}

/// Quotient and remainder with N(remainder) < N(divisor).
template <class T>
std::pair<QuadInt<T>, QuadInt<T>> divmod(const QuadInt<T>& x, const QuadInt<T>& y);

/// True iff y divides x exactly (y nonzero).
template <class T>
bool divides(const QuadInt<T>& y, const QuadInt<T>& x);

/// Exact quotient; throws DomainError if y does not divide x.
template <class T>
QuadInt<T> exact_div(const QuadInt<T>& x, const QuadInt<T>& y);

/// x mod y (remainder of nearest-rounding division).
template <class T>
QuadInt<T> reduce(const QuadInt<T>& x, const QuadInt<T>& y) {
  return divmod(x, y).second;
}

/// A greatest common divisor (any associate). Throws DomainError for (0, 0).
template <class T>
QuadInt<T> euclid_gcd(QuadInt<T> x, QuadInt<T> y);

/// Modulus defining "primary": 3 in Z[w], (1+i)^3 = -2+2i in Z[i].
template <class T>
QuadInt<T> primary_modulus() {
  if constexpr (QuadInt<T>::kEisenstein) {
    return {3, 0};
  } else {
    return {-2, 2};
  }
}

/// The prime above the ramified rational prime: 1 - w, resp. 1 + i.
template <class T>
QuadInt<T> ramified_prime() {
  if constexpr (QuadInt<T>::kEisenstein) {
    return {1, -1};
  } else {
    return {1, 1};
  }
}

/// The rational prime that ramifies: 3, resp. 2.
template <class T>
constexpr i64 ramified_rational_prime() {
  if constexpr (QuadInt<T>::kEisenstein) {
    return 3;
  } else {
    return 2;
  }
}

template <class T>
bool is_primary(const QuadInt<T>& x) {
  return divides(primary_modulus<T>(), x - QuadInt<T>{1, 0});
}

/// The unique associate congruent to 1 modulo the primary modulus.
/// Throws DomainError when N(x) shares a factor with 3 (resp. 2) or x = 0.
template <class T>
QuadInt<T> primary_associate(const QuadInt<T>& x);

enum class PrimeKind { kRamified, kSplit, kInert };

/// Splitting type of a rational prime: p = 3 (resp. 2) ramifies; p = 1 mod 3
/// (resp. mod 4) splits; the rest stay inert.
template <class T>
PrimeKind classify_rational_prime(i64 p) {
  if (p == ramified_rational_prime<T>()) return PrimeKind::kRamified;
  if constexpr (QuadInt<T>::kEisenstein) {
    return p % 3 == 1 ? PrimeKind::kSplit : PrimeKind::kInert;
  } else {
    return p % 4 == 1 ? PrimeKind::kSplit : PrimeKind::kInert;
  }
}

/// The two non-associate primary primes of norm p for a split prime p, in
/// canonical (a, b) order. Found by bounded search over the norm equation.
template <class T>
std::pair<QuadInt<T>, QuadInt<T>> split_prime(i64 p);

/// Canonical generator of a prime element: primary associate where it
/// exists, the fixed ramified generator otherwise.
template <class T>
QuadInt<T> canonical_prime(const QuadInt<T>& pi);

template <class T>
struct RingFactorization {
  QuadInt<T> unit{1, 0};
  std::vector<std::pair<QuadInt<T>, int>> factors;  // (canonical prime, exponent)

  QuadInt<T> product() const;
};

/// Largest norm factor_in_ring accepts (trial division on the norm).
inline constexpr i64 kMaxFactorNorm = 1'000'000'000'000LL;

/// Complete factorization sorted by (norm, a, b). Throws CapacityError when
/// N(x) > max_norm and DomainError for x = 0.
template <class T>
RingFactorization<T> factor_in_ring(const QuadInt<T>& x, i64 max_norm = kMaxFactorNorm);

template <class T>
bool is_squarefree_ring(const QuadInt<T>& x);

/// True iff some rational prime p (> 1) divides x in the ring.
template <class T>
bool has_rational_prime_divisor(const QuadInt<T>& x);

/// Moebius function on nonzero ring elements (0 unless square-free).
template <class T>
int moebius_ring(const QuadInt<T>& x);

template <class T>
struct PrimeIdeal {
  QuadInt<T> generator;
  i64 norm;
};

/// One canonical generator per prime ideal of norm <= bound, sorted by
/// (norm, a, b).
template <class T>
std::vector<PrimeIdeal<T>> enumerate_prime_ideals(i64 bound);

/// All primary elements with norm <= bound (units excluded unless primary),
/// sorted by (norm, a, b). Brute-force scan of the (a, b) grid.
template <class T>
std::vector<QuadInt<T>> enumerate_primary(i64 bound);

/// Deterministic total order: (norm, a, b).
template <class T>
bool canonical_less(const QuadInt<T>& x, const QuadInt<T>& y) {
  const i128 nx = norm_wide(x), ny = norm_wide(y);
  if (nx != ny) return nx < ny;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

template <class T>
std::string to_string(const QuadInt<T>& x) {
  const char* sym = QuadInt<T>::kEisenstein ? "w" : "i";
  if (x.b == 0) return std::to_string(x.a);
  std::string s = x.a != 0 ? std::to_string(x.a) : "";
  if (x.b > 0 && x.a != 0) s += "+";
  if (x.b == -1) s += "-";
  else if (x.b != 1) s += std::to_string(x.b);
  return s + sym;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const QuadInt<T>& x) {
  return os << to_string(x);
}

}  // namespace lowlying
