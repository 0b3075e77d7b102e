#include "lowlying/rings.hpp"

#include <algorithm>
#include <cmath>

#include "lowlying/errors.hpp"

namespace lowlying {

namespace {

// floor(n / d) for d > 0.
i128 floor_div(i128 n, i128 d) {
  i128 q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

// nearest integer to n / d for d > 0 (ties rounded up).
i128 round_div(i128 n, i128 d) { return floor_div(2 * n + d, 2 * d); }

template <class T>
std::pair<i128, i128> times_conj(const QuadInt<T>& x, const QuadInt<T>& y) {
  // coordinates of x * conj(y) in 128-bit arithmetic
  const QuadInt<T> cy = conj(y);
  const i128 ac = static_cast<i128>(x.a) * cy.a;
  const i128 bd = static_cast<i128>(x.b) * cy.b;
  const i128 cross = static_cast<i128>(x.a) * cy.b + static_cast<i128>(x.b) * cy.a;
  if constexpr (QuadInt<T>::kEisenstein) {
    return {ac - bd, cross - bd};
  } else {
    return {ac - bd, cross};
  }
}

i64 isqrt(i64 n) {
  if (n <= 0) return 0;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

template <class T>
std::pair<QuadInt<T>, QuadInt<T>> divmod(const QuadInt<T>& x, const QuadInt<T>& y) {
  if (is_zero(y)) throw DomainError("divmod: division by zero");
  const i128 n = norm_wide(y);
  const auto [u, v] = times_conj(x, y);
  const QuadInt<T> q{detail::narrow(round_div(u, n)), detail::narrow(round_div(v, n))};
  return {q, x - q * y};
}

template <class T>
bool divides(const QuadInt<T>& y, const QuadInt<T>& x) {
  if (is_zero(y)) return is_zero(x);
  const i128 n = norm_wide(y);
  const auto [u, v] = times_conj(x, y);
  return u % n == 0 && v % n == 0;
}

template <class T>
QuadInt<T> exact_div(const QuadInt<T>& x, const QuadInt<T>& y) {
  if (is_zero(y)) throw DomainError("exact_div: division by zero");
  const i128 n = norm_wide(y);
  const auto [u, v] = times_conj(x, y);
  if (u % n != 0 || v % n != 0) throw DomainError("exact_div: divisor does not divide");
  return {detail::narrow(u / n), detail::narrow(v / n)};
}

template <class T>
QuadInt<T> euclid_gcd(QuadInt<T> x, QuadInt<T> y) {
  if (is_zero(x) && is_zero(y)) throw DomainError("euclid_gcd: both arguments zero");
  while (!is_zero(y)) {
    QuadInt<T> r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x;
}

template <class T>
QuadInt<T> primary_associate(const QuadInt<T>& x) {
  if (is_zero(x)) throw DomainError("primary_associate: zero has no primary associate");
  if (norm_wide(x) % ramified_rational_prime<T>() == 0)
    throw DomainError("primary_associate: norm shares a factor with the ramified prime");
  for (const auto& u : units<T>()) {
    QuadInt<T> cand = u * x;
    if (is_primary(cand)) return cand;
  }
  throw DomainError("primary_associate: no associate is primary");
}

template <class T>
std::pair<QuadInt<T>, QuadInt<T>> split_prime(i64 p) {
  if (classify_rational_prime<T>(p) != PrimeKind::kSplit)
    throw DomainError("split_prime: " + std::to_string(p) + " does not split");
  QuadInt<T> found{0, 0};
  bool ok = false;
  if constexpr (QuadInt<T>::kEisenstein) {
    // a^2 - a b + b^2 = p  <=>  (2a - b)^2 + 3 b^2 = 4p
    for (i64 b = 1; 3 * b * b <= 4 * p && !ok; ++b) {
      const i64 rest = 4 * p - 3 * b * b;
      const i64 r = isqrt(rest);
      if (r * r != rest || ((r + b) % 2) != 0) continue;
      found = {(b + r) / 2, b};
      ok = true;
    }
  } else {
    for (i64 b = 1; b * b <= p && !ok; ++b) {
      const i64 rest = p - b * b;
      const i64 r = isqrt(rest);
      if (r * r != rest) continue;
      found = {r, b};
      ok = true;
    }
  }
  if (!ok) throw DomainError("split_prime: norm equation has no solution");
  QuadInt<T> first = primary_associate(found);
  QuadInt<T> second = primary_associate(conj(found));
  if (std::make_pair(second.a, second.b) < std::make_pair(first.a, first.b)) std::swap(first, second);
  return {first, second};
}

template <class T>
QuadInt<T> canonical_prime(const QuadInt<T>& pi) {
  if (norm_wide(pi) % ramified_rational_prime<T>() == 0) return ramified_prime<T>();
  return primary_associate(pi);
}

template <class T>
QuadInt<T> RingFactorization<T>::product() const {
  QuadInt<T> acc = unit;
  for (const auto& [pi, e] : factors)
    for (int k = 0; k < e; ++k) acc = acc * pi;
  return acc;
}

template <class T>
RingFactorization<T> factor_in_ring(const QuadInt<T>& x, i64 max_norm) {
  if (is_zero(x)) throw DomainError("factor_in_ring: zero has no factorization");
  const i128 nx = norm_wide(x);
  if (nx > max_norm) throw CapacityError("factor_in_ring: norm exceeds configured bound");
  RingFactorization<T> out;
  QuadInt<T> rest = x;
  auto strip = [&](const QuadInt<T>& pi) {
    int e = 0;
    while (divides(pi, rest)) {
      rest = exact_div(rest, pi);
      ++e;
    }
    if (e > 0) out.factors.emplace_back(pi, e);
  };
  for (const auto& [p, e] : factor_integer(static_cast<i64>(nx))) {
    switch (classify_rational_prime<T>(p)) {
      case PrimeKind::kRamified:
        strip(ramified_prime<T>());
        break;
      case PrimeKind::kInert:
        strip(primary_associate(QuadInt<T>{p, 0}));
        break;
      case PrimeKind::kSplit: {
        const auto [p1, p2] = split_prime<T>(p);
        strip(p1);
        strip(p2);
        break;
      }
    }
  }
  if (!is_unit(rest)) throw DomainError("factor_in_ring: cofactor is not a unit (internal error)");
  out.unit = rest;
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& l, const auto& r) { return canonical_less(l.first, r.first); });
  return out;
}

template <class T>
bool is_squarefree_ring(const QuadInt<T>& x) {
  for (const auto& [pi, e] : factor_in_ring(x).factors)
    if (e > 1) return false;
  return true;
}

template <class T>
bool has_rational_prime_divisor(const QuadInt<T>& x) {
  if (is_zero(x)) return true;
  for (const auto& [p, e] : factor_integer(norm(x)))
    if (x.a % p == 0 && x.b % p == 0) return true;
  return false;
}

template <class T>
int moebius_ring(const QuadInt<T>& x) {
  int mu = 1;
  for (const auto& [pi, e] : factor_in_ring(x).factors) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

template <class T>
std::vector<PrimeIdeal<T>> enumerate_prime_ideals(i64 bound) {
  std::vector<PrimeIdeal<T>> out;
  if (bound < 2) return out;
  PrimeTable table(bound);
  for (i64 p : table.primes()) {
    switch (classify_rational_prime<T>(p)) {
      case PrimeKind::kRamified:
        out.push_back({ramified_prime<T>(), p});
        break;
      case PrimeKind::kSplit: {
        const auto [p1, p2] = split_prime<T>(p);
        out.push_back({p1, p});
        out.push_back({p2, p});
        break;
      }
      case PrimeKind::kInert:
        if (p <= bound / p) out.push_back({primary_associate(QuadInt<T>{p, 0}), p * p});
        break;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) { return canonical_less(l.generator, r.generator); });
  return out;
}

template <class T>
std::vector<QuadInt<T>> enumerate_primary(i64 bound) {
  std::vector<QuadInt<T>> out;
  // N(a + b w) >= (a^2 + b^2) / 2 and N(a + b i) = a^2 + b^2
  const i64 r = isqrt(2 * bound) + 1;
  for (i64 a = -r; a <= r; ++a) {
    for (i64 b = -r; b <= r; ++b) {
      const QuadInt<T> x{a, b};
      const i128 n = norm_wide(x);
      if (n == 0 || n > bound) continue;
      if (n % ramified_rational_prime<T>() == 0) continue;
      if (is_primary(x)) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r2) { return canonical_less(l, r2); });
  return out;
}

#define LOWLYING_INSTANTIATE_RINGS(T)                                                          \
  template std::pair<QuadInt<T>, QuadInt<T>> divmod(const QuadInt<T>&, const QuadInt<T>&);     \
  template bool divides(const QuadInt<T>&, const QuadInt<T>&);                                 \
  template QuadInt<T> exact_div(const QuadInt<T>&, const QuadInt<T>&);                         \
  template QuadInt<T> euclid_gcd(QuadInt<T>, QuadInt<T>);                                      \
  template QuadInt<T> primary_associate(const QuadInt<T>&);                                    \
  template std::pair<QuadInt<T>, QuadInt<T>> split_prime<T>(i64);                              \
  template QuadInt<T> canonical_prime(const QuadInt<T>&);                                      \
  template struct RingFactorization<T>;                                                        \
  template RingFactorization<T> factor_in_ring(const QuadInt<T>&, i64);                        \
  template bool is_squarefree_ring(const QuadInt<T>&);                                         \
  template bool has_rational_prime_divisor(const QuadInt<T>&);                                 \
  template int moebius_ring(const QuadInt<T>&);                                                \
  template std::vector<PrimeIdeal<T>> enumerate_prime_ideals<T>(i64);                          \
  template std::vector<QuadInt<T>> enumerate_primary<T>(i64);

LOWLYING_INSTANTIATE_RINGS(EisensteinTag)
LOWLYING_INSTANTIATE_RINGS(GaussianTag)

#undef LOWLYING_INSTANTIATE_RINGS

}  // namespace lowlying
