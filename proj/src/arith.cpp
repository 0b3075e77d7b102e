#include "lowlying/arith.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "lowlying/errors.hpp"

namespace lowlying {

PrimeTable::PrimeTable(i64 limit) : limit_(limit < 1 ? 1 : limit) {
  composite_.assign(static_cast<std::size_t>(limit_) + 1, false);
  composite_[0] = true;
  composite_[1] = true;
  for (i64 p = 2; p * p <= limit_; ++p) {
    if (composite_[static_cast<std::size_t>(p)]) continue;
    for (i64 m = p * p; m <= limit_; m += p) composite_[static_cast<std::size_t>(m)] = true;
  }
  for (i64 n = 2; n <= limit_; ++n)
    if (!composite_[static_cast<std::size_t>(n)]) primes_.push_back(n);
}

bool PrimeTable::is_prime(i64 n) const {
  if (n < 0 || n > limit_) throw CapacityError("PrimeTable::is_prime: argument beyond sieve limit");
  return !composite_[static_cast<std::size_t>(n)];
}

std::vector<std::pair<i64, int>> factor_integer(i64 n) {
  if (n < 1) throw DomainError("factor_integer: n must be positive");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime_integer(i64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (i64 d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool is_squarefree_integer(i64 n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factor_integer(n < 0 ? -n : n))
    if (e > 1) return false;
  return true;
}

int moebius(i64 n) {
  if (n < 1) throw DomainError("moebius: n must be positive");
  int mu = 1;
  for (const auto& [p, e] : factor_integer(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

i64 euler_phi(i64 n) {
  i64 phi = n;
  for (const auto& [p, e] : factor_integer(n)) phi = phi / p * (p - 1);
  return phi;
}

int omega(i64 n) { return static_cast<int>(factor_integer(n).size()); }

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

i128 parse_i128(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  if (i == text.size()) throw std::invalid_argument("parse_i128: empty number");
  i128 v = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("parse_i128: bad digit in '" + text + "'");
    v = v * 10 + (c - '0');
  }
  return neg ? -v : v;
}

}  // namespace lowlying
