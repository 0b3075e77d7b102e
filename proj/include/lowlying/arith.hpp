#pragma once

// Rational-integer helpers shared by every module: prime sieve, trial
// factorization, Moebius, modular powers and 128-bit formatting.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lowlying {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

/// Immutable sieve of Eratosthenes up to `limit` (inclusive).
class PrimeTable {
 public:
  explicit PrimeTable(i64 limit);

  i64 limit() const noexcept { return limit_; }
  const std::vector<i64>& primes() const noexcept { return primes_; }
  bool is_prime(i64 n) const;

 private:
  i64 limit_;
  std::vector<bool> composite_;
  std::vector<i64> primes_;
};

/// (prime, exponent) pairs in increasing prime order; n >= 1.
std::vector<std::pair<i64, int>> factor_integer(i64 n);

bool is_prime_integer(i64 n);
bool is_squarefree_integer(i64 n);
int moebius(i64 n);
i64 euler_phi(i64 n);
int omega(i64 n);  // number of distinct prime factors

i64 gcd_i64(i64 a, i64 b);
i64 mod_floor(i64 a, i64 m);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

std::string to_string(i128 v);
i128 parse_i128(const std::string& text);

}  // namespace lowlying
