#include "lowlying/hecke.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "lowlying/errors.hpp"

namespace lowlying {

namespace {

using u128 = unsigned __int128;

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (n % p == 0) return n == p;
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

// Montgomery arithmetic modulo an odd p < 2^62.
struct Montgomery {
  u64 p, neg_inv, r2;

  explicit Montgomery(u64 mod) : p(mod) {
    u64 inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    neg_inv = ~inv + 1;
    const u64 r1 = static_cast<u64>((static_cast<u128>(1) << 64) % p);
    r2 = static_cast<u64>(static_cast<u128>(r1) * r1 % p);
  }
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * neg_inv;
    const u64 r = static_cast<u64>((t + static_cast<u128>(m) * p) >> 64);
    return r >= p ? r - p : r;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 enter(u64 a) const { return mul(a % p, r2); }
  u64 leave(u64 a) const { return reduce(a); }
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 pow(u64 a, u64 e) const {
    u64 r = enter(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

constexpr int kTwoAdicity = 24;

struct NttPrime {
  u64 p;
  u64 root;  // primitive root
};

// Three primes c * 2^24 + 1 just below 2^62, largest first.
const std::vector<NttPrime>& ntt_primes() {
  static const std::vector<NttPrime> primes = [] {
    std::vector<NttPrime> out;
    for (u64 c = ((1ULL << 62) - 1) >> kTwoAdicity; out.size() < 3; --c) {
      const u64 p = (c << kTwoAdicity) + 1;
      if (!miller_rabin(p)) continue;
      std::vector<u64> factors{2};
      u64 rest = c;
      while (rest % 2 == 0) rest /= 2;
      for (u64 d = 3; d * d <= rest; d += 2) {
        if (rest % d) continue;
        factors.push_back(d);
        while (rest % d == 0) rest /= d;
      }
      if (rest > 1) factors.push_back(rest);
      for (u64 g = 2;; ++g) {
        bool generator = true;
        for (u64 f : factors) generator = generator && powmod(g, (p - 1) / f, p) != 1;
        if (generator) {
          out.push_back({p, g});
          break;
        }
      }
    }
    return out;
  }();
  return primes;
}

class Ntt {
 public:
  Ntt(const NttPrime& prime, std::size_t size) : mont_(prime.p), size_(size), roots_(size), inv_roots_(size) {
    const u64 g = mont_.enter(prime.root);
    for (std::size_t len = 2; len <= size_; len <<= 1) {
      const u64 w = mont_.pow(g, (prime.p - 1) / len), wi = mont_.pow(w, prime.p - 2);
      u64 x = mont_.enter(1), xi = x;
      for (std::size_t j = 0; j < len / 2; ++j) {
        roots_[len / 2 + j] = x;
        inv_roots_[len / 2 + j] = xi;
        x = mont_.mul(x, w);
        xi = mont_.mul(xi, wi);
      }
    }
    size_inv_ = mont_.pow(mont_.enter(size_), prime.p - 2);
  }

  const Montgomery& mont() const { return mont_; }

  void forward(std::vector<u64>& a) const { transform(a, roots_); }
  void inverse(std::vector<u64>& a) const {
    transform(a, inv_roots_);
    for (auto& x : a) x = mont_.mul(x, size_inv_);
  }

 private:
  void transform(std::vector<u64>& a, const std::vector<u64>& roots) const {
    const std::size_t n = size_;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t j = 0; j < half; ++j) {
          const u64 u = a[i + j], v = mont_.mul(a[i + j + half], roots[half + j]);
          a[i + j] = mont_.add(u, v);
          a[i + j + half] = mont_.sub(u, v);
        }
      }
    }
  }

  Montgomery mont_;
  std::size_t size_;
  std::vector<u64> roots_, inv_roots_;
  u64 size_inv_ = 0;
};

// prod(1 - q^n)^24 modulo one prime, coefficients 0..terms-1
std::vector<u64> eta24_mod(const NttPrime& prime, std::size_t terms) {
  std::size_t size = 1;
  while (size < 2 * terms) size <<= 1;
  const Ntt ntt(prime, size);
  const Montgomery& mont = ntt.mont();

  std::vector<u64> base(size, 0);
  const u64 one = mont.enter(1), minus_one = mont.enter(prime.p - 1);
  for (i64 k = 0;; ++k) {
    bool any = false;
    for (i64 kk : {k, -k}) {
      if (k == 0 && kk < 0) continue;
      const i64 e = kk * (3 * kk - 1) / 2;
      if (e < static_cast<i64>(terms)) {
        base[static_cast<std::size_t>(e)] = k % 2 == 0 ? one : minus_one;
        any = true;
      }
    }
    if (!any) break;
  }

  auto multiply = [&](const std::vector<u64>& fa, const std::vector<u64>& fb) {
    std::vector<u64> out(size);
    for (std::size_t i = 0; i < size; ++i) out[i] = mont.mul(fa[i], fb[i]);
    ntt.inverse(out);
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(terms), out.end(), 0);
    return out;
  };

  std::vector<u64> power = base;  // P^1
  for (int i = 0; i < 3; ++i) {   // P^2, P^4, P^8
    ntt.forward(power);
    power = multiply(power, power);
  }
  std::vector<u64> f8 = power;
  ntt.forward(f8);
  std::vector<u64> p16 = multiply(f8, f8);
  ntt.forward(p16);
  std::vector<u64> p24 = multiply(p16, f8);
  p24.resize(terms);
  for (auto& x : p24) x = mont.leave(x);
  return p24;
}

i128 centred_crt(u64 r1, u64 r2, u64 p1, u64 p2) {
  const u64 inv = powmod(p1 % p2, p2 - 2, p2);
  const u64 diff = r2 >= r1 % p2 ? r2 - r1 % p2 : r2 + p2 - r1 % p2;
  const u64 k = mulmod(diff, inv, p2);
  const u128 M = static_cast<u128>(p1) * p2;
  const u128 x = static_cast<u128>(r1) + static_cast<u128>(p1) * k;
  return x > M / 2 ? -static_cast<i128>(M - x) : static_cast<i128>(x);
}

}  // namespace

std::vector<i128> tau_series(i64 N) {
  if (N < 1) throw DomainError("tau_series: N must be positive");
  if (N > kMaxTauN) throw CapacityError("tau_series: N above " + std::to_string(kMaxTauN));
  const auto& primes = ntt_primes();
  const auto terms = static_cast<std::size_t>(N);
  std::vector<std::vector<u64>> residues;
  for (const auto& prime : primes) residues.push_back(eta24_mod(prime, terms));

  std::vector<i128> tau(terms + 1, 0);
  const u64 p1 = primes[0].p, p2 = primes[1].p, p3 = primes[2].p;
  for (std::size_t i = 0; i < terms; ++i) {
    const i128 v = centred_crt(residues[0][i], residues[1][i], p1, p2);
    i128 check = v % static_cast<i128>(p3);
    if (check < 0) check += static_cast<i128>(p3);
    if (static_cast<u64>(check) != residues[2][i])
      throw CapacityError("tau_series: coefficient " + std::to_string(i + 1) + " exceeds the reconstruction range");
    tau[i + 1] = v;
  }
  return tau;
}

EigenformCoeffs::EigenformCoeffs(i64 N) : EigenformCoeffs(tau_series(N), 12) {}

EigenformCoeffs::EigenformCoeffs(std::vector<i128> coeffs, int weight) : coeffs_(std::move(coeffs)), weight_(weight) {
  if (coeffs_.size() < 2 || coeffs_[1] != 1) throw DomainError("EigenformCoeffs: c(1) must be 1");
  if (weight_ < 2 || weight_ % 2) throw DomainError("EigenformCoeffs: weight must be even and positive");
  normalized_.assign(coeffs_.size(), 0.0);
  const double shift = (weight_ - 1) / 2.0;
  for (std::size_t n = 1; n < coeffs_.size(); ++n)
    normalized_[n] = static_cast<double>(static_cast<long double>(coeffs_[n]) /
                                         std::pow(static_cast<long double>(n), static_cast<long double>(shift)));
}

i128 EigenformCoeffs::raw(i64 n) const {
  if (n < 0 || n > size()) throw CapacityError("EigenformCoeffs: n = " + std::to_string(n) + " outside the table");
  return coeffs_[static_cast<std::size_t>(n)];
}

double EigenformCoeffs::a(i64 n) const {
  if (n < 1 || n > size()) throw CapacityError("EigenformCoeffs: n = " + std::to_string(n) + " outside the table");
  return normalized_[static_cast<std::size_t>(n)];
}

double coeff_normalized(const EigenformCoeffs& f, i64 n) { return f.a(n); }

double coeff_prime_power(double a_p, int j) {
  if (j < 0) throw DomainError("coeff_prime_power: j must be non-negative");
  double prev = 2.0, cur = a_p;
  if (j == 0) return prev;
  for (int i = 1; i < j; ++i) {
    const double next = a_p * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

CoeffStats coeff_stat_checks(const EigenformCoeffs& f, double x) {
  if (x < 2) throw DomainError("coeff_stat_checks: x must be at least 2");
  const auto limit = static_cast<i64>(std::floor(x));
  if (limit > f.size()) throw CapacityError("coeff_stat_checks: coefficients only known up to " + std::to_string(f.size()));
  CoeffStats s;
  s.x = x;
  const PrimeTable table(limit);
  for (i64 p : table.primes()) {
    const double lp = std::log(static_cast<double>(p));
    const double ap = f.a(p);
    s.mertens_sum += lp / static_cast<double>(p);
    s.square_sum += ap * ap * lp * lp / static_cast<double>(p);
    ++s.primes;
  }
  s.mertens_main = std::log(x);
  s.square_main = std::log(x) * std::log(x) / 2.0;
  s.square_ratio = s.square_sum / s.square_main;
  return s;
}

void write_tau_csv(std::ostream& os, const std::vector<i128>& tau) {
  os << "n,tau\n";
  for (std::size_t n = 1; n < tau.size(); ++n) os << n << ',' << to_string(tau[n]) << '\n';
}

std::vector<i128> read_tau_csv(std::istream& is) {
  std::vector<i128> tau{0};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == "n,tau") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("read_tau_csv: malformed row '" + line + "'");
    const i64 n = std::stoll(line.substr(0, comma));
    if (n != static_cast<i64>(tau.size())) throw DomainError("read_tau_csv: rows must run 1, 2, 3, ...");
    tau.push_back(parse_i128(line.substr(comma + 1)));
  }
  return tau;
}

}  // namespace lowlying
