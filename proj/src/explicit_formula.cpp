#include "lowlying/explicit_formula.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <thread>

#include "lowlying/errors.hpp"
#include "lowlying/gauss_sums.hpp"
#include "lowlying/symbols.hpp"

namespace lowlying {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

void require_primes(const PrimeTable& primes, double bound, const char* who) {
  if (static_cast<double>(primes.limit()) < std::floor(bound))
    throw CapacityError(std::string(who) + ": prime table ends at " + std::to_string(primes.limit()) +
                        ", support needs " + std::to_string(static_cast<i64>(std::floor(bound))));
}

// (2 log Q / L) phi_hat(0) + 2 kappa A(kappa/2 + lambda, kappa)
//   - (1/L) sum_{p^j} log p p^{-j/2} phi_hat(j log p / L) 2 Re local(p, j)
double weil_exact(double log_Q, double kappa, double lambda, double L, const TestFunction& phi,
                  const PrimeTable& primes, const std::function<cd(i64, int)>& local) {
  const double edge = phi.sigma() * L;
  require_primes(primes, std::exp(edge), "explicit formula");
  double sum = 0.0;
  for (i64 p : primes.primes()) {
    const double lp = std::log(static_cast<double>(p));
    if (lp >= edge) break;
    for (int j = 1; j * lp < edge; ++j) {
      const double w = phi.phi_hat(j * lp / L);
      if (w == 0.0) continue;
      sum += lp * std::exp(-0.5 * j * lp) * w * 2.0 * local(p, j).real();
    }
  }
  return 2.0 * log_Q / L * phi.phi_hat(0.0) + 2.0 * kappa * archimedean_term(phi, L, kappa / 2 + lambda, kappa) -
         sum / L;
}

template <class F>
void for_each_block(i64 count, int workers, F&& body) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<i64>(count, 1))));
  if (workers == 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  const i64 chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const i64 lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo < hi) pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

double ExperimentConfig::plateau() const { return U > 0.0 ? U : std::log(static_cast<double>(X)); }

i64 ExperimentConfig::prime_cutoff() const {
  return Y > 0 ? Y : static_cast<i64>(std::floor(std::pow(static_cast<double>(X), 2.0 * sigma)));
}

ZeroSide zero_side(const ZeroList& zeros, const TestFunction& phi, double scaling, double tail_limit) {
  ZeroSide out;
  for (double g : zeros.gammas) out.value += phi.phi(g * scaling / (2.0 * kPi));
  const double q = static_cast<double>(zeros.conductor);
  const int degree = zeros.degree;
  auto density = [&](double t) {
    return std::max(0.0, (std::log(q) + degree * std::log(t / (2.0 * kPi))) / kPi) *
           phi.envelope(t * scaling / (2.0 * kPi));
  };
  if (zeros.T_max > 0.0) {
    boost::math::quadrature::exp_sinh<double> integrator;
    out.tail = integrator.integrate([&](double u) { return density(zeros.T_max + u); }, 0.0,
                                    std::numeric_limits<double>::infinity());
  }
  if (out.tail > tail_limit)
    throw ConvergenceError("zero_side: zeros above T = " + std::to_string(zeros.T_max) + " may contribute " +
                               std::to_string(out.tail),
                           out.tail);
  return out;
}

double archimedean_term(const TestFunction& phi, double L, double c, double beta) {
  auto g = [&](double u) { return phi.phi_hat(u / L) / L; };
  const double g0 = g(0.0);
  const double edge = phi.sigma() * L / beta;
  auto kernel = [&](double t) { return std::exp(-c * t) / -std::expm1(-t); };
  auto body = [&](double t) { return t == 0.0 ? 0.0 : (g0 - g(beta * t)) * kernel(t); };
  double inner = 0.0;
  const int pieces = std::max(1, static_cast<int>(std::ceil(edge / 4.0)));
  for (int i = 0; i < pieces; ++i)
    inner += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(body, edge * i / pieces,
                                                                           edge * (i + 1) / pieces, 15, 1e-14);
  double tail = 0.0;
  for (int k = 0;; ++k) {
    const double term = std::exp(-(c + k) * edge) / (c + k);
    tail += term;
    if (term < 1e-18 * std::abs(tail) || k > 100000) break;
  }
  return g0 * boost::math::digamma(c) + inner + g0 * tail;
}

double prime_side_dirichlet(const DirichletChar& chi, const TestFunction& phi, double X, bool exact,
                            const PrimeTable& primes) {
  if (!(X > 1.0)) throw DomainError("prime_side_dirichlet: X must exceed 1");
  const double L = std::log(X);
  if (exact) {
    if (!chi.primitive) throw DomainError("prime_side_dirichlet: exact mode needs a primitive character");
    const double log_Q = 0.5 * std::log(static_cast<double>(chi.modulus) / kPi);
    return weil_exact(log_Q, 0.5, chi.parity / 2.0, L, phi, primes,
                      [&chi](i64 p, int j) { return std::pow(chi.value(p), j); });
  }
  require_primes(primes, std::exp(phi.sigma() * L), "prime_side_dirichlet");
  double first = 0.0, second = 0.0;
  for (i64 p : primes.primes()) {
    const double lp = std::log(static_cast<double>(p));
    if (lp >= phi.sigma() * L) break;
    const cd v = chi.value(p);
    first += lp / std::sqrt(static_cast<double>(p)) * phi.phi_hat(lp / L) * 2.0 * v.real();
    second += lp / static_cast<double>(p) * phi.phi_hat(2.0 * lp / L) * 2.0 * (v * v).real();
  }
  return phi.phi_hat(0.0) - first / L - second / L;
}

IdealPrimeSide prime_side_ideal(const EisensteinInt& c, const TestFunction& phi, double X) {
  if (!(X > 1.0)) throw DomainError("prime_side_ideal: X must exceed 1");
  const double L = std::log(X);
  const i64 bound = static_cast<i64>(std::floor(std::exp(phi.sigma() * L)));
  if (bound > 100'000'000) throw CapacityError("prime_side_ideal: ideal norms above 1e8");
  IdealPrimeSide out;
  for (const auto& ideal : enumerate_prime_ideals<EisensteinTag>(bound)) {
    if (ideal.norm % 3 == 0) continue;
    const double ln = std::log(static_cast<double>(ideal.norm));
    const RootOfUnity chi = cubic_symbol(ideal.generator, c);
    if (chi.is_zero()) continue;
    const cd v = chi.value();
    out.first += ln / std::sqrt(static_cast<double>(ideal.norm)) * phi.phi_hat(ln / L) * 2.0 * v.real();
    out.second += ln / static_cast<double>(ideal.norm) * phi.phi_hat(2.0 * ln / L) * 2.0 * (v * v).real();
  }
  out.first /= L;
  out.second /= L;
  out.value = phi.phi_hat(0.0) - out.first - out.second;
  return out;
}

TwistPrimeSide prime_side_twist(i64 d, const TestFunction& phi, double X, const EigenformCoeffs& f, bool exact,
                                const PrimeTable& primes) {
  if (d < 1 || d % 2 == 0 || !is_squarefree_integer(d)) throw DomainError("prime_side_twist: d must be odd and square-free");
  if (!(X > 1.0)) throw DomainError("prime_side_twist: X must exceed 1");
  const double L = std::log(X);
  const double edge = std::exp(2.0 * phi.sigma() * L);
  require_primes(primes, edge, "prime_side_twist");
  if (static_cast<double>(f.size()) < std::floor(edge))
    throw CapacityError("prime_side_twist: coefficients end at " + std::to_string(f.size()));
  TwistPrimeSide out;
  for (i64 p : primes.primes()) {
    const double lp = std::log(static_cast<double>(p));
    if (lp >= 2.0 * phi.sigma() * L) break;
    out.S_term += f.a(p) * lp / std::sqrt(static_cast<double>(p)) * kronecker(8 * d, p) * phi.phi_hat(lp / (2.0 * L));
  }
  out.S_term /= L;
  if (!exact) {
    out.value = phi.phi_hat(0.0) + 0.5 * phi.phi_hat_integral() - out.S_term;
    return out;
  }
  const double log_Q = std::log(8.0 * static_cast<double>(d) / (2.0 * kPi));
  const double lambda = (f.weight() - 1) / 2.0;
  out.value = weil_exact(log_Q, 1.0, lambda, 2.0 * L, phi, primes, [&](i64 p, int j) -> cd {
    const int chi = kronecker(8 * d, p);
    if (chi == 0) return 0.0;
    return coeff_prime_power(f.a(p), j) * (j % 2 == 1 ? chi : 1);
  });
  return out;
}

FamilyPrimeSum family_prime_sum(const ExperimentConfig& cfg, const EigenformCoeffs& f, int workers) {
  if (cfg.X < 2) throw DomainError("family_prime_sum: X must be at least 2");
  if (cfg.X > 10'000) throw CapacityError("family_prime_sum: X above 1e4");
  const i64 Y = cfg.prime_cutoff();
  if (Y > 1'000'000) throw CapacityError("family_prime_sum: Y above 1e6");
  if (f.size() < Y) throw CapacityError("family_prime_sum: coefficients end at " + std::to_string(f.size()));
  const TestFunction phi = cfg.test_function();
  const SmoothWeight weight(cfg.plateau());
  const double L = std::log(static_cast<double>(cfg.X));

  const PrimeTable table(std::max<i64>(Y, 2));
  std::vector<i64> ps;
  std::vector<double> w;
  for (i64 p : table.primes()) {
    if (p == 2) continue;  // (8d/2) = 0
    const double lp = std::log(static_cast<double>(p));
    const double v = f.a(p) * lp / std::sqrt(static_cast<double>(p)) * phi.phi_hat(lp / (2.0 * L));
    if (v == 0.0) continue;
    ps.push_back(p);
    w.push_back(v);
  }

  std::vector<i64> ds;
  for (i64 d = cfg.X + 1; d < 2 * cfg.X; ++d)
    if (d % 2 == 1 && weight(static_cast<double>(d) / static_cast<double>(cfg.X)) != 0.0) ds.push_back(d);
  std::vector<double> inner(ds.size());
  for_each_block(static_cast<i64>(ds.size()), workers, [&](i64 lo, i64 hi) {
    for (i64 i = lo; i < hi; ++i) {
      const i64 d = ds[static_cast<std::size_t>(i)];
      double s = 0.0;
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const int chi = jacobi(d, ps[k]) * kronecker(8, ps[k]);
        if (chi != 0) s += chi * w[k];
      }
      inner[static_cast<std::size_t>(i)] = s * weight(static_cast<double>(d) / static_cast<double>(cfg.X));
    }
  });

  FamilyPrimeSum out;
  out.terms = static_cast<i64>(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const MobiusSplit split = mobius_split(ds[i], cfg.Z);
    out.S += (split.M + split.R) * inner[i];
    out.S_M += static_cast<double>(split.M) * inner[i];
    out.S_R += static_cast<double>(split.R) * inner[i];
  }
  return out;
}

DecompositionCheck cubic_decomposition_check(i64 p, i64 X) {
  if (p == 3 || !is_prime_integer(p)) throw DomainError("cubic_decomposition_check: p must be a prime other than 3");
  if (X < 1 || X > 10'000) throw CapacityError("cubic_decomposition_check: X outside [1, 1e4]");
  const EisensteinInt pe{p, 0};
  const auto elements = enumerate_primary<EisensteinTag>(2 * X);

  DecompositionCheck out;
  std::vector<cd> by_norm(static_cast<std::size_t>(2 * X + 2), 0.0);
  for (const auto& n : elements) {
    const cd v = cubic_symbol(pe, n).value();
    const i64 N = norm(n);
    by_norm[static_cast<std::size_t>(N)] += v;
    if (N >= X && is_squarefree_ring(n) && !has_rational_prime_divisor(n)) {
      out.direct += v;
      ++out.direct_terms;
    }
  }
  std::vector<cd> prefix(by_norm.size() + 1, 0.0);
  for (std::size_t i = 0; i < by_norm.size(); ++i) prefix[i + 1] = prefix[i] + by_norm[i];
  auto range = [&](i64 D) {  // N(n) in [X/D, 2X/D]
    const i64 lo = (X + D - 1) / D, hi = 2 * X / D;
    if (hi < lo) return cd(0.0);
    return prefix[static_cast<std::size_t>(hi + 1)] - prefix[static_cast<std::size_t>(lo)];
  };

  for (i64 a = 1; a * a <= 2 * X; ++a) {
    if (a % 3 == 0 || moebius(a) == 0) continue;
    const i64 d = a % 3 == 1 ? a : -a;
    if (a % p == 0) {
      ++out.excluded_d;
      continue;
    }
    // primary divisors e of d with mu(e)
    std::vector<std::pair<EisensteinInt, int>> divisors{{EisensteinInt{1, 0}, 1}};
    if (a > 1)
      for (const auto& [prime, e] : factor_in_ring(EisensteinInt{d, 0}).factors) {
        const std::size_t n = divisors.size();
        for (std::size_t i = 0; i < n; ++i)
          divisors.push_back({primary_associate(divisors[i].first * prime), -divisors[i].second});
      }
    const double l_bound = std::sqrt(2.0 * static_cast<double>(X)) / static_cast<double>(a);
    for (const auto& l : elements) {
      const i64 Nl = norm(l);
      if (static_cast<double>(Nl) > l_bound) break;
      if (gcd_i64(Nl, a) != 1) continue;
      const int mu_l = moebius_ring(l);
      if (mu_l == 0) continue;
      const cd chi_l = cubic_symbol(pe, l).value();
      for (const auto& [e, mu_e] : divisors) {
        const i64 D = norm(e) * Nl * Nl * a * a;
        if (D > 2 * X) continue;
        out.decomposed += static_cast<double>(moebius(a) * mu_l * mu_e) * chi_l * chi_l *
                          cubic_symbol(pe, e).value() * range(D);
      }
    }
  }
  for (i64 a = p; a * a <= 2 * X; a += p)
    if (a % 3 != 0 && moebius(a) != 0) ++out.multiples_of_p;
  out.residual = std::abs(out.direct - out.decomposed);
  return out;
}

PVCheck pv_bound_check(i64 p, i64 X) {
  if (p == 3 || !is_prime_integer(p)) throw DomainError("pv_bound_check: p must be a prime other than 3");
  if (X < 1 || X > 100'000) throw CapacityError("pv_bound_check: X outside [1, 1e5]");
  const EisensteinInt pe{p, 0};
  PVCheck out;
  for (const auto& n : enumerate_primary<EisensteinTag>(X)) out.sum += cubic_symbol(pe, n).value();
  const double lp = std::log(static_cast<double>(p));
  out.ratio = std::abs(out.sum) /
              (std::cbrt(static_cast<double>(X)) * std::pow(static_cast<double>(p), 2.0 / 3.0) * lp * lp);
  return out;
}

CauchySchwarzMoments cauchy_schwarz_moments(double X) {
  if (!(X > 1.0)) throw DomainError("cauchy_schwarz_moments: X must exceed 1");
  const i64 bound = static_cast<i64>(std::floor(std::pow(X, 0.2)));
  CauchySchwarzMoments out;
  const PrimeTable table(std::max<i64>(bound, 1));
  for (i64 p : table.primes()) {
    const double lp = std::log(static_cast<double>(p));
    out.first += lp * lp / static_cast<double>(p);
    out.second += lp * lp / (static_cast<double>(p) * static_cast<double>(p));
  }
  const double L = std::log(X);
  out.first_constant = out.first / (L * L);
  return out;
}

void write_verification_csv(std::ostream& os, const std::vector<VerificationRow>& rows) {
  os << "check,params,lhs,rhs,residual,tolerance,pass\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g,%d\n", r.lhs, r.rhs, r.residual, r.tolerance, r.pass ? 1 : 0);
    os << r.check << ",\"" << r.params << '"' << buf;
  }
}

}  // namespace lowlying
