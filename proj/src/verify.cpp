#include "lowlying/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "lowlying/errors.hpp"
#include "lowlying/gauss_sums.hpp"
#include "lowlying/hecke.hpp"
#include "lowlying/lfunc.hpp"

namespace lowlying {

namespace {

std::string params(const char* fmt, auto... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

VerificationRow row(std::string check, std::string p, double lhs, double rhs, double tolerance) {
  const double residual = std::abs(lhs - rhs);
  return {std::move(check), std::move(p), lhs, rhs, residual, tolerance, residual <= tolerance};
}

std::vector<i64> default_pv_primes() {
  std::vector<i64> ps{5, 11, 17, 23};
  for (i64 p = 7; p <= 199; p += 6)
    if (is_prime_integer(p)) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  return ps;
}

ZeroList truncated(const ZeroList& z, double T) {
  ZeroList out = z;
  out.T_max = T;
  out.gammas.clear();
  for (double g : z.gammas)
    if (std::abs(g) <= T) out.gammas.push_back(g);
  return out;
}

ZeroList zeros_for(const DirichletChar& chi, double T, const VerifySettings& s) {
  const ZeroCache cache(s.cache_dir);
  if (s.use_cache)
    if (auto hit = cache.load(chi.modulus, chi.label, chi.order, T)) return *hit;
  auto z = find_zeros_dirichlet(chi, T);
  if (s.use_cache && z.complete) cache.store(z);
  return z;
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

std::vector<const VerificationRow*> SuiteResult::failures() const {
  std::vector<const VerificationRow*> out;
  for (const auto& r : rows)
    if (!r.pass) out.push_back(&r);
  return out;
}

SuiteResult gauss_suite(const VerifySettings& s) {
  SuiteResult out{"gauss", {}};
  for (i64 m = -s.gauss_m_max; m <= s.gauss_m_max; ++m) {
    double worst = 0.0, lhs = 0.0, rhs = 0.0;
    i64 worst_k = 1;
    for (i64 k = 1; k <= s.gauss_k_max; k += 2) {
      const auto brute = tau_m_bruteforce(m, k);
      const auto closed = gauss_factor(k) * G_m_closed_form(m, k);
      const double r = std::abs(brute - closed);
      if (r >= worst) {
        worst = r;
        worst_k = k;
        lhs = std::abs(brute);
        rhs = std::abs(closed);
      }
    }
    out.rows.push_back({"tau_m", params("m=%lld;k<=%lld;worst_k=%lld", (long long)m, (long long)s.gauss_k_max,
                                        (long long)worst_k),
                        lhs, rhs, worst, s.gauss_tol, worst <= s.gauss_tol});
  }
  std::vector<DirichletChar> chars;
  for (i64 d = 1; 8 * d <= s.gauss_q_max; d += 2)
    if (is_squarefree_integer(d)) chars.push_back(quadratic_character(d));
  for (i64 q = 7; q <= s.gauss_q_max; ++q) {
    for (const auto& n : cubic_generators_of_norm(q)) chars.push_back(character_table(n));
    for (const auto& n : quartic_generators_of_norm(q)) chars.push_back(character_table(n));
  }
  for (const auto& chi : chars) {
    const double g = std::abs(gauss_sum_chi(chi));
    out.rows.push_back(row("gauss_sum_modulus", params("q=%lld;%s", (long long)chi.modulus, chi.label.c_str()), g,
                           std::sqrt(static_cast<double>(chi.modulus)), s.gauss_tol));
  }
  return out;
}

SuiteResult poisson_suite(const VerifySettings& s) {
  SuiteResult out{"poisson", {}};
  const double U = s.poisson_U > 0 ? s.poisson_U : std::log(s.poisson_X);
  for (i64 k = 1; k <= s.poisson_k_max; k += 2) {
    const auto c = poisson_identity_check(k, s.poisson_X, s.poisson_Z, U);
    out.rows.push_back(row("poisson", params("k=%lld;X=%g;Z=%g;U=%.6g;max_m=%ld", (long long)k, s.poisson_X,
                                             s.poisson_Z, U, c.max_m),
                           c.lhs, c.rhs, s.poisson_tol));
  }
  return out;
}

SuiteResult mobius_suite(const VerifySettings& s) {
  SuiteResult out{"mobius", {}};
  for (double Z : s.mobius_Z) {
    i64 mismatches = 0;
    for (i64 d = 1; d <= s.mobius_d_max; ++d) {
      const auto split = mobius_split(d, Z);
      const int mu = moebius(d);
      if (split.M + split.R != mu * mu) ++mismatches;
    }
    out.rows.push_back({"mobius_split", params("Z=%g;d<=%lld", Z, (long long)s.mobius_d_max),
                        static_cast<double>(mismatches), 0.0, static_cast<double>(mismatches), 0.0, mismatches == 0});
  }
  return out;
}

SuiteResult decomposition_suite(const VerifySettings& s) {
  SuiteResult out{"decomposition", {}};
  for (i64 p : s.decomposition_p)
    for (i64 X : s.decomposition_X) {
      const auto c = cubic_decomposition_check(p, X);
      out.rows.push_back({"cubic_decomposition", params("p=%lld;X=%lld", (long long)p, (long long)X),
                          std::abs(c.direct), std::abs(c.decomposed), c.residual, s.decomposition_tol,
                          c.residual <= s.decomposition_tol});
    }
  return out;
}

SuiteResult pv_suite(const VerifySettings& s) {
  SuiteResult out{"pv", {}};
  const auto ps = s.pv_p.empty() ? default_pv_primes() : s.pv_p;
  std::vector<double> maxima;
  for (i64 X : s.pv_X) {
    double worst = 0.0;
    for (i64 p : ps) {
      const auto c = pv_bound_check(p, X);
      const bool finite = std::isfinite(c.ratio);
      out.rows.push_back({"pv_ratio", params("p=%lld;X=%lld", (long long)p, (long long)X), std::abs(c.sum),
                          c.ratio, c.ratio, std::numeric_limits<double>::infinity(), finite});
      worst = std::max(worst, c.ratio);
    }
    out.rows.push_back({"pv_max_ratio", params("X=%lld", (long long)X), worst, worst, worst,
                        std::numeric_limits<double>::infinity(), std::isfinite(worst)});
    maxima.push_back(worst);
  }
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    const double a = maxima[i - 1], b = maxima[i];
    const double spread = std::max(a, b) / std::min(a, b);
    out.rows.push_back({"pv_stability", params("X=%lld->%lld", (long long)s.pv_X[i - 1], (long long)s.pv_X[i]), a, b,
                        spread, s.pv_stability, spread <= s.pv_stability});
  }
  return out;
}

SuiteResult coeff_suite(const VerifySettings& s) {
  SuiteResult out{"coeffs", {}};
  const EigenformCoeffs f(static_cast<i64>(s.coeff_x));
  const auto st = coeff_stat_checks(f, s.coeff_x);
  out.rows.push_back(row("mertens", params("x=%g", s.coeff_x), st.mertens_sum, st.mertens_main, s.mertens_tol));
  out.rows.push_back({"coefficient_square_mean", params("x=%g", s.coeff_x), st.square_sum, st.square_main,
                      std::abs(st.square_ratio - 1.0), s.square_band, std::abs(st.square_ratio - 1.0) <= s.square_band});
  const auto tau = tau_series(s.tau_product_max);
  i64 pairs = 0, mismatches = 0;
  for (i64 m = 2; m * m <= s.tau_product_max; ++m)
    for (i64 n = m + 1; m * n <= s.tau_product_max; ++n) {
      if (gcd_i64(m, n) != 1) continue;
      ++pairs;
      if (tau[static_cast<std::size_t>(m * n)] != tau[static_cast<std::size_t>(m)] * tau[static_cast<std::size_t>(n)])
        ++mismatches;
    }
  out.rows.push_back({"tau_multiplicative", params("mn<=%lld;pairs=%lld", (long long)s.tau_product_max, (long long)pairs),
                      static_cast<double>(mismatches), 0.0, static_cast<double>(mismatches), 0.0, mismatches == 0});
  return out;
}

SuiteResult weil_suite(const VerifySettings& s) {
  SuiteResult out{"weil", {}};
  const auto phi = TestFunction::fejer(s.weil_sigma);
  std::vector<DirichletChar> chars;
  for (i64 d : s.weil_d) chars.push_back(quadratic_character(d));
  for (i64 q : s.weil_cubic_q)
    for (const auto& n : cubic_generators_of_norm(q)) chars.push_back(character_table(n));

  const i64 prime_limit = static_cast<i64>(std::max(s.weil_X, std::pow(s.twist_X, 2.0 * s.weil_sigma))) + 1;
  const PrimeTable primes(prime_limit);
  for (const auto& chi : chars) {
    const auto zeros = zeros_for(chi, s.weil_T, s);
    const std::string who = params("q=%lld;%s", (long long)chi.modulus, chi.label.c_str());
    const double prime = prime_side_dirichlet(chi, phi, s.weil_X, true, primes);
    const double L = std::log(s.weil_X);
    const double long_side = zero_side(zeros, phi, L).value;
    const double short_side = zero_side(truncated(zeros, s.weil_T_short), phi, L).value;
    auto full = row("weil_degree1", who + params(";T=%g;X=%g;sigma=%g", s.weil_T, s.weil_X, s.weil_sigma), long_side,
                    prime, s.weil_tol);
    const double short_residual = std::abs(short_side - prime);
    const double ratio = short_residual / full.residual;
    out.rows.push_back(full);
    out.rows.push_back({"weil_truncation_ratio", who + params(";T=%g/%g", s.weil_T_short, s.weil_T), short_residual,
                        full.residual, ratio, s.weil_ratio, ratio >= s.weil_ratio});
    for (double T : {s.weil_T_short, s.weil_T}) {
      const double n = static_cast<double>(zeros.count_within(T));
      out.rows.push_back(row("zero_count", who + params(";T=%g", T), n, zero_count_expected(chi.modulus, T), s.count_slack));
    }
  }

  const i64 needed = std::max<i64>(twist_coefficients_needed(s.twist_d, s.weil_T), prime_limit);
  const EigenformCoeffs f(std::min(needed, kMaxTauN));
  const auto tz = find_zeros_twist(s.twist_d, s.weil_T, f);
  const std::string who = params("d=%lld;weight=12", (long long)s.twist_d);
  const auto tp = prime_side_twist(s.twist_d, phi, s.twist_X, f, true, primes);
  out.rows.push_back(row("weil_degree2", who + params(";T=%g;X=%g;sigma=%g", s.weil_T, s.twist_X, s.weil_sigma),
                         zero_side(tz, phi, 2.0 * std::log(s.twist_X)).value, tp.value, s.twist_tol));
  out.rows.push_back({"cutoff_sensitivity", who + params(";T=%g", s.weil_T), tz.cutoff_sensitivity, 0.0,
                      tz.cutoff_sensitivity, s.sensitivity_tol, tz.cutoff_sensitivity <= s.sensitivity_tol});
  out.rows.push_back(row("zero_count", who + params(";T=%g", s.weil_T), static_cast<double>(tz.gammas.size()),
                         tz.main_term, s.count_slack));
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gauss", "poisson", "mobius", "decomposition", "pv", "coeffs", "weil"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifySettings& s) {
  if (name == "gauss") return gauss_suite(s);
  if (name == "poisson") return poisson_suite(s);
  if (name == "mobius") return mobius_suite(s);
  if (name == "decomposition") return decomposition_suite(s);
  if (name == "pv") return pv_suite(s);
  if (name == "coeffs") return coeff_suite(s);
  if (name == "weil") return weil_suite(s);
  throw DomainError("unknown verification suite '" + name + "'");
}

}  // namespace lowlying
