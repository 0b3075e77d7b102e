#pragma once

// Verification suites shared by the command-line tool and the acceptance
// run. Every suite returns rows carrying their own tolerance and verdict.

#include <string>
#include <vector>

#include "lowlying/explicit_formula.hpp"

namespace lowlying {

struct SuiteResult {
  std::string suite;
  std::vector<VerificationRow> rows;

  bool passed() const;
  std::vector<const VerificationRow*> failures() const;
};

struct VerifySettings {
  // tau_m(k) against the closed form, odd k <= k_max, |m| <= m_max
  i64 gauss_k_max = 315;
  i64 gauss_m_max = 60;
  double gauss_tol = 1e-9;
  // |tau(chi)| = sqrt q over family characters with q <= gauss_q_max
  i64 gauss_q_max = 500;
  // smoothed character sums against their Poisson duals, odd k <= k_max; U = 0 means log X
  i64 poisson_k_max = 99;
  double poisson_X = 1000;
  double poisson_Z = 10;
  double poisson_U = 0;
  double poisson_tol = 1e-6;
  i64 mobius_d_max = 10'000;
  std::vector<double> mobius_Z{1, 5, 30};
  std::vector<i64> decomposition_p{7, 13, 31};
  std::vector<i64> decomposition_X{100, 400};
  double decomposition_tol = 1e-9;
  std::vector<i64> pv_p;  // empty: primes 1 mod 3 in [7, 199] and 5, 11, 17, 23
  std::vector<i64> pv_X{1000, 10'000};
  double pv_stability = 2;
  double coeff_x = 1e6;
  double mertens_tol = 2;
  double square_band = 0.15;
  i64 tau_product_max = 10'000;
  // explicit formula against zeros
  std::vector<i64> weil_d{3, 5, 7, 11};
  std::vector<i64> weil_cubic_q{7, 13};
  double weil_X = 1e6;
  double weil_sigma = 0.9;
  double weil_T = 40;
  double weil_T_short = 20;
  double weil_tol = 5e-3;
  double weil_ratio = 2;
  i64 twist_d = 3;
  double twist_X = 2000;
  double twist_tol = 1e-2;
  double sensitivity_tol = 1e-6;
  double count_slack = 2;
  std::string cache_dir;
  bool use_cache = true;
};

SuiteResult gauss_suite(const VerifySettings& s);
SuiteResult poisson_suite(const VerifySettings& s);
SuiteResult mobius_suite(const VerifySettings& s);
SuiteResult decomposition_suite(const VerifySettings& s);
SuiteResult pv_suite(const VerifySettings& s);
SuiteResult coeff_suite(const VerifySettings& s);
SuiteResult weil_suite(const VerifySettings& s);

/// gauss, poisson, mobius, decomposition, pv, coeffs, weil.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifySettings& s);

}  // namespace lowlying
