#pragma once

// Zero and prime sides of the explicit formula for the three families, the
// weighted family prime sum and its Moebius split, and the character-sum
// identities and bounds behind the cubic case.

#include <complex>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "lowlying/arith.hpp"
#include "lowlying/families.hpp"
#include "lowlying/hecke.hpp"
#include "lowlying/lfunc.hpp"
#include "lowlying/rings.hpp"
#include "lowlying/test_function.hpp"

namespace lowlying {

struct ExperimentConfig {
  i64 X = 1000;
  i64 Y = 0;         // prime cutoff; 0 means X^{2 sigma}, the edge of the support
  double Z = 20;     // Moebius threshold
  double U = 0;      // plateau parameter; 0 means log X
  double sigma = 0.8;
  double T = 30;
  TestShape shape = TestShape::kFejer;

  TestFunction test_function() const { return {shape, sigma}; }
  double plateau() const;
  i64 prime_cutoff() const;
};

struct ZeroSide {
  double value = 0;
  double tail = 0;  // estimated contribution of zeros above T_max
};

/// sum_j phi(gamma_j scaling / 2 pi), with the tail bounded through the
/// envelope of phi and the zero density of the list's degree and conductor.
/// Throws ConvergenceError when the tail exceeds tail_limit.
ZeroSide zero_side(const ZeroList& zeros, const TestFunction& phi, double scaling, double tail_limit = std::numeric_limits<double>::infinity());

/// (1/2 pi) integral of h(r) Re psi(c + i beta r) dr, h(r) = phi(r L / 2 pi).
double archimedean_term(const TestFunction& phi, double L, double c, double beta);

/// Without `exact`: phi_hat(0) minus the p and p^2 sums at scale log X.
/// With `exact`: the conductor and digamma terms and every prime power,
/// which equals the zero side up to truncation.
double prime_side_dirichlet(const DirichletChar& chi, const TestFunction& phi, double X, bool exact,
                            const PrimeTable& primes);

struct IdealPrimeSide {
  double value = 0;   // phi_hat(0) - first - second
  double first = 0;   // (1/log X) sum log N p / sqrt(N p) phi_hat(log N p / log X) 2 Re chi(p)
  double second = 0;  // (1/log X) sum log N p / N p phi_hat(2 log N p / log X) 2 Re chi(p)^2
};

/// The prime-ideal sums for chi_c(p) = (pi / c)_3 over primary generators pi;
/// ideals over 3 and those dividing c contribute nothing.
IdealPrimeSide prime_side_ideal(const EisensteinInt& c, const TestFunction& phi, double X);

struct TwistPrimeSide {
  double value = 0;
  double S_term = 0;  // (1/log X) sum_p a(p) log p / sqrt p (8d/p) phi_hat(log p / 2 log X)
};

/// Without `exact`: phi_hat(0) + (1/2) integral phi_hat - S_term. With
/// `exact`: the explicit formula at scale 2 log X with every prime power.
TwistPrimeSide prime_side_twist(i64 d, const TestFunction& phi, double X, const EigenformCoeffs& f, bool exact,
                                const PrimeTable& primes);

struct FamilyPrimeSum {
  double S = 0;
  double S_M = 0;
  double S_R = 0;
  i64 terms = 0;  // odd d with Phi(d/X) != 0
};

/// The Phi(d/X)-weighted double sums over odd d and p <= Y with weights
/// mu^2(d), M_Z(d), R_Z(d). Parallel over d, reduced in d order.
FamilyPrimeSum family_prime_sum(const ExperimentConfig& cfg, const EigenformCoeffs& f, int workers = 1);

struct DecompositionCheck {
  std::complex<double> direct;
  std::complex<double> decomposed;
  double residual = 0;
  i64 direct_terms = 0;
  i64 excluded_d = 0;    // d skipped because p | d
  i64 multiples_of_p = 0;  // candidate d divisible by p, counted directly
};

/// Sum of (p/n)_3 over square-free n = 1 mod 3 without rational prime
/// divisor and N(n) in [X, 2X], directly and through the d, l, e expansion.
DecompositionCheck cubic_decomposition_check(i64 p, i64 X);

struct PVCheck {
  std::complex<double> sum;
  double ratio = 0;  // |sum| / (X^{1/3} p^{2/3} log^2 p)
};

/// Sum of (p/n)_3 over all n = 1 mod 3 with N(n) <= X.
PVCheck pv_bound_check(i64 p, i64 X);

struct CauchySchwarzMoments {
  double first = 0;   // sum_{p <= X^{1/5}} log^2 p / p
  double second = 0;  // sum_{p <= X^{1/5}} log^2 p / p^2
  double first_constant = 0;  // first / log^2 X
};

CauchySchwarzMoments cauchy_schwarz_moments(double X);

struct VerificationRow {
  std::string check;
  std::string params;
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  double tolerance = std::numeric_limits<double>::infinity();
  bool pass = true;
};

/// Header "check,params,lhs,rhs,residual,tolerance,pass"; params quoted.
void write_verification_csv(std::ostream& os, const std::vector<VerificationRow>& rows);

}  // namespace lowlying
