#pragma once

// Gauss-type sums tau_m(k) and their closed form G_m(k), character Gauss
// sums, the Moebius split mu^2 = M_Z + R_Z, the smooth weight Phi with its
// transform, and the Poisson-summation identity for smoothed character sums.

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include "lowlying/arith.hpp"
#include "lowlying/families.hpp"

namespace lowlying {

/// sum_{a mod k} (a/k) e(am/k), summed directly. k odd and positive.
std::complex<double> tau_m_bruteforce(i64 m, i64 k);

/// G_m(k) from the prime-power table, multiplied over p^b || k. m = 0 plays
/// the role of infinite valuation.
double G_m_closed_form(i64 m, i64 k);

/// (1+i)/2 + (-1/k)(1-i)/2, the factor relating tau_m(k) to G_m(k).
std::complex<double> gauss_factor(i64 k);

/// tau(chi) = sum_{a mod q} chi(a) e(a/q).
std::complex<double> gauss_sum_chi(const DirichletChar& chi);

struct MobiusSplit {
  double Z = 1;
  i64 d = 1;
  i64 M = 1;  // sum of mu(l) over l^2 | d, l <= Z
  i64 R = 0;  // the same over l > Z
};

MobiusSplit mobius_split(i64 d, double Z);

/// Phi(t) = psi((t-1)U) psi((2-t)U) with the smooth step
/// psi(s) = 1 / (1 + exp(1/s - 1/(1-s))) on (0,1).
class SmoothWeight {
 public:
  explicit SmoothWeight(double U);

  double U() const noexcept { return U_; }
  double operator()(double t) const { return phi(t); }
  double phi(double t) const;
  double dphi(double t) const;
  /// Phi^{(order)}(t) for order <= 3.
  double derivative(double t, int order) const;
  /// Integral of Phi over (1,2); equals 1 - 1/U.
  double integral() const noexcept { return 1.0 - 1.0 / U_; }
  /// Integral of |Phi^{(order)}|, 1 <= order <= 3.
  double variation(int order) const;

 private:
  double U_;
};

/// Step function psi and its derivative.
double smooth_step(double s);
double smooth_step_derivative(double s);

/// Integral of (cos(2 pi xi x) + sin(2 pi xi x)) Phi(x) over (1,2): exact on
/// the plateau, adaptive Gauss-Kronrod on the transition intervals. Throws
/// ConvergenceError when the estimated error exceeds tol.
double tilde_transform(const SmoothWeight& weight, double xi, double tol = 1e-10);

/// The same transform for an arbitrary f on [a, b].
double tilde_transform(const std::function<double(double)>& f, double a, double b, double xi,
                       double tol = 1e-10);

/// Streams the cosine and sine parts of Phi at xi = m * step for
/// m = 0, 1, 2, ... from fixed Gauss-Legendre nodes on the transitions with
/// rotating phasors. Node density doubles whenever xi outgrows it.
class TildeProgression {
 public:
  TildeProgression(const SmoothWeight& weight, double step);

  struct Value {
    long m;
    double plus;   // tilde Phi(m * step)
    double minus;  // tilde Phi(-m * step)
  };
  Value next();

 private:
  void rebuild(long panels);

  SmoothWeight weight_;
  double step_;
  long m_ = 0;
  long panels_ = 0;
  double max_xi_ = 0;
  std::vector<double> nodes_, weights_;
  std::vector<std::complex<double>> phase_, rotor_;
};

struct PoissonCheck {
  i64 k = 1;
  double X = 0, Z = 0, U = 0;
  double lhs = 0, rhs = 0, residual = 0;
  long max_m = 0;          // largest |m| summed
  double tail_bound = 0;   // bound on the omitted |m| > max_m terms
};

/// Compares sum_{d odd} M_Z(d) (d/k) Phi(d/X) with the dual sum
/// (X/2k)(2/k) sum_{alpha <= Z, (alpha,2k)=1} mu(alpha)/alpha^2
///   sum_m (-1)^m G_m(k) tilde Phi(mX / (2 alpha^2 k)).
/// The m-sum stops once, over a full oscillation window, every term is below
/// 1e-14 or tilde Phi itself is (its rounding floor sits near 1e-15).
/// Exceeding |m| = 10^6 throws ConvergenceError.
PoissonCheck poisson_identity_check(i64 k, double X, double Z, double U);

void write_poisson_csv(std::ostream& os, const std::vector<PoissonCheck>& rows);

}  // namespace lowlying
