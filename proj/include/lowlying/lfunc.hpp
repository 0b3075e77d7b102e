#pragma once

// Dirichlet L-functions and quadratic twists of Delta on the critical line:
// Hurwitz evaluation, root numbers, a rotated theta-integral evaluator of the
// completed L-function, zero location and zero counting, and a zero cache.

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowlying/families.hpp"
#include "lowlying/hecke.hpp"

namespace lowlying {

using cplx = std::complex<double>;

/// L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q).
cplx dirichlet_L(cplx s, const DirichletChar& chi);

/// tau(chi) / (i^a sqrt q).
cplx root_number(const DirichletChar& chi);

struct CompletedValue {
  double t = 0;
  double Z = 0;
  double imaginary = 0;
  cplx w = 1.0;  // principal sqrt of 1/eps
};

/// Z(t) = w Lambda(1/2 + it, chi) with Lambda = (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi),
/// through the Hurwitz route. Throws ConvergenceError when |Im Z| > 1e-6.
CompletedValue completed_and_root(const DirichletChar& chi, double t);

/// Analytic data of Lambda(s) = Q^s Gamma(kappa s + lambda) sum b(n) n^{-s},
/// with Lambda(s) = eps * conj-coefficient Lambda(1 - s).
struct LData {
  int degree = 1;
  double kappa = 0.5;
  double lambda = 0.0;
  double Q = 1.0;
  cplx root_number = 1.0;
  std::function<cplx(i64)> coefficient;
  bool real_coefficients = false;
  i64 conductor = 1;
  std::string label;
  int order = 1;
};

LData dirichlet_ldata(const DirichletChar& chi);

/// L(f x chi_{8d}, s) for the normalized coefficients of f: kappa = 1,
/// lambda = (k-1)/2, Q = 8d / 2 pi, eps = i^k tau(chi)^2 / 8d.
LData twist_ldata(i64 d, const EigenformCoeffs& f);

/// Coefficients needed by twist evaluations up to height T.
i64 twist_coefficients_needed(i64 d, double T, double cutoff_scale = 1.5);

/// Lambda(s) as the sum of two theta-function Mellin integrals along rays at
/// angles +-phi, phi = sign * (pi/2 - min(pi/2, loss / (kappa T_max))). The
/// rotation keeps cancellation near e^loss for 0 <= sign * t <= T_max. Theta
/// values sit on fixed Gauss-Legendre nodes in log r; terms and the ray
/// length are cut where the integrand falls e^{-39 cutoff_scale} below its
/// peak.
class CompletedLFunction {
 public:
  CompletedLFunction(LData data, double T_max, int sign = 1, double cutoff_scale = 1.0, double loss = 4.0);

  const LData& data() const noexcept { return data_; }
  double T_max() const noexcept { return T_max_; }
  int sign() const noexcept { return sign_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  cplx Lambda(cplx s) const;
  /// log(Q^s Gamma(kappa s + lambda)).
  cplx log_gamma_factor(cplx s) const;
  cplx L(cplx s) const;
  /// The fixed w with w^2 = 1/eps (principal root).
  cplx rotation() const noexcept { return rotation_; }
  /// w Lambda(1/2 + it) / |Q^s Gamma(kappa s + lambda)|; real, |Z| = |L|.
  double hardy_Z(double t, double* imaginary = nullptr) const;
  /// hardy_Z at t0 + k step, k = 0..count-1, stepping phasors between nodes.
  std::vector<double> hardy_Z_grid(double t0, double step, std::size_t count) const;

 private:
  LData data_;
  double T_max_;
  int sign_;
  double phi_ = 0.0;
  cplx rotation_ = 1.0;
  std::vector<double> nodes_, weights_;  // log r and quadrature weights
  std::vector<cplx> theta_;              // theta(r e^{i phi})
};

/// (T/pi) log(q (T / 2 pi e)^degree): expected zeros with |gamma| <= T.
double zero_count_expected(double q, double T, int degree = 1);

/// Number of zeros with |gamma| <= T by the argument principle: the gamma
/// factor's phase plus arg L tracked horizontally from Re s = 2 (degree 1)
/// or 3 (degree 2). Returns the unrounded value.
double argument_principle_count(const CompletedLFunction& upper, const CompletedLFunction* lower, double T);

struct ZeroList {
  i64 conductor = 1;
  std::string label;
  int order = 1;
  int degree = 1;
  double T_max = 0;
  bool complete = false;
  std::vector<double> gammas;   // increasing
  double expected_count = 0;    // argument principle, -1 when not computed
  double main_term = 0;         // zero_count_expected, plus (k-1)/2 for twists
  double grid_step = 0;
  cplx root_number = 1.0;
  cplx rotation = 1.0;
  double cutoff_sensitivity = 0;  // twists only

  std::size_t count_within(double T) const;
};

struct ZeroOptions {
  double grid_step = 0.0;  // 0: min(0.05, 1 / log(conductor T))
  double tolerance = 1e-10;
  double cutoff_scale = 1.0;
  double loss = 4.0;
};

/// Sign changes of Z on a uniform grid refined by TOMS 748, scanning [0, T]
/// (and [-T, 0] for complex coefficients). The count is checked against the
/// argument principle; on mismatch the scan is repeated with a quarter step.
ZeroList find_zeros(const LData& data, double T, const ZeroOptions& options = {});

ZeroList find_zeros_dirichlet(const DirichletChar& chi, double T, const ZeroOptions& options = {});

/// Zeros of L(f x chi_{8d}, 1/2 + it). Z is recomputed with the cutoff
/// stretched by 1.5 on a grid; a divergence above 1e-6 throws ConvergenceError.
ZeroList find_zeros_twist(i64 d, double T, const EigenformCoeffs& f, const ZeroOptions& options = {});

/// Text cache of zero lists, one file per character:
///   q <q> label <label> order <k> Tmax <T>
///   <gamma with 12 decimals> ...
///   end <count>
/// Files are replaced atomically; malformed files read as absent.
class ZeroCache {
 public:
  /// Empty dir: $LOWLYING_CACHE_DIR, else ".lowlying-cache".
  explicit ZeroCache(std::string dir = {});

  const std::string& dir() const noexcept { return dir_; }
  std::string path_for(i64 q, const std::string& label) const;
  /// A cached list covering at least T, truncated to |gamma| <= T.
  std::optional<ZeroList> load(i64 q, const std::string& label, int order, double T, int degree = 1) const;
  void store(const ZeroList& zeros) const;

 private:
  std::string dir_;
};

void write_zero_list(std::ostream& os, const ZeroList& zeros);
std::optional<ZeroList> read_zero_list(std::istream& is);

}  // namespace lowlying
