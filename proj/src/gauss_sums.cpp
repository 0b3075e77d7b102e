#include "lowlying/gauss_sums.hpp"

#include <algorithm>
#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <ostream>

#include "lowlying/errors.hpp"
#include "lowlying/symbols.hpp"

namespace lowlying {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_odd_positive(i64 k, const char* who) {
  if (k < 1 || k % 2 == 0) throw DomainError(std::string(who) + ": k must be odd and positive");
}

double G_from_factors(i64 m, const std::vector<std::pair<i64, int>>& factors) {
  double g = 1.0;
  for (const auto& [p, b] : factors) {
    int a = 0;
    i64 rest = m;
    if (m == 0) {
      a = b;  // any valuation >= b behaves like infinity
    } else {
      while (rest % p == 0 && a <= b) {
        rest /= p;
        ++a;
      }
    }
    const double pa = std::pow(static_cast<double>(p), a);
    if (b <= a) {
      g *= b % 2 == 0 ? std::pow(static_cast<double>(p), b - 1) * static_cast<double>(p - 1) : 0.0;
    } else if (b == a + 1) {
      if (b % 2 == 0) g *= -pa;
      else g *= jacobi(rest, p) * pa * std::sqrt(static_cast<double>(p));
    } else {
      return 0.0;
    }
    if (g == 0.0) return 0.0;
  }
  return g;
}

// e(r/k) for 0 <= r < k
std::complex<double> unit_root(i64 r, i64 k) {
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(k));
}

}  // namespace

std::complex<double> tau_m_bruteforce(i64 m, i64 k) {
  require_odd_positive(k, "tau_m_bruteforce");
  std::complex<double> s = 0;
  const i64 mr = mod_floor(m, k);
  for (i64 a = 0; a < k; ++a) {
    const int j = jacobi(a, k);
    if (j != 0) s += static_cast<double>(j) * unit_root(static_cast<i64>((static_cast<i128>(a) * mr) % k), k);
  }
  return s;
}

double G_m_closed_form(i64 m, i64 k) {
  require_odd_positive(k, "G_m_closed_form");
  if (k == 1) return 1.0;
  return G_from_factors(m, factor_integer(k));
}

std::complex<double> gauss_factor(i64 k) {
  return jacobi(-1, k) == 1 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 1.0);
}

std::complex<double> gauss_sum_chi(const DirichletChar& chi) {
  std::complex<double> s = 0;
  for (i64 a = 0; a < chi.modulus; ++a) {
    if (chi.table[static_cast<std::size_t>(a)] < 0) continue;
    s += chi.value(a) * unit_root(a, chi.modulus);
  }
  return s;
}

MobiusSplit mobius_split(i64 d, double Z) {
  if (d < 1) throw DomainError("mobius_split: d must be positive");
  MobiusSplit out{Z, d, 0, 0};
  for (i64 l = 1; l * l <= d; ++l) {
    if (d % (l * l) != 0) continue;
    const int mu = moebius(l);
    if (static_cast<double>(l) <= Z) out.M += mu;
    else out.R += mu;
  }
  return out;
}

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double e = 1.0 / s - 1.0 / (1.0 - s);
  if (e > 700.0) return 0.0;
  return 1.0 / (1.0 + std::exp(e));
}

double smooth_step_derivative(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double p = smooth_step(s);
  return p * (1.0 - p) * (1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s)));
}

SmoothWeight::SmoothWeight(double U) : U_(U) {
  if (!(U >= 4.0)) throw DomainError("SmoothWeight: U must be at least 4");
}

double SmoothWeight::phi(double t) const {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  return smooth_step((t - 1.0) * U_) * smooth_step((2.0 - t) * U_);
}

double SmoothWeight::dphi(double t) const {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  const double l = (t - 1.0) * U_, r = (2.0 - t) * U_;
  return U_ * (smooth_step_derivative(l) * smooth_step(r) - smooth_step(l) * smooth_step_derivative(r));
}

namespace {

template <class F>
F step_jet(const F& s) {
  const double v = static_cast<double>(s);
  if (v <= 0.0) return F(0.0);
  if (v >= 1.0) return F(1.0);
  const F e = 1.0 / s - 1.0 / (1.0 - s);
  if (static_cast<double>(e) > 700.0) return F(0.0);
  if (static_cast<double>(e) > 0.0) {
    const F r = exp(-e);
    return r / (1.0 + r);
  }
  return 1.0 / (1.0 + exp(e));
}

}  // namespace

double SmoothWeight::derivative(double t, int order) const {
  if (order < 0 || order > 3) throw DomainError("SmoothWeight::derivative: order must be in [0, 3]");
  if (t <= 1.0 || t >= 2.0) return 0.0;
  using namespace boost::math::differentiation;
  const auto x = make_fvar<double, 3>(t);
  const auto f = step_jet((x - 1.0) * U_) * step_jet((2.0 - x) * U_);
  return f.derivative(static_cast<std::size_t>(order));
}

double SmoothWeight::variation(int order) const {
  if (order < 1 || order > 3) throw DomainError("SmoothWeight::variation: order must be in [1, 3]");
  using boost::math::quadrature::gauss;
  constexpr int panels = 64;
  double total = 0.0;
  const double h = 1.0 / (U_ * panels);
  for (int i = 0; i < panels; ++i) {
    const double a = 1.0 + i * h;
    total += gauss<double, 20>::integrate([&](double t) { return std::abs(derivative(t, order)); }, a, a + h);
  }
  return 2.0 * total;
}

namespace {

double oscillatory_integral(const std::function<double(double)>& f, double a, double b, double xi, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  if (b <= a) return 0.0;
  const double w = kTwoPi * xi;
  // Kronrod-vs-Gauss error on a uniform panel grid, doubled until it meets tol
  long panels = static_cast<long>(std::ceil(std::abs(xi) * (b - a))) + 1;
  double error = 0.0;
  for (int round = 0; round < 8; ++round, panels *= 2) {
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    error = 0.0;
    for (long i = 0; i < panels; ++i) {
      // phase taken relative to the panel centre so Kronrod and Gauss see
      // the same rounding in w * x
      const double mid = a + (static_cast<double>(i) + 0.5) * h;
      const std::complex<double> centre = std::polar(1.0, w * mid);
      double err = 0.0;
      total += gauss_kronrod<double, 31>::integrate(
          [&](double dx) {
            const std::complex<double> e = centre * std::polar(1.0, w * dx);
            return f(mid + dx) * (e.real() + e.imag());
          },
          -h / 2, h / 2, 0, 0.0, &err);
      error += err;
    }
    if (error <= tol) return total;
  }
  throw ConvergenceError("tilde_transform: quadrature did not converge", error);
}

}  // namespace

double tilde_transform(const std::function<double(double)>& f, double a, double b, double xi, double tol) {
  return oscillatory_integral(f, a, b, xi, tol);
}

double tilde_transform(const SmoothWeight& weight, double xi, double tol) {
  const double U = weight.U();
  const double lo = 1.0 + 1.0 / U, hi = 2.0 - 1.0 / U;
  double plateau;
  if (xi == 0.0) {
    plateau = hi - lo;
  } else {
    const double w = kTwoPi * xi;
    plateau = (std::sin(w * hi) - std::sin(w * lo) + std::cos(w * lo) - std::cos(w * hi)) / w;
  }
  auto f = [&](double x) { return weight.phi(x); };
  return plateau + oscillatory_integral(f, 1.0, lo, xi, tol / 2) + oscillatory_integral(f, hi, 2.0, xi, tol / 2);
}

TildeProgression::TildeProgression(const SmoothWeight& weight, double step) : weight_(weight), step_(step) {
  if (!(step > 0.0)) throw DomainError("TildeProgression: step must be positive");
  rebuild(16);
}

void TildeProgression::rebuild(long panels) {
  using boost::math::quadrature::gauss;
  panels_ = panels;
  const double U = weight_.U();
  const double width = 1.0 / (U * static_cast<double>(panels));
  // 2 pi xi width <= 10 keeps the 20-point rule exact to rounding
  max_xi_ = 10.0 / (kTwoPi * width);
  nodes_.clear();
  weights_.clear();
  const auto& abscissa = gauss<double, 20>::abscissa();
  const auto& gw = gauss<double, 20>::weights();
  for (double start : {1.0, 2.0 - 1.0 / U}) {
    for (long i = 0; i < panels; ++i) {
      const double mid = start + (static_cast<double>(i) + 0.5) * width, half = width / 2;
      for (std::size_t j = 0; j < abscissa.size(); ++j) {
        for (int sgn : {-1, 1}) {
          if (sgn == 1 && abscissa[j] == 0.0) continue;
          const double x = mid + sgn * half * abscissa[j];
          nodes_.push_back(x);
          weights_.push_back(half * gw[j] * weight_.phi(x));
        }
      }
    }
  }
  phase_.resize(nodes_.size());
  rotor_.resize(nodes_.size());
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    phase_[j] = std::polar(1.0, kTwoPi * static_cast<double>(m_) * step_ * nodes_[j]);
    rotor_[j] = std::polar(1.0, kTwoPi * step_ * nodes_[j]);
  }
}

TildeProgression::Value TildeProgression::next() {
  const double xi = static_cast<double>(m_) * step_;
  if (xi > max_xi_) {
    long panels = panels_;
    while (10.0 * weight_.U() * static_cast<double>(panels) / kTwoPi < xi) panels *= 2;
    rebuild(panels);
  } else if (m_ > 0 && m_ % 256 == 0) {
    for (std::size_t j = 0; j < nodes_.size(); ++j) phase_[j] = std::polar(1.0, kTwoPi * xi * nodes_[j]);
  }
  const double U = weight_.U();
  const double lo = 1.0 + 1.0 / U, hi = 2.0 - 1.0 / U;
  double c, s;
  if (m_ == 0) {
    c = hi - lo;
    s = 0.0;
  } else {
    const double w = kTwoPi * xi;
    c = (std::sin(w * hi) - std::sin(w * lo)) / w;
    s = (std::cos(w * lo) - std::cos(w * hi)) / w;
  }
  std::complex<double> acc = 0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    acc += weights_[j] * phase_[j];
    phase_[j] *= rotor_[j];
  }
  c += acc.real();
  s += acc.imag();
  return {m_++, c + s, c - s};
}

PoissonCheck poisson_identity_check(i64 k, double X, double Z, double U) {
  require_odd_positive(k, "poisson_identity_check");
  if (!(X > 0.0) || !(Z >= 1.0)) throw DomainError("poisson_identity_check: need X > 0 and Z >= 1");
  const SmoothWeight weight(U);
  PoissonCheck out;
  out.k = k;
  out.X = X;
  out.Z = Z;
  out.U = U;

  for (i64 d = static_cast<i64>(std::floor(X)) | 1; static_cast<double>(d) < 2.0 * X; d += 2) {
    const double w = weight.phi(static_cast<double>(d) / X);
    if (w == 0.0) continue;
    const int sym = jacobi(d, k);
    if (sym == 0) continue;
    const i64 M = mobius_split(d, Z).M;
    out.lhs += static_cast<double>(M * sym) * w;
  }

  const auto factors = k == 1 ? std::vector<std::pair<i64, int>>{} : factor_integer(k);
  const double v3 = weight.variation(3);
  constexpr long kMaxM = 1'000'000;
  const i64 z = static_cast<i64>(std::floor(Z));
  for (i64 alpha = 1; alpha <= z; ++alpha) {
    if (gcd_i64(alpha, 2 * k) != 1) continue;
    const int mu = moebius(alpha);
    if (mu == 0) continue;
    const double a2 = static_cast<double>(alpha) * static_cast<double>(alpha);
    const double scale = X / (2.0 * static_cast<double>(k)) * jacobi(2, k) * mu / a2;
    const double step = X / (2.0 * a2 * static_cast<double>(k));
    const long window = static_cast<long>(std::ceil(2.0 / step)) + static_cast<long>(k) + 4;
    TildeProgression prog(weight, step);
    double sum = 0.0;
    long quiet = 0, m = 0;
    for (;;) {
      const auto v = prog.next();
      m = v.m;
      double term;
      if (m == 0) {
        term = G_from_factors(0, factors) * v.plus;
      } else {
        const double sign = m % 2 == 0 ? 1.0 : -1.0;
        term = sign * (G_from_factors(m, factors) * v.plus + G_from_factors(-m, factors) * v.minus);
      }
      sum += term;
      const bool negligible = std::abs(scale * term) < 1e-14 || std::max(std::abs(v.plus), std::abs(v.minus)) < 1e-14;
      quiet = negligible ? quiet + 1 : 0;
      if (quiet >= window && static_cast<double>(m) * step > 1.0) break;
      if (m >= kMaxM)
        throw ConvergenceError("poisson_identity_check: m-sum did not settle by |m| = 10^6", std::abs(scale * term));
    }
    out.rhs += scale * sum;
    out.max_m = std::max(out.max_m, m);
    // |tilde Phi(xi)| <= sqrt2 V3 / (2 pi xi)^3 and |G_m(k)| <= k
    const double tail = std::sqrt(2.0) * v3 * static_cast<double>(k) /
                        (std::pow(kTwoPi * step, 3) * static_cast<double>(m) * static_cast<double>(m));
    out.tail_bound += std::abs(scale) * tail;
  }
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

void write_poisson_csv(std::ostream& os, const std::vector<PoissonCheck>& rows) {
  os << "k,X,Z,lhs,rhs,residual\n";
  const auto old = os.precision(17);
  for (const auto& r : rows) os << r.k << ',' << r.X << ',' << r.Z << ',' << r.lhs << ',' << r.rhs << ',' << r.residual << '\n';
  os.precision(old);
}

}  // namespace lowlying
