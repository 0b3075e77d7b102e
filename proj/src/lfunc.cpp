#include "lowlying/lfunc.hpp"

#include <unistd.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "lowlying/errors.hpp"
#include "lowlying/gauss_sums.hpp"
#include "lowlying/specfun.hpp"
#include "lowlying/symbols.hpp"

namespace lowlying {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSigmaMax = 3.0;  // rightmost Re s the ray cutoff accounts for
constexpr double kDrop = 39.0;     // e^-39 ~ 1e-17

// pi/2 - phi = max(loss / (kappa T_max), the balance point where the growth
// e^{kappa T delta} at the top equals the near-axis peak delta^{-(lambda + kappa/2)})
double ray_angle(double kappa, double lambda, double T_max, double loss) {
  if (T_max <= 0.0) return 0.0;
  const double top = kappa * T_max, power = lambda + kappa / 2;
  double lo = 1e-12, hi = kPi / 2;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (top * mid < power * std::log(1.0 / mid) ? lo : hi) = mid;
  }
  return kPi / 2 - std::min(kPi / 2, std::max(loss / top, hi));
}

// x beyond which x^{lambda_e} e^{-c x} stays below its peak times e^{-drop}
double ray_cutoff(double kappa, double lambda, double phi, double cutoff_scale) {
  const double c = std::cos(phi);
  const double le = lambda + kappa * kSigmaMax;
  const double peak_x = le / c;
  const double target = le * (std::log(peak_x) - 1.0) - kDrop * cutoff_scale;
  auto f = [&](double x) { return le * std::log(x) - c * x - target; };
  double lo = peak_x, hi = 2.0 * peak_x + 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

cplx principal_sqrt_inverse(cplx eps) { return std::sqrt(1.0 / eps); }

}  // namespace

cplx dirichlet_L(cplx s, const DirichletChar& chi) {
  const double q = static_cast<double>(chi.modulus);
  cplx sum = 0.0;
  for (i64 a = 1; a <= chi.modulus; ++a) {
    const cplx v = chi.value(a);
    if (v == 0.0) continue;
    sum += v * hurwitz_zeta(s, static_cast<double>(a) / q);
  }
  return std::pow(q, -s) * sum;
}

cplx root_number(const DirichletChar& chi) {
  const cplx ia = chi.parity == 1 ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
  return gauss_sum_chi(chi) / (ia * std::sqrt(static_cast<double>(chi.modulus)));
}

CompletedValue completed_and_root(const DirichletChar& chi, double t) {
  if (!chi.primitive) throw DomainError("completed_and_root: character " + chi.label + " is not primitive");
  const cplx s(0.5, t);
  const double q = static_cast<double>(chi.modulus);
  const cplx a = (s + static_cast<double>(chi.parity)) / 2.0;
  CompletedValue out;
  out.t = t;
  out.w = principal_sqrt_inverse(root_number(chi));
  const cplx z = out.w * std::exp(a * std::log(q / kPi) + log_gamma(a)) * dirichlet_L(s, chi);
  out.Z = z.real();
  out.imaginary = z.imag();
  if (std::abs(out.imaginary) > 1e-6)
    throw ConvergenceError("completed_and_root: imaginary part of Z too large for " + chi.label, std::abs(out.imaginary));
  return out;
}

LData dirichlet_ldata(const DirichletChar& chi) {
  if (!chi.primitive) throw DomainError("dirichlet_ldata: character " + chi.label + " is not primitive");
  LData d;
  d.degree = 1;
  d.kappa = 0.5;
  d.lambda = chi.parity / 2.0;
  d.Q = std::sqrt(static_cast<double>(chi.modulus) / kPi);
  d.root_number = root_number(chi);
  auto shared = std::make_shared<DirichletChar>(chi);
  d.coefficient = [shared](i64 n) { return shared->value(n); };
  d.real_coefficients = chi.is_real();
  d.conductor = chi.modulus;
  d.label = chi.label;
  d.order = chi.order;
  return d;
}

LData twist_ldata(i64 d, const EigenformCoeffs& f) {
  if (d < 1 || d % 2 == 0 || !is_squarefree_integer(d)) throw DomainError("twist_ldata: d must be odd and square-free");
  if (8 * d > 200) throw CapacityError("twist_ldata: 8d above 200");
  const i64 q = 8 * d;
  std::vector<std::int8_t> table(static_cast<std::size_t>(q));
  for (i64 m = 0; m < q; ++m) {
    const int k = kronecker(q, m);
    table[static_cast<std::size_t>(m)] = k == 0 ? -1 : (k == 1 ? 0 : 1);
  }
  const DirichletChar chi = make_character(q, 2, table, "8d:d=" + std::to_string(d));
  const cplx tau = gauss_sum_chi(chi);
  const cplx ik = std::pow(cplx(0.0, 1.0), f.weight());

  auto coeffs = std::make_shared<std::vector<double>>(static_cast<std::size_t>(f.size() + 1), 0.0);
  for (i64 n = 1; n <= f.size(); ++n) (*coeffs)[static_cast<std::size_t>(n)] = f.a(n) * kronecker(q, n);

  LData data;
  data.degree = 2;
  data.kappa = 1.0;
  data.lambda = (f.weight() - 1) / 2.0;
  data.Q = static_cast<double>(q) / (2.0 * kPi);
  data.root_number = ik * tau * tau / static_cast<double>(q);
  data.coefficient = [coeffs](i64 n) -> cplx {
    if (n >= static_cast<i64>(coeffs->size()))
      throw CapacityError("twist coefficients known only up to " + std::to_string(coeffs->size() - 1));
    return (*coeffs)[static_cast<std::size_t>(n)];
  };
  data.real_coefficients = true;
  data.conductor = q * q;
  data.label = "f12x8d:d=" + std::to_string(d);
  data.order = 2;
  return data;
}

i64 twist_coefficients_needed(i64 d, double T, double cutoff_scale) {
  const double phi = ray_angle(1.0, 5.5, T, 4.0);
  const double x_stop = ray_cutoff(1.0, 5.5, phi, cutoff_scale);
  return static_cast<i64>(std::ceil(x_stop * 8.0 * static_cast<double>(d) / (2.0 * kPi))) + 1;
}

CompletedLFunction::CompletedLFunction(LData data, double T_max, int sign, double cutoff_scale, double loss)
    : data_(std::move(data)), T_max_(T_max), sign_(sign >= 0 ? 1 : -1) {
  using boost::math::quadrature::gauss;
  const double kappa = data_.kappa, lambda = data_.lambda;
  phi_ = sign_ * ray_angle(kappa, lambda, T_max, loss);
  rotation_ = principal_sqrt_inverse(data_.root_number);

  const double x_stop = ray_cutoff(kappa, lambda, std::abs(phi_), cutoff_scale);
  const double inv_kappa = 1.0 / kappa;
  // term n at radius r has x = (n/Q)^{1/kappa} r
  const double u_end = std::max(0.0, std::log(x_stop) + inv_kappa * std::log(data_.Q));
  const double rate = x_stop * std::abs(std::sin(phi_)) + kappa * (T_max + 1.0) + lambda + 2.0;
  const long panels = std::max(4L, static_cast<long>(std::ceil(u_end * rate / 10.0)));

  const auto& abscissa = gauss<double, 20>::abscissa();
  const auto& gw = gauss<double, 20>::weights();
  const double h = u_end / static_cast<double>(panels);
  for (long p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h, half = h / 2;
    for (std::size_t j = 0; j < abscissa.size(); ++j)
      for (int sgn : {-1, 1}) {
        if (sgn == 1 && abscissa[j] == 0.0) continue;
        nodes_.push_back(mid + sgn * half * abscissa[j]);
        weights_.push_back(half * gw[j]);
      }
  }

  // coefficient tables: A_n = b(n) (n/Q)^{lambda/kappa}, g_n = (n/Q)^{1/kappa}
  const i64 n_max = static_cast<i64>(std::floor(data_.Q * std::pow(x_stop, kappa))) + 1;
  std::vector<cplx> A;
  std::vector<double> g;
  A.reserve(static_cast<std::size_t>(n_max));
  g.reserve(static_cast<std::size_t>(n_max));
  for (i64 n = 1; n <= n_max; ++n) {
    const double ratio = static_cast<double>(n) / data_.Q;
    A.push_back(data_.coefficient(n) * std::pow(ratio, lambda * inv_kappa));
    g.push_back(std::pow(ratio, inv_kappa));
  }
  const double c = std::cos(phi_), s = std::sin(phi_);
  theta_.assign(nodes_.size(), 0.0);
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double r = std::exp(nodes_[j]);
    cplx acc = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
      const double x = g[n] * r;
      if (x > x_stop) break;
      if (A[n] == 0.0) continue;
      acc += A[n] * std::exp(-x * c) * cplx(std::cos(x * s), -std::sin(x * s));
    }
    theta_[j] = acc;
  }
}

cplx CompletedLFunction::Lambda(cplx s) const {
  const double kappa = data_.kappa, lambda = data_.lambda;
  const cplx a = kappa * s + lambda, b = kappa * (1.0 - s) + lambda;
  const cplx up(0.0, phi_), down(0.0, -phi_);
  cplx first = 0.0, second = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    first += weights_[j] * theta_[j] * std::exp(a * (nodes_[j] + up));
    second += weights_[j] * std::conj(theta_[j]) * std::exp(b * (nodes_[j] + down));
  }
  return first + data_.root_number * second;
}

cplx CompletedLFunction::log_gamma_factor(cplx s) const {
  return s * std::log(data_.Q) + log_gamma(data_.kappa * s + data_.lambda);
}

cplx CompletedLFunction::L(cplx s) const { return Lambda(s) * std::exp(-log_gamma_factor(s)); }

double CompletedLFunction::hardy_Z(double t, double* imaginary) const {
  const cplx s(0.5, t);
  const cplx z = rotation_ * Lambda(s) * std::exp(-log_gamma_factor(s).real());
  if (imaginary) *imaginary = z.imag();
  return z.real();
}

std::vector<double> CompletedLFunction::hardy_Z_grid(double t0, double step, std::size_t count) const {
  const double kappa = data_.kappa, lambda = data_.lambda;
  const std::size_t m = nodes_.size();
  std::vector<cplx> p1(m), p2(m), r1(m), r2(m);
  const cplx up(0.0, phi_), down(0.0, -phi_), i(0.0, 1.0);
  auto sync = [&](double t) {
    const cplx s(0.5, t);
    const cplx a = kappa * s + lambda, b = kappa * (1.0 - s) + lambda;
    for (std::size_t j = 0; j < m; ++j) {
      p1[j] = weights_[j] * theta_[j] * std::exp(a * (nodes_[j] + up));
      p2[j] = weights_[j] * std::conj(theta_[j]) * std::exp(b * (nodes_[j] + down));
    }
  };
  for (std::size_t j = 0; j < m; ++j) {
    r1[j] = std::exp(i * kappa * step * (nodes_[j] + up));
    r2[j] = std::exp(-i * kappa * step * (nodes_[j] + down));
  }
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = t0 + static_cast<double>(k) * step;
    if (k % 64 == 0) sync(t);
    cplx first = 0.0, second = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      first += p1[j];
      second += p2[j];
      p1[j] *= r1[j];
      p2[j] *= r2[j];
    }
    const cplx z = rotation_ * (first + data_.root_number * second) * std::exp(-log_gamma_factor(cplx(0.5, t)).real());
    out[k] = z.real();
  }
  return out;
}

double zero_count_expected(double q, double T, int degree) {
  if (T <= 0.0) return 0.0;
  return T / kPi * std::log(q * std::pow(T / (2.0 * kPi * std::numbers::e), degree));
}

namespace {

// arg L(1/2 + iT) continued from the right where |L - 1| < 1
double tracked_arg(const CompletedLFunction& f, double T) {
  const double sigma0 = f.data().degree == 1 ? 2.0 : 3.0;
  auto arg_at = [&](double sigma) {
    const cplx s(sigma, T);
    return std::arg(f.Lambda(s)) - f.log_gamma_factor(s).imag();
  };
  auto wrap = [](double x) { return x - 2.0 * kPi * std::round(x / (2.0 * kPi)); };
  double sigma = sigma0;
  double current = std::arg(f.L(cplx(sigma0, T)));
  double raw = arg_at(sigma0);
  double step = 0.1;
  while (sigma > 0.5) {
    const double next = std::max(0.5, sigma - step);
    const double raw_next = arg_at(next);
    const double delta = wrap(raw_next - raw);
    if (std::abs(delta) > 0.5 && step > 1e-6) {
      step /= 2;
      continue;
    }
    current += delta;
    raw = raw_next;
    sigma = next;
    step = std::min(0.1, step * 2);
  }
  return current;
}

double theta_phase(const CompletedLFunction& f, double t) { return f.log_gamma_factor(cplx(0.5, t)).imag(); }

}  // namespace

double argument_principle_count(const CompletedLFunction& upper, const CompletedLFunction* lower, double T) {
  const double up = theta_phase(upper, T) + tracked_arg(upper, T);
  double down;
  if (lower) down = theta_phase(*lower, -T) + tracked_arg(*lower, -T);
  else down = -up;
  return (up - down) / kPi;
}

std::size_t ZeroList::count_within(double T) const {
  return static_cast<std::size_t>(std::count_if(gammas.begin(), gammas.end(), [T](double g) { return std::abs(g) <= T; }));
}

namespace {

std::vector<double> scan_side(const CompletedLFunction& f, double T, double step, double tol) {
  const auto n = static_cast<std::size_t>(std::ceil(T / step));
  const double h = f.sign() * T / static_cast<double>(n);
  const auto values = f.hardy_Z_grid(0.0, h, n + 1);
  std::vector<double> roots;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * h;
    if (values[k] == 0.0) {
      roots.push_back(t);
      continue;
    }
    if (k == n || values[k + 1] == 0.0 || (values[k] > 0) == (values[k + 1] > 0)) continue;
    double a = t, b = static_cast<double>(k + 1) * h;
    double fa = values[k], fb = values[k + 1];
    if (a > b) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
    std::uintmax_t iterations = 200;
    const auto bracket = boost::math::tools::toms748_solve([&](double x) { return f.hardy_Z(x); }, a, b, fa, fb,
                                                           [tol](double lo, double hi) { return hi - lo < tol; },
                                                           iterations);
    roots.push_back(0.5 * (bracket.first + bracket.second));
  }
  return roots;
}

}  // namespace

ZeroList find_zeros(const LData& data, double T, const ZeroOptions& options) {
  if (!(T > 0.0)) throw DomainError("find_zeros: T must be positive");
  const CompletedLFunction upper(data, T, 1, options.cutoff_scale, options.loss);
  std::optional<CompletedLFunction> lower;
  if (!data.real_coefficients) lower.emplace(data, T, -1, options.cutoff_scale, options.loss);

  ZeroList out;
  out.conductor = data.conductor;
  out.label = data.label;
  out.order = data.order;
  out.degree = data.degree;
  out.T_max = T;
  out.root_number = data.root_number;
  out.rotation = upper.rotation();
  out.main_term = zero_count_expected(static_cast<double>(data.conductor), T, data.degree);
  if (data.degree == 2) out.main_term += data.lambda;
  out.expected_count = argument_principle_count(upper, lower ? &*lower : nullptr, T);
  const auto expected = static_cast<long>(std::llround(out.expected_count));

  double step = options.grid_step > 0.0 ? options.grid_step
                                        : std::min(0.05, 1.0 / std::log(static_cast<double>(data.conductor) * T));
  for (int attempt = 0; attempt < 2; ++attempt, step /= 4) {
    std::vector<double> gammas;
    for (double g : scan_side(upper, T, step, options.tolerance)) {
      if (data.real_coefficients) {
        if (g > 0.0) gammas.push_back(-g);
        gammas.push_back(g);
      } else {
        gammas.push_back(g);
      }
    }
    if (lower)
      for (double g : scan_side(*lower, T, step, options.tolerance))
        if (g != 0.0) gammas.push_back(g);
    std::sort(gammas.begin(), gammas.end());
    out.gammas = std::move(gammas);
    out.grid_step = step;
    out.complete = static_cast<long>(out.gammas.size()) == expected;
    if (out.complete) break;
  }
  return out;
}

ZeroList find_zeros_dirichlet(const DirichletChar& chi, double T, const ZeroOptions& options) {
  return find_zeros(dirichlet_ldata(chi), T, options);
}

ZeroList find_zeros_twist(i64 d, double T, const EigenformCoeffs& f, const ZeroOptions& options) {
  const LData data = twist_ldata(d, f);
  ZeroList out = find_zeros(data, T, options);
  const CompletedLFunction base(data, T, 1, options.cutoff_scale, options.loss);
  const CompletedLFunction stretched(data, T, 1, 1.5 * options.cutoff_scale, options.loss);
  const auto n = static_cast<std::size_t>(std::ceil(T / 0.25)) + 1;
  const auto a = base.hardy_Z_grid(0.0, T / static_cast<double>(n - 1), n);
  const auto b = stretched.hardy_Z_grid(0.0, T / static_cast<double>(n - 1), n);
  for (std::size_t k = 0; k < n; ++k) out.cutoff_sensitivity = std::max(out.cutoff_sensitivity, std::abs(a[k] - b[k]));
  if (out.cutoff_sensitivity > 1e-6)
    throw ConvergenceError("find_zeros_twist: Z depends on the cutoff beyond 1e-6", out.cutoff_sensitivity);
  return out;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string sanitize(const std::string& label) {
  std::string s = label;
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '=' || c == '-' || c == '+' || c == '.' || c == '_')) c = '_';
  return s;
}

}  // namespace

void write_zero_list(std::ostream& os, const ZeroList& zeros) {
  os << "q " << zeros.conductor << " label " << zeros.label << " order " << zeros.order << " Tmax "
     << format_double(zeros.T_max) << '\n';
  char buf[64];
  for (double g : zeros.gammas) {
    std::snprintf(buf, sizeof buf, "%.12f\n", g);
    os << buf;
  }
  os << "end " << zeros.gammas.size() << '\n';
}

std::optional<ZeroList> read_zero_list(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) return std::nullopt;
  std::istringstream header(line);
  std::string kq, kl, ko, kt, extra;
  ZeroList z;
  if (!(header >> kq >> z.conductor >> kl >> z.label >> ko >> z.order >> kt >> z.T_max)) return std::nullopt;
  if (kq != "q" || kl != "label" || ko != "order" || kt != "Tmax" || (header >> extra)) return std::nullopt;
  bool ended = false;
  while (std::getline(is, line)) {
    if (line.rfind("end ", 0) == 0) {
      std::size_t n = 0;
      try {
        std::size_t used = 0;
        n = std::stoul(line.substr(4), &used);
        if (used != line.size() - 4) return std::nullopt;
      } catch (const std::exception&) {
        return std::nullopt;
      }
      if (n != z.gammas.size()) return std::nullopt;
      ended = true;
      break;
    }
    double g;
    const auto res = std::from_chars(line.data(), line.data() + line.size(), g);
    if (res.ec != std::errc() || res.ptr != line.data() + line.size()) return std::nullopt;
    if (!z.gammas.empty() && g <= z.gammas.back()) return std::nullopt;
    if (std::abs(g) > z.T_max + 1e-9) return std::nullopt;
    z.gammas.push_back(g);
  }
  if (!ended || std::getline(is, line)) return std::nullopt;
  z.complete = true;
  z.expected_count = -1;
  return z;
}

ZeroCache::ZeroCache(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) {
    const char* env = std::getenv("LOWLYING_CACHE_DIR");
    dir_ = env && *env ? env : ".lowlying-cache";
  }
}

std::string ZeroCache::path_for(i64 q, const std::string& label) const {
  return (std::filesystem::path(dir_) / ("zeros_q" + std::to_string(q) + "_" + sanitize(label) + ".txt")).string();
}

std::optional<ZeroList> ZeroCache::load(i64 q, const std::string& label, int order, double T, int degree) const {
  std::ifstream in(path_for(q, label));
  if (!in) return std::nullopt;
  auto z = read_zero_list(in);
  if (!z || z->conductor != q || z->label != label || z->order != order || z->T_max < T) return std::nullopt;
  z->gammas.erase(std::remove_if(z->gammas.begin(), z->gammas.end(), [T](double g) { return std::abs(g) > T; }),
                  z->gammas.end());
  z->T_max = T;
  z->degree = degree;
  z->main_term = zero_count_expected(static_cast<double>(q), T, degree) + (degree == 2 ? 5.5 : 0.0);
  return z;
}

void ZeroCache::store(const ZeroList& zeros) const {
  if (!zeros.complete) return;
  std::filesystem::create_directories(dir_);
  const std::string target = path_for(zeros.conductor, zeros.label);
  const std::string temp = target + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write zero cache file " + temp);
    write_zero_list(out, zeros);
    if (!out) throw std::runtime_error("cannot write zero cache file " + temp);
  }
  std::filesystem::rename(temp, target);
}

}  // namespace lowlying
