#include "lowlying/specfun.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <numbers>

#include "lowlying/errors.hpp"

namespace lowlying {

namespace {

using cd = std::complex<double>;

constexpr double kShift = 12.0;

}  // namespace

cd log_gamma(cd z) {
  if (z.real() <= 0.0 && z.imag() == 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("log_gamma: pole at a non-positive integer");
  cd shift = 0.0;
  while (std::abs(z) < kShift || z.real() < kShift / 2) {
    shift += std::log(z);
    z += 1.0;
  }
  const cd inv = 1.0 / z, inv2 = inv * inv;
  cd series = 0.0, power = inv;
  for (int k = 1; k <= 12; ++k) {
    const double b = boost::math::bernoulli_b2n<double>(k);
    series += b / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

cd digamma(cd z) {
  if (z.real() <= 0.0 && z.imag() == 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("digamma: pole at a non-positive integer");
  cd shift = 0.0;
  while (std::abs(z) < kShift || z.real() < kShift / 2) {
    shift += 1.0 / z;
    z += 1.0;
  }
  const cd inv = 1.0 / z, inv2 = inv * inv;
  cd series = 0.0, power = inv2;
  for (int k = 1; k <= 12; ++k) {
    series += boost::math::bernoulli_b2n<double>(k) / (2.0 * k) * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 * inv - series - shift;
}

cd hurwitz_zeta(cd s, double x) {
  if (s == cd(1.0, 0.0)) throw DomainError("hurwitz_zeta: pole at s = 1");
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("hurwitz_zeta: x must lie in (0, 1]");
  const auto N = static_cast<int>(20.0 + std::abs(s.imag()) / 2.0 + std::max(0.0, -s.real()));
  cd sum = 0.0;
  for (int n = 0; n < N; ++n) sum += std::pow(n + x, -s);
  const double a = N + x;
  const cd a_s = std::pow(a, -s);
  sum += a * a_s / (s - 1.0) + 0.5 * a_s;
  // Bernoulli tail: B_{2k}/(2k)! s(s+1)...(s+2k-2) a^{-s-2k+1}
  cd rising = s;            // s (s+1) ... (s + 2k - 2)
  cd power = a_s / a;       // a^{-s-2k+1}
  const double inv_a2 = 1.0 / (a * a);
  for (int k = 1; k <= 60; ++k) {
    const cd term = boost::math::bernoulli_b2n<double>(k) / boost::math::factorial<double>(2 * k) * rising * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    power *= inv_a2;
  }
  throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin tail did not settle", std::abs(sum));
}

}  // namespace lowlying
