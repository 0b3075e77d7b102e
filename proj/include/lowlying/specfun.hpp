#pragma once

// Complex log-gamma and digamma, and the Hurwitz zeta function.

#include <complex>

namespace lowlying {

/// Principal branch of log Gamma(z), continuous off the negative real axis.
std::complex<double> log_gamma(std::complex<double> z);

std::complex<double> digamma(std::complex<double> z);

/// zeta(s, x) = sum_{n>=0} (n + x)^{-s} by Euler-Maclaurin, x in (0, 1].
/// Throws DomainError at s = 1 and for x outside (0, 1].
std::complex<double> hurwitz_zeta(std::complex<double> s, double x);

}  // namespace lowlying
