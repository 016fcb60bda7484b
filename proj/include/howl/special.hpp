#pragma once

#include <complex>

namespace howl {

using Complex = std::complex<double>;

/// Principal branch of log Gamma(z) for complex z, Lanczos approximation
/// with reflection for Re z < 1/2. Throws PoleError when z sits on a
/// nonpositive integer (within 1e-12).
Complex log_gamma(Complex z);

/// Gamma(z) via exp(log_gamma).
Complex gamma_fn(Complex z);

/// True when z is within tol of a nonpositive integer.
bool is_gamma_pole(Complex z, double tol = 1e-12);

struct GammaRatioResult {
  Complex value;
  bool zero_by_pole = false; // denominator hit a pole; value is 0 and the caller decides
};

/// Gamma(num) / Gamma(den) computed in log space. A pole in the numerator
/// throws; a pole in the denominator is reported via the flag.
GammaRatioResult gamma_ratio(Complex num, Complex den);

/// Gauss hypergeometric 2F1(a, b; c; z) for real z <= 0, evaluated through
/// the Pfaff transformation z -> z/(z-1) in [0,1) followed by the power
/// series. c must stay away from nonpositive integers.
Complex gauss_2f1(Complex a, Complex b, Complex c, double z);

/// Macdonald function K_nu(x) for complex order and real x > 0 via adaptive
/// composite Gauss-Legendre quadrature of int_0^inf e^{-x cosh t} cosh(nu t) dt.
/// Declared support window: |Re nu| <= 10.
Complex bessel_k(Complex order, double x);

} // namespace howl
