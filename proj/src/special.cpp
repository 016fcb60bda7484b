#include "howl/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "howl/errors.hpp"

namespace howl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLn2 = 0.69314718055994530941723212145817657;

// log(sin(z)) without the overflow and branch jumps of log(std::sin(z))
// at large |Im z|.
Complex log_sin(Complex z) {
  const Complex i(0.0, 1.0);
  if (z.imag() > 0.0)
    return -i * (kPi / 2.0) - kLn2 - i * z + std::log(std::exp(2.0 * i * z) - 1.0);
  return -i * (kPi / 2.0) - kLn2 + i * z + std::log(1.0 - std::exp(-2.0 * i * z));
}

// Lanczos coefficients (g = 5.2421875, 14 terms); relative accuracy is a
// few ulps beyond 1e-14 for Re z >= 1/2.
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr double kLanczosSqrt2Pi = 2.5066282746310005;
constexpr double kLanczosCoef[14] = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};

Complex log_gamma_core(Complex z) {
  // requires Re z >= 1/2
  Complex tmp = z + kLanczosG;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  Complex ser(kLanczosC0, 0.0);
  Complex y = z;
  for (double c : kLanczosCoef) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(kLanczosSqrt2Pi * ser / z);
}

} // namespace

bool is_gamma_pole(Complex z, double tol) {
  double n = std::round(z.real());
  if (n > 0.5) return false;
  return std::abs(z - Complex(n, 0.0)) <= tol;
}

Complex log_gamma(Complex z) {
  if (is_gamma_pole(z)) {
    long long n = static_cast<long long>(std::llround(z.real()));
    throw PoleError("log_gamma at nonpositive integer", n, "z");
  }
  if (z.real() < 0.5) {
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    return std::log(kPi) - log_sin(kPi * z) - log_gamma_core(1.0 - z);
  }
  return log_gamma_core(z);
}

Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

GammaRatioResult gamma_ratio(Complex num, Complex den) {
  if (is_gamma_pole(num)) {
    long long n = static_cast<long long>(std::llround(num.real()));
    throw PoleError("gamma_ratio numerator at nonpositive integer", n, "num");
  }
  if (is_gamma_pole(den)) return {Complex(0.0), true};
  return {std::exp(log_gamma(num) - log_gamma(den)), false};
}

Complex gauss_2f1(Complex a, Complex b, Complex c, double z) {
  if (!(z <= 0.0)) throw DomainError("gauss_2f1 requires z <= 0", "z");
  if (is_gamma_pole(c))
    throw PoleError("gauss_2f1: c at nonpositive integer",
                    static_cast<long long>(std::llround(c.real())), "c");
  if (z == 0.0) return Complex(1.0);

  // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)), w in [0,1)
  const double w = z / (z - 1.0);
  const Complex bp = c - b;
  Complex term(1.0);
  Complex sum(1.0);
  const double eps = std::numeric_limits<double>::epsilon();
  int small_streak = 0;
  const int max_terms = 40000;
  int n = 0;
  for (; n < max_terms; ++n) {
    Complex ratio = (a + static_cast<double>(n)) * (bp + static_cast<double>(n)) /
                    ((c + static_cast<double>(n)) * static_cast<double>(n + 1)) * w;
    term *= ratio;
    sum += term;
    if (std::abs(term) <= eps * std::abs(sum)) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
  }
  if (n >= max_terms) {
    double achieved = std::abs(term) / std::max(std::abs(sum), 1e-300);
    throw AccuracyError("gauss_2f1 series did not converge", achieved, "z");
  }
  // (1-z) is real >= 1, so the principal power is unambiguous
  return std::exp(-a * std::log(1.0 - z)) * sum;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGlNode[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr double kGlWeight[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

Complex k_integrand(Complex nu, double x, double t) {
  // e^{-x cosh t} cosh(nu t) assembled in log space: cosh(nu t) alone can
  // overflow for |Re nu| t ~ 400 while the product stays tiny.
  Complex nt = nu * t;
  Complex s = (nt.real() >= 0.0) ? nt : -nt;
  Complex log_cosh = s + std::log(0.5 * (1.0 + std::exp(-2.0 * s)));
  return std::exp(log_cosh - x * std::cosh(t));
}

Complex k_gauss_panels(Complex nu, double x, double tmax, int panels) {
  Complex total(0.0);
  const double h = tmax / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    const double half = 0.5 * h;
    Complex acc(0.0);
    for (int k = 0; k < 8; ++k) {
      acc += kGlWeight[k] * (k_integrand(nu, x, mid + half * kGlNode[k]) +
                             k_integrand(nu, x, mid - half * kGlNode[k]));
    }
    total += acc * half;
  }
  return total;
}

} // namespace

Complex bessel_k(Complex nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k requires x > 0", "x");
  const double re_nu = std::abs(nu.real());
  if (re_nu > 10.0 + 1e-12)
    throw DomainError("bessel_k supports |Re order| <= 10", "order");

  // truncation point: e^{-x cosh t + |Re nu| t} < 1e-18 * e^{-x}
  double t = 1.0;
  for (int it = 0; it < 40; ++it) {
    double target = (41.5 + re_nu * t + x) / x; // cosh t = target
    double tn = std::log(target + std::sqrt(target * target - 1.0) + 1e-30);
    tn = std::max(tn, 1.0);
    if (std::abs(tn - t) < 1e-12) { t = tn; break; }
    t = tn;
  }

  // panels sized against the oscillation of cosh(i Im(nu) t)
  int panels = std::max(4, static_cast<int>(std::ceil(t * (1.0 + std::abs(nu.imag()) / 3.0))));
  Complex prev = k_gauss_panels(nu, x, t, panels);
  for (int round = 0; round < 12; ++round) {
    panels *= 2;
    Complex cur = k_gauss_panels(nu, x, t, panels);
    double diff = std::abs(cur - prev);
    if (diff <= 1e-12 * std::max(std::abs(cur), 1e-300)) return cur;
    prev = cur;
  }
  throw AccuracyError("bessel_k quadrature did not converge",
                      std::abs(prev) > 0 ? 1e-12 : 0.0, "order/x");
}

} // namespace howl
