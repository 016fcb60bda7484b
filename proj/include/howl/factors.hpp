#pragma once

#include "howl/root_system.hpp"
#include "howl/series.hpp"

namespace howl {

/// A product of Gamma factors held in log space. is_zero marks a legitimate
/// zero caused by a denominator Gamma pole (the exp would underflow to 0
/// anyway, but the flag keeps the information exact).
struct LogValue {
  Complex log{0.0};
  bool is_zero = false;

  Complex value() const { return is_zero ? Complex(0.0) : std::exp(log); }
};

/// c~(lambda, k) = prod_{alpha in R_+} Gamma((lambda,alpha^vee)) / Gamma((lambda,alpha^vee) + k_alpha).
/// Throws PoleError (naming the root) when a numerator hits a pole; a
/// denominator pole yields a zero value flagged in LogValue.
LogValue log_c_tilde(const RootSystem& rs, const Covector& lambda, const Multiplicity& k);
Complex c_tilde(const RootSystem& rs, const Covector& lambda, const Multiplicity& k);

/// Normalized c(lambda, k) = c~(lambda,k) / c~(rho(k),k).
Complex c_norm(const RootSystem& rs, const Covector& lambda, const Multiplicity& k);

/// Harish-Chandra c-function of the split group: k == 1/2 on all of R.
LogValue log_c_bold_tilde(const RootSystem& rs, const Covector& lambda);
Complex c_bold_tilde(const RootSystem& rs, const Covector& lambda);
Complex c_bold(const RootSystem& rs, const Covector& lambda);

/// f(lambda) = prod_{alpha in R_+} ((alpha,alpha)/2)^{(lambda,alpha^vee)/2} Gamma((lambda,alpha^vee) + 1/2).
LogValue log_f_factor(const RootSystem& rs, const Covector& lambda);
Complex f_factor(const RootSystem& rs, const Covector& lambda);

/// Intertwining factor M(w, lambda, psi), computed along a reduced word of w
/// through the cocycle M(w w', lambda) = M(w', lambda) M(w, w' lambda).
Complex m_intertwiner(const RootSystem& rs, const WeylElement& w, const Covector& lambda,
                      const Character& psi);
LogValue log_m_intertwiner(const RootSystem& rs, const WeylElement& w,
                           const Covector& lambda, const Character& psi);

/// sum_{alpha in R_+} log Gamma(k_alpha) -- the Gamma(k_M) product of the
/// limit formulas, which overflows doubles near M ~ 5 unless kept in logs.
double log_gamma_product(const RootSystem& rs, const Multiplicity& k);

/// Multiplicity scaling k_M(alpha)(k_M(alpha)-1)(alpha,alpha) = 2 e^{2M}
/// (positive root of the quadratic), together with the point shift
/// log a_M = w_0 log a + M rho^vee.
struct ScalingData {
  double M = 0.0;
  Multiplicity k;

  ChamberPoint shift(const RootSystem& rs, const ChamberPoint& a) const;
};

ScalingData scaling_data(const RootSystem& rs, double M);
ChamberPoint a_shifted(const RootSystem& rs, const ChamberPoint& a, double M);

/// Coordinate shift absorbing general l_alpha into the character-one Toda
/// operator: alpha(log a) = alpha(log a') - log l_alpha^2 per alpha in B.
ChamberPoint shift_for_general_l(const RootSystem& rs, const Character& psi,
                                 const ChamberPoint& a_prime);

} // namespace howl
