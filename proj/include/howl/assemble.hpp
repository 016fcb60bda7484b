#pragma once

#include <functional>
#include <vector>

#include "howl/factors.hpp"
#include "howl/root_system.hpp"
#include "howl/series.hpp"

namespace howl {

struct EvalResult {
  Complex value{0.0};
  double tail = 0.0; // aggregated truncation-shell estimate
};

/// Heckman-Opdam hypergeometric function
///   F(lambda, k; a) = sum_{w in W} c(w lambda, k) Phi(w lambda, k; a),
/// truncated at height N. When lambda sits on (or too close to) a resonance
/// or a c-function pole -- F itself is holomorphic there -- the value is
/// recovered by a 16-node Cauchy circle mean in lambda along a fixed
/// direction, every node being checked generic first.
EvalResult hypergeom_f(const RootSystem& rs, const Covector& lambda, const Multiplicity& k,
                       const ChamberPoint& a, int N);

/// Whittaker function by the Weyl-sum expansion
///   W(lambda, psi; a) = a^rho sum_w M(w0 w, lambda, psi) c_bold(w0 w lambda) Psi_T(w lambda, psi; a).
/// A relative truncation tail above tail_tol raises AccuracyError.
EvalResult whittaker_w(const RootSystem& rs, const Covector& lambda, const Character& psi,
                       const ChamberPoint& a, int N, double tail_tol = 1e-6);

struct SweepRow {
  double M = 0.0;
  Complex lhs{0.0};
  Complex rhs{0.0};
  double rel_err = 0.0;
  double lhs_tail = 0.0;
  double rhs_tail = 0.0;
  int trunc_used = 0;
  bool chamber_ok = true; // false when a_M failed to reach A_+
};

struct SweepResult {
  std::string rs_label;
  std::vector<Complex> lambda_pairings;
  std::vector<double> point;
  int trunc_request = 0;
  std::vector<SweepRow> rows; // ordered by increasing M
};

/// Scaled Calogero-Moser-to-Toda sweep:
///   lhs(M) = e^{-(lambda,rho_vee) M} Psi_CM(lambda, k_M; a_M),
///   rhs    = Psi_T(w0 lambda; a).
/// The truncation height grows (up to 80) until the series shells sit below
/// a tenth of the observed |lhs - rhs| gap.
SweepResult limit_prop22(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                         const std::vector<double>& Ms, int N);

/// Full limit sweep:
///   lhs(M) = prod Gamma(k_M) sum_w c~(w lambda, k_M) Psi_CM(w lambda, k_M; a_M)
///   rhs    = bold-c~(rho) f(lambda) a^{-rho} W(lambda, psi_1; a),
/// every exponentially scaled factor fused into one log-space exponent per
/// Weyl term.
SweepResult limit_main(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                       const std::vector<double>& Ms, int N);

/// sum_w f(w lambda) bold-c~(w lambda) Psi_T(w0 w lambda; a): the
/// M-independent form the limit sweep converges to; equals the rhs of
/// limit_main identically.
EvalResult hashizume_sum(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                         int N);

/// Least-squares slope of ln(rel_err) against M over the usable rows.
double log_error_slope(const SweepResult& sweep);

enum class HamiltonianKind {
  CalogeroMoser,   // sum d^2 + sum_{alpha in R_+} k(1-k)(alpha,alpha)/(4 sinh^2(alpha/2))
  Toda,            // sum d^2 - 2 sum_{alpha in B} l_alpha^2 e^alpha
  HypergeometricL, // L(k) = sum d^2 + sum k_alpha coth(alpha/2) d_alpha
};

struct FdHamiltonian {
  HamiltonianKind kind = HamiltonianKind::CalogeroMoser;
  Multiplicity k;  // CalogeroMoser / HypergeometricL
  Character psi;   // Toda
};

/// Central-difference application of the chosen Hamiltonian: 2n+1-point
/// stencil for the Laplacian (plus first derivatives for L(k)), exact
/// potential values at a.
Complex apply_hamiltonian_fd(const RootSystem& rs, const FdHamiltonian& ham,
                             const std::function<Complex(const ChamberPoint&)>& phi,
                             const ChamberPoint& a, double h);

} // namespace howl
