#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "howl/root_system.hpp"

namespace howl {

/// Nondegenerate unitary character data: one l_alpha per simple root of B.
/// The Whittaker-side formulas assume real positive l (principal powers).
struct Character {
  std::vector<double> l;

  Character() = default;
  explicit Character(std::vector<double> ls) : l(std::move(ls)) {}
  static Character ones(int rank) { return Character(std::vector<double>(rank, 1.0)); }
  bool nondegenerate() const {
    for (double v : l)
      if (v == 0.0) return false;
    return !l.empty();
  }
};

enum class SeriesKind { HarishChandra, Toda };

/// Truncated coefficient table mu -> Gamma_mu (Harish-Chandra) or
/// mu -> b_mu (Toda) over Q_+ up to the stated height, together with the
/// parameters that generated it. Immutable once built; shared via the cache.
struct SeriesTable {
  SeriesKind kind = SeriesKind::HarishChandra;
  std::string rs_label;
  Covector lambda;
  Multiplicity k;       // Harish-Chandra only
  Character character;  // Toda only
  int height = 0;
  std::vector<LatticePoint> points; // enumerate_qplus order
  std::vector<Complex> coeff;       // aligned with points
  std::unordered_map<unsigned long long, int> index; // packed mu -> position

  const Complex* find(const std::vector<int>& n) const;
  static unsigned long long pack(const std::vector<int>& n);
};

/// Resonance guard: |(2 lambda -/+ mu, mu)| must exceed this for every
/// 0 < n(mu) <= N. Scales with |lambda|^2 so large spectral parameters do
/// not trip an absolute threshold.
double resonance_tolerance(const RootSystem& rs, const Covector& lambda);

/// Harish-Chandra coefficients Gamma_mu(lambda, k) up to height N.
/// Throws ResonanceError naming mu when a denominator (2 lambda - mu, mu)
/// is too close to zero.
std::shared_ptr<const SeriesTable> hc_coefficients(const RootSystem& rs,
                                                   const Covector& lambda,
                                                   const Multiplicity& k, int N);

/// Toda coefficients b_mu(lambda) up to height N, recurrence
/// (2 lambda + mu, mu) b_mu = 2 sum_{alpha in B} l_alpha^2 b_{mu - alpha}.
std::shared_ptr<const SeriesTable> toda_coefficients(const RootSystem& rs,
                                                     const Covector& lambda, int N,
                                                     const Character& psi);
std::shared_ptr<const SeriesTable> toda_coefficients(const RootSystem& rs,
                                                     const Covector& lambda, int N);

/// One truncated series evaluation. value = exp(log_prefactor) * sum; sweeps
/// keep the pieces separate and fuse exponents in log space before a single
/// exponentiation.
struct SeriesEval {
  Complex value{0.0};
  Complex log_prefactor{0.0};
  Complex sum{0.0};
  double tail = 0.0; // last height-shell magnitude, on the scale of `sum`
};

/// Harish-Chandra series Phi(lambda, k; a) = sum Gamma_mu e^{(lambda - rho(k) - mu)(log a)}.
/// Evaluated with the a-scaled term recurrence so that the k_M ~ e^M regime
/// neither overflows nor underflows; requires a in A_+.
SeriesEval phi(const RootSystem& rs, const Covector& lambda, const Multiplicity& k,
               const ChamberPoint& a, int N);

/// log of delta(k;a)^{1/2} = sum_{alpha in R_+} k_alpha log(2 sinh(alpha(log a)/2)).
double log_delta_half(const RootSystem& rs, const Multiplicity& k, const ChamberPoint& a);

/// Psi_CM = delta(k)^{1/2} Phi, fused in log space.
SeriesEval psi_cm(const RootSystem& rs, const Covector& lambda, const Multiplicity& k,
                  const ChamberPoint& a, int N);

/// Toda series Psi_T(lambda, psi; a) = sum b_mu e^{(lambda + mu)(log a)}.
/// The exponents ascend, so the height-N shell must be checked rather than
/// assumed small: a relative tail above `tail_tol` raises AccuracyError.
SeriesEval psi_toda(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                    int N, const Character& psi, double tail_tol = 1e-6);
SeriesEval psi_toda(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                    int N);

} // namespace howl
