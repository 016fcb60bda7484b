#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "howl/rational.hpp"

namespace howl {

using Complex = std::complex<double>;
/// Coefficients of a covector over the simple basis of Sigma.
using Covector = std::vector<Complex>;

enum class Family { A, B, C, D, G };

/// A root of Sigma in simple-root coordinates. The doubled system R = 2*Sigma
/// is never stored separately: alpha = 2*beta shares the same coefficient
/// vector over B = 2*Pi, and all R-level pairings are derived on the fly.
struct Root {
  std::vector<int> coeff; // over the simple basis of Sigma
  int height = 0;         // sum of coefficients
  int length2 = 0;        // (beta,beta) at Sigma level: 2, 4 or 6
};

/// An element of the Weyl group: exact integer matrix on simple-root
/// coordinates, plus length and one reduced word (first one found during
/// breadth-first generation).
struct WeylElement {
  std::vector<int> mat;    // n*n row-major: (w v)_i = sum_j mat[i*n+j] v_j
  int length = 0;
  std::vector<int> word;   // w = s_{word[0]} * ... * s_{word.back()}
  int index = 0;           // position in the group enumeration
  int inverse = 0;         // index of w^{-1}
};

/// A point of the positive lattice Q_+ in coordinates over B.
struct LatticePoint {
  std::vector<int> n;
  int height = 0;
};

/// W-invariant multiplicity function on R, stored per length orbit.
struct Multiplicity {
  double k_short = 0.0;
  double k_long = 0.0; // equals k_short for simply-laced systems

  Multiplicity() = default;
  explicit Multiplicity(double k) : k_short(k), k_long(k) {}
  Multiplicity(double ks, double kl) : k_short(ks), k_long(kl) {}
};

/// Coordinates x_alpha = alpha(log a) for alpha in B. Any real values are
/// representable; operations that require a point of A_+ check positivity
/// themselves.
struct ChamberPoint {
  std::vector<double> x;

  ChamberPoint() = default;
  explicit ChamberPoint(std::vector<double> xs) : x(std::move(xs)) {}
  bool in_positive_chamber(double margin = 0.0) const {
    for (double v : x)
      if (!(v > margin)) return false;
    return true;
  }
};

/// A reduced root system Sigma with its doubled copy R = 2*Sigma, Weyl group,
/// and the pairings used by every series and prefactor formula.
///
/// Conventions: short roots of Sigma have squared length 2; all vectors are
/// held in exact rational/integer coordinates over the simple basis of Sigma;
/// a complex covector nu is stored by its coefficients over that basis, so
/// nu(log a) = (1/2) sum_j l_j x_j for a point with B-coordinates x.
class RootSystem {
public:
  static RootSystem build(Family family, int rank);
  static RootSystem build(const std::string& label); // e.g. "A2", "G2"

  const std::string& label() const { return label_; }
  Family family() const { return family_; }
  int rank() const { return rank_; }

  // --- root data (Sigma level) ---
  const std::vector<Root>& positive_roots() const { return positive_; }
  int num_simple() const { return rank_; }
  /// (beta_i, beta_j) as exact rationals (integer-valued in this normalization).
  const std::vector<Rational>& gram() const { return gram_; }
  Rational gram_entry(int i, int j) const { return gram_[i * rank_ + j]; }
  /// rho = half sum of Sigma_+, in simple-root coordinates.
  const std::vector<Rational>& rho() const { return rho_; }
  /// rho-check = half sum of coroots of Sigma_+ = sum of coroots of R_+.
  const std::vector<Rational>& rho_vee() const { return rho_vee_; }
  /// rho(k) = (1/2) sum_{alpha in R_+} k_alpha alpha, in simple-root coords.
  std::vector<double> rho_k(const Multiplicity& k) const;
  /// Smallest (beta,beta) among roots; roots with larger length2 are "long".
  int min_length2() const { return min_len2_; }
  double k_of(const Multiplicity& k, const Root& beta) const {
    return beta.length2 == min_len2_ ? k.k_short : k.k_long;
  }
  bool simply_laced() const { return simply_laced_; }

  // --- Weyl group ---
  const std::vector<WeylElement>& weyl_group() const { return group_; }
  const WeylElement& identity() const { return group_[0]; }
  const WeylElement& longest_element() const { return group_[longest_]; }
  const WeylElement& simple_reflection(int i) const { return group_[simple_idx_[i]]; }
  int multiply(int wi, int wj) const; // index of w_i * w_j
  int element_index(const std::vector<int>& mat) const;

  // --- actions ---
  Covector act(const WeylElement& w, const Covector& lambda) const;
  std::vector<int> act_int(const WeylElement& w, const std::vector<int>& v) const;
  ChamberPoint act_point(const WeylElement& w, const ChamberPoint& a) const;

  // --- pairings (bilinear, not Hermitian) ---
  Complex inner(const Covector& u, const Covector& v) const;
  Complex inner_root(const Covector& u, int pos_root_index) const; // (u, beta)
  /// (lambda, alpha^vee) for alpha = 2*beta in R: equals (lambda,beta)/(beta,beta).
  Complex pairing_r(const Covector& lambda, int pos_root_index) const;
  /// (lambda, beta^vee) at the Sigma level.
  Complex pairing_sigma(const Covector& lambda, int pos_root_index) const;
  /// (lambda, alpha^vee) for an arbitrary root of R given by its coefficients
  /// over B; the zero vector is rejected.
  Complex pairing(const Covector& lambda, const std::vector<int>& root_coeff) const;
  /// Hermitian squared norm of a covector (sum |orthonormal coords|^2).
  double norm2(const Covector& u) const;

  Complex inner_rho_vee(const Covector& u) const;  // (u, rho_vee)
  Complex inner_rho(const Covector& u) const;      // (u, rho)

  // --- chamber-point helpers ---
  /// alpha(log a) for alpha = 2*beta_{pos_root_index} in R_+.
  double root_x(int pos_root_index, const ChamberPoint& a) const;
  /// nu(log a) for a covector nu in simple-root coordinates.
  Complex covector_at(const Covector& nu, const ChamberPoint& a) const;
  Complex covector_at(const std::vector<double>& nu, const ChamberPoint& a) const;
  /// mu(log a) for a lattice point mu over B.
  double lattice_at(const LatticePoint& mu, const ChamberPoint& a) const;
  double rho_at(const ChamberPoint& a) const;      // rho(log a)

  /// Solve for the covector with prescribed pairings p_j = (lambda, alpha_j^vee),
  /// alpha_j in B.
  Covector covector_from_pairings(const std::vector<Complex>& p) const;
  std::vector<Complex> pairings_of(const Covector& lambda) const;

  // --- lattice ---
  /// All mu in Q_+ with height <= max_height, ordered by height then
  /// lexicographically by coefficients.
  std::vector<LatticePoint> enumerate_qplus(int max_height) const;

  /// Column i (scaled by 2) of the Cholesky factor of the Gram matrix:
  /// moving log a by h along the i-th orthonormal direction shifts the
  /// B-coordinates by h * chol_step(i).
  const std::vector<double>& chol_step(int i) const { return chol_steps_[i]; }

private:
  RootSystem() = default;
  void init(Family family, int rank);
  void generate_roots();
  void generate_weyl();
  void compute_vectors();

  std::string label_;
  Family family_ = Family::A;
  int rank_ = 0;
  std::vector<Rational> gram_;       // rank x rank
  std::vector<int> cartan_pairing_;  // A[i*n+j] = (beta_i, beta_j^vee), integer
  std::vector<Root> positive_;
  std::vector<Rational> rho_, rho_vee_;
  std::vector<WeylElement> group_;
  std::vector<int> simple_idx_;
  int longest_ = 0;
  int min_len2_ = 2;
  bool simply_laced_ = true;
  std::vector<std::vector<Rational>> root_gram_; // per positive root: G * coeff
  std::vector<std::vector<double>> chol_steps_;
  std::vector<double> pairing_solve_; // row-major inverse used by covector_from_pairings
  std::map<std::vector<int>, int> index_map_cache_;
};

} // namespace howl
