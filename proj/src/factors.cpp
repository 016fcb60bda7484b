#include "howl/factors.hpp"

#include <cmath>

#include "howl/errors.hpp"
#include "howl/special.hpp"

namespace howl {

LogValue log_c_tilde(const RootSystem& rs, const Covector& lambda, const Multiplicity& k) {
  LogValue out;
  for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
    Complex u = rs.pairing_r(lambda, static_cast<int>(r));
    double ka = rs.k_of(k, rs.positive_roots()[r]);
    if (ka == 0.0) continue; // identical Gamma factors cancel exactly
    if (is_gamma_pole(u)) {
      throw PoleError("c~ numerator Gamma((lambda,alpha^vee)) at a pole",
                      static_cast<long long>(std::llround(u.real())),
                      "positive root #" + std::to_string(r));
    }
    if (is_gamma_pole(u + ka)) {
      out.is_zero = true;
      continue;
    }
    out.log += log_gamma(u) - log_gamma(u + ka);
  }
  return out;
}

Complex c_tilde(const RootSystem& rs, const Covector& lambda, const Multiplicity& k) {
  return log_c_tilde(rs, lambda, k).value();
}

Complex c_norm(const RootSystem& rs, const Covector& lambda, const Multiplicity& k) {
  auto rhok = rs.rho_k(k);
  Covector rk(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) rk[i] = rhok[i];
  LogValue num = log_c_tilde(rs, lambda, k);
  LogValue den = log_c_tilde(rs, rk, k);
  if (den.is_zero)
    throw DomainError("c~(rho(k),k) vanishes; normalized c-function undefined", "k");
  if (num.is_zero) return Complex(0.0);
  return std::exp(num.log - den.log);
}

LogValue log_c_bold_tilde(const RootSystem& rs, const Covector& lambda) {
  return log_c_tilde(rs, lambda, Multiplicity(0.5));
}

Complex c_bold_tilde(const RootSystem& rs, const Covector& lambda) {
  return log_c_bold_tilde(rs, lambda).value();
}

Complex c_bold(const RootSystem& rs, const Covector& lambda) {
  return c_norm(rs, lambda, Multiplicity(0.5));
}

LogValue log_f_factor(const RootSystem& rs, const Covector& lambda) {
  LogValue out;
  for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
    Complex u = rs.pairing_r(lambda, static_cast<int>(r));
    // (alpha,alpha)/2 at the R level = 2 * (beta,beta)
    double base = 2.0 * rs.positive_roots()[r].length2;
    if (is_gamma_pole(u + 0.5))
      throw PoleError("f(lambda) Gamma((lambda,alpha^vee)+1/2) at a pole",
                      static_cast<long long>(std::llround(u.real() + 0.5)),
                      "positive root #" + std::to_string(r));
    out.log += 0.5 * u * std::log(base) + log_gamma(u + 0.5);
  }
  return out;
}

Complex f_factor(const RootSystem& rs, const Covector& lambda) {
  return log_f_factor(rs, lambda).value();
}

namespace {

// M(s_alpha, lambda, psi) for a simple alpha in B, in log space
LogValue log_m_simple(const RootSystem& rs, int simple, const Covector& lambda,
                      const Character& psi, int word_pos) {
  std::vector<Complex> pairings = rs.pairings_of(lambda);
  Complex u = pairings[simple];
  double aa = 4.0 * rs.gram_entry(simple, simple).to_double(); // (alpha,alpha), alpha in B
  double base = 2.0 * psi.l[simple] * psi.l[simple] / aa;
  LogValue out;
  if (is_gamma_pole(-u + 0.5))
    throw PoleError("M(s_alpha, ., psi) numerator Gamma(-(lambda,alpha^vee)+1/2) at a pole",
                    static_cast<long long>(std::llround(-u.real() + 0.5)),
                    "reduced word position " + std::to_string(word_pos));
  if (is_gamma_pole(u + 0.5)) {
    out.is_zero = true; // denominator pole: the ratio vanishes
    return out;
  }
  out.log = u * std::log(base) + log_gamma(-u + 0.5) - log_gamma(u + 0.5);
  return out;
}

} // namespace

LogValue log_m_intertwiner(const RootSystem& rs, const WeylElement& w,
                           const Covector& lambda, const Character& psi) {
  if (!psi.nondegenerate() || static_cast<int>(psi.l.size()) != rs.rank())
    throw DomainError("degenerate or mis-sized character (need l_alpha != 0 per simple root)", "l");
  LogValue acc;
  Covector nu = lambda;
  for (int j = static_cast<int>(w.word.size()) - 1; j >= 0; --j) {
    int i = w.word[j];
    LogValue piece = log_m_simple(rs, i, nu, psi, j);
    if (piece.is_zero) acc.is_zero = true;
    acc.log += piece.log;
    nu = rs.act(rs.simple_reflection(i), nu);
  }
  return acc;
}

Complex m_intertwiner(const RootSystem& rs, const WeylElement& w, const Covector& lambda,
                      const Character& psi) {
  return log_m_intertwiner(rs, w, lambda, psi).value();
}

double log_gamma_product(const RootSystem& rs, const Multiplicity& k) {
  double s = 0.0;
  for (const auto& root : rs.positive_roots()) s += std::lgamma(rs.k_of(k, root));
  return s;
}

ScalingData scaling_data(const RootSystem& rs, double M) {
  if (!(M > 0.0)) throw DomainError("scaling_data requires M > 0", "M");
  const double e2m = std::exp(2.0 * M);
  auto root_of = [e2m](double alpha_alpha) {
    return 0.5 * (1.0 + std::sqrt(1.0 + 8.0 * e2m / alpha_alpha));
  };
  ScalingData out;
  out.M = M;
  int short2 = rs.min_length2();
  int long2 = short2;
  for (const auto& root : rs.positive_roots()) long2 = std::max(long2, root.length2);
  out.k = Multiplicity(root_of(4.0 * short2), root_of(4.0 * long2));
  return out;
}

ChamberPoint ScalingData::shift(const RootSystem& rs, const ChamberPoint& a) const {
  return a_shifted(rs, a, M);
}

ChamberPoint a_shifted(const RootSystem& rs, const ChamberPoint& a, double M) {
  ChamberPoint out = rs.act_point(rs.longest_element(), a);
  for (double& v : out.x) v += 2.0 * M; // (alpha, rho_vee) = 2 for alpha in B
  return out;
}

ChamberPoint shift_for_general_l(const RootSystem& rs, const Character& psi,
                                 const ChamberPoint& a_prime) {
  if (!psi.nondegenerate() || static_cast<int>(psi.l.size()) != rs.rank())
    throw DomainError("degenerate character: some l_alpha = 0", "l");
  ChamberPoint out = a_prime;
  for (int j = 0; j < rs.rank(); ++j) out.x[j] -= std::log(psi.l[j] * psi.l[j]);
  return out;
}

} // namespace howl
