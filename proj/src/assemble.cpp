#include "howl/assemble.hpp"

#include <algorithm>
#include <cmath>

#include "howl/errors.hpp"
#include "howl/special.hpp"

namespace howl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr int kTruncCap = 80;
constexpr int kCircleNodes = 16;
constexpr double kCircleRadius = 0.1;

double floor_abs(Complex v) { return std::max(std::abs(v), 1e-300); }

// margin guard for the direct evaluation path of F: both the series
// denominators and the c-function Gamma arguments must keep a healthy
// distance from their singular sets, otherwise the Weyl terms cancel
// catastrophically even though F itself is finite.
bool f_direct_is_well_conditioned(const RootSystem& rs, const Covector& lambda, int N) {
  const double res_guard = 1e-4 * (1.0 + rs.norm2(lambda));
  const double pole_guard = 1e-4;
  auto pts = rs.enumerate_qplus(N);
  for (const auto& w : rs.weyl_group()) {
    Covector wl = rs.act(w, lambda);
    for (std::size_t p = 1; p < pts.size(); ++p) {
      Covector mu(rs.rank());
      for (int i = 0; i < rs.rank(); ++i) mu[i] = 2.0 * pts[p].n[i];
      Complex denom = 2.0 * rs.inner(wl, mu) - rs.inner(mu, mu);
      if (std::abs(denom) <= res_guard) return false;
    }
    for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
      Complex u = rs.pairing_r(wl, static_cast<int>(r));
      double nearest = std::round(u.real());
      if (nearest <= 0.5 &&
          std::abs(u - Complex(nearest, 0.0)) <= pole_guard)
        return false;
    }
  }
  return true;
}

EvalResult hypergeom_f_direct(const RootSystem& rs, const Covector& lambda,
                              const Multiplicity& k, const ChamberPoint& a, int N) {
  auto rhok = rs.rho_k(k);
  Covector rk(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) rk[i] = rhok[i];
  LogValue cden = log_c_tilde(rs, rk, k);
  if (cden.is_zero) throw DomainError("c~(rho(k),k) vanishes", "k");

  EvalResult out;
  for (const auto& w : rs.weyl_group()) {
    Covector wl = rs.act(w, lambda);
    LogValue cw;
    try {
      cw = log_c_tilde(rs, wl, k);
    } catch (const PoleError& e) {
      throw PoleError("c~(w lambda, k) pole in the Weyl sum (w #" +
                          std::to_string(w.index) + ")",
                      e.integer_hit(), "w=" + std::to_string(w.index));
    }
    if (cw.is_zero) continue;
    SeriesEval ph;
    try {
      ph = phi(rs, wl, k, a, N);
    } catch (const ResonanceError& e) {
      throw ResonanceError("resonance in Phi(w lambda) of the Weyl sum (w #" +
                               std::to_string(w.index) + "): " + e.detail(),
                           e.mu(), e.denom_abs());
    }
    Complex log_term = cw.log - cden.log + ph.log_prefactor;
    out.value += std::exp(log_term) * ph.sum;
    out.tail += std::abs(std::exp(log_term)) * ph.tail;
  }
  return out;
}

} // namespace

EvalResult hypergeom_f(const RootSystem& rs, const Covector& lambda, const Multiplicity& k,
                       const ChamberPoint& a, int N) {
  if (f_direct_is_well_conditioned(rs, lambda, N))
    return hypergeom_f_direct(rs, lambda, k, a, N);

  // F is holomorphic in lambda, so its value on a resonance set equals the
  // mean over a small circle around it along a fixed generic direction.
  Covector dir = rs.covector_from_pairings(std::vector<Complex>(rs.rank(), Complex(1.0)));
  const double radius = kCircleRadius * (1.0 + std::sqrt(rs.norm2(lambda)) * 0.25);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double phase0 = 0.5 + attempt / 16.0;
    std::vector<Covector> nodes;
    nodes.reserve(kCircleNodes);
    bool all_ok = true;
    for (int j = 0; j < kCircleNodes; ++j) {
      double theta = 2.0 * kPi * (j + phase0) / kCircleNodes;
      Complex z = radius * Complex(std::cos(theta), std::sin(theta));
      Covector node = lambda;
      for (int i = 0; i < rs.rank(); ++i) node[i] += z * dir[i];
      if (!f_direct_is_well_conditioned(rs, node, N)) {
        all_ok = false;
        break;
      }
      nodes.push_back(std::move(node));
    }
    if (!all_ok) continue;
    EvalResult acc;
    for (const auto& node : nodes) {
      EvalResult one = hypergeom_f_direct(rs, node, k, a, N);
      acc.value += one.value;
      acc.tail = std::max(acc.tail, one.tail);
    }
    acc.value /= static_cast<double>(kCircleNodes);
    return acc;
  }
  throw ResonanceError("unable to find a generic regularization circle around lambda",
                       std::vector<int>(rs.rank(), 0), 0.0);
}

EvalResult whittaker_w(const RootSystem& rs, const Covector& lambda, const Character& psi,
                       const ChamberPoint& a, int N, double tail_tol) {
  if (!psi.nondegenerate() || static_cast<int>(psi.l.size()) != rs.rank())
    throw DomainError("degenerate character: Whittaker data requires all l_alpha != 0", "l");
  Covector rho(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) rho[i] = rs.rho()[i].to_double();
  LogValue cden = log_c_bold_tilde(rs, rho);

  const int w0 = rs.longest_element().index;
  EvalResult out;
  double a_rho = std::exp(rs.rho_at(a));
  for (const auto& w : rs.weyl_group()) {
    const auto& w0w = rs.weyl_group()[rs.multiply(w0, w.index)];
    LogValue m = log_m_intertwiner(rs, w0w, lambda, psi);
    Covector w0wl = rs.act(w0w, lambda);
    LogValue cb = log_c_bold_tilde(rs, w0wl);
    if (m.is_zero || cb.is_zero) continue;
    SeriesEval t = psi_toda(rs, rs.act(w, lambda), a, N, psi, 1e30);
    Complex coeff = std::exp(m.log + cb.log - cden.log);
    out.value += a_rho * coeff * std::exp(t.log_prefactor) * t.sum;
    out.tail += a_rho * std::abs(coeff * std::exp(t.log_prefactor)) * t.tail;
  }
  if (out.tail > tail_tol * floor_abs(out.value))
    throw AccuracyError("Whittaker Weyl-sum tail above tolerance; deepen the point or raise --trunc",
                        out.tail / floor_abs(out.value), "point/trunc");
  return out;
}

EvalResult hashizume_sum(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                         int N) {
  const int w0 = rs.longest_element().index;
  EvalResult out;
  for (const auto& w : rs.weyl_group()) {
    Covector wl = rs.act(w, lambda);
    LogValue f = log_f_factor(rs, wl);
    LogValue cb = log_c_bold_tilde(rs, wl);
    if (cb.is_zero) continue;
    const auto& w0w = rs.weyl_group()[rs.multiply(w0, w.index)];
    SeriesEval t = psi_toda(rs, rs.act(w0w, lambda), a, N, Character::ones(rs.rank()), 1e30);
    Complex coeff = std::exp(f.log + cb.log);
    out.value += coeff * std::exp(t.log_prefactor) * t.sum;
    out.tail += std::abs(coeff * std::exp(t.log_prefactor)) * t.tail;
  }
  return out;
}

namespace {

struct RowEval {
  Complex value;
  double tail;
};

// lhs of the Prop-2.2 sweep at one (M, N): e^{-(lambda,rho_vee)M} Psi_CM(lambda,k_M;a_M)
RowEval prop22_lhs(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                   double M, int N) {
  auto sd = scaling_data(rs, M);
  ChamberPoint am = a_shifted(rs, a, M);
  SeriesEval cm = psi_cm(rs, lambda, sd.k, am, N);
  Complex log_scale = cm.log_prefactor - rs.inner_rho_vee(lambda) * M;
  Complex scale = std::exp(log_scale);
  return {scale * cm.sum, std::abs(scale) * cm.tail};
}

// lhs of the main sweep at one (M, N), fused per Weyl term
RowEval main_lhs(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                 double M, int N) {
  auto sd = scaling_data(rs, M);
  ChamberPoint am = a_shifted(rs, a, M);
  double lg = log_gamma_product(rs, sd.k);
  double ldelta = log_delta_half(rs, sd.k, am);
  RowEval out{Complex(0.0), 0.0};
  for (const auto& w : rs.weyl_group()) {
    Covector wl = rs.act(w, lambda);
    LogValue cw = log_c_tilde(rs, wl, sd.k);
    if (cw.is_zero) continue;
    SeriesEval ph = phi(rs, wl, sd.k, am, N);
    Complex log_term = lg + cw.log + ldelta + ph.log_prefactor;
    Complex scale = std::exp(log_term);
    out.value += scale * ph.sum;
    out.tail += std::abs(scale) * ph.tail;
  }
  return out;
}

SweepResult run_sweep(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                      const std::vector<double>& Ms, int N,
                      const std::function<RowEval(double, int)>& lhs_at,
                      const std::function<RowEval(int)>& rhs_at) {
  SweepResult out;
  out.rs_label = rs.label();
  out.lambda_pairings = rs.pairings_of(lambda);
  out.point = a.x;
  out.trunc_request = N;
  std::vector<double> ms = Ms;
  std::sort(ms.begin(), ms.end());
  for (double M : ms) {
    SweepRow row;
    row.M = M;
    ChamberPoint am = a_shifted(rs, a, M);
    if (!am.in_positive_chamber(1e-9)) {
      row.chamber_ok = false;
      out.rows.push_back(row);
      continue;
    }
    // raise the truncation until the series shells are decisively below the
    // observed limit gap, so truncation error cannot masquerade as limit error
    for (int n_try = N;; n_try = std::min(n_try + 10, kTruncCap)) {
      RowEval lhs = lhs_at(M, n_try);
      RowEval rhs = rhs_at(n_try);
      row.lhs = lhs.value;
      row.rhs = rhs.value;
      row.lhs_tail = lhs.tail;
      row.rhs_tail = rhs.tail;
      row.trunc_used = n_try;
      row.rel_err = std::abs(lhs.value - rhs.value) / floor_abs(rhs.value);
      double gap = std::abs(lhs.value - rhs.value);
      if (lhs.tail + rhs.tail <= 0.1 * gap || n_try >= kTruncCap) break;
    }
    out.rows.push_back(row);
  }
  return out;
}

} // namespace

SweepResult limit_prop22(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                         const std::vector<double>& Ms, int N) {
  Covector w0l = rs.act(rs.longest_element(), lambda);
  auto lhs_at = [&](double M, int n) { return prop22_lhs(rs, lambda, a, M, n); };
  auto rhs_at = [&](int n) -> RowEval {
    SeriesEval t = psi_toda(rs, w0l, a, n, Character::ones(rs.rank()), 1e30);
    Complex scale = std::exp(t.log_prefactor);
    return {scale * t.sum, std::abs(scale) * t.tail};
  };
  return run_sweep(rs, lambda, a, Ms, N, lhs_at, rhs_at);
}

SweepResult limit_main(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                       const std::vector<double>& Ms, int N) {
  Covector rho(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) rho[i] = rs.rho()[i].to_double();
  Complex pre = c_bold_tilde(rs, rho) * f_factor(rs, lambda) * std::exp(-rs.rho_at(a));
  auto lhs_at = [&](double M, int n) { return main_lhs(rs, lambda, a, M, n); };
  auto rhs_at = [&](int n) -> RowEval {
    // the sweep's own shell-vs-gap rule governs truncation, so the fixed
    // tail guard inside whittaker_w is disabled here
    EvalResult w = whittaker_w(rs, lambda, Character::ones(rs.rank()), a, n, 1e30);
    return {pre * w.value, std::abs(pre) * w.tail};
  };
  return run_sweep(rs, lambda, a, Ms, N, lhs_at, rhs_at);
}

double log_error_slope(const SweepResult& sweep) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& row : sweep.rows) {
    if (!row.chamber_ok || !(row.rel_err > 0.0)) continue;
    double x = row.M, y = std::log(row.rel_err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw DomainError("log_error_slope needs at least two usable rows", "rows");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Complex apply_hamiltonian_fd(const RootSystem& rs, const FdHamiltonian& ham,
                             const std::function<Complex(const ChamberPoint&)>& phi_fn,
                             const ChamberPoint& a, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive", "h");
  const int n = rs.rank();
  Complex center = phi_fn(a);
  std::vector<Complex> plus(n), minus(n);
  for (int i = 0; i < n; ++i) {
    const auto& step = rs.chol_step(i);
    ChamberPoint ap = a, am = a;
    for (int j = 0; j < n; ++j) {
      ap.x[j] += h * step[j];
      am.x[j] -= h * step[j];
    }
    plus[i] = phi_fn(ap);
    minus[i] = phi_fn(am);
  }
  Complex lap(0.0);
  for (int i = 0; i < n; ++i) lap += (plus[i] + minus[i] - 2.0 * center) / (h * h);

  switch (ham.kind) {
    case HamiltonianKind::CalogeroMoser: {
      double v = 0.0;
      for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
        double k = rs.k_of(ham.k, rs.positive_roots()[r]);
        double aa = 4.0 * rs.positive_roots()[r].length2;
        double x = rs.root_x(static_cast<int>(r), a);
        double sh = std::sinh(0.5 * x);
        if (sh == 0.0) throw DomainError("Calogero-Moser potential singular on a wall", "point");
        v += k * (1.0 - k) * aa / (4.0 * sh * sh);
      }
      return lap + v * center;
    }
    case HamiltonianKind::Toda: {
      if (static_cast<int>(ham.psi.l.size()) != rs.rank())
        throw DomainError("Toda Hamiltonian needs a character of matching rank", "l");
      double v = 0.0;
      for (int j = 0; j < n; ++j) v -= 2.0 * ham.psi.l[j] * ham.psi.l[j] * std::exp(a.x[j]);
      return lap + v * center;
    }
    case HamiltonianKind::HypergeometricL: {
      Complex acc = lap;
      for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
        double k = rs.k_of(ham.k, rs.positive_roots()[r]);
        if (k == 0.0) continue;
        double x = rs.root_x(static_cast<int>(r), a);
        if (x <= 0.0) throw DomainError("L(k) expansion needs the positive chamber", "point");
        double coth = 1.0 / std::tanh(0.5 * x);
        // d_alpha via the orthonormal frame: (alpha, xi_i) = sum_j m_j chol_step(i)[j]
        Complex dalpha(0.0);
        for (int i = 0; i < n; ++i) {
          double ai = 0.0;
          for (int j = 0; j < n; ++j) ai += rs.positive_roots()[r].coeff[j] * rs.chol_step(i)[j];
          dalpha += ai * (plus[i] - minus[i]) / (2.0 * h);
        }
        acc += k * coth * dalpha;
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

} // namespace howl
