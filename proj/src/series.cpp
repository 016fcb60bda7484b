#include "howl/series.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

#include "howl/errors.hpp"

namespace howl {

unsigned long long SeriesTable::pack(const std::vector<int>& n) {
  unsigned long long key = 0;
  for (std::size_t j = 0; j < n.size(); ++j)
    key |= (static_cast<unsigned long long>(n[j]) & 0xffffULL) << (16 * j);
  return key;
}

const Complex* SeriesTable::find(const std::vector<int>& n) const {
  auto it = index.find(pack(n));
  if (it == index.end()) return nullptr;
  return &coeff[it->second];
}

double resonance_tolerance(const RootSystem& rs, const Covector& lambda) {
  return 1e-8 * (1.0 + rs.norm2(lambda));
}

namespace {

std::string bits_of(double d) {
  unsigned long long u;
  std::memcpy(&u, &d, sizeof(u));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", u);
  return std::string(buf, 16);
}

std::string cache_key(const RootSystem& rs, SeriesKind kind, const Covector& lambda,
                      const Multiplicity& k, const Character& psi, int N) {
  std::string key = rs.label();
  key += (kind == SeriesKind::HarishChandra) ? "|hc|" : "|toda|";
  key += std::to_string(N);
  for (const Complex& c : lambda) {
    key += '|';
    key += bits_of(c.real());
    key += bits_of(c.imag());
  }
  if (kind == SeriesKind::HarishChandra) {
    key += '|';
    key += bits_of(k.k_short);
    key += bits_of(k.k_long);
  } else {
    for (double v : psi.l) {
      key += '|';
      key += bits_of(v);
    }
  }
  return key;
}

std::mutex g_cache_mutex;
std::map<std::string, std::shared_ptr<const SeriesTable>>& cache_map() {
  static std::map<std::string, std::shared_ptr<const SeriesTable>> m;
  return m;
}

struct HcGeometry {
  // per positive root (R level): (lambda, alpha), (rho(k), alpha), (alpha, alpha)
  std::vector<Complex> lam_alpha;
  std::vector<double> rhok_alpha;
  std::vector<double> alpha_alpha;
  std::vector<double> k_alpha;
  // G * lambda and G * n handles for (mu, ...) pairings
  std::vector<Complex> g_lambda; // (lambda, beta_j) per simple j
};

HcGeometry hc_geometry(const RootSystem& rs, const Covector& lambda, const Multiplicity& k) {
  HcGeometry g;
  const auto& pos = rs.positive_roots();
  auto rhok = rs.rho_k(k);
  g.lam_alpha.resize(pos.size());
  g.rhok_alpha.resize(pos.size());
  g.alpha_alpha.resize(pos.size());
  g.k_alpha.resize(pos.size());
  for (std::size_t r = 0; r < pos.size(); ++r) {
    g.lam_alpha[r] = 2.0 * rs.inner_root(lambda, static_cast<int>(r));
    Covector rk(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) rk[i] = rhok[i];
    g.rhok_alpha[r] = (2.0 * rs.inner_root(rk, static_cast<int>(r))).real();
    g.alpha_alpha[r] = 4.0 * pos[r].length2;
    g.k_alpha[r] = rs.k_of(k, pos[r]);
  }
  g.g_lambda.resize(rs.rank());
  for (int j = 0; j < rs.rank(); ++j) {
    Complex s(0.0);
    for (int i = 0; i < rs.rank(); ++i) s += lambda[i] * rs.gram_entry(i, j).to_double();
    g.g_lambda[j] = s;
  }
  return g;
}

// (mu, mu) at the R level for a lattice point over B
double mu_mu(const RootSystem& rs, const std::vector<int>& n) {
  double s = 0.0;
  for (int i = 0; i < rs.rank(); ++i) {
    double gi = 0.0;
    for (int j = 0; j < rs.rank(); ++j) gi += rs.gram_entry(i, j).to_double() * n[j];
    s += n[i] * gi;
  }
  return 4.0 * s;
}

// (lambda, mu) at the R level
Complex lam_mu(const HcGeometry& g, const std::vector<int>& n) {
  Complex s(0.0);
  for (std::size_t j = 0; j < n.size(); ++j) s += static_cast<double>(n[j]) * g.g_lambda[j];
  return 2.0 * s;
}

// (mu, alpha) at the R level, alpha = 2 * positive_roots()[r]
double mu_alpha(const RootSystem& rs, const std::vector<int>& n, int r) {
  double s = 0.0;
  const auto& coeff = rs.positive_roots()[r].coeff;
  for (int i = 0; i < rs.rank(); ++i) {
    double gi = 0.0;
    for (int j = 0; j < rs.rank(); ++j) gi += rs.gram_entry(i, j).to_double() * coeff[j];
    s += n[i] * gi;
  }
  return 4.0 * s;
}

/// Core Harish-Chandra recurrence. uroot[r] is an optional per-root damping
/// e^{-alpha(log a)}: with uroot == 1 the raw Gamma_mu are produced; with the
/// damping the entries are the series terms Gamma_mu e^{-mu(log a)}, which
/// stay bounded even when k ~ e^M makes the raw coefficients overflow.
std::vector<Complex> hc_recurrence(const RootSystem& rs, const Covector& lambda,
                                   const Multiplicity& k,
                                   const std::vector<LatticePoint>& pts,
                                   const std::unordered_map<unsigned long long, int>& index,
                                   const std::vector<double>* uroot) {
  const double eps = resonance_tolerance(rs, lambda);
  HcGeometry g = hc_geometry(rs, lambda, k);
  const auto& pos = rs.positive_roots();
  std::vector<Complex> coeff(pts.size(), Complex(0.0));
  coeff[0] = 1.0;

  // genericity first, so the error precedes any partial computation
  for (std::size_t p = 1; p < pts.size(); ++p) {
    Complex denom = 2.0 * lam_mu(g, pts[p].n) - mu_mu(rs, pts[p].n);
    if (std::abs(denom) <= eps)
      throw ResonanceError("(2 lambda - mu, mu) too close to zero", pts[p].n,
                           std::abs(denom));
  }

  std::vector<int> parent(rs.rank());
  for (std::size_t p = 1; p < pts.size(); ++p) {
    const auto& n = pts[p].n;
    Complex denom = 2.0 * lam_mu(g, n) - mu_mu(rs, n);
    double mu_a_base; // (mu, alpha) per root, computed in the loop
    Complex acc(0.0);
    for (std::size_t r = 0; r < pos.size(); ++r) {
      if (g.k_alpha[r] == 0.0) continue;
      mu_a_base = mu_alpha(rs, n, static_cast<int>(r));
      const auto& rc = pos[r].coeff;
      double uj = 1.0;
      for (int j = 1;; ++j) {
        bool ok = true;
        for (int i = 0; i < rs.rank(); ++i) {
          parent[i] = n[i] - j * rc[i];
          if (parent[i] < 0) { ok = false; break; }
        }
        if (!ok) break;
        auto it = index.find(SeriesTable::pack(parent));
        if (it == index.end()) break;
        if (uroot) uj *= (*uroot)[r];
        Complex factor = g.lam_alpha[r] - g.rhok_alpha[r] - mu_a_base +
                         static_cast<double>(j) * g.alpha_alpha[r];
        acc += g.k_alpha[r] * factor * (uroot ? uj : 1.0) * coeff[it->second];
      }
    }
    coeff[p] = 2.0 * acc / denom;
  }
  return coeff;
}

std::pair<std::vector<LatticePoint>, std::unordered_map<unsigned long long, int>>
lattice_with_index(const RootSystem& rs, int N) {
  auto pts = rs.enumerate_qplus(N);
  std::unordered_map<unsigned long long, int> index;
  index.reserve(pts.size() * 2);
  for (std::size_t p = 0; p < pts.size(); ++p)
    index.emplace(SeriesTable::pack(pts[p].n), static_cast<int>(p));
  return {std::move(pts), std::move(index)};
}

} // namespace

std::shared_ptr<const SeriesTable> hc_coefficients(const RootSystem& rs,
                                                   const Covector& lambda,
                                                   const Multiplicity& k, int N) {
  std::string key = cache_key(rs, SeriesKind::HarishChandra, lambda, k, Character(), N);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache_map().find(key);
    if (it != cache_map().end()) return it->second;
  }
  auto table = std::make_shared<SeriesTable>();
  table->kind = SeriesKind::HarishChandra;
  table->rs_label = rs.label();
  table->lambda = lambda;
  table->k = k;
  table->height = N;
  auto [pts, index] = lattice_with_index(rs, N);
  table->points = std::move(pts);
  table->index = std::move(index);
  table->coeff = hc_recurrence(rs, lambda, k, table->points, table->index, nullptr);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = cache_map().emplace(key, table);
  return it->second;
}

std::shared_ptr<const SeriesTable> toda_coefficients(const RootSystem& rs,
                                                     const Covector& lambda, int N,
                                                     const Character& psi) {
  if (!psi.nondegenerate() || static_cast<int>(psi.l.size()) != rs.rank())
    throw DomainError("degenerate or mis-sized character (need l_alpha != 0 per simple root)", "l");
  std::string key = cache_key(rs, SeriesKind::Toda, lambda, Multiplicity(), psi, N);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache_map().find(key);
    if (it != cache_map().end()) return it->second;
  }
  auto table = std::make_shared<SeriesTable>();
  table->kind = SeriesKind::Toda;
  table->rs_label = rs.label();
  table->lambda = lambda;
  table->character = psi;
  table->height = N;
  auto [pts, index] = lattice_with_index(rs, N);
  table->points = std::move(pts);
  table->index = std::move(index);

  const double eps = resonance_tolerance(rs, lambda);
  Multiplicity kzero(0.0);
  HcGeometry g = hc_geometry(rs, lambda, kzero);
  auto& coeff = table->coeff;
  coeff.assign(table->points.size(), Complex(0.0));
  coeff[0] = 1.0;
  for (std::size_t p = 1; p < table->points.size(); ++p) {
    const auto& n = table->points[p].n;
    Complex denom = 2.0 * lam_mu(g, n) + mu_mu(rs, n);
    if (std::abs(denom) <= eps)
      throw ResonanceError("(2 lambda + mu, mu) too close to zero", n, std::abs(denom));
    Complex acc(0.0);
    std::vector<int> parent(n);
    for (int j = 0; j < rs.rank(); ++j) {
      if (n[j] == 0) continue;
      parent[j] -= 1;
      auto it = table->index.find(SeriesTable::pack(parent));
      if (it != table->index.end())
        acc += psi.l[j] * psi.l[j] * coeff[it->second];
      parent[j] += 1;
    }
    coeff[p] = 2.0 * acc / denom;
  }

  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = cache_map().emplace(key, table);
  return it->second;
}

std::shared_ptr<const SeriesTable> toda_coefficients(const RootSystem& rs,
                                                     const Covector& lambda, int N) {
  return toda_coefficients(rs, lambda, N, Character::ones(rs.rank()));
}

SeriesEval phi(const RootSystem& rs, const Covector& lambda, const Multiplicity& k,
               const ChamberPoint& a, int N) {
  if (!a.in_positive_chamber())
    throw DomainError("phi requires a point of the positive chamber (all x_alpha > 0)", "point");
  auto [pts, index] = lattice_with_index(rs, N);
  std::vector<double> uroot(rs.positive_roots().size(), 0.0);
  for (std::size_t r = 0; r < uroot.size(); ++r)
    uroot[r] = std::exp(-rs.root_x(static_cast<int>(r), a));
  auto terms = hc_recurrence(rs, lambda, k, pts, index, &uroot);

  SeriesEval out;
  Complex sum(0.0);
  double tail = 0.0;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    sum += terms[p];
    if (pts[p].height == N) tail += std::abs(terms[p]);
  }
  auto rhok = rs.rho_k(k);
  Covector shift(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) shift[i] = lambda[i] - rhok[i];
  out.log_prefactor = rs.covector_at(shift, a);
  out.sum = sum;
  out.tail = tail;
  out.value = std::exp(out.log_prefactor) * sum;
  return out;
}

double log_delta_half(const RootSystem& rs, const Multiplicity& k, const ChamberPoint& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
    double x = rs.root_x(static_cast<int>(r), a);
    double factor = 2.0 * std::sinh(0.5 * x);
    if (!(factor > 1e-12))
      throw DomainError("delta(k)^{1/2} factor vanishes: point not inside A_+", "point");
    s += rs.k_of(k, rs.positive_roots()[r]) * std::log(factor);
  }
  return s;
}

SeriesEval psi_cm(const RootSystem& rs, const Covector& lambda, const Multiplicity& k,
                  const ChamberPoint& a, int N) {
  SeriesEval out = phi(rs, lambda, k, a, N);
  out.log_prefactor += log_delta_half(rs, k, a);
  out.value = std::exp(out.log_prefactor) * out.sum;
  return out;
}

SeriesEval psi_toda(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                    int N, const Character& psi, double tail_tol) {
  auto table = toda_coefficients(rs, lambda, N, psi);
  Complex sum(0.0);
  double tail = 0.0;
  for (std::size_t p = 0; p < table->points.size(); ++p) {
    Complex term = table->coeff[p] * std::exp(rs.lattice_at(table->points[p], a));
    sum += term;
    if (table->points[p].height == N) tail += std::abs(term);
  }
  SeriesEval out;
  out.log_prefactor = rs.covector_at(lambda, a);
  out.sum = sum;
  out.tail = tail;
  out.value = std::exp(out.log_prefactor) * sum;
  double rel_tail = tail / std::max(std::abs(sum), 1e-300);
  if (rel_tail > tail_tol)
    throw AccuracyError("Toda series tail above tolerance at this point/truncation",
                        rel_tail, "point/trunc");
  return out;
}

SeriesEval psi_toda(const RootSystem& rs, const Covector& lambda, const ChamberPoint& a,
                    int N) {
  return psi_toda(rs, lambda, a, N, Character::ones(rs.rank()), 1e-6);
}

} // namespace howl
