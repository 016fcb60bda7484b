#include "howl/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>

#include "howl/errors.hpp"

namespace howl {

namespace {

std::vector<Rational> make_gram(Family family, int rank) {
  auto at = [rank](std::vector<Rational>& g, int i, int j) -> Rational& {
    return g[i * rank + j];
  };
  std::vector<Rational> g(rank * rank, Rational(0));
  switch (family) {
    case Family::A:
      for (int i = 0; i < rank; ++i) {
        at(g, i, i) = 2;
        if (i + 1 < rank) { at(g, i, i + 1) = -1; at(g, i + 1, i) = -1; }
      }
      break;
    case Family::B:
      // beta_1..beta_{n-1} long (length^2 4), beta_n short (length^2 2)
      for (int i = 0; i < rank; ++i) at(g, i, i) = (i == rank - 1) ? 2 : 4;
      for (int i = 0; i + 1 < rank; ++i) { at(g, i, i + 1) = -2; at(g, i + 1, i) = -2; }
      break;
    case Family::C:
      // beta_1..beta_{n-1} short (length^2 2), beta_n long (length^2 4)
      for (int i = 0; i < rank; ++i) at(g, i, i) = (i == rank - 1) ? 4 : 2;
      for (int i = 0; i + 1 < rank; ++i) {
        Rational off = (i + 2 == rank) ? Rational(-2) : Rational(-1);
        at(g, i, i + 1) = off; at(g, i + 1, i) = off;
      }
      break;
    case Family::D:
      // branching node is beta_2 (0-based index 1), as in the D4 diagram
      for (int i = 0; i < rank; ++i) at(g, i, i) = 2;
      at(g, 0, 1) = -1; at(g, 1, 0) = -1;
      at(g, 1, 2) = -1; at(g, 2, 1) = -1;
      at(g, 1, 3) = -1; at(g, 3, 1) = -1;
      break;
    case Family::G:
      at(g, 0, 0) = 2; at(g, 1, 1) = 6;
      at(g, 0, 1) = -3; at(g, 1, 0) = -3;
      break;
  }
  return g;
}

struct VecLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    return a < b;
  }
};

// Exact inverse of a small rational matrix by Gauss-Jordan elimination.
std::vector<Rational> rational_inverse(std::vector<Rational> m, int n) {
  std::vector<Rational> inv(n * n, Rational(0));
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!m[r * n + col].is_zero()) { pivot = r; break; }
    if (pivot < 0) throw std::domain_error("rational_inverse: singular matrix");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m[pivot * n + j], m[col * n + j]);
        std::swap(inv[pivot * n + j], inv[col * n + j]);
      }
    Rational p = m[col * n + col];
    for (int j = 0; j < n; ++j) { m[col * n + j] = m[col * n + j] / p; inv[col * n + j] = inv[col * n + j] / p; }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Rational f = m[r * n + col];
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        m[r * n + j] = m[r * n + j] - f * m[col * n + j];
        inv[r * n + j] = inv[r * n + j] - f * inv[col * n + j];
      }
    }
  }
  return inv;
}

} // namespace

RootSystem RootSystem::build(Family family, int rank) {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1 && rank <= 4; break;
    case Family::B: ok = rank == 2 || rank == 3; break;
    case Family::C: ok = rank == 2 || rank == 3; break;
    case Family::D: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok) {
    static const char* names = "ABCDG";
    std::string lbl = std::string(1, names[static_cast<int>(family)]) + std::to_string(rank);
    throw ConfigError("unsupported root system " + lbl, lbl);
  }
  RootSystem rs;
  rs.init(family, rank);
  return rs;
}

RootSystem RootSystem::build(const std::string& label) {
  if (label.size() < 2) throw ConfigError("malformed root-system label '" + label + "'", label);
  Family f;
  switch (label[0]) {
    case 'A': case 'a': f = Family::A; break;
    case 'B': case 'b': f = Family::B; break;
    case 'C': case 'c': f = Family::C; break;
    case 'D': case 'd': f = Family::D; break;
    case 'G': case 'g': f = Family::G; break;
    default: throw ConfigError("unsupported root system '" + label + "'", label);
  }
  int rank = 0;
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9')
      throw ConfigError("malformed root-system label '" + label + "'", label);
    rank = rank * 10 + (label[i] - '0');
  }
  return build(f, rank);
}

void RootSystem::init(Family family, int rank) {
  family_ = family;
  rank_ = rank;
  static const char* names = "ABCDG";
  label_ = std::string(1, names[static_cast<int>(family)]) + std::to_string(rank);
  gram_ = make_gram(family, rank);

  // integer Cartan pairing A_ij = (beta_i, beta_j^vee) = 2 G_ij / G_jj
  cartan_pairing_.assign(rank_ * rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      Rational v = Rational(2) * gram_entry(i, j) / gram_entry(j, j);
      if (v.den != 1) throw std::logic_error("non-integral Cartan pairing");
      cartan_pairing_[i * rank_ + j] = static_cast<int>(v.num);
    }

  generate_roots();
  generate_weyl();
  compute_vectors();
}

void RootSystem::generate_roots() {
  // Orbit of the simple roots under simple reflections; positives are the
  // roots with nonnegative coefficients.
  std::map<std::vector<int>, int, VecLess> seen; // coeff -> length2
  std::queue<std::vector<int>> q;
  for (int i = 0; i < rank_; ++i) {
    std::vector<int> e(rank_, 0);
    e[i] = 1;
    Rational l2 = gram_entry(i, i);
    seen[e] = static_cast<int>(l2.num);
    q.push(e);
  }
  while (!q.empty()) {
    std::vector<int> c = q.front();
    q.pop();
    int len2 = seen[c];
    for (int i = 0; i < rank_; ++i) {
      // s_i(beta) = beta - (beta, beta_i^vee) beta_i
      int pair = 0;
      for (int j = 0; j < rank_; ++j) pair += c[j] * cartan_pairing_[j * rank_ + i];
      std::vector<int> nc = c;
      nc[i] -= pair;
      if (seen.emplace(nc, len2).second) q.push(nc);
    }
  }
  positive_.clear();
  min_len2_ = 1 << 20;
  int max_len2 = 0;
  for (const auto& [c, len2] : seen) {
    bool nonneg = true, nonpos = true;
    for (int v : c) { nonneg &= (v >= 0); nonpos &= (v <= 0); }
    if (!nonneg && !nonpos) throw std::logic_error("root neither positive nor negative");
    if (!nonneg) continue;
    Root r;
    r.coeff = c;
    r.height = 0;
    for (int v : c) r.height += v;
    r.length2 = len2;
    positive_.push_back(std::move(r));
    min_len2_ = std::min(min_len2_, len2);
    max_len2 = std::max(max_len2, len2);
  }
  std::sort(positive_.begin(), positive_.end(), [](const Root& a, const Root& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.coeff < b.coeff;
  });
  simply_laced_ = (min_len2_ == max_len2);
}

void RootSystem::generate_weyl() {
  const int n = rank_;
  // simple reflection matrices, row-major
  std::vector<std::vector<int>> refl(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> m(n * n, 0);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        int v = (k == j) ? 1 : 0;
        if (k == i) v -= cartan_pairing_[j * n + i];
        m[k * n + j] = v;
      }
    refl[i] = std::move(m);
  }

  std::map<std::vector<int>, int> index_of;
  group_.clear();

  std::vector<int> id(n * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  WeylElement e;
  e.mat = id;
  e.length = 0;
  e.index = 0;
  e.inverse = 0;
  group_.push_back(e);
  index_of[id] = 0;

  std::vector<std::vector<int>> inv_mats;
  inv_mats.push_back(id);

  auto matmul = [n](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int kk = 0; kk < n; ++kk) {
        int aik = a[i * n + kk];
        if (!aik) continue;
        for (int j = 0; j < n; ++j) c[i * n + j] += aik * b[kk * n + j];
      }
    return c;
  };

  std::size_t head = 0;
  while (head < group_.size()) {
    const int cur = static_cast<int>(head++);
    for (int i = 0; i < n; ++i) {
      std::vector<int> m = matmul(group_[cur].mat, refl[i]);
      auto it = index_of.find(m);
      if (it != index_of.end()) continue;
      WeylElement w;
      w.mat = std::move(m);
      w.length = group_[cur].length + 1;
      w.word = group_[cur].word;
      w.word.push_back(i);
      w.index = static_cast<int>(group_.size());
      index_of[w.mat] = w.index;
      inv_mats.push_back(matmul(refl[i], inv_mats[cur])); // (w s_i)^{-1} = s_i w^{-1}
      group_.push_back(std::move(w));
    }
  }

  simple_idx_.assign(n, 0);
  for (int i = 0; i < n; ++i) simple_idx_[i] = index_of.at(refl[i]);

  longest_ = 0;
  for (const auto& w : group_)
    if (w.length > group_[longest_].length) longest_ = w.index;

  for (auto& w : group_) w.inverse = index_of.at(inv_mats[w.index]);
  index_map_cache_ = std::move(index_of);
}

int RootSystem::multiply(int wi, int wj) const {
  const int n = rank_;
  const auto& a = group_[wi].mat;
  const auto& b = group_[wj].mat;
  std::vector<int> c(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int kk = 0; kk < n; ++kk) {
      int aik = a[i * n + kk];
      if (!aik) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] += aik * b[kk * n + j];
    }
  return element_index(c);
}

int RootSystem::element_index(const std::vector<int>& mat) const {
  auto it = index_map_cache_.find(mat);
  if (it == index_map_cache_.end()) throw std::logic_error("matrix not in Weyl group");
  return it->second;
}

void RootSystem::compute_vectors() {
  const int n = rank_;
  rho_.assign(n, Rational(0));
  rho_vee_.assign(n, Rational(0));
  for (const auto& r : positive_)
    for (int j = 0; j < n; ++j) {
      rho_[j] = rho_[j] + Rational(r.coeff[j], 2);
      rho_vee_[j] = rho_vee_[j] + Rational(r.coeff[j], r.length2);
    }
  // consistency: (beta_j, rho_vee) = 1 for every simple root
  for (int j = 0; j < n; ++j) {
    Rational s(0);
    for (int i = 0; i < n; ++i) s = s + gram_entry(j, i) * rho_vee_[i];
    if (!(s == Rational(1))) throw std::logic_error("rho_vee pairing != 1");
  }

  root_gram_.resize(positive_.size());
  for (std::size_t r = 0; r < positive_.size(); ++r) {
    root_gram_[r].assign(n, Rational(0));
    for (int i = 0; i < n; ++i) {
      Rational s(0);
      for (int j = 0; j < n; ++j) s = s + gram_entry(i, j) * Rational(positive_[r].coeff[j]);
      root_gram_[r][i] = s;
    }
  }

  // Cholesky of the Gram matrix; column i scaled by 2 gives the B-coordinate
  // displacement of a unit step along the i-th orthonormal direction.
  std::vector<double> L(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = gram_entry(i, j).to_double();
      for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
      if (i == j)
        L[i * n + i] = std::sqrt(s);
      else
        L[i * n + j] = s / L[j * n + j];
    }
  chol_steps_.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) chol_steps_[i][j] = 2.0 * L[j * n + i];

  // l = 2 (A^T)^{-1} p maps pairings over B to simple-root coefficients
  std::vector<Rational> at(n * n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) at[i * n + j] = Rational(cartan_pairing_[j * n + i]);
  std::vector<Rational> inv = rational_inverse(at, n);
  pairing_solve_.assign(n * n, 0.0);
  for (int i = 0; i < n * n; ++i) pairing_solve_[i] = 2.0 * inv[i].to_double();
}

std::vector<double> RootSystem::rho_k(const Multiplicity& k) const {
  std::vector<double> out(rank_, 0.0);
  for (const auto& r : positive_) {
    double kv = k_of(k, r);
    for (int j = 0; j < rank_; ++j) out[j] += kv * r.coeff[j];
  }
  return out;
}

Covector RootSystem::act(const WeylElement& w, const Covector& lambda) const {
  Covector out(rank_, Complex(0.0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[i] += static_cast<double>(w.mat[i * rank_ + j]) * lambda[j];
  return out;
}

std::vector<int> RootSystem::act_int(const WeylElement& w, const std::vector<int>& v) const {
  std::vector<int> out(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[i] += w.mat[i * rank_ + j] * v[j];
  return out;
}

ChamberPoint RootSystem::act_point(const WeylElement& w, const ChamberPoint& a) const {
  const auto& winv = group_[w.inverse].mat;
  std::vector<double> out(rank_, 0.0);
  for (int j = 0; j < rank_; ++j)
    for (int m = 0; m < rank_; ++m) out[j] += static_cast<double>(winv[m * rank_ + j]) * a.x[m];
  return ChamberPoint(std::move(out));
}

Complex RootSystem::inner(const Covector& u, const Covector& v) const {
  Complex s(0.0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += u[i] * gram_entry(i, j).to_double() * v[j];
  return s;
}

Complex RootSystem::inner_root(const Covector& u, int idx) const {
  Complex s(0.0);
  for (int i = 0; i < rank_; ++i) s += u[i] * root_gram_[idx][i].to_double();
  return s;
}

Complex RootSystem::pairing_r(const Covector& lambda, int idx) const {
  // (lambda, (2 beta)^vee) = (lambda, beta) / (beta, beta)
  return inner_root(lambda, idx) / static_cast<double>(positive_[idx].length2);
}

Complex RootSystem::pairing_sigma(const Covector& lambda, int idx) const {
  return 2.0 * inner_root(lambda, idx) / static_cast<double>(positive_[idx].length2);
}

Complex RootSystem::pairing(const Covector& lambda, const std::vector<int>& root_coeff) const {
  bool zero = true;
  for (int v : root_coeff) zero &= (v == 0);
  if (zero) throw DomainError("pairing with the zero root is undefined", "alpha");
  // (lambda, alpha) and (alpha, alpha) for alpha = sum coeff_j alpha_j over B
  Complex la(0.0);
  double aa = 0.0;
  for (int i = 0; i < rank_; ++i) {
    double gi = 0.0;
    Complex gl(0.0);
    for (int j = 0; j < rank_; ++j) {
      gi += gram_entry(i, j).to_double() * root_coeff[j];
      gl += gram_entry(i, j).to_double() * lambda[j];
    }
    la += static_cast<double>(root_coeff[i]) * gl;
    aa += static_cast<double>(root_coeff[i]) * gi;
  }
  // (lambda, alpha^vee) = 2 (lambda, alpha)/(alpha, alpha) with alpha doubled:
  // the Sigma-level sums pick up 2*2/4, leaving the plain ratio
  return la / aa;
}

double RootSystem::norm2(const Covector& u) const {
  Complex s(0.0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += std::conj(u[i]) * gram_entry(i, j).to_double() * u[j];
  return s.real();
}

Complex RootSystem::inner_rho_vee(const Covector& u) const {
  Complex s(0.0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += u[i] * gram_entry(i, j).to_double() * rho_vee_[j].to_double();
  return s;
}

Complex RootSystem::inner_rho(const Covector& u) const {
  Complex s(0.0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += u[i] * gram_entry(i, j).to_double() * rho_[j].to_double();
  return s;
}

double RootSystem::root_x(int idx, const ChamberPoint& a) const {
  double s = 0.0;
  for (int j = 0; j < rank_; ++j) s += positive_[idx].coeff[j] * a.x[j];
  return s;
}

Complex RootSystem::covector_at(const Covector& nu, const ChamberPoint& a) const {
  Complex s(0.0);
  for (int j = 0; j < rank_; ++j) s += nu[j] * a.x[j];
  return 0.5 * s;
}

Complex RootSystem::covector_at(const std::vector<double>& nu, const ChamberPoint& a) const {
  double s = 0.0;
  for (int j = 0; j < rank_; ++j) s += nu[j] * a.x[j];
  return Complex(0.5 * s);
}

double RootSystem::lattice_at(const LatticePoint& mu, const ChamberPoint& a) const {
  double s = 0.0;
  for (int j = 0; j < rank_; ++j) s += mu.n[j] * a.x[j];
  return s;
}

double RootSystem::rho_at(const ChamberPoint& a) const {
  double s = 0.0;
  for (int j = 0; j < rank_; ++j) s += rho_[j].to_double() * a.x[j];
  return 0.5 * s;
}

Covector RootSystem::covector_from_pairings(const std::vector<Complex>& p) const {
  if (static_cast<int>(p.size()) != rank_)
    throw ConfigError("expected " + std::to_string(rank_) + " pairing values, got " +
                      std::to_string(p.size()), "lambda");
  Covector l(rank_, Complex(0.0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) l[i] += pairing_solve_[i * rank_ + j] * p[j];
  return l;
}

std::vector<Complex> RootSystem::pairings_of(const Covector& lambda) const {
  std::vector<Complex> p(rank_, Complex(0.0));
  for (int j = 0; j < rank_; ++j) {
    Complex s(0.0);
    for (int i = 0; i < rank_; ++i) s += lambda[i] * static_cast<double>(cartan_pairing_[i * rank_ + j]);
    p[j] = 0.5 * s;
  }
  return p;
}

std::vector<LatticePoint> RootSystem::enumerate_qplus(int max_height) const {
  if (max_height < 0) throw DomainError("max_height must be >= 0", "max_height");
  std::vector<LatticePoint> out;
  std::vector<int> cur(rank_, 0);
  for (int h = 0; h <= max_height; ++h) {
    // lexicographically ascending tuples with sum == h
    std::function<void(int, int)> rec = [&](int pos, int rem) {
      if (pos == rank_ - 1) {
        cur[pos] = rem;
        LatticePoint lp;
        lp.n = cur;
        lp.height = h;
        out.push_back(std::move(lp));
        return;
      }
      for (int v = 0; v <= rem; ++v) {
        cur[pos] = v;
        rec(pos + 1, rem - v);
      }
    };
    rec(0, h);
  }
  return out;
}

} // namespace howl
