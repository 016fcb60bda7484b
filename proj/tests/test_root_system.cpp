#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "howl/errors.hpp"
#include "howl/root_system.hpp"

using namespace howl;

namespace {

int det_int(const std::vector<int>& m, int n) {
  if (n == 1) return m[0];
  int d = 0;
  for (int c = 0; c < n; ++c) {
    std::vector<int> sub;
    sub.reserve((n - 1) * (n - 1));
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (j != c) sub.push_back(m[i * n + j]);
    int cof = m[c] * det_int(sub, n - 1);
    d += (c % 2 == 0) ? cof : -cof;
  }
  return d;
}

const std::vector<std::pair<std::string, int>> kAllSystems = {
    {"A1", 1}, {"A2", 3}, {"A3", 6},  {"A4", 10}, {"B2", 4},
    {"B3", 9}, {"C2", 4}, {"C3", 9},  {"D4", 12}, {"G2", 6}};

const std::vector<std::pair<std::string, int>> kWeylOrders = {
    {"A1", 2},  {"A2", 6},  {"A3", 24}, {"A4", 120}, {"B2", 8},
    {"B3", 48}, {"C2", 8},  {"C3", 48}, {"D4", 192}, {"G2", 12}};

} // namespace

TEST_CASE("positive root counts match the classical tables") {
  for (const auto& [label, count] : kAllSystems) {
    auto rs = RootSystem::build(label);
    CHECK_MESSAGE(static_cast<int>(rs.positive_roots().size()) == count, label);
  }
}

TEST_CASE("unsupported family/rank raises a configuration error") {
  CHECK_THROWS_AS(RootSystem::build("Z9"), ConfigError);
  CHECK_THROWS_AS(RootSystem::build(Family::A, 5), ConfigError);
  CHECK_THROWS_AS(RootSystem::build(Family::D, 3), ConfigError);
  CHECK_THROWS_AS(RootSystem::build("B"), ConfigError);
}

TEST_CASE("integrality of Cartan pairings and root lengths") {
  for (const auto& [label, _] : kAllSystems) {
    auto rs = RootSystem::build(label);
    // every pair of roots pairs integrally
    for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
      for (std::size_t s = 0; s < rs.positive_roots().size(); ++s) {
        Covector u(rs.rank(), Complex(0.0));
        for (int i = 0; i < rs.rank(); ++i) u[i] = rs.positive_roots()[r].coeff[i];
        Complex p = rs.pairing_sigma(u, static_cast<int>(s));
        CHECK(std::abs(p.imag()) < 1e-14);
        CHECK(std::abs(p.real() - std::round(p.real())) < 1e-12);
      }
    }
  }
}

TEST_CASE("rho_vee pairings: 1 on simple roots of Sigma, 2 on B, >=4 off B") {
  for (const auto& [label, _] : kAllSystems) {
    auto rs = RootSystem::build(label);
    Covector rv(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) rv[i] = rs.rho_vee()[i].to_double();
    for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
      const auto& root = rs.positive_roots()[r];
      // (alpha, rho_vee) for alpha = 2 beta in R_+
      Complex pr = 2.0 * rs.inner_root(rv, static_cast<int>(r));
      double v = pr.real();
      if (root.height == 1)
        CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
      else
        CHECK(v >= 4.0 - 1e-12);
      // (rho_vee, beta^vee)-style pairing on Pi equals 1
      if (root.height == 1) {
        Complex ps = rs.inner_root(rv, static_cast<int>(r));
        CHECK(ps.real() == doctest::Approx(1.0).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("Weyl group orders and longest element") {
  for (const auto& [label, order] : kWeylOrders) {
    auto rs = RootSystem::build(label);
    CHECK_MESSAGE(static_cast<int>(rs.weyl_group().size()) == order, label);
    const auto& w0 = rs.longest_element();
    CHECK(w0.length == static_cast<int>(rs.positive_roots().size()));
    // w0 maps every positive root to a negative one
    for (const auto& root : rs.positive_roots()) {
      auto img = rs.act_int(w0, root.coeff);
      for (int v : img) CHECK(v <= 0);
    }
  }
}

TEST_CASE("reduced words recompose to the group element") {
  for (const auto& [label, _] : kWeylOrders) {
    auto rs = RootSystem::build(label);
    for (const auto& w : rs.weyl_group()) {
      int acc = 0; // identity index
      for (int i : w.word) acc = rs.multiply(acc, rs.simple_reflection(i).index);
      CHECK(acc == w.index);
      CHECK(static_cast<int>(w.word.size()) == w.length);
    }
  }
}

TEST_CASE("length equals the number of positive roots sent negative") {
  for (const std::string label : {"A2", "B2", "G2", "A3"}) {
    auto rs = RootSystem::build(label);
    for (const auto& w : rs.weyl_group()) {
      int inversions = 0;
      for (const auto& root : rs.positive_roots()) {
        auto img = rs.act_int(w, root.coeff);
        bool neg = true;
        for (int v : img) neg &= (v <= 0);
        bool nonzero = false;
        for (int v : img) nonzero |= (v != 0);
        if (neg && nonzero) ++inversions;
      }
      CHECK(inversions == w.length);
    }
  }
}

TEST_CASE("sum of det over the Weyl group vanishes for |W| > 1") {
  for (const auto& [label, _] : kWeylOrders) {
    auto rs = RootSystem::build(label);
    int s = 0;
    for (const auto& w : rs.weyl_group()) {
      int d = det_int(w.mat, rs.rank());
      CHECK((d == 1 || d == -1));
      CHECK(d == ((w.length % 2 == 0) ? 1 : -1));
      s += d;
    }
    CHECK(s == 0);
  }
}

TEST_CASE("A1 and B2 longest element act as -1; A2 flips the diagram") {
  auto a1 = RootSystem::build("A1");
  CHECK(a1.longest_element().mat == std::vector<int>{-1});
  auto b2 = RootSystem::build("B2");
  CHECK(b2.longest_element().mat == std::vector<int>{-1, 0, 0, -1});
  auto a2 = RootSystem::build("A2");
  // w0(beta_1) = -beta_2
  auto img = a2.act_int(a2.longest_element(), {1, 0});
  CHECK(img == std::vector<int>{0, -1});
}

TEST_CASE("pairing basics: (alpha, alpha^vee) = 2 and linearity") {
  auto rs = RootSystem::build("G2");
  for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
    Covector u(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) u[i] = rs.positive_roots()[r].coeff[i];
    CHECK(rs.pairing_sigma(u, static_cast<int>(r)).real() == doctest::Approx(2.0));
    // at the doubled level alpha = 2 beta the self-pairing is also 2
    Covector u2(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) u2[i] = 2.0 * u[i];
    CHECK(rs.pairing_r(u2, static_cast<int>(r)).real() == doctest::Approx(2.0));
  }
}

TEST_CASE("pairing on explicit root coefficients, zero root rejected") {
  auto rs = RootSystem::build("A2");
  Covector lambda = rs.covector_from_pairings({{0.9, 0.31}, {1.3, -0.27}});
  // against the per-root accessor for every positive root
  for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
    Complex via_coeff = rs.pairing(lambda, rs.positive_roots()[r].coeff);
    CHECK(std::abs(via_coeff - rs.pairing_r(lambda, static_cast<int>(r))) < 1e-13);
  }
  // linearity in lambda
  Covector twice(lambda);
  for (auto& c : twice) c *= 2.0;
  CHECK(std::abs(rs.pairing(twice, {1, 1}) - 2.0 * rs.pairing(lambda, {1, 1})) < 1e-13);
  CHECK_THROWS_AS(rs.pairing(lambda, {0, 0}), DomainError);
}

TEST_CASE("pairing is invariant under simultaneous Weyl action") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (const std::string label : {"A2", "B2", "G2"}) {
    auto rs = RootSystem::build(label);
    for (int trial = 0; trial < 5; ++trial) {
      Covector u(rs.rank()), v(rs.rank());
      for (int i = 0; i < rs.rank(); ++i) {
        u[i] = Complex(dist(rng), dist(rng));
        v[i] = Complex(dist(rng), dist(rng));
      }
      Complex base = rs.inner(u, v);
      for (const auto& w : rs.weyl_group()) {
        Complex moved = rs.inner(rs.act(w, u), rs.act(w, v));
        CHECK(std::abs(moved - base) < 1e-12 * (1.0 + std::abs(base)));
      }
    }
  }
}

TEST_CASE("covector_from_pairings round-trips") {
  for (const std::string label : {"A2", "B3", "C3", "G2", "D4"}) {
    auto rs = RootSystem::build(label);
    std::vector<Complex> p(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) p[i] = Complex(0.3 + 0.2 * i, -0.1 + 0.05 * i);
    auto lambda = rs.covector_from_pairings(p);
    auto q = rs.pairings_of(lambda);
    for (int i = 0; i < rs.rank(); ++i) CHECK(std::abs(q[i] - p[i]) < 1e-12);
  }
}

TEST_CASE("enumerate_qplus counts, ordering and nesting") {
  auto a1 = RootSystem::build("A1");
  auto pts = a1.enumerate_qplus(3);
  REQUIRE(pts.size() == 4);
  for (int m = 0; m <= 3; ++m) CHECK(pts[m].n[0] == m);

  auto a2 = RootSystem::build("A2");
  // brute-force count of (n1, n2) with n1 + n2 <= 2
  int expected = 0;
  for (int n1 = 0; n1 <= 2; ++n1)
    for (int n2 = 0; n2 <= 2; ++n2)
      if (n1 + n2 <= 2) ++expected;
  auto pts2 = a2.enumerate_qplus(2);
  CHECK(static_cast<int>(pts2.size()) == expected);
  CHECK(expected == 6);

  // height 0 -> only the origin
  auto pts0 = a2.enumerate_qplus(0);
  REQUIRE(pts0.size() == 1);
  CHECK(pts0[0].height == 0);

  // nesting: the height-2 list is a prefix of the height-4 list
  auto pts4 = a2.enumerate_qplus(4);
  std::set<std::vector<int>> big;
  for (const auto& lp : pts4) big.insert(lp.n);
  for (const auto& lp : pts2) CHECK(big.count(lp.n) == 1);
  // ordered by height, ties lexicographic
  for (std::size_t i = 1; i < pts4.size(); ++i) {
    const auto& a = pts4[i - 1];
    const auto& b = pts4[i];
    CHECK((a.height < b.height || (a.height == b.height && a.n < b.n)));
  }
}

TEST_CASE("Weyl action on covectors and points is consistent") {
  auto rs = RootSystem::build("B2");
  // (e, lambda) = lambda ; (s_alpha, alpha) = -alpha ; (w0, rho) = -rho
  Covector rho(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) rho[i] = rs.rho()[i].to_double();
  auto neg = rs.act(rs.longest_element(), rho);
  for (int i = 0; i < rs.rank(); ++i) CHECK(std::abs(neg[i] + rho[i]) < 1e-13);

  for (int j = 0; j < rs.rank(); ++j) {
    Covector e(rs.rank(), Complex(0.0));
    e[j] = 1.0;
    auto r = rs.act(rs.simple_reflection(j), e);
    CHECK(std::abs(r[j] + e[j]) < 1e-13);
  }

  // nu(w^{-1} log a) = (w nu)(log a)
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(0.2, 1.5);
  ChamberPoint a({dist(rng), dist(rng)});
  Covector nu{Complex(0.7, 0.1), Complex(-0.4, 0.3)};
  for (const auto& w : rs.weyl_group()) {
    const auto& winv = rs.weyl_group()[w.inverse];
    Complex lhs = rs.covector_at(nu, rs.act_point(winv, a));
    Complex rhs = rs.covector_at(rs.act(w, nu), a);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("rho(k) specializations") {
  auto rs = RootSystem::build("A2");
  // k = 1/2 on R recovers rho of Sigma
  auto rk = rs.rho_k(Multiplicity(0.5));
  for (int i = 0; i < rs.rank(); ++i)
    CHECK(rk[i] == doctest::Approx(rs.rho()[i].to_double()).epsilon(1e-14));
  // (rho(k), alpha^vee) = k for rank one at every k
  auto a1 = RootSystem::build("A1");
  for (double k : {0.5, 1.0, 1.7, 2.5}) {
    auto rk1 = a1.rho_k(Multiplicity(k));
    Covector c{Complex(rk1[0], 0.0)};
    CHECK(a1.pairing_r(c, 0).real() == doctest::Approx(k).epsilon(1e-14));
  }
}
