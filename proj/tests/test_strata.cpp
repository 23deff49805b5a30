#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "integrals.hpp"
#include "taut/strata.hpp"

using namespace taut;

namespace {

QClass psi(int g, int n, int i, int e = 1) {
  std::vector<int> p(n, 0);
  p[i - 1] = e;
  QClass c(g, n);
  c.add(monomial_stratum(g, n, p), Rational(1));
  return c;
}

QClass kappa(int g, int n, int a, int e = 1) {
  std::vector<int> k(a, 0);
  k[a - 1] = e;
  QClass c(g, n);
  c.add(monomial_stratum(g, n, std::vector<int>(n, 0), k), Rational(1));
  return c;
}

QClass constant(int g, int n, const Rational& q) { return QClass::fundamental(g, n) * q; }

QClass delta0(int g, int n, std::vector<int> P) {
  return divisor_class(g, n, BoundaryDivisor::separating(0, std::move(P)));
}

std::vector<BoundaryDivisor> all_divisors(int g, int n) {
  std::vector<BoundaryDivisor> out;
  if (g >= 1) out.push_back(BoundaryDivisor::irr());
  for (int h = 0; h <= g; ++h)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> P;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) P.push_back(i + 1);
      int leg = 0;
      if (divisor_convention(g, n, BoundaryDivisor::separating(h, P), &leg) != 0) continue;
      EdgeType t = divisor_type(g, n, BoundaryDivisor::separating(h, P));
      if (t.h != h || t.P != P) continue;
      out.push_back(BoundaryDivisor::separating(h, P));
    }
  return out;
}

Rational pair(const QClass& a, const QClass& b) {
  Rational total = 0;
  for (const auto& [k, t] : b.terms()) {
    QClass x = a;
    const Stratum& s = t.stratum;
    REQUIRE(s.graph.num_edges() == 0);
    for (int i = 1; i <= s.markings(); ++i)
      for (int e = 0; e < s.psi[s.graph.leg_half_edge(i)]; ++e) x = mul_psi(x, i);
    for (int a2 = 1; a2 <= static_cast<int>(s.kappa[0].size()); ++a2)
      for (int e = 0; e < s.kappa[0][a2 - 1]; ++e) x = mul_kappa(x, a2);
    total += t.coeff * oracle::integrate(x);
  }
  return total;
}

}  // namespace

TEST_CASE("integration oracle sanity") {
  CHECK(oracle::psi_integral(1, {1}) == Rational(1, 24));
  CHECK(oracle::psi_integral(0, {1, 0, 0, 0}) == 1);
  CHECK(oracle::psi_integral(0, {2, 0, 0, 0, 0}) == 1);
  CHECK(oracle::psi_integral(0, {1, 1, 0, 0, 0}) == 2);
  CHECK(oracle::kappa_psi_integral(1, {1}, {0}) == Rational(1, 24));
  CHECK(oracle::kappa_psi_integral(2, {0, 0, 1}, {}) == Rational(1, 1152));
  CHECK(oracle::kappa_psi_integral(0, {1}, {0, 0, 0, 0}) == 1);
  CHECK(oracle::kappa_psi_integral(0, {0, 1}, {0, 0, 0, 0, 0}) == 1);
  CHECK(oracle::kappa_psi_integral(0, {2}, {0, 0, 0, 0, 0}) == 5);
}

TEST_CASE("normalization") {
  QClass a = psi(1, 1, 1) + psi(1, 1, 1);
  CHECK(a.size() == 1);
  CHECK(a.coefficient(monomial_stratum(1, 1, {1})) == 2);
  QClass z(0, 4);
  z.add(monomial_stratum(0, 4, {1, 1, 0, 0}), Rational(1));
  CHECK(z.is_zero());
  StableGraph b1;
  b1.genus = {0, 0};
  b1.vertex_of = {1, 1, 1, 1, 0, 0, 1, 0, 1};
  b1.partner = {0, 1, 2, 3, 4, 6, 5, 8, 7};
  b1.label = {1, 2, 3, 4, 5, 0, 0, 0, 0};
  StableGraph b2 = b1;
  b2.vertex_of = {1, 1, 1, 1, 0, 1, 0, 1, 0};
  QClass c(1, 5);
  c.add(Stratum::bare(b1), Rational(1));
  c.add(Stratum::bare(b2), Rational(2));
  CHECK(c.size() == 1);
  CHECK(c.terms().begin()->second.coeff == 3);
}

TEST_CASE("psi and kappa multiplication") {
  CHECK(mul_psi(QClass::fundamental(1, 1), 1) == psi(1, 1, 1));
  QClass d = delta0(1, 5, {2, 3});
  CHECK(mul_psi(mul_psi(d, 2), 3).is_zero());
  QClass loop = divisor_class(1, 1, BoundaryDivisor::irr());
  const Stratum& bare = loop.terms().begin()->second.stratum;
  RawTerms raw = mul_kappa_raw(bare, 1);
  REQUIRE(raw.size() == 1);
  CHECK(raw[0].first.graph.num_edges() == 1);
  CHECK(raw[0].first.kappa_exponent(0, 1) == 1);
  // codimension 2 on a one-dimensional space: dropped by normalization
  CHECK(mul_kappa(loop, 1).is_zero());
  QClass k = mul_kappa(divisor_class(1, 2, BoundaryDivisor::irr()), 1);
  REQUIRE(k.size() == 1);
  CHECK(k.terms().begin()->second.stratum.kappa_exponent(0, 1) == 1);
  CHECK(k.terms().begin()->second.coeff == Rational(1, 2));
}

TEST_CASE("vanishing lemma holds formally") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 5}, {0, 5}}) {
    const int dim = dimension(g, n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> I;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) I.push_back(i + 1);
      if (I.size() < 2) continue;
      if (g == 0 && static_cast<int>(I.size()) > n - 2) continue;
      QClass d = delta0(g, n, I);
      // every psi-label sequence, as a multiset of size k <= dim - 1
      std::function<void(int, int, QClass, int)> rec = [&](int start, int left, QClass cur, int inside) {
        if (inside >= static_cast<int>(I.size()) - 1) CHECK(cur.is_zero());
        if (left == 0) return;
        for (int i = start; i <= n; ++i) {
          bool in = std::find(I.begin(), I.end(), i) != I.end();
          rec(i, left - 1, mul_psi(cur, i), inside + (in ? 1 : 0));
        }
      };
      rec(1, dim - 1, d, 0);
    }
  }
}

TEST_CASE("divisor products") {
  CHECK(mul_boundary_divisor(delta0(0, 4, {1, 2}), BoundaryDivisor::separating(0, {1, 3})).is_zero());
  QClass sq = mul_boundary_divisor(delta0(0, 5, {1, 2}), BoundaryDivisor::separating(0, {1, 2}));
  CHECK(sq.size() == 1);
  CHECK(sq.terms().begin()->second.coeff == -1);
  CHECK(oracle::integrate(sq) == -1);
  QClass d1 = mul_boundary_divisor(psi(0, 5, 3), BoundaryDivisor::separating(0, {1}));
  CHECK(d1 == -mul_psi(psi(0, 5, 3), 1));
  // psi_1 = delta_{14} + delta_{15} + delta_{145} on M_{0,5}, tested against every
  // divisor and psi class with the integration oracle
  QClass rhs = delta0(0, 5, {1, 4}) + delta0(0, 5, {1, 5}) + delta0(0, 5, {1, 4, 5});
  QClass diff = psi(0, 5, 1) - rhs;
  for (const auto& D : all_divisors(0, 5)) CHECK(oracle::integrate(multiply_divisor(diff, divisor_class(0, 5, D))) == 0);
  for (int i = 1; i <= 5; ++i) CHECK(oracle::integrate(mul_psi(diff, i)) == 0);
  CHECK(oracle::integrate(mul_kappa(diff, 1)) == 0);
}

TEST_CASE("divisor products commute") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 2}, {0, 5}}) {
    auto divs = all_divisors(g, n);
    for (const auto& A : divs)
      for (const auto& B : divs) {
        QClass one = QClass::fundamental(g, n);
        QClass ab = mul_boundary_divisor(mul_boundary_divisor(one, A), B);
        QClass ba = mul_boundary_divisor(mul_boundary_divisor(one, B), A);
        CHECK(ab == ba);
        QClass p = psi(g, n, 1);
        CHECK(mul_boundary_divisor(mul_boundary_divisor(p, A), B) == mul_boundary_divisor(mul_boundary_divisor(p, B), A));
      }
  }
}

TEST_CASE("divisor intersection numbers on M_{1,2}") {
  // delta_irr^2 on M_{1,2} and mixed numbers against known values
  auto irr = BoundaryDivisor::irr();
  auto d12 = BoundaryDivisor::separating(0, {1, 2});
  CHECK(oracle::integrate(mul_boundary_divisor(divisor_class(1, 2, d12), d12)) == Rational(-1, 24));
  CHECK(oracle::integrate(mul_boundary_divisor(divisor_class(1, 2, irr), d12)) == Rational(1, 2));
  CHECK(oracle::integrate(mul_boundary_divisor(divisor_class(1, 2, irr), irr)) == 0);
  CHECK(oracle::integrate(mul_psi(divisor_class(1, 2, irr), 1)) == Rational(1, 2));
}

TEST_CASE("pullback") {
  CHECK(psi(0, 3, 1).is_zero());
  QClass p(0, 4);
  p.add_raw(pullback_raw(monomial_stratum(0, 3, {1, 0, 0})), Rational(1));
  CHECK(p == psi(0, 4, 1) - delta0(0, 4, {1, 4}));
  CHECK(forgetful_pullback(kappa(1, 1, 1)) == kappa(1, 2, 1) - psi(1, 2, 2));
  CHECK(forgetful_pullback(QClass(1, 1)).is_zero());
  CHECK(forgetful_pullback(QClass::fundamental(1, 1)) == QClass::fundamental(1, 2));
}

TEST_CASE("pushforward") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    for (int k = 0; k <= 4; ++k) {
      QClass top = psi(g, n + 1, n + 1, k + 1);
      QClass expect = k == 0 ? constant(g, n, Rational(2 * g - 2 + n)) : kappa(g, n, k);
      if (k + 1 > dimension(g, n + 1)) expect = QClass(g, n);
      CHECK(forgetful_pushforward(top) == expect);
    }
  }
  for (auto [g, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {0, 3}}) {
    std::vector<int> e(m + 2, 0);
    e[m] = 1;
    e[m + 1] = 1;
    QClass two(g, m + 2);
    two.add(monomial_stratum(g, m + 2, e), Rational(1));
    Rational k0 = 2 * g - 2 + m;
    CHECK(pushforward_forgetting(two, 2) == constant(g, m, k0 * k0 + k0));
  }
  CHECK(forgetful_pushforward(QClass::fundamental(1, 2)).is_zero());
  CHECK(forgetful_pushforward(delta0(0, 4, {1, 4})) == QClass::fundamental(0, 3));
}

TEST_CASE("projection formula against the oracle") {
  // int pi_*(x) y == int x pi^*(y)
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 4}, {1, 2}, {1, 3}, {0, 5}}) {
    const int dim_big = dimension(g, n + 1);
    for (int dx = 1; dx <= dim_big; ++dx) {
      int dy = dimension(g, n) - (dx - 1);
      if (dy < 0) continue;
      auto xs = oracle::monomials_of_degree(n + 1, dx);
      auto ys = oracle::monomials_of_degree(n, dy);
      int count = 0;
      for (const auto& mx : xs) {
        for (const auto& my : ys) {
          if (++count > 60) break;
          QClass x = monomial_class(g, n + 1, mx);
          QClass y = monomial_class(g, n, my);
          Rational lhs = pair(forgetful_pushforward(x), y);
          // x * pi^* y, pulling back generators one at a time
          QClass prod = x;
          for (int i = 1; i <= n; ++i)
            for (int e = 0; e < my.psi[i - 1]; ++e)
              prod = mul_psi(prod, i) - multiply_divisor(prod, delta0(g, n + 1, {i, n + 1}));
          for (int a = 1; a <= static_cast<int>(my.kappa.size()); ++a)
            for (int e = 0; e < my.kappa[a - 1]; ++e) {
              QClass pk = mul_kappa(prod, a);
              QClass pp = prod;
              for (int j = 0; j < a; ++j) pp = mul_psi(pp, n + 1);
              prod = pk - pp;
            }
          CHECK(lhs == oracle::integrate(prod));
        }
      }
    }
  }
}

TEST_CASE("pullback matches generator formulas") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 4}, {1, 1}, {1, 2}}) {
    for (int d = 1; d <= dimension(g, n); ++d) {
      for (const auto& m : oracle::monomials_of_degree(n, d)) {
        QClass viaPull = forgetful_pullback(monomial_class(g, n, m));
        QClass gen = QClass::fundamental(g, n + 1);
        for (int i = 1; i <= n; ++i)
          for (int e = 0; e < m.psi[i - 1]; ++e)
            gen = mul_psi(gen, i) - multiply_divisor(gen, delta0(g, n + 1, {i, n + 1}));
        for (int a = 1; a <= static_cast<int>(m.kappa.size()); ++a)
          for (int e = 0; e < m.kappa[a - 1]; ++e) {
            QClass pp = gen;
            for (int j = 0; j < a; ++j) pp = mul_psi(pp, n + 1);
            gen = mul_kappa(gen, a) - pp;
          }
        CHECK(viaPull == gen);
      }
    }
  }
}

TEST_CASE("gluing pushforward") {
  StableGraph loop;
  loop.genus = {0};
  loop.vertex_of = {0, 0, 0};
  loop.partner = {0, 2, 1};
  loop.label = {1, 0, 0};
  QClass glued = gluing_pushforward(loop, {QClass::fundamental(0, 3)});
  CHECK(glued == divisor_class(1, 1, BoundaryDivisor::irr()) * Rational(2));
  // two-stage gluing equals one-stage gluing on (2,1) graphs with <= 2 edges
  for (const auto& G : enumerate_stable_graphs(2, 1, 2)) {
    std::vector<QClass> vc;
    for (int v = 0; v < G.num_vertices(); ++v) {
      int nv = G.valence(v);
      QClass c = QClass::fundamental(G.genus[v], nv);
      if (dimension(G.genus[v], nv) >= 1) c = c + psi(G.genus[v], nv, 1);
      vc.push_back(c);
    }
    QClass once = gluing_pushforward(G, vc);
    // inner gluing at a vertex, then outer gluing, gives a stratum one edge deeper
    for (int v = 0; v < G.num_vertices(); ++v) {
      for (const auto& d : one_edge_degenerations(trivial_graph(G.genus[v], G.valence(v)))) {
        std::vector<QClass> inner;
        for (int u = 0; u < d.graph.num_vertices(); ++u)
          inner.push_back(QClass::fundamental(d.graph.genus[u], d.graph.valence(u)));
        std::vector<QClass> outer(G.num_vertices());
        for (int u = 0; u < G.num_vertices(); ++u)
          outer[u] = u == v ? gluing_pushforward(d.graph, inner) : QClass::fundamental(G.genus[u], G.valence(u));
        QClass staged = gluing_pushforward(G, outer);
        REQUIRE(staged.size() == 1);
        const Stratum& s = staged.terms().begin()->second.stratum;
        CHECK(staged.terms().begin()->second.coeff == 1);
        CHECK(s.graph.num_edges() == G.num_edges() + 1);
        bool contracts = false;
        for (int h : s.graph.edge_list()) contracts = contracts || isomorphic(contract_edge(s.graph, h), G);
        CHECK(contracts);
      }
    }
    // projection formula for psi at each leg
    for (int i = 1; i <= G.num_legs(); ++i) {
      int h = G.leg_half_edge(i);
      int v = G.vertex_of[h];
      auto at = G.half_edges_at(v);
      int local = static_cast<int>(std::find(at.begin(), at.end(), h) - at.begin()) + 1;
      std::vector<QClass> vc2 = vc;
      vc2[v] = mul_psi(vc2[v], local);
      CHECK(mul_psi(once, i) == gluing_pushforward(G, vc2));
    }
  }
}

TEST_CASE("loci and degree parts") {
  QClass irr = divisor_class(1, 1, BoundaryDivisor::irr());
  CHECK(restrict_locus(irr, Locus::CompactType).is_zero());
  CHECK(restrict_locus(psi(1, 1, 1), Locus::Open) == psi(1, 1, 1));
  QClass d11 = divisor_class(2, 0, BoundaryDivisor::separating(1, {}));
  CHECK(restrict_locus(d11, Locus::RationalTails).is_zero());
  CHECK(restrict_locus(d11, Locus::CompactType) == d11);
  QClass mixed = QClass::fundamental(1, 1) + psi(1, 1, 1);
  CHECK(degree_part(mixed, 0) == QClass::fundamental(1, 1));
  CHECK(degree_part(mixed, 5).is_zero());
}

TEST_CASE("monomial parsing") {
  Monomial m = parse_monomial("psi1^2*kappa1", 2);
  CHECK(m.psi == std::vector<int>{2, 0});
  CHECK(m.kappa == std::vector<int>{1});
  CHECK(monomial_to_string(m) == "psi1^2*kappa1");
  CHECK(parse_monomial("1", 1).degree() == 0);
  CHECK_THROWS_AS(parse_monomial("psi3", 2), ValidationError);
  CHECK_THROWS_AS(parse_monomial("lambda1", 2), ValidationError);
}
