#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "taut/algebra.hpp"

using namespace taut;

namespace {

MultiPoly a(int i) { return MultiPoly::variable("a" + std::to_string(i)); }

}  // namespace

TEST_CASE("rational parsing and normal form") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK(binomial(5, 2) == 10);
  CHECK(factorial(6) == 720);
  CHECK(power(Rational(-2, 3), 3) == Rational(-8, 27));
}

TEST_CASE("substitute a3 by -a1-a2") {
  MultiPoly p = a(3).pow(2);
  MultiPoly q = p.substitute(std::map<std::string, MultiPoly>{{"a3", -a(1) - a(2)}});
  CHECK(q == a(1).pow(2) + Rational(2) * a(1) * a(2) + a(2).pow(2));
  CHECK_THROWS_AS(p.substitute(std::map<std::string, long>{{"a9", 1}}), ValidationError);
}

TEST_CASE("substitute x = 2 in x^4/12 - x^2/12") {
  MultiPoly x = MultiPoly::variable("x");
  MultiPoly p = Rational(1, 12) * x.pow(4) - Rational(1, 12) * x.pow(2);
  Rational brute = 0;
  for (int v = 1; v <= 2; ++v) brute += v * v * (2 - v);
  MultiPoly s = p.substitute(std::map<std::string, long>{{"x", 2}});
  CHECK(s.is_constant());
  CHECK(s.constant_term() == brute);
  CHECK(brute == 1);
}

TEST_CASE("substitution is multiplicative") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly p, q;
    for (int t = 0; t < 4; ++t) {
      p.add_term({{"a1", d(rng) + 3}, {"a2", t}}, Rational(d(rng)));
      q.add_term({{"a2", d(rng) + 3}, {"x", t}}, make_rational(d(rng), 5));
    }
    std::map<std::string, long> pt{{"a1", d(rng)}, {"a2", d(rng)}};
    MultiPoly lhs = (p * q).substitute(pt);
    MultiPoly rhs = p.substitute(std::map<std::string, long>{{"a1", pt["a1"]}, {"a2", pt["a2"]}}) *
                    q.substitute(std::map<std::string, long>{{"a2", pt["a2"]}});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("variable order and text round trip") {
  MultiPoly p = a(10) * a(2) + MultiPoly::variable("r") * MultiPoly::variable("x") - Rational(1, 3);
  CHECK(p.variables() == std::vector<std::string>{"a2", "a10", "r", "x"});
  std::string s = p.to_string();
  CHECK(s == "1*a2*a10 + 1*r*x + -1/3");
  CHECK(MultiPoly::parse(s) == p);
  CHECK(MultiPoly::parse(s).to_string() == s);
  CHECK(MultiPoly().to_string() == "0");
  CHECK(MultiPoly::parse("0").is_zero());
  CHECK_THROWS_AS(MultiPoly::parse("1*a1^"), ValidationError);
}

TEST_CASE("lagrange interpolation") {
  Rational c(5, 7);
  MultiPoly k = lagrange_interpolate({{1, c}, {2, c}, {3, c}}, 2);
  CHECK(k == MultiPoly(c));
  MultiPoly sq = lagrange_interpolate({{0, 0}, {1, 1}, {2, 4}}, 2);
  CHECK(sq == MultiPoly::variable("r").pow(2));
  CHECK_THROWS_AS(lagrange_interpolate({{1, 1}, {1, 2}}, 1), ValidationError);
  CHECK_THROWS_AS(lagrange_interpolate({{0, 0}, {1, 1}, {2, 4}, {3, 10}}, 2), InterpolationMismatch);
}

TEST_CASE("interpolating the averaged weighting sum") {
  std::vector<std::pair<long, Rational>> samples;
  for (long r : {5L, 7L, 9L}) {
    Rational s = 0;
    for (long w = 0; w < r; ++w) s += make_rational(w * (r - w), 2);
    samples.emplace_back(r, s / r);
  }
  MultiPoly p = lagrange_interpolate(samples, 2);
  MultiPoly r = MultiPoly::variable("r");
  CHECK(p == Rational(1, 12) * (r.pow(2) - 1));
  for (const auto& [pt, v] : samples) CHECK(p.evaluate({{"r", Rational(pt)}}) == v);
}

TEST_CASE("faulhaber sums") {
  MultiPoly x = MultiPoly::variable("x");
  CHECK(faulhaber_sum(0) == x);
  CHECK(faulhaber_sum(1) == Rational(1, 2) * x * (x + 1));
  CHECK(faulhaber_sum(2) == Rational(1, 6) * x * (x + 1) * (Rational(2) * x + 1));
  for (int k = 0; k <= 6; ++k) {
    MultiPoly f = faulhaber_sum(k);
    Rational acc = 0;
    for (int m = 1; m <= 50; ++m) {
      acc += power(Rational(m), k);
      CHECK(f.evaluate({{"x", Rational(m)}}) == acc);
    }
  }
}

TEST_CASE("finite difference extraction") {
  using Pt = std::vector<long>;
  SUBCASE("footnote stencil") {
    Rational A = 3, B = -5, C = 7;
    auto f = [&](const Pt& p) { return Rational(A * p[0] * p[0] + B * p[0] * p[1] + C * p[1] * p[1]); };
    CHECK(finite_difference_extract<Rational>(f, {1, 1}, 2) == B);
    Rational direct = f({1, 1}) - f({1, 0}) - f({0, 1}) + f({0, 0});
    CHECK(direct == B);
  }
  SUBCASE("zero function") {
    auto f = [](const Pt&) { return Rational(0); };
    CHECK(finite_difference_extract<Rational>(f, {2, 1}, 3) == 0);
  }
  SUBCASE("square of a sum") {
    auto f = [](const Pt& p) { return Rational((p[0] + p[1]) * (p[0] + p[1])); };
    CHECK(finite_difference_extract<Rational>(f, {1, 1}, 2) == 2);
  }
  SUBCASE("agrees with stored polynomials") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int nv = 1; nv <= 5; ++nv) {
      MultiPoly p;
      std::vector<std::vector<int>> monos;
      std::function<void(std::vector<int>&, int, int)> gen = [&](std::vector<int>& e, int pos, int left) {
        if (pos == nv) {
          monos.push_back(e);
          return;
        }
        for (int v = 0; v <= left; ++v) {
          e[pos] = v;
          gen(e, pos + 1, left - v);
        }
        e[pos] = 0;
      };
      const int deg = nv <= 3 ? 6 : 4;
      std::vector<int> e(nv, 0);
      gen(e, 0, deg);
      for (const auto& m : monos) {
        std::map<std::string, int> mm;
        for (int i = 0; i < nv; ++i) mm["a" + std::to_string(i + 1)] = m[i];
        if (rng() % 3 == 0) p.add_term(mm, make_rational(coef(rng), 1 + static_cast<long>(rng() % 4)));
      }
      auto f = [&](const Pt& pt) {
        std::map<std::string, Rational> at;
        for (int i = 0; i < nv; ++i) at["a" + std::to_string(i + 1)] = Rational(pt[i]);
        return p.evaluate(at);
      };
      FiniteDifferenceExtractor<Rational> ex(f, nv, deg);
      for (const auto& m : monos) {
        std::map<std::string, int> mm;
        for (int i = 0; i < nv; ++i) mm["a" + std::to_string(i + 1)] = m[i];
        CHECK(ex.coefficient(m) == p.coefficient(mm));
      }
    }
  }
  SUBCASE("polynomial-valued") {
    MultiPoly y = MultiPoly::variable("y");
    auto f = [&](const Pt& p) { return MultiPoly(Rational(p[0] * p[1])) * y + MultiPoly(Rational(p[0] * p[0])); };
    CHECK(finite_difference_extract<MultiPoly>(f, {1, 1}, 2) == y);
    CHECK(finite_difference_extract<MultiPoly>(f, {2, 0}, 2) == MultiPoly(Rational(2)));
  }
}

TEST_CASE("row space solve") {
  std::vector<std::vector<Rational>> rows = {{1, 2, 0}, {0, 1, 1}};
  auto lam = solve_in_row_space(rows, {2, 5, 1});
  REQUIRE(lam.has_value());
  CHECK((*lam)[0] == 2);
  CHECK((*lam)[1] == 1);
  auto bad = solve_in_row_space(rows, {1, 0, 0});
  CHECK_FALSE(bad.has_value());
}
