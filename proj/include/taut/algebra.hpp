// Exact arithmetic: rationals, sparse multivariate polynomials, interpolation,
// power sums, finite-difference coefficient extraction and linear solves.
#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace taut {

using Integer = mpz_class;
using Rational = mpq_class;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal invariant failed; indicates a bug or a violated mathematical
// assumption rather than bad user input.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InterpolationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
Rational factorial(int k);
Rational binomial(int n, int k);
Rational power(const Rational& base, int exponent);

// Ordering used for polynomial variables everywhere: a1, a2, ... by index,
// then r, then x, then any other name lexicographically.
bool variable_less(const std::string& lhs, const std::string& rhs);

class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables);
  MultiPoly(const Rational& c);  // NOLINT: constants promote implicitly
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT

  static MultiPoly variable(const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;
  int degree_in(const std::string& var) const;

  // Coefficient of a monomial given as variable -> exponent; absent variables
  // have exponent 0.
  Rational coefficient(const std::map<std::string, int>& monomial) const;

  void add_term(const std::map<std::string, int>& monomial, const Rational& c);

  MultiPoly substitute(const std::map<std::string, MultiPoly>& bindings) const;
  MultiPoly substitute(const std::map<std::string, long>& bindings) const;
  Rational evaluate(const std::map<std::string, Rational>& point) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(int k) const;

  // Canonical text: terms in descending lexicographic exponent order, joined by
  // " + ", each "coef" or "coef*v^e*w". parse() inverts it exactly.
  std::string to_string() const;
  static MultiPoly parse(const std::string& text);

 private:
  void unify(const std::vector<std::string>& other_vars);
  void trim();

  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
};

inline bool is_zero_coeff(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero_coeff(const MultiPoly& p) { return p.is_zero(); }
std::string coeff_to_string(const Rational& q);
std::string coeff_to_string(const MultiPoly& p);

// Unique polynomial of degree <= degree_bound through the samples. Extra samples
// beyond degree_bound + 1 must be reproduced exactly.
MultiPoly lagrange_interpolate(const std::vector<std::pair<long, Rational>>& samples,
                               int degree_bound, const std::string& var = "r");

// Value at 0 of the interpolant; same preconditions as lagrange_interpolate.
Rational interpolate_at_zero(const std::vector<std::pair<long, Rational>>& samples);

// Closed form of sum_{a=1}^{x} a^k as a polynomial in x.
MultiPoly faulhaber_sum(int k);

// Signed Stirling numbers of the first kind s(n, k).
Integer stirling_first(int n, int k);

// Coefficient extraction from a black-box polynomial f : Z^m -> V of total
// degree <= total_degree, using forward differences anchored at the origin.
// Evaluations are cached, so extracting many monomials from the same f costs
// one evaluation per lattice point touched.
template <class V>
class FiniteDifferenceExtractor {
 public:
  using Point = std::vector<long>;
  using Function = std::function<V(const Point&)>;

  FiniteDifferenceExtractor(Function f, int num_vars, int total_degree)
      : f_(std::move(f)), num_vars_(num_vars), total_degree_(total_degree) {}

  // (prod_i m_i!) * coefficient of x^m; for a monomial of top degree this is
  // exactly the mixed forward difference Delta^m f(0).
  V normalized(const std::vector<int>& monomial) {
    Rational norm = 1;
    for (int e : monomial) norm *= factorial(e);
    return scale(coefficient(monomial), norm);
  }

  V coefficient(const std::vector<int>& monomial) {
    check(monomial);
    // f(x) = sum_j Delta^j f(0) prod_i C(x_i, j_i), and C(x, j) =
    // sum_k s(j, k) x^k / j!.
    V result{};
    bool have = false;
    std::vector<int> j = monomial;
    iterate_dominating(j, 0, [&](const std::vector<int>& jj) {
      Rational weight = 1;
      for (int i = 0; i < num_vars_; ++i) {
        weight *= Rational(stirling_first(jj[i], monomial[i])) / factorial(jj[i]);
      }
      if (sgn(weight) == 0) return;
      V term = scale(difference(jj), weight);
      if (!have) {
        result = term;
        have = true;
      } else {
        result = add(result, term);
      }
    });
    return result;
  }

  std::size_t evaluations() const { return cache_.size(); }

 private:
  static V scale(const V& v, const Rational& c) { return v * c; }
  static V add(const V& a, const V& b) { return a + b; }

  void check(const std::vector<int>& monomial) const {
    if (static_cast<int>(monomial.size()) != num_vars_) {
      throw ValidationError("monomial length does not match number of variables");
    }
    int deg = 0;
    for (int e : monomial) {
      if (e < 0) throw ValidationError("negative exponent");
      deg += e;
    }
    if (deg > total_degree_) throw ValidationError("monomial exceeds declared total degree");
  }

  template <class Fn>
  void iterate_dominating(std::vector<int>& j, int pos, Fn&& fn) {
    if (pos == num_vars_) {
      fn(j);
      return;
    }
    int used = 0;
    for (int i = 0; i < num_vars_; ++i) used += (i < pos ? j[i] : 0);
    int rest_min = 0;
    for (int i = pos + 1; i < num_vars_; ++i) rest_min += j[i];
    const int base = j[pos];
    for (int v = base; used + v + rest_min <= total_degree_; ++v) {
      j[pos] = v;
      iterate_dominating(j, pos + 1, fn);
    }
    j[pos] = base;
  }

  // Delta^j f(0) = sum_{l <= j} (-1)^{|j - l|} prod C(j_i, l_i) f(l).
  V difference(const std::vector<int>& j) {
    V result{};
    bool have = false;
    Point l(num_vars_, 0);
    std::function<void(int, Rational)> rec = [&](int pos, Rational weight) {
      if (pos == num_vars_) {
        V term = scale(eval(l), weight);
        if (!have) {
          result = term;
          have = true;
        } else {
          result = add(result, term);
        }
        return;
      }
      for (int v = 0; v <= j[pos]; ++v) {
        l[pos] = v;
        Rational w = weight * binomial(j[pos], v);
        if ((j[pos] - v) % 2) w = -w;
        rec(pos + 1, w);
      }
      l[pos] = 0;
    };
    rec(0, Rational(1));
    return result;
  }

  const V& eval(const Point& p) {
    auto it = cache_.find(p);
    if (it == cache_.end()) it = cache_.emplace(p, f_(p)).first;
    return it->second;
  }

  Function f_;
  int num_vars_;
  int total_degree_;
  std::map<Point, V> cache_;
};

template <class V>
V finite_difference_extract(const std::function<V(const std::vector<long>&)>& f,
                            const std::vector<int>& monomial, int total_degree) {
  FiniteDifferenceExtractor<V> ex(f, static_cast<int>(monomial.size()), total_degree);
  return ex.normalized(monomial);
}

// Finds lambda with sum_j lambda_j * rows[j] == target, or nullopt if target is
// outside the row space. Exact Gaussian elimination.
std::optional<std::vector<Rational>> solve_in_row_space(
    const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& target);

}  // namespace taut
