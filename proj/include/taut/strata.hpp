// The strata algebra: decorated strata xi_{Gamma*}(gamma), formal linear
// combinations of them, and the operations used by the relation pipelines.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "taut/algebra.hpp"
#include "taut/graph.hpp"

namespace taut {

// kappa[v][a-1] is the exponent of kappa_a at vertex v; psi[h] the exponent of
// psi at half-edge h. A term stands for xi_{Gamma*}(gamma) with no automorphism
// factor.
struct Stratum {
  StableGraph graph;
  std::vector<std::vector<int>> kappa;
  std::vector<int> psi;
  std::string key;  // filled by normalize_stratum

  static Stratum bare(const StableGraph& g);
  int genus() const { return graph.total_genus(); }
  int markings() const { return graph.num_legs(); }
  int vertex_degree(int v) const;
  int decoration_degree() const;
  int codimension() const { return decoration_degree() + graph.num_edges(); }
  int kappa_exponent(int v, int a) const;
  void add_kappa(int v, int a, int e = 1);
};

inline int dimension(int g, int n) { return 3 * g - 3 + n; }

// Canonical layout and key. Returns false when the stratum vanishes for
// dimension reasons (a vertex decoration above its dimension or the total
// codimension above 3g-3+n).
bool normalize_stratum(Stratum& s);

long stratum_automorphisms(const Stratum& s);

using RawTerms = std::vector<std::pair<Stratum, Rational>>;

template <class C>
class TautClass {
 public:
  struct Term {
    Stratum stratum;
    C coeff;
  };

  TautClass() = default;
  TautClass(int g, int n) : g_(g), n_(n) {
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw ValidationError("unstable ambient space");
  }

  static TautClass fundamental(int g, int n) {
    TautClass c(g, n);
    c.add(Stratum::bare(trivial_graph(g, n)), C(Rational(1)));
    return c;
  }

  int genus() const { return g_; }
  int markings() const { return n_; }
  const std::map<std::string, Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(Stratum s, const C& c) {
    if (is_zero_coeff(c)) return;
    if (s.genus() != g_ || s.markings() != n_) throw ValidationError("stratum lives on a different space");
    if (s.key.empty() && !normalize_stratum(s)) return;
    auto it = terms_.find(s.key);
    if (it == terms_.end()) {
      std::string k = s.key;
      terms_.emplace(std::move(k), Term{std::move(s), c});
      return;
    }
    it->second.coeff += c;
    if (is_zero_coeff(it->second.coeff)) terms_.erase(it);
  }

  void add_raw(const RawTerms& raw, const C& c) {
    for (const auto& [s, q] : raw) add(s, c * q);
  }

  C coefficient(Stratum s) const {
    if (s.key.empty() && !normalize_stratum(s)) return C{};
    auto it = terms_.find(s.key);
    return it == terms_.end() ? C{} : it->second.coeff;
  }

  TautClass& operator+=(const TautClass& o) {
    check_same(o);
    for (const auto& [k, t] : o.terms_) add(t.stratum, t.coeff);
    return *this;
  }
  TautClass& operator-=(const TautClass& o) {
    check_same(o);
    for (const auto& [k, t] : o.terms_) add(t.stratum, -t.coeff);
    return *this;
  }
  TautClass& operator*=(const C& c) {
    if (is_zero_coeff(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, t] : terms_) t.coeff *= c;
    return *this;
  }
  friend TautClass operator+(TautClass a, const TautClass& b) { return a += b; }
  friend TautClass operator-(TautClass a, const TautClass& b) { return a -= b; }
  friend TautClass operator*(TautClass a, const C& c) { return a *= c; }
  friend TautClass operator*(const C& c, TautClass a) { return a *= c; }
  TautClass operator-() const {
    TautClass r = *this;
    for (auto& [k, t] : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend bool operator==(const TautClass& a, const TautClass& b) {
    if (a.g_ != b.g_ || a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [k, t] : a.terms_) {
      auto it = b.terms_.find(k);
      if (it == b.terms_.end() || !(it->second.coeff == t.coeff)) return false;
    }
    return true;
  }

  // Applies a linear map defined on strata.
  TautClass map(int g, int n, const std::function<RawTerms(const Stratum&)>& f) const {
    TautClass out(g, n);
    for (const auto& [k, t] : terms_) out.add_raw(f(t.stratum), t.coeff);
    return out;
  }

  TautClass filter(const std::function<bool(const Stratum&)>& keep) const {
    TautClass out(g_, n_);
    for (const auto& [k, t] : terms_)
      if (keep(t.stratum)) out.terms_.emplace(k, t);
    return out;
  }

  template <class F>
  auto transform_coefficients(F&& f) const {
    using D = decltype(f(std::declval<const C&>()));
    TautClass<D> out(g_, n_);
    for (const auto& [k, t] : terms_) out.add(t.stratum, f(t.coeff));
    return out;
  }

 private:
  void check_same(const TautClass& o) const {
    if (o.g_ != g_ || o.n_ != n_) throw ValidationError("classes live on different spaces");
  }

  int g_ = 0;
  int n_ = 3;
  std::map<std::string, Term> terms_;
};

using QClass = TautClass<Rational>;
using PClass = TautClass<MultiPoly>;

PClass to_poly(const QClass& c);

// --- generators ---------------------------------------------------------

// Edgeless stratum psi_1^{p_1}...psi_n^{p_n} kappa_1^{k_1}...; an empty kappa
// vector means no kappa classes.
Stratum monomial_stratum(int g, int n, const std::vector<int>& psi, const std::vector<int>& kappa = {});

struct Monomial {
  std::vector<int> psi;    // exponent per leg 1..n
  std::vector<int> kappa;  // exponent of kappa_a at index a-1
  int degree() const;
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const = default;
};

// Parses "psi1^2*kappa1", "1" or "" for the unit. Throws ValidationError.
Monomial parse_monomial(const std::string& text, int n);
std::string monomial_to_string(const Monomial& m);
QClass monomial_class(int g, int n, const Monomial& m);

// delta_h^P (separating) or delta_irr, as locus classes. Unstable conventions:
// delta_0^{i} = delta_g^{[n]-i} = -psi_i, delta_0^{} = delta_g^{[n]} = 0.
struct BoundaryDivisor {
  bool irreducible = false;
  int h = 0;
  std::vector<int> P;

  static BoundaryDivisor irr() { return {true, 0, {}}; }
  static BoundaryDivisor separating(int h, std::vector<int> P) { return {false, h, std::move(P)}; }
};

// Locus class of D with the unstable conventions applied.
QClass divisor_class(int g, int n, const BoundaryDivisor& D);

// Throws ValidationError if D does not make sense on M_{g,n}.
void validate_divisor(int g, int n, const BoundaryDivisor& D);

// Graph-level edge type: 'irr' or a normalized (h, P).
struct EdgeType {
  bool irreducible = false;
  int h = 0;
  std::vector<int> P;
  bool operator==(const EdgeType& o) const = default;
};
EdgeType edge_type(const StableGraph& g, int half_edge);
// Type of a stable divisor; D must not be one of the unstable conventions.
EdgeType divisor_type(int g, int n, const BoundaryDivisor& D);
// 0 if D is stable, 1 if D is zero by convention, 2 if D = -psi_leg.
int divisor_convention(int g, int n, const BoundaryDivisor& D, int* leg);

// --- raw operations on single strata ------------------------------------

RawTerms mul_psi_raw(const Stratum& s, int leg);
RawTerms mul_kappa_raw(const Stratum& s, int a);
RawTerms mul_boundary_divisor_raw(const Stratum& s, const BoundaryDivisor& D);
RawTerms pullback_raw(const Stratum& s);
RawTerms pushforward_raw(const Stratum& s);
Stratum relabel_stratum(const Stratum& s, const std::vector<int>& perm);
// Replaces the decoration at vertex v by the vertex stratum t, whose leg j is
// glued to the j-th half-edge at v (in increasing half-edge order).
Stratum substitute_vertex_raw(const Stratum& s, int v, const Stratum& t);

// --- class-level operations ---------------------------------------------

template <class C>
TautClass<C> mul_psi(const TautClass<C>& c, int leg) {
  if (leg < 1 || leg > c.markings()) throw ValidationError("psi index out of range");
  return c.map(c.genus(), c.markings(), [&](const Stratum& s) { return mul_psi_raw(s, leg); });
}

template <class C>
TautClass<C> mul_kappa(const TautClass<C>& c, int a) {
  if (a < 1) throw ValidationError("kappa index must be positive");
  return c.map(c.genus(), c.markings(), [&](const Stratum& s) { return mul_kappa_raw(s, a); });
}

template <class C>
TautClass<C> mul_boundary_divisor(const TautClass<C>& c, const BoundaryDivisor& D) {
  validate_divisor(c.genus(), c.markings(), D);
  return c.map(c.genus(), c.markings(), [&](const Stratum& s) { return mul_boundary_divisor_raw(s, D); });
}

// Product with a class whose strata are psi_i, kappa_1 or undecorated one-edge
// strata (codimension-one generators).
template <class C, class D>
TautClass<C> multiply_divisor(const TautClass<C>& c, const TautClass<D>& d);

template <class C>
TautClass<C> forgetful_pullback(const TautClass<C>& c) {
  return c.map(c.genus(), c.markings() + 1, [](const Stratum& s) { return pullback_raw(s); });
}

template <class C>
TautClass<C> forgetful_pushforward(const TautClass<C>& c) {
  if (c.markings() == 0) throw ValidationError("no leg to forget");
  if (2 * c.genus() - 3 + c.markings() <= 0) throw ValidationError("target space is unstable");
  return c.map(c.genus(), c.markings() - 1, [](const Stratum& s) { return pushforward_raw(s); });
}

// Forgets the last m legs.
template <class C>
TautClass<C> pushforward_forgetting(const TautClass<C>& c, int m) {
  TautClass<C> r = c;
  for (int i = 0; i < m; ++i) r = forgetful_pushforward(r);
  return r;
}

template <class C>
TautClass<C> relabel_legs(const TautClass<C>& c, const std::vector<int>& perm) {
  return c.map(c.genus(), c.markings(), [&](const Stratum& s) {
    return RawTerms{{relabel_stratum(s, perm), Rational(1)}};
  });
}

// Forgets an arbitrary leg; legs above it shift down by one.
template <class C>
TautClass<C> forget_leg(const TautClass<C>& c, int leg) {
  const int n = c.markings();
  if (leg < 1 || leg > n) throw ValidationError("leg out of range");
  std::vector<int> perm(n);
  for (int i = 1; i <= n; ++i) perm[i - 1] = i < leg ? i : (i == leg ? n : i - 1);
  return forgetful_pushforward(relabel_legs(c, perm));
}

// Pulls back along the map forgetting a new leg inserted with label `leg`.
template <class C>
TautClass<C> pullback_inserting(const TautClass<C>& c, int leg) {
  const int n = c.markings() + 1;
  if (leg < 1 || leg > n) throw ValidationError("leg out of range");
  std::vector<int> perm(n);
  for (int i = 1; i <= n; ++i) perm[i - 1] = i < leg ? i : (i == n ? leg : i + 1);
  return relabel_legs(forgetful_pullback(c), perm);
}

enum class Locus { Open, RationalTails, CompactType };
Locus parse_locus(const std::string& s);
bool in_locus(const Stratum& s, Locus locus);

template <class C>
TautClass<C> restrict_locus(const TautClass<C>& c, Locus locus) {
  return c.filter([&](const Stratum& s) { return in_locus(s, locus); });
}

template <class C>
TautClass<C> degree_part(const TautClass<C>& c, int d) {
  if (d < 0) throw ValidationError("negative degree");
  return c.filter([&](const Stratum& s) { return s.codimension() == d; });
}

// Strata with at least one edge.
template <class C>
TautClass<C> boundary_part(const TautClass<C>& c) {
  return c.filter([](const Stratum& s) { return s.graph.num_edges() > 0; });
}

template <class C>
TautClass<C> substitute_vertex(const Stratum& s, int v, const TautClass<C>& vertex_class) {
  TautClass<C> out(s.genus(), s.markings());
  for (const auto& [k, t] : vertex_class.terms()) out.add(substitute_vertex_raw(s, v, t.stratum), t.coeff);
  return out;
}

// Glues per-vertex classes along an undecorated graph.
QClass gluing_pushforward(const StableGraph& g, const std::vector<QClass>& vertex_classes);

// Human-readable rendering of a stratum and of a class.
std::string describe_stratum(const Stratum& s);
template <class C>
std::string describe(const TautClass<C>& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [k, t] : c.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + coeff_to_string(t.coeff) + ")*" + describe_stratum(t.stratum);
  }
  return out;
}

// --- implementation of multiply_divisor ---------------------------------

template <class C, class D>
TautClass<C> multiply_divisor(const TautClass<C>& c, const TautClass<D>& d) {
  if (c.genus() != d.genus() || c.markings() != d.markings())
    throw ValidationError("classes live on different spaces");
  TautClass<C> out(c.genus(), c.markings());
  for (const auto& [key, t] : d.terms()) {
    const Stratum& s = t.stratum;
    TautClass<C> part(c.genus(), c.markings());
    if (s.codimension() != 1) throw ValidationError("multiply_divisor expects a codimension-one class");
    if (s.graph.num_edges() == 0) {
      int leg = -1;
      for (int h = 0; h < s.graph.num_half_edges(); ++h)
        if (s.psi[h] == 1) leg = s.graph.label[h];
      part = leg > 0 ? mul_psi(c, leg) : mul_kappa(c, 1);
    } else {
      int h = s.graph.edge_list().front();
      EdgeType ty = edge_type(s.graph, h);
      BoundaryDivisor div = ty.irreducible ? BoundaryDivisor::irr() : BoundaryDivisor::separating(ty.h, ty.P);
      part = mul_boundary_divisor(c, div);
      part *= C(Rational(stratum_automorphisms(s)));
    }
    for (const auto& [k2, t2] : part.terms()) out.add(t2.stratum, t2.coeff * C(t.coeff));
  }
  return out;
}

}  // namespace taut
