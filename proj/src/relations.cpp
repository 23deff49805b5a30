#include "taut/relations.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "taut/database.hpp"

namespace taut {

namespace {

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string a_monomial_string(const std::vector<int>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "a" + std::to_string(i + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

template <class C, class Fn>
TautClass<C> theta_generic(int g, int n, Fn&& weight) {
  TautClass<C> out(g, n);
  for (int h = 0; h <= g; ++h) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> P;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) P.push_back(i + 1);
      BoundaryDivisor D = BoundaryDivisor::separating(h, P);
      int leg = 0;
      if (divisor_convention(g, n, D, &leg) == 1) continue;
      C w = weight(P);
      if (is_zero_coeff(w)) continue;
      QClass d = divisor_class(g, n, D);
      for (const auto& [k, t] : d.terms()) out.add(t.stratum, w * t.coeff);
    }
  }
  return out;
}

template <class C>
TautClass<C> power_of(const TautClass<C>& base, int k) {
  TautClass<C> acc = TautClass<C>::fundamental(base.genus(), base.markings());
  for (int i = 0; i < k; ++i) acc = multiply_divisor(acc, base);
  return acc;
}

QClass multiply_monomial(QClass c, const Monomial& m) {
  for (std::size_t i = 0; i < m.psi.size(); ++i)
    for (int e = 0; e < m.psi[i]; ++e) c = mul_psi(c, static_cast<int>(i) + 1);
  for (std::size_t a = 0; a < m.kappa.size(); ++a)
    for (int e = 0; e < m.kappa[a]; ++e) c = mul_kappa(c, static_cast<int>(a) + 1);
  return c;
}

// Forgets the given legs, largest first.
QClass forget_legs(QClass c, std::vector<int> legs) {
  std::sort(legs.rbegin(), legs.rend());
  for (int l : legs) c = forget_leg(c, l);
  return c;
}

struct Pair {
  QClass full;
  QClass boundary;
  friend Pair operator*(const Pair& p, const Rational& c) { return {p.full * c, p.boundary * c}; }
  friend Pair operator+(const Pair& a, const Pair& b) { return {a.full + b.full, a.boundary + b.boundary}; }
};

int required_degree(int g, int n) {
  if (n == 0) return g - 1;
  return g;
}

}  // namespace

// --- theta ----------------------------------------------------------------

std::vector<MultiPoly> eliminated_ramp(int n) {
  std::vector<MultiPoly> A;
  MultiPoly last(Rational(0));
  for (int i = 1; i < n; ++i) {
    A.push_back(MultiPoly::variable("a" + std::to_string(i)));
    last -= A.back();
  }
  A.push_back(last);
  return A;
}

PClass theta_divisor(int g, const std::vector<MultiPoly>& A) {
  const int n = static_cast<int>(A.size());
  return theta_generic<MultiPoly>(g, n, [&](const std::vector<int>& P) {
    MultiPoly s(Rational(0));
    for (int i : P) s += A[i - 1];
    return s * s * make_rational(-1, 4);
  });
}

PClass theta_divisor(int g, int n) {
  std::vector<MultiPoly> A;
  for (int i = 1; i <= n; ++i) A.push_back(MultiPoly::variable("a" + std::to_string(i)));
  return theta_divisor(g, A);
}

QClass theta_divisor_at(int g, const RampVector& A) {
  const int n = static_cast<int>(A.size());
  validate_ramp(n, A);
  return theta_generic<Rational>(g, n, [&](const std::vector<int>& P) {
    long s = 0;
    for (int i : P) s += A[i - 1];
    return make_rational(-s * s, 4);
  });
}

PClass theta_power_relation(int g, const std::vector<MultiPoly>& A) { return power_of(theta_divisor(g, A), g + 1); }

PClass theta_power_relation(int g, int n) { return power_of(theta_divisor(g, n), g + 1); }

QClass exp_theta(int g, const RampVector& A, int max_degree) {
  const int n = static_cast<int>(A.size());
  QClass theta = theta_divisor_at(g, A);
  QClass term = QClass::fundamental(g, n);
  QClass acc = term;
  for (int k = 1; k <= max_degree; ++k) {
    term = multiply_divisor(term, theta) * make_rational(1, k);
    acc += term;
  }
  return acc;
}

// --- DR relations ---------------------------------------------------------

struct DRRelation::Impl {
  int g;
  int N;
  std::vector<int> multiplier;
  std::vector<int> forget;
  int target_n;
  std::unique_ptr<PixtonClass> pix;
  std::unique_ptr<FiniteDifferenceExtractor<Pair>> extractor;

  // Psi_C times the stratum, pushed forward, per canonical key.
  mutable std::map<std::string, QClass> pushed;

  const QClass& push_stratum(const Stratum& s) const {
    auto it = pushed.find(s.key);
    if (it != pushed.end()) return it->second;
    QClass c(g, N);
    c.add(s, Rational(1));
    Monomial mult;
    mult.psi = multiplier;
    return pushed.emplace(s.key, forget_legs(multiply_monomial(c, mult), forget)).first->second;
  }

  Pair compute(const std::vector<long>& a) const {
    RampVector A(a.begin(), a.end());
    long last = 0;
    for (long x : a) last -= x;
    A.push_back(last);
    Pair res{QClass(g, target_n), QClass(g, target_n)};
    if (!pix) return res;
    QClass omega = pix->constant_term(A);
    const Rational scale = factorial(g + 1);
    for (const auto& [k, t] : omega.terms()) {
      const QClass& img = push_stratum(t.stratum);
      if (img.is_zero()) continue;
      QClass part = img * (t.coeff * scale);
      res.full += part;
      if (t.stratum.graph.num_edges() > 0) res.boundary += part;
    }
    return res;
  }
};

DRRelation::DRRelation(int g, int N, std::vector<int> multiplier, std::vector<int> forget)
    : impl_(std::make_unique<Impl>()) {
  if (g < 0 || 2 * g - 2 + N <= 0) throw ValidationError("unstable ambient space");
  if (static_cast<int>(multiplier.size()) != N) throw ValidationError("multiplier must have one entry per leg");
  for (int e : multiplier)
    if (e < 0) throw ValidationError("negative multiplier exponent");
  std::set<int> f(forget.begin(), forget.end());
  if (f.size() != forget.size()) throw ValidationError("repeated leg in forget set");
  for (int l : f)
    if (l < 1 || l > N) throw ValidationError("forgotten leg out of range");
  const int target = N - static_cast<int>(f.size());
  if (2 * g - 2 + target <= 0) throw ValidationError("target space is unstable");
  impl_->g = g;
  impl_->N = N;
  impl_->multiplier = multiplier;
  impl_->forget.assign(f.begin(), f.end());
  impl_->target_n = target;
  const int extra = std::accumulate(multiplier.begin(), multiplier.end(), 0);
  if (g + 1 + extra <= dimension(g, N)) {
    const int dim = dimension(g, N);
    OmegaOptions opt;
    opt.min_degree = g + 1;
    opt.max_degree = g + 1;
    opt.keep = [multiplier, extra, dim](const Stratum& s) {
      if (s.codimension() + extra > dim) return false;
      std::vector<int> load(s.graph.num_vertices(), 0);
      for (int v = 0; v < s.graph.num_vertices(); ++v) load[v] = s.vertex_degree(v);
      for (int h = 0; h < s.graph.num_half_edges(); ++h)
        if (s.graph.is_leg(h)) load[s.graph.vertex_of[h]] += multiplier[s.graph.label[h] - 1];
      for (int v = 0; v < s.graph.num_vertices(); ++v) {
        int nv = static_cast<int>(s.graph.half_edges_at(v).size());
        if (load[v] > dimension(s.graph.genus[v], nv)) return false;
      }
      return true;
    };
    impl_->pix = std::make_unique<PixtonClass>(g, N, opt);
  }
  Impl* self = impl_.get();
  impl_->extractor = std::make_unique<FiniteDifferenceExtractor<Pair>>(
      [self](const std::vector<long>& a) { return self->compute(a); }, N - 1, 2 * g + 2);
}

DRRelation::~DRRelation() = default;
DRRelation::DRRelation(DRRelation&&) noexcept = default;

int DRRelation::genus() const { return impl_->g; }
int DRRelation::source_markings() const { return impl_->N; }
int DRRelation::target_markings() const { return impl_->target_n; }

std::string DRRelation::describe() const {
  return "DR(g=" + std::to_string(impl_->g) + ",N=" + std::to_string(impl_->N) + ",psi=[" +
         join(impl_->multiplier) + "],forget=[" + join(impl_->forget) + "])";
}

QClass DRRelation::evaluate(const std::vector<long>& a) const {
  if (static_cast<int>(a.size()) != impl_->N - 1) throw ValidationError("expected N-1 ramification entries");
  return impl_->compute(a).full;
}

QClass DRRelation::coefficient(const std::vector<int>& monomial) const {
  int d = std::accumulate(monomial.begin(), monomial.end(), 0);
  if (d != 2 * impl_->g + 2) throw ValidationError("a-monomial must have degree 2g+2");
  return impl_->extractor->coefficient(monomial).full;
}

QClass DRRelation::boundary_source_coefficient(const std::vector<int>& monomial) const {
  int d = std::accumulate(monomial.begin(), monomial.end(), 0);
  if (d != 2 * impl_->g + 2) throw ValidationError("a-monomial must have degree 2g+2");
  return impl_->extractor->coefficient(monomial).boundary;
}

std::size_t DRRelation::evaluations() const { return impl_->extractor->evaluations(); }

QClass dr_relation_coefficient(int g, const std::vector<int>& monomial, const std::vector<int>& multiplier,
                               const std::vector<int>& forget) {
  DRRelation rel(g, static_cast<int>(multiplier.size()), multiplier, forget);
  return rel.coefficient(monomial);
}

// --- helpers --------------------------------------------------------------

std::string monomial_key(int g, int n, const Monomial& m) {
  return std::to_string(g) + "," + std::to_string(n) + ":" + monomial_to_string(m);
}

Monomial monomial_of(const Stratum& s) {
  if (s.graph.num_edges() != 0) throw ValidationError("stratum is not edgeless");
  Monomial m;
  m.psi.assign(s.graph.num_legs(), 0);
  for (int h = 0; h < s.graph.num_half_edges(); ++h) m.psi[s.graph.label[h] - 1] = s.psi[h];
  m.kappa = s.kappa[0];
  while (!m.kappa.empty() && m.kappa.back() == 0) m.kappa.pop_back();
  return m;
}

QClass boundary_only(const QClass& c) {
  for (const auto& [k, t] : c.terms())
    if (t.stratum.graph.num_edges() == 0)
      throw DefectError("boundary expression contains an edgeless term: " + monomial_to_string(monomial_of(t.stratum)));
  return c;
}

int genus_zero_vertices(const Stratum& s) {
  return static_cast<int>(std::count(s.graph.genus.begin(), s.graph.genus.end(), 0));
}

namespace {

int first_violating_vertex(const Stratum& s) {
  for (int v = 0; v < s.graph.num_vertices(); ++v) {
    int gv = s.graph.genus[v];
    int d = s.vertex_degree(v);
    if (gv == 0 ? d >= 1 : d >= gv) return v;
  }
  return -1;
}

}  // namespace

bool has_property_star(const Stratum& s) { return first_violating_vertex(s) < 0; }

// --- boundary engine --------------------------------------------------------

namespace {

using KVec = std::vector<int>;

struct Family {
  int g = 0;
  int n = 0;
  int N = 0;
  std::vector<int> multiplier;
  std::unique_ptr<DRRelation> dr;
  std::map<KVec, BoundaryExpression> solved;
};

void merge_provenance(std::vector<ProvenanceStep>& into, const std::vector<ProvenanceStep>& from) {
  for (const auto& p : from)
    if (std::find(into.begin(), into.end(), p) == into.end()) into.push_back(p);
}

// The monomial in a tied to K: a_i^{2k_i} off I_K, a_i for the first 2e
// members of I_K.
std::vector<int> a_monomial_for(const KVec& K, int e) {
  std::vector<int> m(K.size(), 0);
  int used = 0;
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (K[i] > 0) {
      m[i] = 2 * K[i];
    } else if (used < 2 * e) {
      m[i] = 1;
      ++used;
    }
  }
  if (used != 2 * e) throw DefectError("not enough free legs for the a-monomial");
  return m;
}

}  // namespace

struct BoundaryEngine::Impl {
  RelationDatabase* db = nullptr;
  std::map<std::string, BoundaryExpression> cache;
  std::map<std::string, std::unique_ptr<Family>> families;
  // Expansion of (1/2 sum a_i^2 psi_i)^{g+1} with a_N eliminated, keyed by psi
  // exponents on legs 1..N.
  std::map<int, std::map<KVec, MultiPoly>> open_parts;

  const std::map<KVec, MultiPoly>& open_part(int g) {
    auto it = open_parts.find(g);
    if (it != open_parts.end()) return it->second;
    const int N = 2 * g + 3;
    auto A = eliminated_ramp(N);
    std::map<KVec, MultiPoly> out;
    KVec e(N, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == N - 1) {
        e[pos] = left;
        Rational coef = factorial(g + 1);
        MultiPoly p(Rational(1));
        for (int i = 0; i < N; ++i) {
          coef /= factorial(e[i]);
          p *= (A[i] * A[i] * make_rational(1, 2)).pow(e[i]);
        }
        p *= coef;
        if (!p.is_zero()) out[e] = p;
        return;
      }
      for (int v = 0; v <= left; ++v) {
        e[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, g + 1);
    return open_parts.emplace(g, std::move(out)).first->second;
  }

  Family& family(int g, int n, const std::vector<int>& multiplier) {
    std::string key = std::to_string(g) + "/" + std::to_string(n) + "/" + join(multiplier);
    auto it = families.find(key);
    if (it != families.end()) return *it->second;
    auto F = std::make_unique<Family>();
    F->g = g;
    F->n = n;
    F->N = 2 * g + 3;
    F->multiplier = multiplier;
    std::vector<int> forget;
    for (int i = n + 1; i <= F->N; ++i) forget.push_back(i);
    F->dr = std::make_unique<DRRelation>(g, F->N, multiplier, forget);
    return *families.emplace(key, std::move(F)).first->second;
  }

  // Pi_*(psi^K psi_N^e Psi_C) on M_{g,n}.
  QClass unknown(const Family& F, const KVec& K, int e) {
    std::vector<int> psi(F.N, 0);
    for (int i = 0; i < F.N - 1; ++i) psi[i] = K[i] + F.multiplier[i];
    psi[F.N - 1] = e + F.multiplier[F.N - 1];
    Monomial m;
    m.psi = psi;
    std::vector<int> forget;
    for (int i = F.n + 1; i <= F.N; ++i) forget.push_back(i);
    return forget_legs(monomial_class(F.g, F.N, m), forget);
  }

  // Coefficient of the a-monomial in each open unknown, keyed by K.
  std::map<KVec, Rational> open_coefficients(const Family& F, const std::vector<int>& am) {
    std::map<std::string, int> mono;
    for (std::size_t i = 0; i < am.size(); ++i)
      if (am[i]) mono["a" + std::to_string(i + 1)] = am[i];
    std::map<KVec, Rational> out;
    for (const auto& [e, p] : open_part(F.g)) {
      Rational c = p.coefficient(mono);
      if (sgn(c) == 0) continue;
      KVec K(e.begin(), e.end() - 1);
      out[K] = c;
    }
    return out;
  }

  QClass relation_rest(Family& F, const KVec& K, std::map<KVec, Rational>* coefs, std::vector<int>* am_out) {
    const int e = F.g + 1 - std::accumulate(K.begin(), K.end(), 0);
    auto am = a_monomial_for(K, e);
    QClass R = F.dr->coefficient(am);
    auto c = open_coefficients(F, am);
    QClass rest = R;
    for (const auto& [Kp, q] : c) {
      const int ep = F.g + 1 - std::accumulate(Kp.begin(), Kp.end(), 0);
      rest -= unknown(F, Kp, ep) * q;
    }
    if (coefs) *coefs = c;
    if (am_out) *am_out = am;
    return rest;
  }

  BoundaryExpression solve(Family& F, const KVec& K) {
    auto it = F.solved.find(K);
    if (it != F.solved.end()) return it->second;
    std::map<KVec, Rational> coefs;
    std::vector<int> am;
    QClass rest = relation_rest(F, K, &coefs, &am);
    try {
      boundary_only(rest);
    } catch (const DefectError& err) {
      throw DefectError("relation " + F.dr->describe() + " at " + a_monomial_string(am) +
                        " has an open remainder: " + err.what());
    }
    auto self = coefs.find(K);
    if (self == coefs.end()) throw DefectError("unknown missing from its own relation");
    for (const auto& [Kp, q] : coefs)
      for (std::size_t i = 0; i < K.size(); ++i)
        if (K[i] == 0 ? Kp[i] != 0 : Kp[i] > K[i]) throw DefectError("relation involves an unknown not below K");
    BoundaryExpression out{rest, {}};
    for (const auto& [Kp, q] : coefs) {
      if (Kp == K) continue;
      BoundaryExpression sub = solve(F, Kp);
      out.value += sub.value * q;
      merge_provenance(out.provenance, sub.provenance);
    }
    out.value *= -1 / self->second;
    out.provenance.push_back({F.dr->describe(), a_monomial_string(am), "solve K=[" + join(K) + "]"});
    F.solved.emplace(K, out);
    return out;
  }

  // Express every edgeless term of c other than skip, add the results scaled
  // by -1, into out.
  void subtract_open(const QClass& c, int g, int n, const Monomial* skip, BoundaryExpression& out) {
    for (const auto& [k, t] : c.terms()) {
      if (t.stratum.graph.num_edges() != 0) continue;
      Monomial o = monomial_of(t.stratum);
      if (skip && o == *skip) continue;
      BoundaryExpression sub = express(g, n, o);
      out.value -= sub.value * t.coeff;
      merge_provenance(out.provenance, sub.provenance);
    }
  }

  BoundaryExpression express(int g, int n, Monomial m) {
    if (2 * g - 2 + n <= 0) throw ValidationError("unstable ambient space");
    if (static_cast<int>(m.psi.size()) != n) throw ValidationError("monomial has the wrong number of psi entries");
    while (!m.kappa.empty() && m.kappa.back() == 0) m.kappa.pop_back();
    const int k = m.degree();
    if (k > dimension(g, n)) return {QClass(g, n), {}};
    if (k == 0) throw ValidationError("the fundamental class has no boundary expression");
    if (k < required_degree(g, n))
      throw ValidationError("degree " + std::to_string(k) + " is below the range for M_{" + std::to_string(g) + "," +
                            std::to_string(n) + "}");
    const std::string key = monomial_key(g, n, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (db) {
      if (auto rec = db->find(key)) {
        cache.emplace(key, rec->expression);
        return rec->expression;
      }
    }
    BoundaryExpression out = derive(g, n, m);
    boundary_only(out.value);
    cache.emplace(key, out);
    if (db) db->put(RelationRecord{g, n, monomial_to_string(m), out});
    return out;
  }

  BoundaryExpression derive(int g, int n, const Monomial& m) {
    int D = 0;
    for (int d : m.psi) D += d > 0;
    const bool has_kappa = !m.kappa.empty();
    if (g == 0 || (n >= 2 && D < n)) return pullback_route(g, n, m);
    if (n == 0) return pushforward_route(g, m);
    if (D == n && n <= g) return family_route(g, n, m);
    if (n == 1 && D == 0 && has_kappa) return family_route(g, n, m);
    if (D == n && n > g) return product_route(g, n, m);
    throw DefectError("no derivation route for " + monomial_key(g, n, m));
  }

  // Pulls back an expression from one fewer marking along a leg with no psi.
  BoundaryExpression pullback_route(int g, int n, const Monomial& m) {
    int j = -1;
    for (int i = n; i >= 1; --i)
      if (m.psi[i - 1] == 0) {
        j = i;
        break;
      }
    if (j < 0) throw DefectError("pullback route needs a leg without psi");
    std::vector<int> perm(n), inv(n);
    for (int i = 1; i <= n; ++i) {
      perm[i - 1] = i < j ? i : (i == j ? n : i - 1);
      inv[perm[i - 1] - 1] = i;
    }
    Monomial moved = m;
    for (int i = 1; i <= n; ++i) moved.psi[perm[i - 1] - 1] = m.psi[i - 1];
    Monomial lower = moved;
    lower.psi.pop_back();
    QClass target = monomial_class(g, n, moved);
    QClass pulled(g, n);
    pulled.add_raw(pullback_raw(monomial_stratum(g, n - 1, lower.psi, lower.kappa)), Rational(1));
    QClass rest = pulled - target;
    if (sgn(rest.coefficient(monomial_stratum(g, n, moved.psi, moved.kappa))) != 0)
      throw DefectError("pullback does not reproduce " + monomial_key(g, n, moved));
    BoundaryExpression out{QClass(g, n), {}};
    if (lower.degree() <= dimension(g, n - 1)) {
      BoundaryExpression below = express(g, n - 1, lower);
      out.value = forgetful_pullback(below.value);
      out.provenance = below.provenance;
    }
    out.value -= boundary_part(rest);
    subtract_open(rest, g, n, nullptr, out);
    out.value = relabel_legs(out.value, inv);
    out.provenance.push_back({"pullback", "", "forget leg " + std::to_string(j) + " of " + monomial_key(g, n, m)});
    return out;
  }

  // n = 0: push kappa_B psi_1 forward from M_{g,1}.
  BoundaryExpression pushforward_route(int g, const Monomial& m) {
    Monomial up = m;
    up.psi = {1};
    BoundaryExpression above = express(g, 1, up);
    BoundaryExpression out{boundary_only(forgetful_pushforward(above.value)), above.provenance};
    QClass image = forgetful_pushforward(monomial_class(g, 1, up));
    Rational c = image.coefficient(monomial_stratum(g, 0, {}, m.kappa));
    if (sgn(c) == 0) throw DefectError("vanishing leading coefficient in pushforward");
    subtract_open(image, g, 0, &m, out);
    out.value *= 1 / c;
    out.provenance.push_back({"pushforward", "", "forget leg 1 over " + monomial_key(g, 0, m)});
    return out;
  }

  // psi_1..psi_n with n > g: pull back psi_1..psi_g, multiply the rest.
  BoundaryExpression product_route(int g, int n, const Monomial& m) {
    Monomial base;
    base.psi.assign(g, 1);
    BoundaryExpression low = express(g, g, base);
    QClass pb = low.value;
    QClass formal = monomial_class(g, g, base);
    for (int i = g; i < n; ++i) {
      pb = forgetful_pullback(pb);
      formal = forgetful_pullback(formal);
    }
    Monomial wide = base;
    wide.psi.resize(n, 0);
    if (formal.coefficient(monomial_stratum(g, n, wide.psi)) != 1 || formal.size() - boundary_part(formal).size() != 1)
      throw DefectError("pullback of psi_1..psi_g has extra open terms");
    BoundaryExpression out{pb - boundary_part(formal), low.provenance};
    Monomial extra = m;
    for (int i = 0; i < g; ++i) extra.psi[i] -= 1;
    out.value = multiply_monomial(out.value, extra);
    out.provenance.push_back({"product", "", "psi1..psi" + std::to_string(g) + " times " + monomial_to_string(extra)});
    return out;
  }

  BoundaryExpression family_route(int g, int n, const Monomial& m) {
    const int N = 2 * g + 3;
    std::vector<int> b;
    for (std::size_t a = 0; a < m.kappa.size(); ++a)
      for (int e = 0; e < m.kappa[a]; ++e) b.push_back(static_cast<int>(a) + 1);
    if (n + static_cast<int>(b.size()) > N) {
      Monomial shorter = m;
      const int last = b.back();
      shorter.kappa[last - 1] -= 1;
      BoundaryExpression sub = express(g, n, shorter);
      sub.value = mul_kappa(sub.value, last);
      sub.provenance.push_back({"product", "", "times kappa" + std::to_string(last)});
      return sub;
    }
    std::vector<int> X(N, 1);
    for (int i = 0; i < n; ++i) X[i] = m.psi[i];
    for (std::size_t t = 0; t < b.size(); ++t) X[n + t] = b[t] + 1;

    // Split X = psi^K psi_N^e Psi_C.
    std::vector<int> kk(N, 0), cap(N, 0);
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
      kk[i] = X[i] > 0 ? 1 : 0;
      zeros += X[i] == 0;
      cap[i] = X[i];
    }
    for (int i = n; i < N - 1; ++i) cap[i] = X[i] - 1;
    kk[N - 1] = std::min(1, zeros);
    cap[N - 1] = X[N - 1];
    int left = g + 1 - std::accumulate(kk.begin(), kk.end(), 0);
    std::vector<int> order;
    order.push_back(N - 1);
    for (int i = n; i < N - 1; ++i) order.push_back(i);
    for (int i = 0; i < n; ++i) order.push_back(i);
    for (int i : order) {
      int add = std::max(0, std::min(cap[i] - kk[i], left));
      kk[i] += add;
      left -= add;
    }
    if (left != 0) throw DefectError("monomial too small to split for " + monomial_key(g, n, m));
    std::vector<int> mult(N);
    for (int i = 0; i < N; ++i) mult[i] = X[i] - kk[i];
    KVec K(kk.begin(), kk.end() - 1);
    const int e = kk[N - 1];
    int free_low = 0;
    for (int i = 0; i < n; ++i) free_low += K[i] == 0;
    if (std::min(1, free_low) > e) throw DefectError("split violates the free-leg condition");

    Family& F = family(g, n, mult);
    BoundaryExpression solved = solve(F, K);
    QClass image = unknown(F, K, e);
    Rational c = image.coefficient(monomial_stratum(g, n, m.psi, m.kappa));
    if (sgn(c) == 0) throw DefectError("vanishing leading coefficient for " + monomial_key(g, n, m));
    BoundaryExpression out = solved;
    subtract_open(image, g, n, &m, out);
    out.value *= 1 / c;
    out.provenance.push_back({F.dr->describe(), "", "push to " + monomial_key(g, n, m)});
    return out;
  }

  Monomial vertex_monomial(const Stratum& s, int v) {
    Monomial m;
    for (int h : s.graph.half_edges_at(v)) m.psi.push_back(s.psi[h]);
    m.kappa = s.kappa[v];
    while (!m.kappa.empty() && m.kappa.back() == 0) m.kappa.pop_back();
    return m;
  }

  QClass star_reduce(const QClass& c) {
    QClass done(c.genus(), c.markings());
    QClass current = c;
    while (!current.is_zero()) {
      QClass next(c.genus(), c.markings());
      for (const auto& [k, t] : current.terms()) {
        const int v = first_violating_vertex(t.stratum);
        if (v < 0) {
          done.add(t.stratum, t.coeff);
          continue;
        }
        const int gv = t.stratum.graph.genus[v];
        const int nv = static_cast<int>(t.stratum.graph.half_edges_at(v).size());
        BoundaryExpression b = express(gv, nv, vertex_monomial(t.stratum, v));
        next += substitute_vertex(t.stratum, v, b.value) * t.coeff;
      }
      current = next;
    }
    for (const auto& [k, t] : done.terms()) {
      const int g0 = genus_zero_vertices(t.stratum);
      if (g0 < t.stratum.codimension() - c.genus() + 1)
        throw DefectError("reduced stratum has too few genus zero vertices: " + describe_stratum(t.stratum));
    }
    return done;
  }
};

BoundaryEngine::BoundaryEngine(RelationDatabase* db) : impl_(std::make_unique<Impl>()) { impl_->db = db; }
BoundaryEngine::~BoundaryEngine() = default;

BoundaryExpression BoundaryEngine::express(int g, int n, const Monomial& m) { return impl_->express(g, n, m); }

BoundaryExpression BoundaryEngine::express_class(const QClass& c) {
  BoundaryExpression out{boundary_part(c), {}};
  for (const auto& [k, t] : c.terms()) {
    if (t.stratum.graph.num_edges() != 0) continue;
    BoundaryExpression sub = express(c.genus(), c.markings(), monomial_of(t.stratum));
    out.value += sub.value * t.coeff;
    merge_provenance(out.provenance, sub.provenance);
  }
  return out;
}

std::vector<RelationRecord> BoundaryEngine::psi_lemma(int g, std::vector<std::pair<std::string, QClass>>* relations) {
  if (g < 0) throw ValidationError("negative genus");
  const int N = 2 * g + 3;
  Family& F = impl_->family(g, N, std::vector<int>(N, 0));
  std::vector<RelationRecord> out;
  KVec K(N - 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == N - 1) {
      BoundaryExpression b = impl_->solve(F, K);
      const int e = g + 1 - std::accumulate(K.begin(), K.end(), 0);
      Monomial m;
      m.psi.assign(K.begin(), K.end());
      m.psi.push_back(e);
      out.push_back(RelationRecord{g, N, monomial_to_string(m), b});
      if (relations) {
        auto am = a_monomial_for(K, e);
        relations->push_back({a_monomial_string(am), F.dr->coefficient(am)});
      }
      return;
    }
    for (int v = 0; v <= left; ++v) {
      K[pos] = v;
      rec(pos + 1, left - v);
    }
    K[pos] = 0;
  };
  rec(0, g + 1);
  return out;
}

QClass BoundaryEngine::pushforward_relation(int g, int n, const std::vector<int>& multiplier,
                                            const std::vector<int>& a_monomial) {
  if (static_cast<int>(multiplier.size()) != 2 * g + 3) throw ValidationError("multiplier must have 2g+3 entries");
  Family& F = impl_->family(g, n, multiplier);
  QClass bnd = F.dr->boundary_source_coefficient(a_monomial);
  boundary_only(bnd);
  return F.dr->coefficient(a_monomial);
}

QClass BoundaryEngine::star_reduce(const QClass& c) { return impl_->star_reduce(c); }

std::size_t BoundaryEngine::cached_expressions() const { return impl_->cache.size(); }

namespace {
BoundaryEngine& shared_engine() {
  static BoundaryEngine engine;
  return engine;
}
}  // namespace

BoundaryExpression boundary_expression(int g, int n, const Monomial& m) { return shared_engine().express(g, n, m); }
QClass theorem_star_reduce(const QClass& c) { return shared_engine().star_reduce(c); }
std::vector<RelationRecord> psi_boundary_lemma(int g) { return shared_engine().psi_lemma(g); }

}  // namespace taut
