#include "taut/pixton.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace taut {

namespace {

long mod(long x, long r) {
  long m = x % r;
  return m < 0 ? m + r : m;
}

// Spanning tree data: half-edges at each vertex, BFS order, and the half-edge
// from each non-root vertex towards its parent.
struct TreeData {
  std::vector<std::vector<int>> at;
  std::vector<int> order;
  std::vector<int> up;       // -1 at the root
  std::vector<int> free_hs;  // one half per edge outside the tree
};

TreeData spanning_tree(const StableGraph& G) {
  TreeData t;
  const int nv = G.num_vertices();
  t.at.resize(nv);
  for (int h = 0; h < G.num_half_edges(); ++h) t.at[G.vertex_of[h]].push_back(h);
  t.up.assign(nv, -1);
  std::vector<char> seen(nv, 0), tree_edge(G.num_half_edges(), 0);
  t.order.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    int v = t.order[i];
    for (int h : t.at[v]) {
      if (G.is_leg(h)) continue;
      int u = G.vertex_of[G.partner[h]];
      if (seen[u]) continue;
      seen[u] = 1;
      t.up[u] = G.partner[h];
      tree_edge[h] = tree_edge[G.partner[h]] = 1;
      t.order.push_back(u);
    }
  }
  for (int h : G.edge_list())
    if (!tree_edge[h]) t.free_hs.push_back(h);
  return t;
}

void weightings(const StableGraph& G, const TreeData& t, const RampVector& A, long r,
                const std::function<void(const std::vector<long>&)>& fn) {
  std::vector<long> w(G.num_half_edges(), 0);
  for (int h = 0; h < G.num_half_edges(); ++h)
    if (G.is_leg(h)) w[h] = mod(A[G.label[h] - 1], r);
  const int m = static_cast<int>(t.free_hs.size());
  std::vector<long> free(m, 0);
  while (true) {
    for (int i = 0; i < m; ++i) {
      int h = t.free_hs[i];
      w[h] = free[i];
      w[G.partner[h]] = mod(-free[i], r);
    }
    for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
      int v = *it;
      if (t.up[v] < 0) continue;
      long s = 0;
      for (int h : t.at[v])
        if (h != t.up[v]) s += w[h];
      w[t.up[v]] = mod(-s, r);
      w[G.partner[t.up[v]]] = mod(s, r);
    }
    long root = 0;
    for (int h : t.at[t.order.front()]) root += w[h];
    if (mod(root, r) != 0) throw DefectError("weighting system is inconsistent at the root");
    fn(w);
    int i = 0;
    while (i < m && ++free[i] == r) free[i++] = 0;
    if (i == m) break;
  }
}

}  // namespace

void validate_ramp(int n, const RampVector& A) {
  if (static_cast<int>(A.size()) != n) throw ValidationError("ramification vector has the wrong length");
  long s = 0;
  for (long a : A) s += a;
  if (s != 0) throw ValidationError("ramification vector must sum to zero");
}

void for_each_weighting(const StableGraph& g, const RampVector& A, long r,
                        const std::function<void(const std::vector<long>&)>& fn) {
  if (r < 1) throw ValidationError("r must be positive");
  validate_ramp(g.num_legs(), A);
  weightings(g, spanning_tree(g), A, r, fn);
}

std::vector<std::vector<long>> enumerate_weightings(const StableGraph& g, const RampVector& A, long r) {
  std::vector<std::vector<long>> out;
  for_each_weighting(g, A, r, [&](const std::vector<long>& w) { out.push_back(w); });
  return out;
}

bool is_weighting(const StableGraph& g, const RampVector& A, long r, const std::vector<long>& w) {
  if (static_cast<int>(w.size()) != g.num_half_edges()) return false;
  std::vector<long> sum(g.num_vertices(), 0);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (w[h] < 0 || w[h] >= r) return false;
    if (g.is_leg(h) && mod(w[h] - A[g.label[h] - 1], r) != 0) return false;
    if (!g.is_leg(h) && mod(w[h] + w[g.partner[h]], r) != 0) return false;
    sum[g.vertex_of[h]] += w[h];
  }
  for (long s : sum)
    if (mod(s, r) != 0) return false;
  return true;
}

const std::vector<StableGraph>& cached_stable_graphs(int g, int n, int max_edges) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<StableGraph>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(g, n, max_edges);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_stable_graphs(g, n, max_edges)).first;
  return it->second;
}

// --- Omega --------------------------------------------------------------

namespace {

struct Decoration {
  Stratum stratum;        // normalized
  std::vector<int> legs;  // psi exponent per leg label
  int kvec = 0;           // index into GraphData::kvecs
  Rational edge_coeff;    // prod_e (-1)^k C(k, p_h) / (k + 1)!
};

struct GraphData {
  StableGraph graph;
  TreeData tree;
  long aut = 1;
  int h1 = 0;
  std::vector<int> edges;
  std::vector<std::vector<int>> kvecs;  // per edge k_e = p_h + p_h'
  std::vector<Decoration> decorations;
};

void distribute(int slots, int total, std::vector<int>& cur, int pos, const std::function<void()>& fn) {
  if (pos == slots - 1) {
    cur[pos] = total;
    fn();
    return;
  }
  for (int e = 0; e <= total; ++e) {
    cur[pos] = e;
    distribute(slots, total - e, cur, pos + 1, fn);
  }
  cur[pos] = 0;
}

Integer to_integer(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer out = hi << 64;
  out += static_cast<unsigned long>(u & ~0UL);
  return neg ? Integer(-out) : out;
}

Rational leg_factor(const RampVector& A, const std::vector<int>& p) {
  Rational f = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    Rational half_sq(A[i] * A[i], 2);
    half_sq.canonicalize();
    f *= power(half_sq, p[i]) / factorial(p[i]);
  }
  return f;
}

}  // namespace

struct PixtonClass::Impl {
  int g = 0;
  int n = 0;
  OmegaOptions options;
  std::vector<GraphData> graphs;

  // sums[kvec] = sum over weightings of prod_e (w_h w_h')^{k_e + 1}.
  std::vector<Integer> weighting_sums(const GraphData& gd, const RampVector& A, long r) const {
    std::vector<Integer> sums(gd.kvecs.size(), 0);
    const int E = static_cast<int>(gd.edges.size());
    if (E == 0) {
      sums.assign(gd.kvecs.size(), 1);
      return sums;
    }
    int top = 0;
    for (const auto& kv : gd.kvecs) {
      int t = 0;
      for (int x : kv) t += x + 1;
      top = std::max(top, t);
    }
    double bits = std::log2(static_cast<double>(r)) * (2.0 * top + gd.h1) + 2;
    if (bits < 120) {
      std::vector<__int128> acc(gd.kvecs.size(), 0);
      std::vector<__int128> prod(E);
      weightings(gd.graph, gd.tree, A, r, [&](const std::vector<long>& w) {
        for (int e = 0; e < E; ++e) {
          int h = gd.edges[e];
          long p = w[h] * w[gd.graph.partner[h]];
          if (p == 0) return;
          prod[e] = p;
        }
        for (std::size_t k = 0; k < gd.kvecs.size(); ++k) {
          __int128 term = 1;
          for (int e = 0; e < E; ++e)
            for (int i = 0; i <= gd.kvecs[k][e]; ++i) term *= prod[e];
          acc[k] += term;
        }
      });
      for (std::size_t k = 0; k < acc.size(); ++k) sums[k] = to_integer(acc[k]);
      return sums;
    }
    std::vector<Integer> prod(E);
    Integer term;
    weightings(gd.graph, gd.tree, A, r, [&](const std::vector<long>& w) {
      for (int e = 0; e < E; ++e) {
        int h = gd.edges[e];
        long p = w[h] * w[gd.graph.partner[h]];
        if (p == 0) return;
        prod[e] = p;
      }
      for (std::size_t k = 0; k < gd.kvecs.size(); ++k) {
        term = 1;
        for (int e = 0; e < E; ++e) {
          Integer f;
          mpz_pow_ui(f.get_mpz_t(), prod[e].get_mpz_t(), gd.kvecs[k][e] + 1);
          term *= f;
        }
        sums[k] += term;
      }
    });
    return sums;
  }

  // sums[kvec] / (2^{sum(k_e + 1)} r^{h1}) at one r.
  std::vector<Rational> normalized_sums(const GraphData& gd, const RampVector& A, long r) const {
    std::vector<Integer> s = weighting_sums(gd, A, r);
    std::vector<Rational> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      int halves = 0;
      for (int x : gd.kvecs[k]) halves += x + 1;
      Rational den = power(Rational(2), halves) * power(Rational(r), gd.h1);
      out[k] = Rational(s[k]) / den;
    }
    return out;
  }

  template <class C, class F>
  TautClass<C> assemble(const RampVector& A, F&& per_graph) const {
    TautClass<C> out(g, n);
    for (const GraphData& gd : graphs) {
      if (gd.decorations.empty()) continue;
      std::vector<C> kv = per_graph(gd);
      for (const Decoration& d : gd.decorations) {
        Rational c = leg_factor(A, d.legs) * d.edge_coeff / Rational(gd.aut);
        if (is_zero_coeff(c)) continue;
        out.add(d.stratum, kv[d.kvec] * C(c));
      }
    }
    return out;
  }

  // On a tree w(h) = a_P mod r and w(h') = -a_P mod r, so w(h)w(h') has
  // constant term -a_P^2 in r.
  std::vector<Rational> tree_constant_terms(const GraphData& gd, const RampVector& A) const {
    long spread = 0;
    for (long a : A) spread += a < 0 ? -a : a;
    const long r = 2 * spread + 1;
    std::vector<long> w;
    weightings(gd.graph, gd.tree, A, r, [&](const std::vector<long>& x) { w = x; });
    std::vector<Rational> sq;
    for (int h : gd.edges) {
      long a = w[h] > spread ? w[h] - r : w[h];
      sq.push_back(make_rational(-a * a, 2));
    }
    std::vector<Rational> out(gd.kvecs.size());
    for (std::size_t k = 0; k < gd.kvecs.size(); ++k) {
      Rational p = 1;
      for (std::size_t e = 0; e < sq.size(); ++e) p *= power(sq[e], gd.kvecs[k][e] + 1);
      out[k] = p;
    }
    return out;
  }

  int bound() const { return 2 * options.max_degree; }
};

PixtonClass::PixtonClass(int g, int n, OmegaOptions options) : impl_(std::make_unique<Impl>()) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw ValidationError("unstable (g, n)");
  if (options.min_degree < 0 || options.max_degree < options.min_degree)
    throw ValidationError("invalid degree range");
  Impl& im = *impl_;
  im.g = g;
  im.n = n;
  im.options = std::move(options);
  const int top = std::min(im.options.max_degree, dimension(g, n));
  for (const StableGraph& G : cached_stable_graphs(g, n, top)) {
    GraphData gd;
    gd.graph = G;
    gd.tree = spanning_tree(G);
    gd.aut = automorphism_count(G);
    gd.h1 = G.h1();
    gd.edges = G.edge_list();
    const int E = static_cast<int>(gd.edges.size());
    const int H = G.num_half_edges();
    std::map<std::vector<int>, int> kindex;
    for (int deg = std::max(0, im.options.min_degree - E); deg + E <= top; ++deg) {
      std::vector<int> psi(H, 0);
      distribute(H, deg, psi, 0, [&] {
        Stratum s = Stratum::bare(G);
        s.psi = psi;
        if (im.options.keep && !im.options.keep(s)) return;
        std::vector<int> kv(E);
        Rational ec = 1;
        for (int e = 0; e < E; ++e) {
          int h = gd.edges[e], hp = G.partner[h];
          int k = psi[h] + psi[hp];
          kv[e] = k;
          ec *= Rational(k % 2 ? -1 : 1) * binomial(k, psi[h]) / factorial(k + 1);
        }
        Decoration d;
        d.legs.assign(n, 0);
        for (int h = 0; h < H; ++h)
          if (G.is_leg(h)) d.legs[G.label[h] - 1] = psi[h];
        d.stratum = std::move(s);
        if (!normalize_stratum(d.stratum)) return;
        auto [it, fresh] = kindex.emplace(kv, static_cast<int>(gd.kvecs.size()));
        if (fresh) gd.kvecs.push_back(kv);
        d.kvec = it->second;
        d.edge_coeff = ec;
        gd.decorations.push_back(std::move(d));
      });
    }
    if (!gd.decorations.empty()) im.graphs.push_back(std::move(gd));
  }
}

PixtonClass::~PixtonClass() = default;
PixtonClass::PixtonClass(PixtonClass&&) noexcept = default;
PixtonClass& PixtonClass::operator=(PixtonClass&&) noexcept = default;

int PixtonClass::genus() const { return impl_->g; }
int PixtonClass::markings() const { return impl_->n; }
int PixtonClass::degree_bound() const { return impl_->bound(); }
std::size_t PixtonClass::graph_count() const { return impl_->graphs.size(); }

QClass PixtonClass::at_r(const RampVector& A, long r) const {
  validate_ramp(impl_->n, A);
  if (r < 1) throw ValidationError("r must be positive");
  return impl_->assemble<Rational>(A, [&](const GraphData& gd) { return impl_->normalized_sums(gd, A, r); });
}

PClass PixtonClass::interpolate(const RampVector& A, const std::vector<long>& samples) const {
  validate_ramp(impl_->n, A);
  if (samples.empty()) throw ValidationError("no r samples");
  for (long r : samples)
    if (r < 1) throw ValidationError("r samples must be positive");
  const int bound = static_cast<int>(samples.size()) - 1;
  return impl_->assemble<MultiPoly>(A, [&](const GraphData& gd) {
    std::vector<std::vector<std::pair<long, Rational>>> pts(gd.kvecs.size());
    for (long r : samples) {
      auto v = impl_->normalized_sums(gd, A, r);
      for (std::size_t k = 0; k < v.size(); ++k) pts[k].emplace_back(r, v[k]);
    }
    std::vector<MultiPoly> out;
    for (auto& p : pts) out.push_back(lagrange_interpolate(p, bound, "r"));
    return out;
  });
}

std::pair<std::vector<long>, std::vector<long>> PixtonClass::sample_sets(const RampVector& A, int attempt) const {
  long spread = 0;
  for (long a : A) spread += a < 0 ? -a : a;
  const int bound = impl_->bound() + 2 * attempt;
  long start = spread + 1 + attempt * (2L * bound + 2) * 3;
  std::vector<long> s1, s2;
  for (int i = 0; i <= bound; ++i) s1.push_back(start + i);
  for (int i = 0; i <= bound; ++i) s2.push_back(start + bound + 1 + i);
  return {s1, s2};
}

QClass PixtonClass::constant_term(const RampVector& A) const {
  validate_ramp(impl_->n, A);
  constexpr int attempts = 3;
  return impl_->assemble<Rational>(A, [&](const GraphData& gd) {
    std::vector<Rational> out(gd.kvecs.size());
    if (gd.h1 == 0 && gd.edges.empty()) {
      out.assign(gd.kvecs.size(), 1);
      return out;
    }
    if (gd.h1 == 0) return impl_->tree_constant_terms(gd, A);
    for (int attempt = 0;; ++attempt) {
      auto [s1, s2] = sample_sets(A, attempt);
      const int bound = static_cast<int>(s1.size()) - 1;
      std::vector<long> rs = s1;
      rs.insert(rs.end(), s2.begin(), s2.end());
      std::vector<std::vector<Rational>> vals(gd.kvecs.size());
      for (long r : rs) {
        auto v = impl_->normalized_sums(gd, A, r);
        for (std::size_t k = 0; k < v.size(); ++k) vals[k].push_back(v[k]);
      }
      // The union of both sets is a run of consecutive integers, so both
      // interpolants agree iff the (bound+1)-st differences vanish there.
      bool agree = true;
      for (std::size_t k = 0; k < vals.size() && agree; ++k) {
        std::vector<Rational> d = vals[k];
        for (int order = 0; order <= bound; ++order)
          for (std::size_t i = 0; i + 1 < d.size() - order; ++i) d[i] = d[i + 1] - d[i];
        for (std::size_t i = 0; i < d.size() - bound - 1; ++i)
          if (sgn(d[i]) != 0) agree = false;
        if (!agree) break;
        std::vector<std::pair<long, Rational>> pts;
        for (std::size_t i = 0; i < s1.size(); ++i) pts.emplace_back(s1[i], vals[k][i]);
        out[k] = interpolate_at_zero(pts);
      }
      if (agree) return out;
      if (attempt + 1 == attempts)
        throw InterpolationMismatch("r-interpolants from disjoint sample sets disagree");
    }
  });
}

QClass omega_r(int g, const RampVector& A, long r, int max_degree) {
  PixtonClass p(g, static_cast<int>(A.size()), OmegaOptions{0, max_degree, {}});
  return p.at_r(A, r);
}

QClass omega_constant_term(int g, const RampVector& A, int max_degree) {
  PixtonClass p(g, static_cast<int>(A.size()), OmegaOptions{0, max_degree, {}});
  return p.constant_term(A);
}

}  // namespace taut
