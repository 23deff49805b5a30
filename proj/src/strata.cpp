#include "taut/strata.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace taut {

Stratum Stratum::bare(const StableGraph& g) {
  Stratum s;
  s.graph = g;
  s.kappa.assign(g.num_vertices(), {});
  s.psi.assign(g.num_half_edges(), 0);
  return s;
}

int Stratum::vertex_degree(int v) const {
  int d = 0;
  for (std::size_t a = 0; a < kappa[v].size(); ++a) d += static_cast<int>(a + 1) * kappa[v][a];
  for (int h = 0; h < graph.num_half_edges(); ++h)
    if (graph.vertex_of[h] == v) d += psi[h];
  return d;
}

int Stratum::decoration_degree() const {
  int d = 0;
  for (const auto& k : kappa)
    for (std::size_t a = 0; a < k.size(); ++a) d += static_cast<int>(a + 1) * k[a];
  for (int p : psi) d += p;
  return d;
}

int Stratum::kappa_exponent(int v, int a) const {
  if (a < 1 || a > static_cast<int>(kappa[v].size())) return 0;
  return kappa[v][a - 1];
}

void Stratum::add_kappa(int v, int a, int e) {
  if (static_cast<int>(kappa[v].size()) < a) kappa[v].resize(a, 0);
  kappa[v][a - 1] += e;
  key.clear();
}

bool normalize_stratum(Stratum& s) {
  const StableGraph& G = s.graph;
  for (auto& k : s.kappa)
    while (!k.empty() && k.back() == 0) k.pop_back();
  int total = 0;
  for (int v = 0; v < G.num_vertices(); ++v) {
    int d = s.vertex_degree(v);
    if (d > dimension(G.genus[v], G.valence(v))) return false;
    total += d;
  }
  if (total + G.num_edges() > dimension(G.total_genus(), G.num_legs())) return false;
  Canonical c = canonicalize(G, s.kappa, s.psi);
  std::vector<std::vector<int>> kappa(G.num_vertices());
  std::vector<int> psi(G.num_half_edges(), 0);
  for (int v = 0; v < G.num_vertices(); ++v) kappa[c.vertex_map[v]] = s.kappa[v];
  for (int h = 0; h < G.num_half_edges(); ++h) psi[c.half_edge_map[h]] = s.psi[h];
  s.graph = std::move(c.graph);
  s.kappa = std::move(kappa);
  s.psi = std::move(psi);
  s.key = std::move(c.key);
  return true;
}

long stratum_automorphisms(const Stratum& s) {
  return canonicalize(s.graph, s.kappa, s.psi).automorphisms;
}

PClass to_poly(const QClass& c) {
  return c.transform_coefficients([](const Rational& q) { return MultiPoly(q); });
}

// --- generators -----------------------------------------------------------

Stratum monomial_stratum(int g, int n, const std::vector<int>& psi, const std::vector<int>& kappa) {
  if (static_cast<int>(psi.size()) != n) throw ValidationError("psi exponent vector has wrong length");
  Stratum s = Stratum::bare(trivial_graph(g, n));
  for (int i = 0; i < n; ++i) {
    if (psi[i] < 0) throw ValidationError("negative psi exponent");
    s.psi[i] = psi[i];
  }
  for (int e : kappa)
    if (e < 0) throw ValidationError("negative kappa exponent");
  s.kappa[0] = kappa;
  return s;
}

int Monomial::degree() const {
  int d = std::accumulate(psi.begin(), psi.end(), 0);
  for (std::size_t a = 0; a < kappa.size(); ++a) d += static_cast<int>(a + 1) * kappa[a];
  return d;
}

bool Monomial::operator<(const Monomial& o) const {
  return std::tie(psi, kappa) < std::tie(o.psi, o.kappa);
}

Monomial parse_monomial(const std::string& text, int n) {
  Monomial m;
  m.psi.assign(n, 0);
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "1") return m;
  std::stringstream in(s);
  std::string factor;
  while (std::getline(in, factor, '*')) {
    std::string name = factor, exp = "1";
    auto caret = factor.find('^');
    if (caret != std::string::npos) {
      name = factor.substr(0, caret);
      exp = factor.substr(caret + 1);
    }
    auto all_digits = [](const std::string& t) {
      return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (!all_digits(exp)) throw ValidationError("malformed exponent in monomial: " + text);
    int e = std::stoi(exp);
    if (name.rfind("psi", 0) == 0 && all_digits(name.substr(3))) {
      int i = std::stoi(name.substr(3));
      if (i < 1 || i > n) throw ValidationError("psi index out of range in monomial: " + text);
      m.psi[i - 1] += e;
    } else if (name.rfind("kappa", 0) == 0 && all_digits(name.substr(5))) {
      int a = std::stoi(name.substr(5));
      if (a < 1) throw ValidationError("kappa index must be positive: " + text);
      if (static_cast<int>(m.kappa.size()) < a) m.kappa.resize(a, 0);
      m.kappa[a - 1] += e;
    } else {
      throw ValidationError("unknown factor '" + factor + "' in monomial");
    }
  }
  while (!m.kappa.empty() && m.kappa.back() == 0) m.kappa.pop_back();
  return m;
}

std::string monomial_to_string(const Monomial& m) {
  std::string out;
  auto put = [&](const std::string& name, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (e > 1) out += "^" + std::to_string(e);
  };
  for (std::size_t i = 0; i < m.psi.size(); ++i) put("psi" + std::to_string(i + 1), m.psi[i]);
  for (std::size_t a = 0; a < m.kappa.size(); ++a) put("kappa" + std::to_string(a + 1), m.kappa[a]);
  return out.empty() ? "1" : out;
}

QClass monomial_class(int g, int n, const Monomial& m) {
  QClass c(g, n);
  c.add(monomial_stratum(g, n, m.psi, m.kappa), Rational(1));
  return c;
}

void validate_divisor(int g, int n, const BoundaryDivisor& D) {
  if (D.irreducible) {
    if (g < 1) throw ValidationError("delta_irr requires genus >= 1");
    return;
  }
  if (D.h < 0 || D.h > g) throw ValidationError("divisor genus out of range");
  std::vector<int> P = D.P;
  std::sort(P.begin(), P.end());
  if (std::adjacent_find(P.begin(), P.end()) != P.end()) throw ValidationError("repeated marking in divisor");
  for (int i : P)
    if (i < 1 || i > n) throw ValidationError("divisor marking out of range");
}

int divisor_convention(int g, int n, const BoundaryDivisor& D, int* leg) {
  validate_divisor(g, n, D);
  if (D.irreducible) return 0;
  const int p = static_cast<int>(D.P.size());
  std::vector<int> P = D.P;
  std::sort(P.begin(), P.end());
  if ((D.h == 0 && p == 0) || (D.h == g && p == n)) return 1;
  if (D.h == 0 && p == 1) {
    if (leg) *leg = P[0];
    return 2;
  }
  if (D.h == g && p == n - 1) {
    for (int i = 1; i <= n; ++i)
      if (!std::binary_search(P.begin(), P.end(), i) && leg) *leg = i;
    return 2;
  }
  return 0;
}

namespace {

EdgeType normalized_type(int g, int n, int h, std::vector<int> P) {
  std::sort(P.begin(), P.end());
  std::vector<int> Q;
  for (int i = 1; i <= n; ++i)
    if (!std::binary_search(P.begin(), P.end(), i)) Q.push_back(i);
  EdgeType t;
  if (std::make_pair(g - h, Q) < std::make_pair(h, P)) {
    t.h = g - h;
    t.P = std::move(Q);
  } else {
    t.h = h;
    t.P = std::move(P);
  }
  return t;
}

StableGraph one_edge_graph(int g, int n, const BoundaryDivisor& D) {
  StableGraph G;
  if (D.irreducible) {
    G.genus = {g - 1};
    for (int i = 1; i <= n; ++i) {
      G.vertex_of.push_back(0);
      G.partner.push_back(i - 1);
      G.label.push_back(i);
    }
    G.vertex_of.insert(G.vertex_of.end(), {0, 0});
    G.partner.insert(G.partner.end(), {n + 1, n});
    G.label.insert(G.label.end(), {0, 0});
    return G;
  }
  G.genus = {D.h, g - D.h};
  for (int i = 1; i <= n; ++i) {
    bool in = std::find(D.P.begin(), D.P.end(), i) != D.P.end();
    G.vertex_of.push_back(in ? 0 : 1);
    G.partner.push_back(i - 1);
    G.label.push_back(i);
  }
  G.vertex_of.insert(G.vertex_of.end(), {0, 1});
  G.partner.insert(G.partner.end(), {n + 1, n});
  G.label.insert(G.label.end(), {0, 0});
  return G;
}

}  // namespace

EdgeType divisor_type(int g, int n, const BoundaryDivisor& D) {
  validate_divisor(g, n, D);
  if (D.irreducible) return EdgeType{true, 0, {}};
  return normalized_type(g, n, D.h, D.P);
}

EdgeType edge_type(const StableGraph& G, int half_edge) {
  const int a = half_edge, b = G.partner[half_edge];
  const int nv = G.num_vertices();
  std::vector<int> side(nv, 0);
  std::vector<int> stack{G.vertex_of[a]};
  side[G.vertex_of[a]] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int h = 0; h < G.num_half_edges(); ++h) {
      if (G.vertex_of[h] != v || G.is_leg(h) || h == a || h == b) continue;
      int w = G.vertex_of[G.partner[h]];
      if (!side[w]) {
        side[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (side[G.vertex_of[b]]) return EdgeType{true, 0, {}};
  int genus = 0, verts = 0, inner_halves = 0;
  std::vector<int> P;
  for (int v = 0; v < nv; ++v)
    if (side[v]) {
      genus += G.genus[v];
      ++verts;
    }
  for (int h = 0; h < G.num_half_edges(); ++h) {
    if (!side[G.vertex_of[h]]) continue;
    if (G.is_leg(h))
      P.push_back(G.label[h]);
    else if (h != a && side[G.vertex_of[G.partner[h]]])
      ++inner_halves;
  }
  genus += inner_halves / 2 - verts + 1;
  return normalized_type(G.total_genus(), G.num_legs(), genus, P);
}

QClass divisor_class(int g, int n, const BoundaryDivisor& D) {
  QClass c(g, n);
  int leg = 0;
  int conv = divisor_convention(g, n, D, &leg);
  if (conv == 1) return c;
  if (conv == 2) {
    std::vector<int> psi(n, 0);
    psi[leg - 1] = 1;
    c.add(monomial_stratum(g, n, psi), Rational(-1));
    return c;
  }
  Stratum s = Stratum::bare(one_edge_graph(g, n, D));
  c.add(s, Rational(1, stratum_automorphisms(s)));
  return c;
}

// --- raw operations -------------------------------------------------------

namespace {

void append_edge(Stratum& s, int u, int w, int pu = 0, int pw = 0) {
  StableGraph& G = s.graph;
  const int nh = G.num_half_edges();
  G.vertex_of.insert(G.vertex_of.end(), {u, w});
  G.partner.insert(G.partner.end(), {nh + 1, nh});
  G.label.insert(G.label.end(), {0, 0});
  s.psi.insert(s.psi.end(), {pu, pw});
  s.key.clear();
}

int append_vertex(Stratum& s, int genus) {
  s.graph.genus.push_back(genus);
  s.kappa.emplace_back();
  s.key.clear();
  return s.graph.num_vertices() - 1;
}

void append_leg(Stratum& s, int v, int label, int psi) {
  StableGraph& G = s.graph;
  const int nh = G.num_half_edges();
  G.vertex_of.push_back(v);
  G.partner.push_back(nh);
  G.label.push_back(label);
  s.psi.push_back(psi);
  s.key.clear();
}

// Removes the listed half-edges and vertex (if >= 0) and reindexes. Partners
// of surviving half-edges must already point at surviving half-edges.
Stratum remove_parts(const Stratum& s, const std::vector<int>& dead_halves, int dead_vertex) {
  const StableGraph& G = s.graph;
  std::vector<int> hmap(G.num_half_edges(), -1), vmap(G.num_vertices(), -1);
  int next = 0;
  for (int h = 0; h < G.num_half_edges(); ++h)
    if (std::find(dead_halves.begin(), dead_halves.end(), h) == dead_halves.end()) hmap[h] = next++;
  int nextv = 0;
  for (int v = 0; v < G.num_vertices(); ++v)
    if (v != dead_vertex) vmap[v] = nextv++;
  Stratum out;
  out.graph.genus.resize(nextv);
  out.kappa.resize(nextv);
  for (int v = 0; v < G.num_vertices(); ++v) {
    if (vmap[v] < 0) continue;
    out.graph.genus[vmap[v]] = G.genus[v];
    out.kappa[vmap[v]] = s.kappa[v];
  }
  out.graph.vertex_of.resize(next);
  out.graph.partner.resize(next);
  out.graph.label.resize(next);
  out.psi.resize(next);
  for (int h = 0; h < G.num_half_edges(); ++h) {
    if (hmap[h] < 0) continue;
    if (hmap[G.partner[h]] < 0) throw DefectError("dangling half-edge after removal");
    out.graph.vertex_of[hmap[h]] = vmap[G.vertex_of[h]];
    out.graph.partner[hmap[h]] = hmap[G.partner[h]];
    out.graph.label[hmap[h]] = G.label[h];
    out.psi[hmap[h]] = s.psi[h];
  }
  return out;
}

// All t <= x componentwise.
void for_each_sub(const std::vector<int>& x, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(x.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == x.size()) {
      fn(t);
      return;
    }
    for (int v = 0; v <= x[i]; ++v) {
      t[i] = v;
      rec(i + 1);
    }
    t[i] = 0;
  };
  rec(0);
}

}  // namespace

RawTerms mul_psi_raw(const Stratum& s, int leg) {
  int h = s.graph.leg_half_edge(leg);
  if (h < 0) throw ValidationError("no leg with label " + std::to_string(leg));
  Stratum t = s;
  t.psi[h] += 1;
  t.key.clear();
  return {{std::move(t), Rational(1)}};
}

RawTerms mul_kappa_raw(const Stratum& s, int a) {
  RawTerms out;
  for (int v = 0; v < s.graph.num_vertices(); ++v) {
    Stratum t = s;
    t.add_kappa(v, a);
    out.emplace_back(std::move(t), Rational(1));
  }
  return out;
}

RawTerms mul_boundary_divisor_raw(const Stratum& s, const BoundaryDivisor& D) {
  const StableGraph& G = s.graph;
  const int g = G.total_genus(), n = G.num_legs();
  int leg = 0;
  int conv = divisor_convention(g, n, D, &leg);
  if (conv == 1) return {};
  if (conv == 2) {
    RawTerms r = mul_psi_raw(s, leg);
    r[0].second = -1;
    return r;
  }
  const EdgeType target = divisor_type(g, n, D);
  RawTerms out;
  for (int h : G.edge_list()) {
    if (!(edge_type(G, h) == target)) continue;
    for (int x : {h, G.partner[h]}) {
      Stratum t = s;
      t.psi[x] += 1;
      t.key.clear();
      out.emplace_back(std::move(t), Rational(-1));
    }
  }
  const Rational half(1, 2);
  const int nh = G.num_half_edges();
  for (int v = 0; v < G.num_vertices(); ++v) {
    if (G.genus[v] >= 1) {
      Stratum t = s;
      t.graph.genus[v] -= 1;
      append_edge(t, v, v);
      if (edge_type(t.graph, nh) == target) out.emplace_back(std::move(t), half);
    }
    std::vector<int> at = G.half_edges_at(v);
    const int m = static_cast<int>(at.size());
    const std::vector<int>& x = s.kappa[v];
    for (int g1 = 0; g1 <= G.genus[v]; ++g1) {
      const int g2 = G.genus[v] - g1;
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        const int k = __builtin_popcount(mask);
        if (2 * g1 - 1 + k <= 0 || 2 * g2 - 1 + (m - k) <= 0) continue;
        Stratum base = s;
        base.graph.genus[v] = g1;
        int v2 = append_vertex(base, g2);
        for (int i = 0; i < m; ++i)
          if (!(mask & (1u << i))) base.graph.vertex_of[at[i]] = v2;
        append_edge(base, v, v2);
        if (!(edge_type(base.graph, nh) == target)) continue;
        for_each_sub(x, [&](const std::vector<int>& t) {
          Stratum u = base;
          Rational c = half;
          std::vector<int> rest(x.size());
          for (std::size_t a = 0; a < x.size(); ++a) {
            c *= binomial(x[a], t[a]);
            rest[a] = x[a] - t[a];
          }
          u.kappa[v] = t;
          u.kappa[v2] = rest;
          out.emplace_back(std::move(u), c);
        });
      }
    }
  }
  return out;
}

RawTerms pullback_raw(const Stratum& s) {
  const StableGraph& G = s.graph;
  const int label = G.num_legs() + 1;
  RawTerms out;
  for (int v = 0; v < G.num_vertices(); ++v) {
    const std::vector<int>& x = s.kappa[v];
    for_each_sub(x, [&](const std::vector<int>& t) {
      Stratum u = s;
      Rational c = 1;
      int psi_new = 0, sign = 0;
      for (std::size_t a = 0; a < x.size(); ++a) {
        c *= binomial(x[a], t[a]);
        u.kappa[v][a] = x[a] - t[a];
        psi_new += static_cast<int>(a + 1) * t[a];
        sign += t[a];
      }
      if (sign % 2) c = -c;
      append_leg(u, v, label, psi_new);
      out.emplace_back(std::move(u), c);
    });
    for (int h : G.half_edges_at(v)) {
      if (s.psi[h] == 0) continue;
      Stratum u = s;
      int bubble = append_vertex(u, 0);
      u.graph.vertex_of[h] = bubble;
      const int y = u.psi[h];
      u.psi[h] = 0;
      append_edge(u, v, bubble, y - 1, 0);
      append_leg(u, bubble, label, 0);
      out.emplace_back(std::move(u), Rational(-1));
    }
  }
  return out;
}

RawTerms pushforward_raw(const Stratum& s) {
  const StableGraph& G = s.graph;
  const int n = G.num_legs();
  const int h0 = G.leg_half_edge(n);
  if (h0 < 0) throw ValidationError("stratum has no last leg");
  const int v = G.vertex_of[h0];
  std::vector<int> at = G.half_edges_at(v);
  if (G.genus[v] == 0 && at.size() == 3) {
    if (s.vertex_degree(v) > 0) return {};
    std::vector<int> others;
    for (int h : at)
      if (h != h0) others.push_back(h);
    const int a = others[0], b = others[1];
    Stratum t = s;
    if (G.is_leg(a) && G.is_leg(b)) throw DefectError("forgetting a leg of M_{0,3}");
    if (!G.is_leg(a) && !G.is_leg(b)) {
      if (G.partner[a] == b) throw DefectError("forgetting the leg of a loop vertex of genus 0");
      const int a2 = G.partner[a], b2 = G.partner[b];
      t.graph.partner[a2] = b2;
      t.graph.partner[b2] = a2;
    } else {
      const int lg = G.is_leg(a) ? a : b;
      const int e = G.is_leg(a) ? b : a;
      const int e2 = G.partner[e];
      t.graph.partner[e2] = e2;
      t.graph.label[e2] = G.label[lg];
    }
    return {{remove_parts(t, {h0, a, b}, v), Rational(1)}};
  }
  const int e = s.psi[h0];
  const std::vector<int>& x = s.kappa[v];
  const int kappa0 = 2 * G.genus[v] - 2 + static_cast<int>(at.size()) - 1;
  RawTerms out;
  for_each_sub(x, [&](const std::vector<int>& t) {
    Rational c = 1;
    int E = e;
    std::vector<int> rest(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
      c *= binomial(x[a], t[a]);
      rest[a] = x[a] - t[a];
      E += static_cast<int>(a + 1) * t[a];
    }
    Stratum base = s;
    base.kappa[v] = rest;
    base.psi[h0] = 0;
    Stratum r = remove_parts(base, {h0}, -1);
    if (E >= 2) {
      r.add_kappa(v, E - 1);
      out.emplace_back(std::move(r), c);
    } else if (E == 1) {
      out.emplace_back(std::move(r), c * kappa0);
    } else {
      // string equation; here t = 0 and the stratum carries no psi at the leg
      for (int h : at) {
        if (h == h0 || s.psi[h] == 0) continue;
        Stratum w = base;
        w.psi[h] -= 1;
        out.emplace_back(remove_parts(w, {h0}, -1), c);
      }
    }
  });
  return out;
}

Stratum relabel_stratum(const Stratum& s, const std::vector<int>& perm) {
  Stratum t = s;
  t.graph = relabel_legs(s.graph, perm);
  t.key.clear();
  return t;
}

Stratum substitute_vertex_raw(const Stratum& s, int v, const Stratum& t) {
  const StableGraph& G = s.graph;
  const StableGraph& T = t.graph;
  std::vector<int> at = G.half_edges_at(v);
  if (T.total_genus() != G.genus[v] || T.num_legs() != static_cast<int>(at.size()))
    throw ValidationError("vertex class lives on the wrong space");
  Stratum out;
  std::vector<int> vmap(G.num_vertices(), -1);
  int next = 0;
  for (int w = 0; w < G.num_vertices(); ++w)
    if (w != v) {
      vmap[w] = next++;
      out.graph.genus.push_back(G.genus[w]);
      out.kappa.push_back(s.kappa[w]);
    }
  std::vector<int> tmap(T.num_vertices());
  for (int u = 0; u < T.num_vertices(); ++u) {
    tmap[u] = next++;
    out.graph.genus.push_back(T.genus[u]);
    out.kappa.push_back(t.kappa[u]);
  }
  out.graph.vertex_of.resize(G.num_half_edges());
  out.graph.partner = G.partner;
  out.graph.label = G.label;
  out.psi = s.psi;
  for (int h = 0; h < G.num_half_edges(); ++h)
    if (G.vertex_of[h] != v) out.graph.vertex_of[h] = vmap[G.vertex_of[h]];
  std::vector<int> hmap(T.num_half_edges(), -1);
  for (int h = 0; h < T.num_half_edges(); ++h) {
    if (!T.is_leg(h)) continue;
    const int target = at[T.label[h] - 1];
    hmap[h] = target;
    out.graph.vertex_of[target] = tmap[T.vertex_of[h]];
    out.psi[target] = t.psi[h];
  }
  int nh = G.num_half_edges();
  for (int h = 0; h < T.num_half_edges(); ++h)
    if (!T.is_leg(h)) hmap[h] = nh++;
  out.graph.vertex_of.resize(nh);
  out.graph.partner.resize(nh);
  out.graph.label.resize(nh, 0);
  out.psi.resize(nh, 0);
  for (int h = 0; h < T.num_half_edges(); ++h) {
    if (T.is_leg(h)) continue;
    out.graph.vertex_of[hmap[h]] = tmap[T.vertex_of[h]];
    out.graph.partner[hmap[h]] = hmap[T.partner[h]];
    out.graph.label[hmap[h]] = 0;
    out.psi[hmap[h]] = t.psi[h];
  }
  return out;
}

QClass gluing_pushforward(const StableGraph& g, const std::vector<QClass>& vertex_classes) {
  validate_stable_graph(g);
  if (static_cast<int>(vertex_classes.size()) != g.num_vertices())
    throw ValidationError("one vertex class per vertex required");
  for (int v = 0; v < g.num_vertices(); ++v)
    if (vertex_classes[v].genus() != g.genus[v] || vertex_classes[v].markings() != g.valence(v))
      throw ValidationError("vertex class lives on the wrong space");
  RawTerms current{{Stratum::bare(g), Rational(1)}};
  for (int v = g.num_vertices() - 1; v >= 0; --v) {
    RawTerms next;
    for (const auto& [s, c] : current)
      for (const auto& [k, t] : vertex_classes[v].terms())
        next.emplace_back(substitute_vertex_raw(s, v, t.stratum), c * t.coeff);
    current = std::move(next);
  }
  QClass out(g.total_genus(), g.num_legs());
  for (const auto& [s, c] : current) out.add(s, c);
  return out;
}

Locus parse_locus(const std::string& s) {
  if (s == "open") return Locus::Open;
  if (s == "rational-tails" || s == "rt") return Locus::RationalTails;
  if (s == "compact-type" || s == "ct") return Locus::CompactType;
  throw ValidationError("unknown locus: " + s);
}

bool in_locus(const Stratum& s, Locus locus) {
  const StableGraph& G = s.graph;
  switch (locus) {
    case Locus::Open:
      return G.num_edges() == 0;
    case Locus::CompactType:
      return G.is_tree();
    case Locus::RationalTails: {
      if (!G.is_tree()) return false;
      const int g = G.total_genus();
      return std::find(G.genus.begin(), G.genus.end(), g) != G.genus.end();
    }
  }
  return false;
}

std::string describe_stratum(const Stratum& s) {
  const StableGraph& G = s.graph;
  auto vertex_monomial = [&](int v, bool with_legs_only) {
    Monomial m;
    m.psi.assign(G.num_legs(), 0);
    m.kappa = s.kappa[v];
    std::string extra;
    for (int h : G.half_edges_at(v)) {
      if (s.psi[h] == 0) continue;
      if (G.is_leg(h)) {
        m.psi[G.label[h] - 1] = s.psi[h];
      } else if (!with_legs_only) {
        extra += "*psi_h" + std::to_string(h);
        if (s.psi[h] > 1) extra += "^" + std::to_string(s.psi[h]);
      }
    }
    std::string base = monomial_to_string(m);
    if (!extra.empty()) base = base == "1" ? extra.substr(1) : base + extra;
    return base;
  };
  if (G.num_edges() == 0) return vertex_monomial(0, true);
  std::ostringstream out;
  out << "[";
  for (int v = 0; v < G.num_vertices(); ++v) {
    if (v) out << "; ";
    out << "v" << v << ":g" << G.genus[v];
    std::vector<int> legs;
    for (int h : G.half_edges_at(v))
      if (G.is_leg(h)) legs.push_back(G.label[h]);
    if (!legs.empty()) {
      out << "{";
      for (std::size_t i = 0; i < legs.size(); ++i) out << (i ? "," : "") << legs[i];
      out << "}";
    }
    std::string d = vertex_monomial(v, false);
    if (d != "1") out << " " << d;
  }
  out << " | ";
  bool first = true;
  for (int h : G.edge_list()) {
    if (!first) out << ", ";
    first = false;
    out << "h" << h << ":v" << G.vertex_of[h] << "-v" << G.vertex_of[G.partner[h]] << ":h" << G.partner[h];
  }
  out << "]";
  return out.str();
}

}  // namespace taut
