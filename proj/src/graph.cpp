#include "taut/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace taut {

int StableGraph::num_legs() const {
  int n = 0;
  for (int h = 0; h < num_half_edges(); ++h) n += is_leg(h) ? 1 : 0;
  return n;
}

int StableGraph::num_edges() const { return (num_half_edges() - num_legs()) / 2; }

int StableGraph::total_genus() const {
  return std::accumulate(genus.begin(), genus.end(), 0) + h1();
}

int StableGraph::valence(int v) const {
  return static_cast<int>(std::count(vertex_of.begin(), vertex_of.end(), v));
}

int StableGraph::leg_half_edge(int lab) const {
  for (int h = 0; h < num_half_edges(); ++h)
    if (is_leg(h) && label[h] == lab) return h;
  return -1;
}

std::vector<int> StableGraph::half_edges_at(int v) const {
  std::vector<int> out;
  for (int h = 0; h < num_half_edges(); ++h)
    if (vertex_of[h] == v) out.push_back(h);
  return out;
}

std::vector<int> StableGraph::edge_list() const {
  std::vector<int> out;
  for (int h = 0; h < num_half_edges(); ++h)
    if (partner[h] > h) out.push_back(h);
  return out;
}

bool is_stable_graph(const StableGraph& c, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int nv = c.num_vertices();
  const int nh = c.num_half_edges();
  if (nv == 0) return fail("graph has no vertices");
  if (static_cast<int>(c.partner.size()) != nh || static_cast<int>(c.label.size()) != nh)
    return fail("half-edge arrays have inconsistent lengths");
  for (int v = 0; v < nv; ++v)
    if (c.genus[v] < 0) return fail("negative vertex genus");
  for (int h = 0; h < nh; ++h) {
    if (c.vertex_of[h] < 0 || c.vertex_of[h] >= nv) return fail("half-edge attached to unknown vertex");
    if (c.partner[h] < 0 || c.partner[h] >= nh) return fail("involution out of range");
    if (c.partner[c.partner[h]] != h) return fail("involution is not an involution");
  }
  std::vector<int> labels;
  for (int h = 0; h < nh; ++h) {
    if (c.is_leg(h)) {
      labels.push_back(c.label[h]);
    } else if (c.label[h] != 0) {
      return fail("edge half carries a leg label");
    }
  }
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1) return fail("leg labels are not a bijection with 1..n");
  std::vector<int> seen(nv, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int h = 0; h < nh; ++h) {
      if (c.vertex_of[h] != v || c.is_leg(h)) continue;
      int w = c.vertex_of[c.partner[h]];
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) > 0) return fail("graph is disconnected");
  for (int v = 0; v < nv; ++v)
    if (2 * c.genus[v] - 2 + c.valence(v) <= 0) return fail("unstable vertex " + std::to_string(v));
  return true;
}

StableGraph validate_stable_graph(const StableGraph& candidate) {
  std::string why;
  if (!is_stable_graph(candidate, &why)) throw ValidationError(why);
  return candidate;
}

StableGraph trivial_graph(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
    throw ValidationError("unstable type (" + std::to_string(g) + "," + std::to_string(n) + ")");
  StableGraph G;
  G.genus = {g};
  for (int i = 0; i < n; ++i) {
    G.vertex_of.push_back(0);
    G.partner.push_back(i);
    G.label.push_back(i + 1);
  }
  return G;
}

namespace {

using Code = std::vector<int>;

struct EdgeTuple {
  int u, pu, w, pw;
  auto tie() const { return std::tie(u, pu, w, pw); }
  bool operator<(const EdgeTuple& o) const { return tie() < o.tie(); }
  bool operator==(const EdgeTuple& o) const { return tie() == o.tie(); }
};

struct Encoder {
  const StableGraph& g;
  const std::vector<std::vector<int>>& vdata;
  const std::vector<int>& hdata;
  std::vector<int> legs_by_label;
  std::vector<int> edges;

  Encoder(const StableGraph& graph, const std::vector<std::vector<int>>& vd, const std::vector<int>& hd)
      : g(graph), vdata(vd), hdata(hd) {
    legs_by_label.assign(g.num_legs(), -1);
    for (int h = 0; h < g.num_half_edges(); ++h)
      if (g.is_leg(h)) legs_by_label[g.label[h] - 1] = h;
    edges = g.edge_list();
  }

  EdgeTuple oriented(int h, const std::vector<int>& pos, bool* flipped) const {
    int h2 = g.partner[h];
    EdgeTuple t{pos[g.vertex_of[h]], hdata[h], pos[g.vertex_of[h2]], hdata[h2]};
    *flipped = false;
    if (std::tie(t.w, t.pw) < std::tie(t.u, t.pu)) {
      std::swap(t.u, t.w);
      std::swap(t.pu, t.pw);
      *flipped = true;
    }
    return t;
  }

  std::vector<EdgeTuple> sorted_edges(const std::vector<int>& pos) const {
    std::vector<EdgeTuple> ts;
    ts.reserve(edges.size());
    bool f;
    for (int h : edges) ts.push_back(oriented(h, pos, &f));
    std::sort(ts.begin(), ts.end());
    return ts;
  }

  Code encode(const std::vector<int>& pos, const std::vector<int>& inv) const {
    Code c;
    c.push_back(g.num_vertices());
    c.push_back(static_cast<int>(legs_by_label.size()));
    c.push_back(static_cast<int>(edges.size()));
    for (int old : inv) {
      c.push_back(g.genus[old]);
      c.push_back(static_cast<int>(vdata[old].size()));
      c.insert(c.end(), vdata[old].begin(), vdata[old].end());
    }
    for (int h : legs_by_label) {
      c.push_back(pos[g.vertex_of[h]]);
      c.push_back(hdata[h]);
    }
    for (const auto& t : sorted_edges(pos)) {
      c.push_back(t.u);
      c.push_back(t.pu);
      c.push_back(t.w);
      c.push_back(t.pw);
    }
    return c;
  }
};

std::string code_bytes(const Code& c) {
  std::string out;
  for (int x : c) {
    unsigned int z = static_cast<unsigned int>((x << 1) ^ (x >> 31));
    do {
      unsigned char b = z & 0x7f;
      z >>= 7;
      if (z) b |= 0x80;
      out.push_back(static_cast<char>(b));
    } while (z);
  }
  return out;
}

std::vector<int> refine_colors(const StableGraph& g, const std::vector<std::vector<int>>& vdata,
                               const std::vector<int>& hdata) {
  const int nv = g.num_vertices();
  std::vector<Code> sig(nv);
  for (int v = 0; v < nv; ++v) {
    Code& s = sig[v];
    s.push_back(g.genus[v]);
    s.push_back(g.valence(v));
    s.push_back(static_cast<int>(vdata[v].size()));
    s.insert(s.end(), vdata[v].begin(), vdata[v].end());
    std::vector<std::pair<int, int>> legs, loops;
    for (int h : g.half_edges_at(v)) {
      if (g.is_leg(h)) {
        legs.emplace_back(g.label[h], hdata[h]);
      } else if (g.vertex_of[g.partner[h]] == v && h < g.partner[h]) {
        int a = hdata[h], b = hdata[g.partner[h]];
        loops.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    std::sort(legs.begin(), legs.end());
    std::sort(loops.begin(), loops.end());
    s.push_back(static_cast<int>(legs.size()));
    for (auto [a, b] : legs) {
      s.push_back(a);
      s.push_back(b);
    }
    s.push_back(static_cast<int>(loops.size()));
    for (auto [a, b] : loops) {
      s.push_back(a);
      s.push_back(b);
    }
  }
  auto rank = [&](const std::vector<Code>& sigs) {
    std::vector<Code> uniq = sigs;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> col(sigs.size());
    for (std::size_t v = 0; v < sigs.size(); ++v)
      col[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sigs[v]) - uniq.begin());
    return std::make_pair(col, static_cast<int>(uniq.size()));
  };
  auto [color, count] = rank(sig);
  while (true) {
    std::vector<Code> next(nv);
    for (int v = 0; v < nv; ++v) {
      std::vector<std::tuple<int, int, int>> nb;
      for (int h : g.half_edges_at(v)) {
        if (g.is_leg(h)) continue;
        int w = g.vertex_of[g.partner[h]];
        if (w == v) continue;
        nb.emplace_back(color[w], hdata[h], hdata[g.partner[h]]);
      }
      std::sort(nb.begin(), nb.end());
      Code& s = next[v];
      s.push_back(color[v]);
      for (auto [a, b, c] : nb) {
        s.push_back(a);
        s.push_back(b);
        s.push_back(c);
      }
    }
    auto [c2, n2] = rank(next);
    color = c2;
    if (n2 == count) break;
    count = n2;
  }
  return color;
}

}  // namespace

Canonical canonicalize(const StableGraph& g, const std::vector<std::vector<int>>& vdata_in,
                       const std::vector<int>& hdata_in) {
  const int nv = g.num_vertices();
  const int nh = g.num_half_edges();
  std::vector<std::vector<int>> vdata = vdata_in;
  if (vdata.empty()) vdata.assign(nv, {});
  std::vector<int> hdata = hdata_in;
  if (hdata.empty()) hdata.assign(nh, 0);
  if (static_cast<int>(vdata.size()) != nv || static_cast<int>(hdata.size()) != nh)
    throw ValidationError("decoration size does not match graph");

  std::vector<int> color = refine_colors(g, vdata, hdata);
  std::map<int, std::vector<int>> classes;
  for (int v = 0; v < nv; ++v) classes[color[v]].push_back(v);
  std::vector<std::vector<int>> blocks;
  for (auto& [c, vs] : classes) blocks.push_back(vs);

  Encoder enc(g, vdata, hdata);
  std::vector<int> pos(nv), inv(nv);
  Code best;
  std::vector<int> best_pos;
  long ties = 0;
  std::vector<int> offsets;
  int off = 0;
  for (auto& b : blocks) {
    offsets.push_back(off);
    off += static_cast<int>(b.size());
  }

  std::function<void(std::size_t)> rec = [&](std::size_t bi) {
    if (bi == blocks.size()) {
      Code c = enc.encode(pos, inv);
      if (best_pos.empty() || c < best) {
        best = std::move(c);
        best_pos = pos;
        ties = 1;
      } else if (c == best) {
        ++ties;
      }
      return;
    }
    std::vector<int> perm = blocks[bi];
    std::sort(perm.begin(), perm.end());
    do {
      for (std::size_t i = 0; i < perm.size(); ++i) {
        pos[perm[i]] = offsets[bi] + static_cast<int>(i);
        inv[offsets[bi] + static_cast<int>(i)] = perm[i];
      }
      rec(bi + 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(0);

  Canonical out;
  out.key = code_bytes(best);
  out.vertex_map = best_pos;
  const int n = g.num_legs();
  StableGraph& cg = out.graph;
  cg.genus.assign(nv, 0);
  for (int v = 0; v < nv; ++v) cg.genus[best_pos[v]] = g.genus[v];
  cg.vertex_of.assign(nh, 0);
  cg.partner.assign(nh, 0);
  cg.label.assign(nh, 0);
  out.half_edge_map.assign(nh, -1);
  for (int h = 0; h < nh; ++h) {
    if (!g.is_leg(h)) continue;
    int t = g.label[h] - 1;
    out.half_edge_map[h] = t;
    cg.vertex_of[t] = best_pos[g.vertex_of[h]];
    cg.partner[t] = t;
    cg.label[t] = g.label[h];
  }
  std::vector<EdgeTuple> sorted = enc.sorted_edges(best_pos);
  std::vector<int> used(sorted.size(), 0);
  for (int h : enc.edges) {
    bool flipped;
    EdgeTuple t = enc.oriented(h, best_pos, &flipped);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
    std::size_t k = static_cast<std::size_t>(it - sorted.begin());
    while (used[k]) ++k;
    used[k] = 1;
    int a = n + 2 * static_cast<int>(k), b = a + 1;
    int ha = flipped ? g.partner[h] : h;
    out.half_edge_map[ha] = a;
    out.half_edge_map[g.partner[ha]] = b;
    cg.vertex_of[a] = t.u;
    cg.vertex_of[b] = t.w;
    cg.partner[a] = b;
    cg.partner[b] = a;
  }
  long aut = ties;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    long m = static_cast<long>(j - i);
    for (long f = 2; f <= m; ++f) aut *= f;
    if (sorted[i].u == sorted[i].w && sorted[i].pu == sorted[i].pw)
      for (long f = 0; f < m; ++f) aut *= 2;
    i = j;
  }
  out.automorphisms = aut;
  return out;
}

std::string canonical_key(const StableGraph& g) { return canonicalize(g).key; }

std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string canonical_key_hex(const StableGraph& g) { return to_hex(canonical_key(g)); }

long automorphism_count(const StableGraph& g) { return canonicalize(g).automorphisms; }

bool isomorphic(const StableGraph& a, const StableGraph& b) {
  return canonical_key(a) == canonical_key(b);
}

StableGraph contract_edge(const StableGraph& g, int h) {
  if (h < 0 || h >= g.num_half_edges() || g.is_leg(h)) throw ValidationError("not an edge half");
  const int h2 = g.partner[h];
  const int u = g.vertex_of[h], w = g.vertex_of[h2];
  StableGraph out;
  out.genus = g.genus;
  std::vector<int> vmap(g.num_vertices());
  std::iota(vmap.begin(), vmap.end(), 0);
  if (u == w) {
    out.genus[u] += 1;
  } else {
    out.genus[u] += g.genus[w];
    out.genus.erase(out.genus.begin() + w);
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (v == w)
        vmap[v] = u > w ? u - 1 : u;
      else
        vmap[v] = v > w ? v - 1 : v;
    }
  }
  std::vector<int> hmap(g.num_half_edges(), -1);
  int next = 0;
  for (int x = 0; x < g.num_half_edges(); ++x)
    if (x != h && x != h2) hmap[x] = next++;
  out.vertex_of.resize(next);
  out.partner.resize(next);
  out.label.resize(next);
  for (int x = 0; x < g.num_half_edges(); ++x) {
    if (hmap[x] < 0) continue;
    out.vertex_of[hmap[x]] = vmap[g.vertex_of[x]];
    out.partner[hmap[x]] = hmap[g.partner[x]];
    out.label[hmap[x]] = g.label[x];
  }
  return out;
}

std::vector<Degeneration> one_edge_degenerations(const StableGraph& g) {
  std::vector<Degeneration> out;
  std::set<std::string> seen;
  auto push = [&](StableGraph G, int a) {
    std::vector<int> mark(G.num_half_edges(), 0);
    mark[a] = 1;
    mark[G.partner[a]] = 1;
    std::string key = canonicalize(G, {}, mark).key;
    if (seen.insert(key).second) out.push_back({std::move(G), a});
  };
  const int nh = g.num_half_edges();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.genus[v] >= 1) {
      StableGraph G = g;
      G.genus[v] -= 1;
      G.vertex_of.insert(G.vertex_of.end(), {v, v});
      G.partner.insert(G.partner.end(), {nh + 1, nh});
      G.label.insert(G.label.end(), {0, 0});
      push(std::move(G), nh);
    }
    std::vector<int> at = g.half_edges_at(v);
    const int m = static_cast<int>(at.size());
    for (int g1 = 0; g1 <= g.genus[v]; ++g1) {
      const int g2 = g.genus[v] - g1;
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        int s = __builtin_popcount(mask);
        if (2 * g1 - 2 + s + 1 <= 0 || 2 * g2 - 2 + (m - s) + 1 <= 0) continue;
        StableGraph G = g;
        const int v2 = G.num_vertices();
        G.genus[v] = g1;
        G.genus.push_back(g2);
        for (int i = 0; i < m; ++i)
          if (!(mask & (1u << i))) G.vertex_of[at[i]] = v2;
        G.vertex_of.insert(G.vertex_of.end(), {v, v2});
        G.partner.insert(G.partner.end(), {nh + 1, nh});
        G.label.insert(G.label.end(), {0, 0});
        push(std::move(G), nh);
      }
    }
  }
  return out;
}

std::vector<StableGraph> enumerate_stable_graphs(int g, int n, int max_edges) {
  if (max_edges < 0) throw ValidationError("max_edges must be non-negative");
  StableGraph start = trivial_graph(g, n);
  std::vector<std::pair<std::string, StableGraph>> layer{{canonical_key(start), canonicalize(start).graph}};
  std::vector<StableGraph> out{layer[0].second};
  for (int e = 1; e <= max_edges && !layer.empty(); ++e) {
    std::map<std::string, StableGraph> next;
    for (const auto& [k, G] : layer) {
      for (const auto& d : one_edge_degenerations(G)) {
        Canonical c = canonicalize(d.graph);
        next.emplace(c.key, c.graph);
      }
    }
    layer.assign(next.begin(), next.end());
    for (const auto& [k, G] : layer) out.push_back(G);
  }
  return out;
}

StableGraph relabel_legs(const StableGraph& g, const std::vector<int>& perm) {
  StableGraph out = g;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (!g.is_leg(h)) continue;
    if (g.label[h] - 1 >= static_cast<int>(perm.size())) throw ValidationError("permutation too short");
    out.label[h] = perm[g.label[h] - 1];
  }
  return out;
}

}  // namespace taut
