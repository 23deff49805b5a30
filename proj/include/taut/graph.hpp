// Stable graphs with legs fixed pointwise: validation, canonical labeling,
// automorphisms, edge contraction, one-edge degenerations and enumeration.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "taut/algebra.hpp"

namespace taut {

// Half-edge h sits at vertex vertex_of[h]; partner[h] == h marks a leg, whose
// label (1..n) is stored in label[h]. label[h] == 0 for edge halves.
struct StableGraph {
  std::vector<int> genus;
  std::vector<int> vertex_of;
  std::vector<int> partner;
  std::vector<int> label;

  int num_vertices() const { return static_cast<int>(genus.size()); }
  int num_half_edges() const { return static_cast<int>(vertex_of.size()); }
  int num_legs() const;
  int num_edges() const;
  int h1() const { return num_edges() - num_vertices() + 1; }
  int total_genus() const;
  int valence(int v) const;
  bool is_leg(int h) const { return partner[h] == h; }
  int leg_half_edge(int lab) const;  // -1 if absent
  std::vector<int> half_edges_at(int v) const;
  // One representative half-edge h < partner[h] per edge.
  std::vector<int> edge_list() const;
  bool is_tree() const { return h1() == 0; }

  friend bool operator==(const StableGraph&, const StableGraph&) = default;
};

// Throws ValidationError describing the first violated condition.
StableGraph validate_stable_graph(const StableGraph& candidate);
bool is_stable_graph(const StableGraph& candidate, std::string* why = nullptr);

StableGraph trivial_graph(int g, int n);

// Result of canonical labeling with optional per-vertex and per-half-edge data
// (the data must be preserved by isomorphisms). The canonical graph has leg i
// at half-edge i-1 followed by edges as consecutive half-edge pairs.
struct Canonical {
  std::string key;                 // byte encoding, total order = canonical order
  StableGraph graph;               // canonical layout
  std::vector<int> vertex_map;     // old vertex -> canonical vertex
  std::vector<int> half_edge_map;  // old half-edge -> canonical half-edge
  long automorphisms = 1;          // decoration-preserving automorphisms
};

Canonical canonicalize(const StableGraph& g,
                       const std::vector<std::vector<int>>& vertex_data = {},
                       const std::vector<int>& half_edge_data = {});

std::string canonical_key(const StableGraph& g);
std::string to_hex(const std::string& bytes);
std::string canonical_key_hex(const StableGraph& g);
long automorphism_count(const StableGraph& g);
bool isomorphic(const StableGraph& a, const StableGraph& b);

// Contracts the edge containing half-edge h.
StableGraph contract_edge(const StableGraph& g, int h);

struct Degeneration {
  StableGraph graph;
  int edge;  // a half-edge of the new edge
};

// All graphs with one more edge contracting to g, up to isomorphism fixing the
// marked edge.
std::vector<Degeneration> one_edge_degenerations(const StableGraph& g);

// Isomorphism classes of stable graphs of type (g, n) with at most max_edges
// edges, ordered by edge count and then canonical key.
std::vector<StableGraph> enumerate_stable_graphs(int g, int n, int max_edges);

// Relabels legs: leg with label l receives label perm[l-1].
StableGraph relabel_legs(const StableGraph& g, const std::vector<int>& perm);

}  // namespace taut
