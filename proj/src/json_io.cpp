#include "taut/json_io.hpp"

namespace taut {

namespace {

int local_index(const StableGraph& g, int h) {
  auto hs = g.half_edges_at(g.vertex_of[h]);
  return static_cast<int>(std::find(hs.begin(), hs.end(), h) - hs.begin());
}

template <class T>
T field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ValidationError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("malformed field '") + name + "'");
  }
}

// Legs of g in label order, then edges in edge_list order.
std::vector<int> leg_order(const StableGraph& g) {
  std::vector<int> legs(g.num_legs());
  for (int h = 0; h < g.num_half_edges(); ++h)
    if (g.is_leg(h)) legs[g.label[h] - 1] = h;
  return legs;
}

}  // namespace

Json graph_to_json(const StableGraph& g) {
  Json j;
  j["genera"] = g.genus;
  Json legs = Json::array();
  for (int h : leg_order(g)) legs.push_back({g.label[h], g.vertex_of[h]});
  j["legs"] = legs;
  Json edges = Json::array();
  for (int h : g.edge_list()) {
    int p = g.partner[h];
    edges.push_back({{g.vertex_of[h], local_index(g, h)}, {g.vertex_of[p], local_index(g, p)}});
  }
  j["edges"] = edges;
  return j;
}

StableGraph graph_from_json(const Json& j) {
  StableGraph G;
  G.genus = field<std::vector<int>>(j, "genera");
  auto legs = field<std::vector<std::vector<int>>>(j, "legs");
  auto edges = field<std::vector<std::vector<std::vector<int>>>>(j, "edges");
  std::vector<std::pair<int, int>> sorted;
  for (const auto& l : legs) {
    if (l.size() != 2) throw ValidationError("leg entries are [label, vertex]");
    sorted.emplace_back(l[0], l[1]);
  }
  std::sort(sorted.begin(), sorted.end());
  for (auto [lab, v] : sorted) {
    int h = G.num_half_edges();
    G.vertex_of.push_back(v);
    G.partner.push_back(h);
    G.label.push_back(lab);
  }
  for (const auto& e : edges) {
    if (e.size() != 2 || e[0].size() != 2 || e[1].size() != 2) throw ValidationError("edge entries are [[u, i], [w, j]]");
    int h = G.num_half_edges();
    G.vertex_of.insert(G.vertex_of.end(), {e[0][0], e[1][0]});
    G.partner.insert(G.partner.end(), {h + 1, h});
    G.label.insert(G.label.end(), {0, 0});
  }
  return validate_stable_graph(G);
}

Json stratum_to_json(const Stratum& s) {
  Json j;
  j["graph"] = graph_to_json(s.graph);
  j["kappa"] = s.kappa;
  std::vector<int> pl;
  for (int h : leg_order(s.graph)) pl.push_back(s.psi[h]);
  j["psi_legs"] = pl;
  Json pe = Json::array();
  for (int h : s.graph.edge_list()) pe.push_back({s.psi[h], s.psi[s.graph.partner[h]]});
  j["psi_edges"] = pe;
  return j;
}

Stratum stratum_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("graph")) throw ValidationError("missing field 'graph'");
  Stratum s = Stratum::bare(graph_from_json(j.at("graph")));
  auto kappa = field<std::vector<std::vector<int>>>(j, "kappa");
  auto pl = field<std::vector<int>>(j, "psi_legs");
  auto pe = field<std::vector<std::vector<int>>>(j, "psi_edges");
  if (static_cast<int>(kappa.size()) != s.graph.num_vertices()) throw ValidationError("one kappa list per vertex");
  if (static_cast<int>(pl.size()) != s.graph.num_legs()) throw ValidationError("one psi exponent per leg");
  if (static_cast<int>(pe.size()) != s.graph.num_edges()) throw ValidationError("one psi pair per edge");
  for (const auto& k : kappa)
    for (int e : k)
      if (e < 0) throw ValidationError("negative kappa exponent");
  s.kappa = kappa;
  auto legs = leg_order(s.graph);
  for (std::size_t i = 0; i < legs.size(); ++i) s.psi[legs[i]] = pl[i];
  auto edges = s.graph.edge_list();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (pe[i].size() != 2) throw ValidationError("psi_edges entries are [p, q]");
    s.psi[edges[i]] = pe[i][0];
    s.psi[s.graph.partner[edges[i]]] = pe[i][1];
  }
  for (int p : s.psi)
    if (p < 0) throw ValidationError("negative psi exponent");
  return s;
}

Json class_to_json(const QClass& c) {
  Json j;
  j["genus"] = c.genus();
  j["markings"] = c.markings();
  Json terms = Json::array();
  for (const auto& [k, t] : c.terms()) {
    Json s = stratum_to_json(t.stratum);
    s["coeff"] = coeff_to_string(t.coeff);
    terms.push_back(s);
  }
  j["terms"] = terms;
  return j;
}

Json class_to_json(const PClass& c) {
  Json j;
  j["genus"] = c.genus();
  j["markings"] = c.markings();
  Json terms = Json::array();
  for (const auto& [k, t] : c.terms()) {
    Json s = stratum_to_json(t.stratum);
    s["coeff"] = coeff_to_string(t.coeff);
    terms.push_back(s);
  }
  j["terms"] = terms;
  return j;
}

QClass class_from_json(const Json& j) {
  QClass c(field<int>(j, "genus"), field<int>(j, "markings"));
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ValidationError("missing field 'terms'");
  for (const auto& t : j.at("terms")) c.add(stratum_from_json(t), parse_rational(field<std::string>(t, "coeff")));
  return c;
}

Json expression_to_json(const BoundaryExpression& b) {
  Json j;
  j["value"] = class_to_json(b.value);
  Json prov = Json::array();
  for (const auto& p : b.provenance) prov.push_back({p.relation, p.a_monomial, p.step});
  j["provenance"] = prov;
  return j;
}

BoundaryExpression expression_from_json(const Json& j) {
  BoundaryExpression b;
  if (!j.contains("value")) throw ValidationError("missing field 'value'");
  b.value = class_from_json(j.at("value"));
  for (const auto& p : field<std::vector<std::vector<std::string>>>(j, "provenance")) {
    if (p.size() != 3) throw ValidationError("provenance entries are [relation, a-monomial, step]");
    b.provenance.push_back({p[0], p[1], p[2]});
  }
  return b;
}

}  // namespace taut
