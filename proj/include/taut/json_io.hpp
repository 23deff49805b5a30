// JSON forms of graphs, strata and classes.
#pragma once

#include <json.hpp>

#include "taut/relations.hpp"
#include "taut/strata.hpp"

namespace taut {

using Json = nlohmann::json;

// {"genera": [...], "legs": [[label, v], ...], "edges": [[[u, i], [w, j]], ...]}
// where i is the position of the half-edge among the half-edges at u.
Json graph_to_json(const StableGraph& g);
StableGraph graph_from_json(const Json& j);

// {"graph": ..., "kappa": [[e1, e2, ...] per vertex], "psi_legs": [...],
//  "psi_edges": [[p, q] per edge]}
Json stratum_to_json(const Stratum& s);
Stratum stratum_from_json(const Json& j);

Json class_to_json(const QClass& c);
QClass class_from_json(const Json& j);
Json class_to_json(const PClass& c);

Json expression_to_json(const BoundaryExpression& b);
BoundaryExpression expression_from_json(const Json& j);

}  // namespace taut
