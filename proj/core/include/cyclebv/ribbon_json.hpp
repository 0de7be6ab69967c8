#pragma once

#include <json.hpp>

#include "cyclebv/ribbon.hpp"
#include "cyclebv/ribbon_enumerate.hpp"

namespace cyclebv {

// Graph exchange format (half-edge labels are 1-based in JSON):
//   {"halfedges": 2E, "alpha": [[h, h'], ...],
//    "vertices": [{"g": genus, "cycles": [[h, ...], ...]}, ...]}
nlohmann::json graph_to_json(const StableRibbonGraph& g);

// Parses the exchange format; throws std::invalid_argument with a
// description when the document is malformed.  Structural graph invariants
// are checked by the caller via graph_violation.
StableRibbonGraph graph_from_json(const nlohmann::json& j);

// List of graph objects extended with {"aut", "chi", "gamma", "nu"}.
nlohmann::json inventory_to_json(const GraphInventory& inventory);

}  // namespace cyclebv
