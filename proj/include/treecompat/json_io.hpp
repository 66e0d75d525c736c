#pragma once

#include <string>
#include <vector>

#include "treecompat/compatibility.hpp"
#include "treecompat/display_graph.hpp"
#include "treecompat/legality.hpp"

namespace treecompat {

/// Display-graph vertices carry stable names ("leaf.a", "t0.v3") so fill
/// edges and bags can be authored against the emitted graph.
std::string display_graph_to_json(const DisplayGraph& g);

/// {"fill": [["t0.v3","t1.v2"], ...]}
std::string fill_to_json(const DisplayGraph& g, const std::vector<Edge>& fill);
std::vector<Edge> fill_from_json(const DisplayGraph& g, const std::string& text);

/// {"nodes": [{"id": 0, "bag": ["leaf.a", ...]}], "edges": [[0,1], ...]}
std::string decomposition_to_json(const DisplayGraph& g, const TreeDecomposition& d);

std::string legality_report_to_json(const DisplayGraph& g, const LegalityReport& report,
                                    bool include_concise, bool concise);

std::string compat_report_to_json(const CompatReport& report, const Profile& p);

}  // namespace treecompat
