#include "treecompat/json_io.hpp"

#include <algorithm>

#include <json.hpp>

#include "treecompat/errors.hpp"
#include "treecompat/newick.hpp"

namespace treecompat {

using nlohmann::json;

namespace {

json edge_names(const DisplayGraph& g, const Edge& e) {
    return json::array({g.vertex_name(e.first), g.vertex_name(e.second)});
}

json fill_json(const DisplayGraph& g, const std::vector<Edge>& fill) {
    json arr = json::array();
    for (const auto& e : fill) arr.push_back(edge_names(g, e));
    return arr;
}

json decomposition_json(const DisplayGraph& g, const TreeDecomposition& d) {
    json nodes = json::array();
    for (int x = 0; x < d.num_nodes(); ++x) {
        json bag = json::array();
        for (int v : d.bags[x]) bag.push_back(g.vertex_name(v));
        nodes.push_back({{"id", x}, {"bag", bag}});
    }
    json edges = json::array();
    for (const auto& [a, b] : d.tree_edges) edges.push_back(json::array({a, b}));
    return json{{"nodes", nodes}, {"edges", edges}};
}

/// Supertree vertices are named by label for leaves and "s<i>" otherwise.
std::string supertree_vertex_name(const PhyloTree& t, int v) {
    return t.is_leaf(v) ? t.label(v) : "s" + std::to_string(v);
}

/// Input-tree vertices: label for leaves, "v<i>" otherwise.
std::string input_vertex_name(const PhyloTree& t, int v) {
    return t.is_leaf(v) ? t.label(v) : "v" + std::to_string(v);
}

}  // namespace

std::string display_graph_to_json(const DisplayGraph& g) {
    json vertices = json::array();
    for (int v = 0; v < g.graph.num_vertices(); ++v) {
        const auto& info = g.vertices[v];
        json entry{{"id", g.vertex_name(v)}};
        if (info.leaf) {
            entry["kind"] = "leaf";
            entry["label"] = info.label;
        } else {
            entry["kind"] = "internal";
            entry["tree"] = info.tree_index;
            entry["vertex"] = info.tree_vertex;
        }
        vertices.push_back(entry);
    }
    json edges = json::array();
    for (size_t i = 0; i < g.graph.edges().size(); ++i) {
        const auto& [u, v] = g.graph.edges()[i];
        edges.push_back({{"u", g.vertex_name(u)},
                         {"v", g.vertex_name(v)},
                         {"tree", g.edge_info[i].tree_index},
                         {"internal", g.edge_info[i].internal}});
    }
    return json{{"vertices", vertices}, {"edges", edges}}.dump(2);
}

std::string fill_to_json(const DisplayGraph& g, const std::vector<Edge>& fill) {
    return json{{"fill", fill_json(g, fill)}}.dump(2);
}

std::vector<Edge> fill_from_json(const DisplayGraph& g, const std::string& text) {
    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("fill JSON: ") + e.what());
    }
    if (!parsed.is_object() || !parsed.contains("fill") || !parsed["fill"].is_array())
        throw ParseError("fill JSON: expected an object with a \"fill\" array");
    std::vector<Edge> out;
    for (const auto& entry : parsed["fill"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string())
            throw ParseError("fill JSON: each entry must be a pair of vertex names");
        auto u = g.vertex_by_name(entry[0].get<std::string>());
        auto v = g.vertex_by_name(entry[1].get<std::string>());
        if (!u) throw InputError("fill JSON: unknown vertex '" + entry[0].get<std::string>() + "'");
        if (!v) throw InputError("fill JSON: unknown vertex '" + entry[1].get<std::string>() + "'");
        out.push_back(make_edge(*u, *v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string decomposition_to_json(const DisplayGraph& g, const TreeDecomposition& d) {
    return decomposition_json(g, d).dump(2);
}

std::string legality_report_to_json(const DisplayGraph& g, const LegalityReport& report,
                                    bool include_concise, bool concise) {
    json conflicts = json::array();
    for (const auto& c : report.clique_conflicts) {
        json clique = json::array();
        for (int v : c.clique) clique.push_back(g.vertex_name(v));
        conflicts.push_back({{"clique", clique},
                             {"internal_edge", edge_names(g, c.internal_edge)},
                             {"other_edge", edge_names(g, c.other_edge)}});
    }
    json bad = json::array();
    for (const auto& e : report.bad_fill_edges) bad.push_back(edge_names(g, e));
    json out{{"legal", report.legal},
             {"clique_conflicts", conflicts},
             {"bad_fill_edges", bad}};
    if (include_concise) out["concise"] = concise;
    return out.dump(2);
}

std::string compat_report_to_json(const CompatReport& report, const Profile& p) {
    json out;
    out["compatible"] = report.compatible;
    out["stats"] = {{"candidates", report.stats.candidates},
                    {"subsets_examined", report.stats.subsets_examined},
                    {"elapsed_seconds", report.stats.elapsed_seconds}};
    if (!report.certificate.empty()) out["certificate"] = report.certificate;
    if (report.witness) {
        const auto& w = *report.witness;
        json witness;
        witness["supertree"] = write_tree(w.supertree);
        json embeddings = json::array();
        for (size_t i = 0; i < w.embeddings.size(); ++i) {
            const auto& phi = w.embeddings[i];
            json pairs = json::array();
            for (const auto& [s, t] : phi.map) {
                pairs.push_back(json::array({supertree_vertex_name(phi.source, s),
                                             input_vertex_name(phi.target, t)}));
            }
            embeddings.push_back({{"tree_index", i}, {"pairs", pairs}});
        }
        witness["embeddings"] = embeddings;
        if (w.triangulation || w.concise_triangulation || w.concise_decomposition) {
            DisplayGraph g = build_display_graph(preprocess_profile(p).kept);
            if (w.triangulation) witness["fill"] = fill_json(g, w.triangulation->fill);
            if (w.concise_triangulation)
                witness["concise_fill"] = fill_json(g, w.concise_triangulation->fill);
            if (w.concise_decomposition)
                witness["decomposition"] = decomposition_json(g, *w.concise_decomposition);
        }
        out["witness"] = witness;
    }
    return out.dump(2);
}

}  // namespace treecompat
