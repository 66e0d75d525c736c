#include "treecompat/display_graph.hpp"

#include <algorithm>
#include <numeric>

#include "treecompat/errors.hpp"

namespace treecompat {

std::string DisplayGraph::vertex_name(int v) const {
    const auto& info = vertices[v];
    if (info.leaf) return "leaf." + info.label;
    return "t" + std::to_string(info.tree_index) + ".v" + std::to_string(info.tree_vertex);
}

std::optional<int> DisplayGraph::vertex_by_name(const std::string& name) const {
    if (name.rfind("leaf.", 0) == 0) {
        auto it = leaf_by_label.find(name.substr(5));
        if (it == leaf_by_label.end()) return std::nullopt;
        return it->second;
    }
    if (!name.empty() && name[0] == 't') {
        auto dot = name.find(".v");
        if (dot == std::string::npos) return std::nullopt;
        try {
            int tree = std::stoi(name.substr(1, dot - 1));
            int vertex = std::stoi(name.substr(dot + 2));
            if (tree < 0 || tree >= static_cast<int>(tree_to_display.size())) return std::nullopt;
            if (vertex < 0 || vertex >= static_cast<int>(tree_to_display[tree].size()))
                return std::nullopt;
            int id = tree_to_display[tree][vertex];
            if (vertices[id].leaf) return std::nullopt;  // leaves are addressed by label
            return id;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

const DisplayEdgeInfo& DisplayGraph::info_for_edge(int u, int v) const {
    Edge e = make_edge(u, v);
    const auto& es = graph.edges();
    auto it = std::lower_bound(es.begin(), es.end(), e);
    if (it == es.end() || *it != e) throw InputError("edge is not in the display graph");
    return edge_info[static_cast<size_t>(it - es.begin())];
}

DisplayGraph build_display_graph(const Profile& p) {
    if (p.trees.empty()) throw InputError("display graph of an empty profile");
    DisplayGraph g;
    g.trees = p.trees;

    std::set<std::string> labels;
    for (const auto& t : p.trees) {
        auto ls = t.label_set();
        labels.insert(ls.begin(), ls.end());
    }
    for (const auto& name : labels) {
        int id = static_cast<int>(g.vertices.size());
        g.leaf_by_label[name] = id;
        g.vertices.push_back({true, name, -1, -1});
    }

    g.tree_to_display.resize(p.trees.size());
    for (size_t i = 0; i < p.trees.size(); ++i) {
        const auto& t = p.trees[i];
        g.tree_to_display[i].assign(t.num_vertices(), -1);
        for (int v = 0; v < t.num_vertices(); ++v) {
            if (t.is_leaf(v)) {
                g.tree_to_display[i][v] = g.leaf_by_label.at(t.label(v));
            } else {
                g.tree_to_display[i][v] = static_cast<int>(g.vertices.size());
                g.vertices.push_back({false, "", static_cast<int>(i), v});
            }
        }
    }

    g.graph = Graph(static_cast<int>(g.vertices.size()));
    std::map<Edge, DisplayEdgeInfo> info;
    for (size_t i = 0; i < p.trees.size(); ++i) {
        const auto& t = p.trees[i];
        for (const auto& [u, v] : t.edges()) {
            Edge e = make_edge(g.tree_to_display[i][u], g.tree_to_display[i][v]);
            g.graph.add_edge(e.first, e.second);
            info[e] = {static_cast<int>(i), !t.is_leaf(u) && !t.is_leaf(v)};
        }
    }
    for (const auto& e : g.graph.edges()) g.edge_info.push_back(info.at(e));
    return g;
}

std::vector<int> internal_vertices(const DisplayGraph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.graph.num_vertices(); ++v) {
        if (!g.vertices[v].leaf) out.push_back(v);
    }
    return out;
}

std::vector<Edge> candidate_fill_edges(const DisplayGraph& g) {
    auto internals = internal_vertices(g);
    std::vector<Edge> out;
    for (size_t i = 0; i < internals.size(); ++i) {
        for (size_t j = i + 1; j < internals.size(); ++j) {
            int p = internals[i], q = internals[j];
            if (g.vertices[p].tree_index == g.vertices[q].tree_index) continue;
            if (g.graph.has_edge(p, q)) continue;
            out.push_back(make_edge(p, q));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProfileComponent> profile_components(const Profile& p) {
    const int k = static_cast<int>(p.trees.size());
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::map<std::string, int> first_tree_with;
    for (int i = 0; i < k; ++i) {
        for (const auto& name : p.trees[i].labels()) {
            auto [it, inserted] = first_tree_with.emplace(name, i);
            if (!inserted) parent[find(i)] = find(it->second);
        }
    }

    std::map<int, ProfileComponent> comps;
    for (int i = 0; i < k; ++i) {
        auto& c = comps[find(i)];
        c.profile.trees.push_back(p.trees[i]);
        c.original_indices.push_back(i);
    }
    std::vector<ProfileComponent> out;
    for (auto& [root, c] : comps) out.push_back(std::move(c));
    return out;
}

}  // namespace treecompat
