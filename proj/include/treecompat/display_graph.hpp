#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treecompat/graph.hpp"
#include "treecompat/phylo_tree.hpp"

namespace treecompat {

struct DisplayVertex {
    bool leaf = false;
    std::string label;    // set for leaves
    int tree_index = -1;  // set for internal vertices
    int tree_vertex = -1; // vertex id within the origin tree
};

struct DisplayEdgeInfo {
    int tree_index = -1;
    bool internal = false;  // both endpoints internal in the origin tree
};

/// Union of the profile's trees with same-label leaves identified.
/// Vertices 0..k-1 are the leaves (one per distinct label, in label order);
/// internal vertices follow, grouped by tree.
struct DisplayGraph {
    Graph graph;
    std::vector<DisplayVertex> vertices;
    std::vector<DisplayEdgeInfo> edge_info;          // parallel to graph.edges()
    std::vector<std::vector<int>> tree_to_display;   // per tree: tree vertex -> display vertex
    std::map<std::string, int> leaf_by_label;
    std::vector<PhyloTree> trees;                    // the profile the graph was built from

    bool is_leaf_vertex(int v) const { return vertices[v].leaf; }
    int display_of(int tree, int vertex) const { return tree_to_display[tree][vertex]; }

    /// Stable identifier: "leaf.<label>" or "t<tree>.v<vertex>".
    std::string vertex_name(int v) const;
    std::optional<int> vertex_by_name(const std::string& name) const;

    /// Info record for the edge {u,v}; throws InputError if absent.
    const DisplayEdgeInfo& info_for_edge(int u, int v) const;
};

DisplayGraph build_display_graph(const Profile& p);

/// The non-leaf vertices, ascending.
std::vector<int> internal_vertices(const DisplayGraph& g);

/// All non-adjacent pairs of internal vertices from different trees —
/// the only chords a legal triangulation may use.
std::vector<Edge> candidate_fill_edges(const DisplayGraph& g);

/// Profiles whose label-overlap graph is disconnected split into
/// independent sub-profiles; compatibility is decided per component.
struct ProfileComponent {
    Profile profile;
    std::vector<int> original_indices;  // position -> index in the input profile
};
std::vector<ProfileComponent> profile_components(const Profile& p);

}  // namespace treecompat
