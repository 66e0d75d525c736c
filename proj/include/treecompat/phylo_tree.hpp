#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treecompat/graph.hpp"

namespace treecompat {

/// Unrooted leaf-labeled tree. Labeled vertices are exactly the degree-1
/// vertices (degree 0 for the single-vertex tree); unlabeled vertices have
/// degree >= 3. Immutable after construction.
class PhyloTree {
public:
    /// Validates all invariants; throws InputError on violation.
    static PhyloTree from_edges(int num_vertices, const std::vector<Edge>& edges,
                                const std::map<int, std::string>& labels);

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    int num_leaves() const { return num_labeled_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool is_leaf(int v) const { return !labels_[v].empty(); }
    /// Empty string for internal vertices.
    const std::string& label(int v) const { return labels_[v]; }
    std::optional<int> vertex_of(const std::string& label) const;

    /// Leaf labels, sorted.
    std::vector<std::string> labels() const;
    std::set<std::string> label_set() const;

    bool has_edge(int u, int v) const;
    /// Edges whose endpoints are both unlabeled.
    std::vector<Edge> internal_edges() const;

    bool operator==(const PhyloTree& other) const {
        return edges_ == other.edges_ && labels_ == other.labels_;
    }

private:
    PhyloTree() = default;
    std::vector<std::vector<int>> adj_;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;  // "" = internal
    int num_labeled_ = 0;
};

/// A split of a tree's label set: the side containing the smallest label,
/// sorted. Two splits over the same label set are equal iff the vectors are.
using Split = std::vector<std::string>;

/// Nontrivial splits (both sides with >= 2 labels), one per internal edge,
/// as a lexicographically sorted list.
std::vector<Split> nontrivial_splits(const PhyloTree& t);

/// Minimal subtree connecting the leaves with the given labels, unlabeled
/// degree-2 vertices suppressed. Throws InputError on unknown labels or an
/// empty set.
PhyloTree induced_subtree(const PhyloTree& t, const std::set<std::string>& labels);

/// induced_subtree plus provenance: which original vertex each result vertex
/// came from, and for every result edge the path of original vertices it
/// abbreviates (endpoints included, ordered from origin[u] to origin[v] for
/// result edge {u,v} with u < v).
struct InducedSubtree {
    PhyloTree tree;
    std::vector<int> origin;
    std::vector<std::vector<int>> edge_paths;  // parallel to tree.edges()
};
InducedSubtree induced_subtree_with_paths(const PhyloTree& t, const std::set<std::string>& labels);

/// Merge the endpoints of an internal edge. Throws InputError if either
/// endpoint is labeled or the edge is absent.
PhyloTree contract_edge(const PhyloTree& t, Edge e);

/// Contract a set of internal edges at once (quotient by their classes).
PhyloTree contract_edges(const PhyloTree& t, const std::vector<Edge>& es);

/// True iff `sub` can be obtained from t restricted to sub's labels by
/// contracting internal edges. Decided by the split criterion: every
/// nontrivial split of sub must be a split of the restriction. Throws
/// InputError when sub's labels are not contained in t's.
bool displays(const PhyloTree& t, const PhyloTree& sub);

/// Canonical form rooted at the smallest label; equal strings <=> the trees
/// are label-preserving isomorphic.
std::string canonical_form(const PhyloTree& t);

bool label_isomorphic(const PhyloTree& a, const PhyloTree& b);

/// Vertex correspondence realizing the label-preserving isomorphism a -> b,
/// or nullopt. The matching is unique because sibling subtrees carry
/// distinct label sets.
std::optional<std::vector<int>> isomorphism_map(const PhyloTree& a, const PhyloTree& b);

/// Ordered collection of input trees.
struct Profile {
    std::vector<PhyloTree> trees;
};

/// Trees with fewer than three leaves impose no topological constraint and
/// are removed before building the display graph; their labels are kept so
/// the supertree still covers them.
struct PreprocessedProfile {
    Profile kept;
    std::vector<int> kept_indices;           // kept position -> original index
    std::vector<std::string> dropped_labels; // labels only seen in dropped trees
    std::vector<std::string> all_labels;     // union over the original profile
};
PreprocessedProfile preprocess_profile(const Profile& p);

}  // namespace treecompat
