#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treecompat/graph.hpp"

namespace treecompat {

/// Tree of bags over the vertices of some graph. Nodes are 0..num_nodes()-1;
/// a single-node decomposition has no tree edges.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // each bag sorted ascending
    std::vector<Edge> tree_edges;        // over node ids, sorted

    int num_nodes() const { return static_cast<int>(bags.size()); }
};

/// A TreeDecomposition whose bags are exactly the maximal cliques of a
/// chordal graph (the bag/clique bijection is what build_clique_tree
/// guarantees and tests assert).
using CliqueTree = TreeDecomposition;

/// A chordal supergraph given as base graph plus fill edges.
struct Triangulation {
    Graph base;
    std::vector<Edge> fill;  // sorted, disjoint from base.edges()

    Graph filled() const { return base.with_edges(fill); }
};

/// Maximum-cardinality search. Returns the vertices in visit order; the
/// reverse visit order is a perfect elimination order iff the graph is
/// chordal.
std::vector<int> mcs_order(const Graph& g);

/// Elimination order (first-eliminated first) whose suffix-neighborhoods are
/// all cliques, or nullopt when the graph is not chordal.
std::optional<std::vector<int>> perfect_elimination_order(const Graph& g);

bool is_chordal(const Graph& g);

/// Maximal cliques of a chordal graph, each sorted, the list sorted
/// lexicographically. Throws InputError on non-chordal input.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

/// Clique tree of a connected chordal graph: bags are the maximal cliques,
/// tree edges form a maximum-weight spanning tree of the clique-intersection
/// graph (ties broken toward smaller node ids, so output is deterministic).
/// Throws InputError on non-chordal or disconnected input.
CliqueTree build_clique_tree(const Graph& g);

/// Violations of the three tree-decomposition properties. Empty == valid.
struct DecompositionReport {
    std::vector<int> uncovered_vertices;   // vertex coverage failures
    std::vector<Edge> uncovered_edges;     // edge coverage failures
    std::vector<int> incoherent_vertices;  // occurrence set not a subtree

    bool valid() const {
        return uncovered_vertices.empty() && uncovered_edges.empty() &&
               incoherent_vertices.empty();
    }
    std::string describe() const;
};

/// Diagnostic check of vertex coverage, edge coverage, and coherence.
/// Throws InputError if the decomposition's node graph is not a tree.
DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& d);

/// The fill consisting of every co-bagged non-edge; adding it to g yields a
/// chordal graph. Throws InputError when d is not a valid decomposition of g.
Triangulation triangulation_from_decomposition(const Graph& g, const TreeDecomposition& d);

/// max |bag| - 1.
int width(const TreeDecomposition& d);

}  // namespace treecompat
