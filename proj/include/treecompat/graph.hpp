#pragma once

#include <utility>
#include <vector>

namespace treecompat {

/// Undirected edge, always stored with first() < second().
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Simple undirected graph over vertices 0..n-1. No loops, no multi-edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<Edge>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    /// Edges sorted lexicographically, each with u < v.
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;

    /// Inserting an existing edge is a no-op.
    void add_edge(int u, int v);

    bool is_connected() const;

    /// Copy of this graph with extra edges added.
    Graph with_edges(const std::vector<Edge>& extra) const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;  // each list sorted ascending
    std::vector<Edge> edges_;            // sorted lexicographically
};

}  // namespace treecompat
