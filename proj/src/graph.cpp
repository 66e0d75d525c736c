#include "treecompat/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "treecompat/errors.hpp"

namespace treecompat {

Graph::Graph(int n) : n_(n), adj_(static_cast<size_t>(n)) {
    if (n < 0) throw InputError("graph size must be non-negative");
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (const auto& [u, v] : edges) add_edge(u, v);
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loops are not allowed");
    if (has_edge(u, v)) return;
    auto& au = adj_[u];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    Edge e = make_edge(u, v);
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(static_cast<size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

Graph Graph::with_edges(const std::vector<Edge>& extra) const {
    Graph g = *this;
    for (const auto& [u, v] : extra) g.add_edge(u, v);
    return g;
}

}  // namespace treecompat
