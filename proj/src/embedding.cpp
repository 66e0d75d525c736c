#include "treecompat/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "treecompat/errors.hpp"

namespace treecompat {

namespace {

bool fail(std::string* why, const std::string& message) {
    if (why) *why = message;
    return false;
}

}  // namespace

bool verify_embedding_raw(const std::vector<std::vector<int>>& source_adj,
                          const std::vector<std::string>& source_labels,
                          const PhyloTree& target, const std::map<int, int>& map,
                          std::string* why) {
    const int ns = static_cast<int>(source_adj.size());
    const int nt = target.num_vertices();

    std::vector<std::vector<int>> preimage(nt);
    for (const auto& [s, t] : map) {
        if (s < 0 || s >= ns) return fail(why, "map domain vertex out of range");
        if (t < 0 || t >= nt) return fail(why, "map value out of range");
        preimage[t].push_back(s);
    }

    // Surjectivity.
    for (int t = 0; t < nt; ++t) {
        if (preimage[t].empty())
            return fail(why, "target vertex " + std::to_string(t) + " has no preimage");
    }

    // Label preservation: a labeled source vertex in the domain must map to
    // a vertex with the same label.
    for (const auto& [s, t] : map) {
        if (!source_labels[s].empty() && source_labels[s] != target.label(t))
            return fail(why, "label '" + source_labels[s] + "' maps to a different label");
    }

    // Connected preimages.
    for (int t = 0; t < nt; ++t) {
        const auto& pre = preimage[t];
        std::set<int> members(pre.begin(), pre.end());
        std::vector<int> stack{pre.front()};
        std::set<int> reached{pre.front()};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : source_adj[v]) {
                if (members.count(w) && !reached.count(w)) {
                    reached.insert(w);
                    stack.push_back(w);
                }
            }
        }
        if (reached.size() != members.size())
            return fail(why, "preimage of target vertex " + std::to_string(t) +
                                 " is disconnected");
    }

    // Unique edge preimages: count source edges crossing each target edge.
    std::map<Edge, int> crossing;
    for (int v = 0; v < ns; ++v) {
        auto mv = map.find(v);
        if (mv == map.end()) continue;
        for (int w : source_adj[v]) {
            if (w <= v) continue;
            auto mw = map.find(w);
            if (mw == map.end()) continue;
            if (mv->second != mw->second) ++crossing[make_edge(mv->second, mw->second)];
        }
    }
    for (const auto& [u, v] : target.edges()) {
        auto it = crossing.find(make_edge(u, v));
        int count = it == crossing.end() ? 0 : it->second;
        if (count != 1)
            return fail(why, "target edge {" + std::to_string(u) + "," + std::to_string(v) +
                                 "} has " + std::to_string(count) + " edge preimages");
    }
    // A crossing pair that is not a target edge breaks the quotient.
    for (const auto& [e, count] : crossing) {
        (void)count;
        if (!target.has_edge(e.first, e.second))
            return fail(why, "source edge maps onto the non-adjacent pair {" +
                                 std::to_string(e.first) + "," + std::to_string(e.second) + "}");
    }
    return true;
}

bool verify_embedding(const EmbeddingFunction& phi, std::string* why) {
    std::vector<std::vector<int>> adj(phi.source.num_vertices());
    std::vector<std::string> labels(phi.source.num_vertices());
    for (int v = 0; v < phi.source.num_vertices(); ++v) {
        adj[v] = phi.source.neighbors(v);
        labels[v] = phi.source.label(v);
    }
    return verify_embedding_raw(adj, labels, phi.target, phi.map, why);
}

std::optional<EmbeddingFunction> compute_embedding(const PhyloTree& t, const PhyloTree& ti) {
    if (!displays(t, ti)) return std::nullopt;  // also validates label containment

    InducedSubtree restricted = induced_subtree_with_paths(t, ti.label_set());
    const PhyloTree& r = restricted.tree;

    // Contract the internal edges of the restriction whose split does not
    // occur in the target; the quotient is then isomorphic to the target.
    auto target_splits = nontrivial_splits(ti);
    auto split_of_edge = [&](Edge e) -> Split {
        // Split induced by removing e from r.
        std::vector<char> seen(r.num_vertices(), 0);
        seen[e.first] = seen[e.second] = 1;
        std::set<std::string> side;
        std::vector<int> stack{e.first};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (r.is_leaf(x)) side.insert(r.label(x));
            for (int w : r.neighbors(x)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        auto all = r.labels();
        if (!side.count(all.front())) {
            std::set<std::string> other(all.begin(), all.end());
            for (const auto& s : side) other.erase(s);
            side = std::move(other);
        }
        return Split(side.begin(), side.end());
    };

    std::vector<Edge> to_contract;
    for (const auto& e : r.internal_edges()) {
        if (!std::binary_search(target_splits.begin(), target_splits.end(), split_of_edge(e)))
            to_contract.push_back(e);
    }

    // Contraction classes over the restriction's vertices.
    std::vector<int> parent(r.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [u, v] : to_contract) parent[find(v)] = find(u);

    PhyloTree quotient = contract_edges(r, to_contract);
    // contract_edges numbers classes by first appearance in vertex order.
    std::vector<int> class_id(r.num_vertices(), -1);
    {
        std::vector<int> root_class(r.num_vertices(), -1);
        int next = 0;
        for (int v = 0; v < r.num_vertices(); ++v) {
            int root = find(v);
            if (root_class[root] == -1) root_class[root] = next++;
            class_id[v] = root_class[root];
        }
    }

    auto match = isomorphism_map(quotient, ti);
    if (!match)
        throw InternalError("compute_embedding: quotient is not isomorphic to the target");

    EmbeddingFunction phi;
    phi.source = t;
    phi.target = ti;
    for (int v = 0; v < r.num_vertices(); ++v)
        phi.map[restricted.origin[v]] = (*match)[class_id[v]];

    // Suppressed path vertices join the class of the path's first endpoint;
    // this keeps preimages connected and leaves one crossing edge per path.
    for (size_t i = 0; i < r.edges().size(); ++i) {
        const auto& path = restricted.edge_paths[i];
        int image = (*match)[class_id[r.edges()[i].first]];
        for (size_t j = 1; j + 1 < path.size(); ++j) phi.map[path[j]] = image;
    }
    return phi;
}

}  // namespace treecompat
