#include "treecompat/extraction.hpp"

#include <algorithm>
#include <set>

#include "treecompat/errors.hpp"

namespace treecompat {

NormalizedTree normalize_supertree_with_map(const LabeledTree& raw) {
    const int n = static_cast<int>(raw.adj.size());
    std::vector<std::set<int>> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = std::set<int>(raw.adj[v].begin(), raw.adj[v].end());
    std::vector<char> alive(n, 1);

    int labeled = 0;
    for (int v = 0; v < n; ++v) {
        bool has_label = !raw.labels[v].empty();
        labeled += has_label;
        if (has_label && adj[v].size() > 1)
            throw InternalError("normalize_supertree: labeled vertex has degree > 1");
    }
    if (labeled == 0) throw InternalError("normalize_supertree: no labeled vertices");

    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || !raw.labels[v].empty()) continue;
            if (adj[v].size() <= 1) {
                for (int w : adj[v]) adj[w].erase(v);
                adj[v].clear();
                alive[v] = 0;
                changed = true;
            } else if (adj[v].size() == 2) {
                auto it = adj[v].begin();
                int a = *it++;
                int b = *it;
                adj[a].erase(v);
                adj[b].erase(v);
                adj[a].insert(b);
                adj[b].insert(a);
                adj[v].clear();
                alive[v] = 0;
                changed = true;
            }
        }
    }

    NormalizedTree out;
    out.new_id.assign(n, -1);
    int count = 0;
    for (int v = 0; v < n; ++v) {
        if (alive[v]) out.new_id[v] = count++;
    }
    std::vector<Edge> edges;
    std::map<int, std::string> labels;
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        if (!raw.labels[v].empty()) labels[out.new_id[v]] = raw.labels[v];
        for (int w : adj[v]) {
            if (v < w) edges.push_back(make_edge(out.new_id[v], out.new_id[w]));
        }
    }
    out.tree = PhyloTree::from_edges(count, edges, labels);
    return out;
}

PhyloTree normalize_supertree(const LabeledTree& raw) {
    return normalize_supertree_with_map(raw).tree;
}

namespace {

struct Builder {
    std::vector<std::set<int>> adj;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> bags;  // display-vertex content backing each node
    std::vector<char> alive;
    std::vector<std::map<int, int>> phi;  // per input tree: node -> tree vertex

    int add_node(std::vector<int> bag) {
        adj.emplace_back();
        labels.emplace_back();
        bags.push_back(std::move(bag));
        alive.push_back(1);
        return static_cast<int>(adj.size()) - 1;
    }
    void connect(int a, int b) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    void disconnect(int a, int b) {
        adj[a].erase(b);
        adj[b].erase(a);
    }
    bool bag_has(int node, int display_vertex) const {
        const auto& b = bags[node];
        return std::binary_search(b.begin(), b.end(), display_vertex);
    }
};

}  // namespace

ExtractionResult extract_supertree(const DisplayGraph& g, const CliqueTree& ct) {
    for (const auto& t : g.trees) {
        if (t.num_leaves() < 3)
            throw InputError("extract_supertree: profile must be preprocessed "
                             "(trees with fewer than three leaves removed)");
    }

    Triangulation tri = triangulation_from_decomposition(g.graph, ct);
    if (!check_legal(g, tri).legal)
        throw InputError("extract_supertree: triangulation is not legal");
    if (!check_concise(g, tri))
        throw InputError("extract_supertree: triangulation is not concise");
    {
        auto cliques = maximal_cliques(g.graph.with_edges(tri.fill));
        auto bags = ct.bags;
        std::sort(bags.begin(), bags.end());
        if (bags != cliques)
            throw InputError("extract_supertree: bags are not the maximal cliques of base+fill");
    }

    const int k = static_cast<int>(g.trees.size());
    Builder b;
    b.phi.resize(k);
    for (const auto& bag : ct.bags) b.add_node(bag);
    for (const auto& [x, y] : ct.tree_edges) b.connect(x, y);

    const int original_nodes = ct.num_nodes();
    for (int x = 0; x < original_nodes; ++x) {
        const auto& bag = ct.bags[x];

        std::vector<int> labeled_members;
        for (int v : bag) {
            if (g.vertices[v].leaf) labeled_members.push_back(v);
        }
        // Original edges fully inside the bag, split by kind.
        std::vector<size_t> internal_inside, inside;
        for (size_t i = 0; i < g.graph.edges().size(); ++i) {
            const auto& [u, v] = g.graph.edges()[i];
            if (b.bag_has(x, u) && b.bag_has(x, v)) {
                inside.push_back(i);
                if (g.edge_info[i].internal) internal_inside.push_back(i);
            }
        }

        if (!labeled_members.empty() && !internal_inside.empty())
            throw InternalError("extract_supertree: bag holds both a leaf and an internal edge");

        if (!labeled_members.empty()) {
            // A labeled vertex grows its own leaf; every tree that owns the
            // label maps the bag onto the leaf's neighbor.
            if (labeled_members.size() > 1)
                throw InternalError("extract_supertree: bag holds two labeled vertices");
            int v = labeled_members.front();
            if (bags_containing(ct, v).size() != 1)
                throw InternalError("extract_supertree: leaf occurs in several bags");
            const std::string& name = g.vertices[v].label;
            int leaf_node = b.add_node({});
            b.labels[leaf_node] = name;
            b.connect(x, leaf_node);
            for (int i = 0; i < k; ++i) {
                auto tv = g.trees[i].vertex_of(name);
                if (!tv) continue;
                int neighbor = g.trees[i].neighbors(*tv)[0];
                if (!b.bag_has(x, g.display_of(i, neighbor)))
                    throw InternalError("extract_supertree: leaf neighbor missing from its bag");
                b.phi[i][leaf_node] = *tv;
                b.phi[i][x] = neighbor;
            }
            // The remaining bag members must be exactly those neighbors.
            for (int w : bag) {
                if (w == v) continue;
                const auto& info = g.vertices[w];
                if (info.leaf || !g.graph.has_edge(v, w))
                    throw InternalError("extract_supertree: unexpected bag member next to a leaf");
            }
        } else if (!internal_inside.empty()) {
            // Exactly one internal edge: split the node in two.
            if (inside.size() != 1)
                throw InternalError("extract_supertree: bag holds several original edges");
            size_t ei = internal_inside.front();
            const auto [du, dv] = g.graph.edges()[ei];
            int tree = g.edge_info[ei].tree_index;
            if (bags_containing(ct, Edge{du, dv}).size() != 1)
                throw InternalError("extract_supertree: internal edge occurs in several bags");

            int xu = b.add_node(b.bags[x]);
            int xv = b.add_node(b.bags[x]);
            b.connect(xu, xv);
            std::vector<int> neighbors(b.adj[x].begin(), b.adj[x].end());
            for (int y : neighbors) {
                b.disconnect(x, y);
                if (b.bag_has(y, du) && b.bag_has(y, dv))
                    throw InternalError("extract_supertree: edge endpoints shared with a neighbor bag");
                if (b.bag_has(y, du)) b.connect(xu, y);
                else if (b.bag_has(y, dv)) b.connect(xv, y);
                else b.connect(xu, y);  // unconstrained neighbors go to the u side
            }
            b.alive[x] = 0;
            b.phi[tree][xu] = g.vertices[du].tree_vertex;
            b.phi[tree][xv] = g.vertices[dv].tree_vertex;
            // Vertices of other trees sit in this bag as single internal
            // vertices; both halves keep mapping onto them so preimages
            // stay connected.
            for (int w : bag) {
                if (w == du || w == dv) continue;
                const auto& info = g.vertices[w];
                if (info.leaf || info.tree_index == tree)
                    throw InternalError("extract_supertree: stray same-tree vertex beside an edge");
                b.phi[info.tree_index][xu] = info.tree_vertex;
                b.phi[info.tree_index][xv] = info.tree_vertex;
            }
        } else {
            // At most one vertex per tree: map the node straight onto them.
            std::set<int> trees_seen;
            for (int w : bag) {
                const auto& info = g.vertices[w];
                if (!trees_seen.insert(info.tree_index).second)
                    throw InternalError("extract_supertree: two vertices of one tree share a bag");
                b.phi[info.tree_index][x] = info.tree_vertex;
            }
        }
    }

    // Compact away nodes removed by splitting.
    LabeledTree raw;
    std::vector<int> dense(b.adj.size(), -1);
    for (size_t v = 0; v < b.adj.size(); ++v) {
        if (b.alive[v]) {
            dense[v] = static_cast<int>(raw.adj.size());
            raw.adj.emplace_back();
            raw.labels.push_back(b.labels[v]);
        }
    }
    for (size_t v = 0; v < b.adj.size(); ++v) {
        if (!b.alive[v]) continue;
        for (int w : b.adj[v]) {
            if (!b.alive[w]) throw InternalError("extract_supertree: edge to a removed node");
            raw.adj[dense[v]].push_back(dense[w]);
        }
    }

    std::vector<std::map<int, int>> phi(k);
    for (int i = 0; i < k; ++i) {
        for (const auto& [node, tv] : b.phi[i]) {
            if (b.alive[node]) phi[i][dense[node]] = tv;
        }
    }

    // The construction is re-verified rather than trusted: first on the raw
    // tree, then on the normalized supertree.
    for (int i = 0; i < k; ++i) {
        std::string why;
        if (!verify_embedding_raw(raw.adj, raw.labels, g.trees[i], phi[i], &why))
            throw InternalError("extract_supertree: raw embedding for tree " + std::to_string(i) +
                                " fails: " + why);
    }

    NormalizedTree normalized = normalize_supertree_with_map(raw);

    ExtractionResult result{normalized.tree, {}};
    for (int i = 0; i < k; ++i) {
        EmbeddingFunction f;
        f.source = normalized.tree;
        f.target = g.trees[i];
        for (const auto& [node, tv] : phi[i]) {
            if (normalized.new_id[node] != -1) f.map[normalized.new_id[node]] = tv;
        }
        std::string why;
        if (!verify_embedding(f, &why))
            throw InternalError("extract_supertree: embedding for tree " + std::to_string(i) +
                                " fails after normalization: " + why);
        if (!displays(normalized.tree, g.trees[i]))
            throw InternalError("extract_supertree: supertree does not display tree " +
                                std::to_string(i));
        result.embeddings.push_back(std::move(f));
    }
    return result;
}

}  // namespace treecompat
