#include "treecompat/phylo_tree.hpp"

#include <algorithm>
#include <numeric>

#include "treecompat/errors.hpp"

namespace treecompat {

PhyloTree PhyloTree::from_edges(int num_vertices, const std::vector<Edge>& edges,
                                const std::map<int, std::string>& labels) {
    if (num_vertices < 1) throw InputError("tree needs at least one vertex");
    Graph g(num_vertices, edges);
    if (g.num_edges() != num_vertices - 1 || !g.is_connected())
        throw InputError("vertex/edge sets do not form a tree");

    PhyloTree t;
    t.adj_.resize(num_vertices);
    for (int v = 0; v < num_vertices; ++v) t.adj_[v] = g.neighbors(v);
    t.edges_ = g.edges();
    t.labels_.assign(num_vertices, "");

    std::set<std::string> seen;
    for (const auto& [v, name] : labels) {
        if (v < 0 || v >= num_vertices) throw InputError("labeled vertex out of range");
        if (name.empty()) throw InputError("empty leaf label");
        if (!seen.insert(name).second) throw InputError("duplicate leaf label '" + name + "'");
        t.labels_[v] = name;
        ++t.num_labeled_;
    }

    for (int v = 0; v < num_vertices; ++v) {
        int deg = t.degree(v);
        bool labeled = !t.labels_[v].empty();
        if (labeled && deg > 1)
            throw InputError("labeled vertex '" + t.labels_[v] + "' has degree " +
                             std::to_string(deg));
        if (!labeled && deg <= 2)
            throw InputError("unlabeled vertex " + std::to_string(v) + " has degree " +
                             std::to_string(deg));
    }
    return t;
}

std::optional<int> PhyloTree::vertex_of(const std::string& label) const {
    for (int v = 0; v < num_vertices(); ++v) {
        if (labels_[v] == label) return v;
    }
    return std::nullopt;
}

std::vector<std::string> PhyloTree::labels() const {
    std::vector<std::string> out;
    for (const auto& l : labels_) {
        if (!l.empty()) out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::string> PhyloTree::label_set() const {
    std::set<std::string> out;
    for (const auto& l : labels_) {
        if (!l.empty()) out.insert(l);
    }
    return out;
}

bool PhyloTree::has_edge(int u, int v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<Edge> PhyloTree::internal_edges() const {
    std::vector<Edge> out;
    for (const auto& e : edges_) {
        if (!is_leaf(e.first) && !is_leaf(e.second)) out.push_back(e);
    }
    return out;
}

std::vector<Split> nontrivial_splits(const PhyloTree& t) {
    auto all = t.labels();
    std::vector<Split> out;
    if (all.size() < 4) return out;
    const std::string& smallest = all.front();

    for (const auto& [u, v] : t.internal_edges()) {
        // Labels reachable from u without crossing {u,v}.
        std::set<std::string> side;
        std::vector<int> stack{u};
        std::vector<char> seen(t.num_vertices(), 0);
        seen[u] = 1;
        seen[v] = 1;  // block the edge
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (t.is_leaf(x)) side.insert(t.label(x));
            for (int w : t.neighbors(x)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        if (side.size() < 2 || all.size() - side.size() < 2) continue;
        if (!side.count(smallest)) {
            std::set<std::string> other(all.begin(), all.end());
            for (const auto& s : side) other.erase(s);
            side = std::move(other);
        }
        out.emplace_back(side.begin(), side.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

InducedSubtree induced_subtree_with_paths(const PhyloTree& t, const std::set<std::string>& labels) {
    if (labels.empty()) throw InputError("induced_subtree: empty label set");
    std::vector<char> wanted(t.num_vertices(), 0);
    for (const auto& name : labels) {
        auto v = t.vertex_of(name);
        if (!v) throw InputError("induced_subtree: unknown label '" + name + "'");
        wanted[*v] = 1;
    }

    // Prune to the minimal connecting subtree: repeatedly strip unwanted
    // degree-1 vertices.
    std::vector<int> deg(t.num_vertices());
    std::vector<char> alive(t.num_vertices(), 1);
    std::vector<int> queue;
    for (int v = 0; v < t.num_vertices(); ++v) {
        deg[v] = t.degree(v);
        if (deg[v] <= 1 && !wanted[v]) queue.push_back(v);
    }
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        alive[v] = 0;
        for (int w : t.neighbors(v)) {
            if (alive[w] && --deg[w] == 1 && !wanted[w]) queue.push_back(w);
        }
    }

    // Keep wanted leaves and branch points; suppress degree-2 pass-throughs.
    std::vector<int> kept;
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (alive[v] && (wanted[v] || deg[v] >= 3)) kept.push_back(v);
    }
    std::vector<int> new_id(t.num_vertices(), -1);
    for (size_t i = 0; i < kept.size(); ++i) new_id[kept[i]] = static_cast<int>(i);

    InducedSubtree result;
    result.origin = kept;

    std::vector<Edge> edges;
    std::map<Edge, std::vector<int>> paths;
    for (int v : kept) {
        for (int w : t.neighbors(v)) {
            if (!alive[w]) continue;
            // Walk away from v through suppressed vertices.
            std::vector<int> path{v, w};
            int prev = v, cur = w;
            while (new_id[cur] == -1) {
                int next = -1;
                for (int x : t.neighbors(cur)) {
                    if (alive[x] && x != prev) {
                        next = x;
                        break;
                    }
                }
                prev = cur;
                cur = next;
                path.push_back(cur);
            }
            if (v < cur) {  // record each path once, oriented small -> large
                Edge e = make_edge(new_id[v], new_id[cur]);
                edges.push_back(e);
                paths[e] = std::move(path);
            }
        }
    }

    std::map<int, std::string> result_labels;
    for (int v : kept) {
        if (t.is_leaf(v)) result_labels[new_id[v]] = t.label(v);
    }
    result.tree =
        PhyloTree::from_edges(static_cast<int>(kept.size()), edges, result_labels);
    for (const auto& e : result.tree.edges()) result.edge_paths.push_back(paths.at(e));
    return result;
}

PhyloTree induced_subtree(const PhyloTree& t, const std::set<std::string>& labels) {
    return induced_subtree_with_paths(t, labels).tree;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(b)] = find(a); }
};

}  // namespace

PhyloTree contract_edges(const PhyloTree& t, const std::vector<Edge>& es) {
    UnionFind uf(t.num_vertices());
    for (auto e : es) {
        e = make_edge(e.first, e.second);
        if (!t.has_edge(e.first, e.second))
            throw InputError("contract_edge: edge is not in the tree");
        if (t.is_leaf(e.first) || t.is_leaf(e.second))
            throw InputError("contract_edge: edge is incident to a labeled vertex");
        uf.unite(e.first, e.second);
    }

    std::vector<int> class_id(t.num_vertices(), -1);
    int next = 0;
    for (int v = 0; v < t.num_vertices(); ++v) {
        int r = uf.find(v);
        if (class_id[r] == -1) class_id[r] = next++;
        class_id[v] = class_id[r];
    }

    std::vector<Edge> edges;
    for (const auto& [u, v] : t.edges()) {
        if (class_id[u] != class_id[v]) edges.push_back(make_edge(class_id[u], class_id[v]));
    }
    std::map<int, std::string> labels;
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (t.is_leaf(v)) labels[class_id[v]] = t.label(v);
    }
    return PhyloTree::from_edges(next, edges, labels);
}

PhyloTree contract_edge(const PhyloTree& t, Edge e) { return contract_edges(t, {e}); }

bool displays(const PhyloTree& t, const PhyloTree& sub) {
    auto big = t.label_set();
    auto small = sub.label_set();
    for (const auto& name : small) {
        if (!big.count(name))
            throw InputError("displays: label '" + name + "' is not in the supertree");
    }
    PhyloTree restricted = induced_subtree(t, small);
    auto have = nontrivial_splits(restricted);
    for (const auto& s : nontrivial_splits(sub)) {
        if (!std::binary_search(have.begin(), have.end(), s)) return false;
    }
    return true;
}

namespace {

std::string subtree_form(const PhyloTree& t, int v, int parent) {
    if (t.is_leaf(v)) return "'" + t.label(v) + "'";
    std::vector<std::string> kids;
    for (int w : t.neighbors(v)) {
        if (w != parent) kids.push_back(subtree_form(t, w, v));
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ',';
        out += kids[i];
    }
    return out + ")";
}

int smallest_label_leaf(const PhyloTree& t) {
    int best = -1;
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (t.is_leaf(v) && (best == -1 || t.label(v) < t.label(best))) best = v;
    }
    return best;
}

bool match_subtrees(const PhyloTree& a, int va, int pa, const PhyloTree& b, int vb, int pb,
                    std::vector<int>& out) {
    if (a.is_leaf(va) != b.is_leaf(vb)) return false;
    if (a.is_leaf(va) && a.label(va) != b.label(vb)) return false;
    out[va] = vb;

    std::vector<std::pair<std::string, int>> ka, kb;
    for (int w : a.neighbors(va)) {
        if (w != pa) ka.emplace_back(subtree_form(a, w, va), w);
    }
    for (int w : b.neighbors(vb)) {
        if (w != pb) kb.emplace_back(subtree_form(b, w, vb), w);
    }
    if (ka.size() != kb.size()) return false;
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    for (size_t i = 0; i < ka.size(); ++i) {
        if (ka[i].first != kb[i].first) return false;
        if (!match_subtrees(a, ka[i].second, va, b, kb[i].second, vb, out)) return false;
    }
    return true;
}

}  // namespace

std::string canonical_form(const PhyloTree& t) {
    int root = smallest_label_leaf(t);
    if (t.num_vertices() == 1) return "'" + t.label(root) + "'";
    return "'" + t.label(root) + "'|" + subtree_form(t, t.neighbors(root)[0], root);
}

bool label_isomorphic(const PhyloTree& a, const PhyloTree& b) {
    return canonical_form(a) == canonical_form(b);
}

std::optional<std::vector<int>> isomorphism_map(const PhyloTree& a, const PhyloTree& b) {
    if (a.num_vertices() != b.num_vertices()) return std::nullopt;
    if (a.labels() != b.labels()) return std::nullopt;
    std::vector<int> map(a.num_vertices(), -1);
    int ra = smallest_label_leaf(a);
    int rb = smallest_label_leaf(b);
    if (a.num_vertices() == 1) {
        map[ra] = rb;
        return map;
    }
    map[ra] = rb;
    if (!match_subtrees(a, a.neighbors(ra)[0], ra, b, b.neighbors(rb)[0], rb, map))
        return std::nullopt;
    return map;
}

PreprocessedProfile preprocess_profile(const Profile& p) {
    if (p.trees.empty()) throw InputError("profile must contain at least one tree");
    PreprocessedProfile out;
    std::set<std::string> kept_labels, all;
    for (size_t i = 0; i < p.trees.size(); ++i) {
        const auto& t = p.trees[i];
        auto ls = t.label_set();
        all.insert(ls.begin(), ls.end());
        if (t.num_leaves() >= 3) {
            out.kept.trees.push_back(t);
            out.kept_indices.push_back(static_cast<int>(i));
            kept_labels.insert(ls.begin(), ls.end());
        }
    }
    for (const auto& name : all) {
        if (!kept_labels.count(name)) out.dropped_labels.push_back(name);
    }
    out.all_labels.assign(all.begin(), all.end());
    return out;
}

}  // namespace treecompat
