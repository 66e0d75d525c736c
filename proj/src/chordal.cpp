#include "treecompat/chordal.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "treecompat/errors.hpp"

namespace treecompat {

std::vector<int> mcs_order(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> weight(n, 0);
    std::vector<char> visited(n, 0);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        // Highest weight wins; ties go to the smallest id for determinism.
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!visited[v] && (best == -1 || weight[v] > weight[best])) best = v;
        }
        visited[best] = 1;
        order.push_back(best);
        for (int w : g.neighbors(best)) {
            if (!visited[w]) ++weight[w];
        }
    }
    return order;
}

std::optional<std::vector<int>> perfect_elimination_order(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> visit = mcs_order(g);
    std::vector<int> elim(visit.rbegin(), visit.rend());
    std::vector<int> pos(n);  // position in elimination order
    for (int i = 0; i < n; ++i) pos[elim[i]] = i;

    // Tarjan-Yannakakis: for each vertex it suffices to check that its later
    // neighborhood minus the first-eliminated member is contained in that
    // member's neighborhood.
    for (int i = 0; i < n; ++i) {
        int v = elim[i];
        int parent = -1;
        for (int w : g.neighbors(v)) {
            if (pos[w] > i && (parent == -1 || pos[w] < pos[parent])) parent = w;
        }
        if (parent == -1) continue;
        for (int w : g.neighbors(v)) {
            if (pos[w] > i && w != parent && !g.has_edge(parent, w)) return std::nullopt;
        }
    }
    return elim;
}

bool is_chordal(const Graph& g) { return perfect_elimination_order(g).has_value(); }

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
    auto peo = perfect_elimination_order(g);
    if (!peo) throw InputError("maximal_cliques: graph is not chordal");
    const int n = g.num_vertices();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[(*peo)[i]] = i;

    // Each vertex together with its later neighborhood is a clique; every
    // maximal clique arises this way.
    std::vector<std::vector<int>> candidates;
    candidates.reserve(n);
    for (int i = 0; i < n; ++i) {
        int v = (*peo)[i];
        std::vector<int> c{v};
        for (int w : g.neighbors(v)) {
            if (pos[w] > i) c.push_back(w);
        }
        std::sort(c.begin(), c.end());
        candidates.push_back(std::move(c));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::vector<int>> result;
    for (size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < candidates.size() && maximal; ++j) {
            if (i == j || candidates[j].size() <= candidates[i].size()) continue;
            maximal = !std::includes(candidates[j].begin(), candidates[j].end(),
                                     candidates[i].begin(), candidates[i].end());
        }
        if (maximal) result.push_back(candidates[i]);
    }
    return result;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

CliqueTree build_clique_tree(const Graph& g) {
    if (!g.is_connected()) throw InputError("build_clique_tree: graph is disconnected");
    auto cliques = maximal_cliques(g);  // throws if not chordal
    const int m = static_cast<int>(cliques.size());

    CliqueTree ct;
    ct.bags = cliques;
    if (m <= 1) return ct;

    // Kruskal on the clique-intersection graph, heaviest shared separator
    // first. The junction-tree property holds for any maximum-weight
    // spanning tree.
    struct Cand {
        int weight, a, b;
    };
    std::vector<Cand> cands;
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            std::vector<int> inter;
            std::set_intersection(cliques[a].begin(), cliques[a].end(), cliques[b].begin(),
                                  cliques[b].end(), std::back_inserter(inter));
            if (!inter.empty()) cands.push_back({static_cast<int>(inter.size()), a, b});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    UnionFind uf(m);
    for (const auto& c : cands) {
        if (uf.unite(c.a, c.b)) ct.tree_edges.push_back(make_edge(c.a, c.b));
    }
    std::sort(ct.tree_edges.begin(), ct.tree_edges.end());
    if (static_cast<int>(ct.tree_edges.size()) != m - 1)
        throw InternalError("clique-intersection graph of a connected chordal graph was disconnected");
    return ct;
}

namespace {

// BFS over decomposition tree edges restricted to `allowed` nodes.
bool occurrence_set_connected(const TreeDecomposition& d, const std::vector<char>& allowed) {
    int start = -1, count = 0;
    for (int x = 0; x < d.num_nodes(); ++x) {
        if (allowed[x]) {
            if (start == -1) start = x;
            ++count;
        }
    }
    if (count <= 1) return true;
    std::vector<std::vector<int>> adj(d.bags.size());
    for (const auto& [a, b] : d.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(d.bags.size(), 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x]) {
            if (allowed[y] && !seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == count;
}

void require_tree_shape(const TreeDecomposition& d) {
    const int m = d.num_nodes();
    if (m == 0) throw InputError("decomposition has no nodes");
    if (static_cast<int>(d.tree_edges.size()) != m - 1)
        throw InputError("decomposition node graph is not a tree");
    UnionFind uf(m);
    for (const auto& [a, b] : d.tree_edges) {
        if (a < 0 || b < 0 || a >= m || b >= m) throw InputError("decomposition edge out of range");
        if (!uf.unite(a, b)) throw InputError("decomposition node graph has a cycle");
    }
}

}  // namespace

std::string DecompositionReport::describe() const {
    if (valid()) return "valid";
    std::ostringstream os;
    if (!uncovered_vertices.empty()) {
        os << "uncovered vertices:";
        for (int v : uncovered_vertices) os << ' ' << v;
        os << "; ";
    }
    if (!uncovered_edges.empty()) {
        os << "uncovered edges:";
        for (const auto& [u, v] : uncovered_edges) os << " {" << u << ',' << v << '}';
        os << "; ";
    }
    if (!incoherent_vertices.empty()) {
        os << "incoherent vertices:";
        for (int v : incoherent_vertices) os << ' ' << v;
    }
    return os.str();
}

DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& d) {
    require_tree_shape(d);
    const int n = g.num_vertices();
    DecompositionReport report;

    std::vector<std::vector<char>> contains(d.bags.size(), std::vector<char>(n, 0));
    for (int x = 0; x < d.num_nodes(); ++x) {
        for (int v : d.bags[x]) {
            if (v < 0 || v >= n) throw InputError("bag member out of range");
            contains[x][v] = 1;
        }
    }

    for (int v = 0; v < n; ++v) {
        bool covered = false;
        std::vector<char> occ(d.bags.size(), 0);
        for (int x = 0; x < d.num_nodes(); ++x) {
            if (contains[x][v]) {
                covered = true;
                occ[x] = 1;
            }
        }
        if (!covered) report.uncovered_vertices.push_back(v);
        else if (!occurrence_set_connected(d, occ)) report.incoherent_vertices.push_back(v);
    }

    for (const auto& [u, v] : g.edges()) {
        bool covered = false;
        for (int x = 0; x < d.num_nodes() && !covered; ++x)
            covered = contains[x][u] && contains[x][v];
        if (!covered) report.uncovered_edges.push_back({u, v});
    }
    return report;
}

Triangulation triangulation_from_decomposition(const Graph& g, const TreeDecomposition& d) {
    auto report = validate_decomposition(g, d);
    if (!report.valid())
        throw InputError("triangulation_from_decomposition: invalid decomposition: " +
                         report.describe());
    std::set<Edge> fill;
    for (const auto& bag : d.bags) {
        for (size_t i = 0; i < bag.size(); ++i) {
            for (size_t j = i + 1; j < bag.size(); ++j) {
                if (!g.has_edge(bag[i], bag[j])) fill.insert(make_edge(bag[i], bag[j]));
            }
        }
    }
    return Triangulation{g, std::vector<Edge>(fill.begin(), fill.end())};
}

int width(const TreeDecomposition& d) {
    int w = -1;
    for (const auto& bag : d.bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

}  // namespace treecompat
