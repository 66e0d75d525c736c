#include "treecompat/legality.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <functional>
#include <set>

#include "treecompat/errors.hpp"

namespace treecompat {

namespace {

std::vector<Edge> normalized_fill(const DisplayGraph& g, const Triangulation& t) {
    if (!(t.base == g.graph))
        throw InputError("triangulation base does not match the display graph");
    std::vector<Edge> fill = t.fill;
    for (auto& e : fill) e = make_edge(e.first, e.second);
    std::sort(fill.begin(), fill.end());
    fill.erase(std::unique(fill.begin(), fill.end()), fill.end());
    for (const auto& [u, v] : fill) {
        if (u < 0 || v < 0 || u >= g.graph.num_vertices() || v >= g.graph.num_vertices())
            throw InputError("fill edge endpoint out of range");
        if (g.graph.has_edge(u, v)) throw InputError("fill edge duplicates a graph edge");
    }
    return fill;
}

}  // namespace

LegalityReport check_legal(const DisplayGraph& g, const Triangulation& t) {
    std::vector<Edge> fill = normalized_fill(g, t);
    Graph filled = g.graph.with_edges(fill);
    if (!is_chordal(filled)) throw InputError("check_legal: base+fill is not chordal");

    LegalityReport report;

    // Checking maximal cliques suffices: any clique extends to a maximal one.
    for (const auto& clique : maximal_cliques(filled)) {
        std::vector<char> in(filled.num_vertices(), 0);
        for (int v : clique) in[v] = 1;
        std::vector<Edge> inside;
        std::vector<char> inside_internal;
        for (size_t i = 0; i < g.graph.edges().size(); ++i) {
            const auto& [u, v] = g.graph.edges()[i];
            if (in[u] && in[v]) {
                inside.push_back({u, v});
                inside_internal.push_back(g.edge_info[i].internal);
            }
        }
        for (size_t i = 0; i < inside.size(); ++i) {
            if (!inside_internal[i]) continue;
            for (size_t j = 0; j < inside.size(); ++j) {
                if (i == j) continue;
                if (inside_internal[j] && j < i) continue;  // report internal pairs once
                report.clique_conflicts.push_back({clique, inside[i], inside[j]});
            }
        }
    }

    for (const auto& [u, v] : fill) {
        const auto& iu = g.vertices[u];
        const auto& iv = g.vertices[v];
        if (iu.leaf || iv.leaf || iu.tree_index == iv.tree_index)
            report.bad_fill_edges.push_back({u, v});
    }

    report.legal = report.clique_conflicts.empty() && report.bad_fill_edges.empty();
    return report;
}

bool check_concise(const DisplayGraph& g, const Triangulation& t) {
    if (!check_legal(g, t).legal) throw InputError("check_concise: triangulation is not legal");
    auto cliques = maximal_cliques(g.graph.with_edges(t.fill));

    auto occurrences = [&](auto pred) {
        int count = 0;
        for (const auto& clique : cliques) {
            if (pred(clique)) ++count;
        }
        return count;
    };

    for (size_t i = 0; i < g.graph.edges().size(); ++i) {
        if (!g.edge_info[i].internal) continue;
        const auto [u, v] = g.graph.edges()[i];
        int n = occurrences([&](const std::vector<int>& c) {
            return std::binary_search(c.begin(), c.end(), u) &&
                   std::binary_search(c.begin(), c.end(), v);
        });
        if (n != 1) return false;
    }
    for (int v = 0; v < g.graph.num_vertices(); ++v) {
        if (!g.vertices[v].leaf) continue;
        int n = occurrences(
            [&](const std::vector<int>& c) { return std::binary_search(c.begin(), c.end(), v); });
        if (n != 1) return false;
    }
    return true;
}

std::vector<int> bags_containing(const CliqueTree& ct, int v) {
    std::vector<int> out;
    for (int x = 0; x < ct.num_nodes(); ++x) {
        if (std::binary_search(ct.bags[x].begin(), ct.bags[x].end(), v)) out.push_back(x);
    }
    return out;
}

std::vector<int> bags_containing(const CliqueTree& ct, Edge e) {
    std::vector<int> out;
    for (int x = 0; x < ct.num_nodes(); ++x) {
        const auto& bag = ct.bags[x];
        if (std::binary_search(bag.begin(), bag.end(), e.first) &&
            std::binary_search(bag.begin(), bag.end(), e.second))
            out.push_back(x);
    }
    return out;
}

namespace {

// Mutable decomposition with fresh ids for contracted nodes.
struct ContractionWorkspace {
    std::vector<std::set<int>> bags;
    std::vector<std::set<int>> adj;
    std::vector<char> alive;

    explicit ContractionWorkspace(const TreeDecomposition& d) {
        for (const auto& bag : d.bags) {
            bags.emplace_back(bag.begin(), bag.end());
            adj.emplace_back();
            alive.push_back(1);
        }
        for (const auto& [a, b] : d.tree_edges) {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }

    int contract(int x, int y) {
        int z = static_cast<int>(bags.size());
        std::set<int> merged = bags[x];
        merged.insert(bags[y].begin(), bags[y].end());
        bags.push_back(std::move(merged));
        std::set<int> nbrs;
        for (int w : adj[x])
            if (w != y) nbrs.insert(w);
        for (int w : adj[y])
            if (w != x) nbrs.insert(w);
        for (int w : nbrs) {
            adj[w].erase(x);
            adj[w].erase(y);
            adj[w].insert(z);
        }
        adj.push_back(std::move(nbrs));
        alive[x] = alive[y] = 0;
        alive.push_back(1);
        return z;
    }

    // Smallest live tree edge whose two bags both satisfy `wanted`.
    std::optional<Edge> find_edge(const std::function<bool(const std::set<int>&)>& wanted) {
        for (size_t x = 0; x < bags.size(); ++x) {
            if (!alive[x] || !wanted(bags[x])) continue;
            for (int y : adj[x]) {
                if (static_cast<size_t>(y) > x && wanted(bags[y])) return Edge{static_cast<int>(x), y};
            }
        }
        return std::nullopt;
    }

    TreeDecomposition compact() const {
        TreeDecomposition out;
        std::vector<int> id(bags.size(), -1);
        for (size_t x = 0; x < bags.size(); ++x) {
            if (alive[x]) {
                id[x] = out.num_nodes();
                out.bags.emplace_back(bags[x].begin(), bags[x].end());
            }
        }
        for (size_t x = 0; x < bags.size(); ++x) {
            if (!alive[x]) continue;
            for (int y : adj[x]) {
                if (static_cast<size_t>(y) > x) out.tree_edges.push_back(make_edge(id[x], id[y]));
            }
        }
        std::sort(out.tree_edges.begin(), out.tree_edges.end());
        return out;
    }
};

}  // namespace

TreeDecomposition make_concise(const DisplayGraph& g, const CliqueTree& ct) {
    Triangulation tri = triangulation_from_decomposition(g.graph, ct);
    if (!check_legal(g, tri).legal)
        throw InputError("make_concise: input is not a clique tree of a legal triangulation");
    {
        auto cliques = maximal_cliques(g.graph.with_edges(tri.fill));
        auto bags = ct.bags;
        std::sort(bags.begin(), bags.end());
        if (bags != cliques)
            throw InputError("make_concise: bags are not the maximal cliques of base+fill");
    }

    ContractionWorkspace ws(ct);

    // Step 1: collapse the occurrence set of every leaf to a single node.
    for (int v = 0; v < g.graph.num_vertices(); ++v) {
        if (!g.vertices[v].leaf) continue;
        while (auto e = ws.find_edge([&](const std::set<int>& bag) { return bag.count(v) > 0; }))
            ws.contract(e->first, e->second);
    }

    // Step 2: collapse the common occurrence set of every edge of g.
    for (const auto& [u, v] : g.graph.edges()) {
        while (auto e = ws.find_edge(
                   [&](const std::set<int>& bag) { return bag.count(u) > 0 && bag.count(v) > 0; }))
            ws.contract(e->first, e->second);
    }

    TreeDecomposition result = ws.compact();

    auto report = validate_decomposition(g.graph, result);
    if (!report.valid())
        throw InternalError("make_concise: produced invalid decomposition: " + report.describe());
    Triangulation out = triangulation_from_decomposition(g.graph, result);
    if (!check_legal(g, out).legal || !check_concise(g, out))
        throw InternalError("make_concise: result is not a concise legal triangulation");
    return result;
}

TreeDecomposition decomposition_from_supertree(const Profile& p, const PhyloTree& supertree,
                                               const std::vector<EmbeddingFunction>& phis) {
    if (phis.size() != p.trees.size())
        throw InputError("decomposition_from_supertree: one embedding per input tree required");
    {
        std::set<std::string> want;
        for (const auto& t : p.trees) {
            auto ls = t.label_set();
            want.insert(ls.begin(), ls.end());
        }
        if (supertree.label_set() != want)
            throw InputError("decomposition_from_supertree: supertree labels must equal the union");
    }
    for (size_t i = 0; i < phis.size(); ++i) {
        if (!(phis[i].source == supertree) || !(phis[i].target == p.trees[i]))
            throw InputError("decomposition_from_supertree: embedding " + std::to_string(i) +
                             " is not from the supertree onto input tree " + std::to_string(i));
        std::string why;
        if (!verify_embedding(phis[i], &why))
            throw InputError("decomposition_from_supertree: embedding " + std::to_string(i) +
                             " fails verification: " + why);
    }

    DisplayGraph g = build_display_graph(p);

    // Bags over supertree vertices: the embedding images, as display ids.
    std::vector<std::set<int>> bags(supertree.num_vertices());
    for (size_t i = 0; i < phis.size(); ++i) {
        for (const auto& [s, t] : phis[i].map) bags[s].insert(g.display_of(static_cast<int>(i), t));
    }

    TreeDecomposition out;
    for (const auto& bag : bags) out.bags.emplace_back(bag.begin(), bag.end());

    // Subdivide each supertree edge, one new bag per crossing display edge,
    // crossing edges ordered by origin tree.
    for (const auto& [x, y] : supertree.edges()) {
        struct Crossing {
            int tree;
            int u, v;  // u on x's side, v on y's side
        };
        std::vector<Crossing> crossings;
        for (size_t idx = 0; idx < g.graph.edges().size(); ++idx) {
            auto [a, b] = g.graph.edges()[idx];
            int tree = g.edge_info[idx].tree_index;
            bool a_x = bags[x].count(a), a_y = bags[y].count(a);
            bool b_x = bags[x].count(b), b_y = bags[y].count(b);
            if (a_x && !a_y && b_y && !b_x) crossings.push_back({tree, a, b});
            else if (b_x && !b_y && a_y && !a_x) crossings.push_back({tree, b, a});
        }
        std::sort(crossings.begin(), crossings.end(),
                  [](const Crossing& l, const Crossing& r) { return l.tree < r.tree; });
        for (size_t i = 1; i < crossings.size(); ++i) {
            if (crossings[i].tree == crossings[i - 1].tree)
                throw InternalError("decomposition_from_supertree: two crossing edges from one tree");
        }

        const int m = static_cast<int>(crossings.size());
        if (m == 0) {
            out.tree_edges.push_back(make_edge(x, y));
            continue;
        }
        std::vector<int> shared;
        std::set_intersection(bags[x].begin(), bags[x].end(), bags[y].begin(), bags[y].end(),
                              std::back_inserter(shared));
        int prev = x;
        for (int i = 0; i < m; ++i) {
            std::set<int> bag(shared.begin(), shared.end());
            for (int j = 0; j <= i; ++j) bag.insert(crossings[j].v);
            for (int j = i; j < m; ++j) bag.insert(crossings[j].u);
            int z = out.num_nodes();
            out.bags.emplace_back(bag.begin(), bag.end());
            out.tree_edges.push_back(make_edge(prev, z));
            prev = z;
        }
        out.tree_edges.push_back(make_edge(prev, y));
    }
    std::sort(out.tree_edges.begin(), out.tree_edges.end());
    return out;
}

namespace {

// Word-packed adjacency for the subset search.
struct SearchContext {
    int n = 0, words = 0;
    std::vector<uint64_t> base;
    std::vector<uint64_t> adj;   // working copy
    std::vector<int> weight, pos, elim;
    std::vector<uint64_t> reach;  // per-vertex later-neighborhood, then clique masks
    struct PackedEdge {
        int wu, wv;
        uint64_t bu, bv;
        bool internal;
    };
    std::vector<PackedEdge> gedges;

    explicit SearchContext(const DisplayGraph& g) {
        n = g.graph.num_vertices();
        words = (n + 63) / 64;
        base.assign(static_cast<size_t>(n) * words, 0);
        for (size_t i = 0; i < g.graph.edges().size(); ++i) {
            auto [u, v] = g.graph.edges()[i];
            set_bit(base, u, v);
            set_bit(base, v, u);
            gedges.push_back({u / 64, v / 64, 1ull << (u % 64), 1ull << (v % 64),
                              g.edge_info[i].internal});
        }
        adj.resize(base.size());
        weight.resize(n);
        pos.resize(n);
        elim.resize(n);
        reach.resize(base.size());
        visited_.resize(words);
        later_.resize(words);
    }

    std::vector<uint64_t> visited_, later_;  // scratch, reused across subsets

    void set_bit(std::vector<uint64_t>& rows, int v, int w) {
        rows[static_cast<size_t>(v) * words + w / 64] |= 1ull << (w % 64);
    }

    const uint64_t* row(const std::vector<uint64_t>& rows, int v) const {
        return &rows[static_cast<size_t>(v) * words];
    }
    uint64_t* row(std::vector<uint64_t>& rows, int v) {
        return &rows[static_cast<size_t>(v) * words];
    }

    void load(const std::vector<Edge>& fill, const std::vector<int>& chosen) {
        std::memcpy(adj.data(), base.data(), base.size() * sizeof(uint64_t));
        for (int idx : chosen) {
            auto [u, v] = fill[idx];
            set_bit(adj, u, v);
            set_bit(adj, v, u);
        }
    }

    // Maximum-cardinality search + elimination-order verification. On
    // success `reach` holds each vertex's later-neighborhood mask.
    bool chordal() {
        std::vector<uint64_t>& visited = visited_;
        std::fill(visited.begin(), visited.end(), 0);
        std::fill(weight.begin(), weight.end(), 0);
        for (int step = 0; step < n; ++step) {
            int best = -1;
            for (int v = 0; v < n; ++v) {
                bool seen = visited[v / 64] >> (v % 64) & 1;
                if (!seen && (best == -1 || weight[v] > weight[best])) best = v;
            }
            visited[best / 64] |= 1ull << (best % 64);
            elim[n - 1 - step] = best;
            const uint64_t* arow = row(adj, best);
            for (int v = 0; v < n; ++v) {
                bool seen = visited[v / 64] >> (v % 64) & 1;
                if (!seen && (arow[v / 64] >> (v % 64) & 1)) ++weight[v];
            }
        }
        for (int i = 0; i < n; ++i) pos[elim[i]] = i;

        std::vector<uint64_t>& later = later_;
        std::fill(later.begin(), later.end(), 0);
        for (int i = n - 1; i >= 0; --i) {
            int v = elim[i];
            uint64_t* out = row(reach, v);
            const uint64_t* arow = row(adj, v);
            for (int w = 0; w < words; ++w) out[w] = arow[w] & later[w];
            later[v / 64] |= 1ull << (v % 64);
        }
        for (int i = 0; i < n; ++i) {
            int v = elim[i];
            const uint64_t* x = row(reach, v);
            int parent = -1;
            for (int w = 0; w < words; ++w) {
                uint64_t bits = x[w];
                while (bits) {
                    int b = std::countr_zero(bits);
                    bits &= bits - 1;
                    int u = w * 64 + b;
                    if (parent == -1 || pos[u] < pos[parent]) parent = u;
                }
            }
            if (parent == -1) continue;
            const uint64_t* prow = row(adj, parent);
            for (int w = 0; w < words; ++w) {
                uint64_t need = x[w] & ~prow[w];
                if (w == parent / 64) need &= ~(1ull << (parent % 64));
                if (need) return false;
            }
        }
        return true;
    }

    // Requires a prior successful chordal() call. Every maximal clique of a
    // chordal graph is some vertex plus its later-neighborhood.
    bool legal() {
        for (int i = 0; i < n; ++i) {
            int v = elim[i];
            row(reach, v)[v / 64] |= 1ull << (v % 64);  // clique mask = {v} | reach
        }
        for (int i = 0; i < n; ++i) {
            const uint64_t* c = row(reach, elim[i]);
            bool maximal = true;
            for (int j = 0; j < n && maximal; ++j) {
                if (j == i) continue;
                const uint64_t* d = row(reach, elim[j]);
                bool subset = true, proper = false;
                for (int w = 0; w < words; ++w) {
                    if (c[w] & ~d[w]) {
                        subset = false;
                        break;
                    }
                    if (d[w] & ~c[w]) proper = true;
                }
                if (subset && (proper || j < i)) maximal = false;  // drop dups toward lower index
            }
            if (!maximal) continue;
            int count = 0;
            bool internal = false;
            for (const auto& e : gedges) {
                if ((c[e.wu] & e.bu) && (c[e.wv] & e.bv)) {
                    ++count;
                    internal = internal || e.internal;
                    if (count >= 2 && internal) return false;
                }
            }
        }
        return true;
    }
};

}  // namespace

SearchOutcome search_legal_triangulation(const DisplayGraph& g, int limit) {
    SearchOutcome outcome;
    std::vector<Edge> candidates = candidate_fill_edges(g);
    outcome.candidates = static_cast<int>(candidates.size());
    if (outcome.candidates > limit || outcome.candidates > 63)
        throw TooLargeError("instance too large: " + std::to_string(candidates.size()) +
                            " candidate fill edges exceed the limit of " +
                            std::to_string(std::min(limit, 63)));

    SearchContext ctx(g);
    const int m = outcome.candidates;
    for (int size = 0; size <= m; ++size) {
        // Combinations in lexicographic order over the sorted candidate list.
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            ++outcome.subsets_examined;
            ctx.load(candidates, idx);
            if (ctx.chordal() && ctx.legal()) {
                std::vector<Edge> fill;
                for (int i : idx) fill.push_back(candidates[i]);
                outcome.triangulation = Triangulation{g.graph, std::move(fill)};
                return outcome;
            }
            int i = size - 1;
            while (i >= 0 && idx[i] == m - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return outcome;
}

}  // namespace treecompat
