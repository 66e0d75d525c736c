#include "treecompat/compatibility.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "treecompat/errors.hpp"

namespace treecompat {

namespace {

PhyloTree tree_on_labels(const std::vector<std::string>& labels) {
    if (labels.empty()) throw InternalError("tree_on_labels: no labels");
    if (labels.size() == 1) return PhyloTree::from_edges(1, {}, {{0, labels[0]}});
    if (labels.size() == 2)
        return PhyloTree::from_edges(2, {{0, 1}}, {{0, labels[0]}, {1, labels[1]}});
    std::vector<Edge> edges;
    std::map<int, std::string> names;
    int center = static_cast<int>(labels.size());
    for (int i = 0; i < center; ++i) {
        edges.push_back({i, center});
        names[i] = labels[i];
    }
    return PhyloTree::from_edges(center + 1, edges, names);
}

/// One tree covering all parts: each multi-leaf supertree is attached via a
/// subdivision point on the edge next to its smallest leaf, single leaves
/// and leftover labels attach directly, and the joint is normalized.
PhyloTree join_supertrees(const std::vector<PhyloTree>& parts,
                          const std::vector<std::string>& isolated_labels) {
    if (parts.empty()) return tree_on_labels(isolated_labels);
    if (parts.size() == 1 && isolated_labels.empty()) return parts[0];

    LabeledTree raw;
    auto add = [&](const std::string& label) {
        raw.adj.emplace_back();
        raw.labels.push_back(label);
        return static_cast<int>(raw.adj.size()) - 1;
    };
    auto connect = [&](int a, int b) {
        raw.adj[a].push_back(b);
        raw.adj[b].push_back(a);
    };

    int center = add("");
    for (const auto& name : isolated_labels) connect(center, add(name));
    for (const auto& part : parts) {
        std::vector<int> id(part.num_vertices());
        for (int v = 0; v < part.num_vertices(); ++v) id[v] = add(part.label(v));
        if (part.num_vertices() == 1) {
            connect(center, id[0]);
            continue;
        }
        int leaf = 0;
        for (int v = 0; v < part.num_vertices(); ++v) {
            if (part.is_leaf(v) && (!part.is_leaf(leaf) || part.label(v) < part.label(leaf)))
                leaf = v;
        }
        int anchor = part.neighbors(leaf)[0];
        int mid = add("");
        for (const auto& [u, v] : part.edges()) {
            if (make_edge(u, v) == make_edge(leaf, anchor)) {
                connect(id[u], mid);
                connect(mid, id[v]);
            } else {
                connect(id[u], id[v]);
            }
        }
        connect(mid, center);
    }
    return normalize_supertree(raw);
}

}  // namespace

CompatReport decide(const Profile& p, int limit) {
    auto t0 = std::chrono::steady_clock::now();
    CompatReport report;

    PreprocessedProfile pre = preprocess_profile(p);

    std::vector<PhyloTree> part_supertrees;
    std::vector<Triangulation> part_tri, part_concise_tri;
    std::vector<TreeDecomposition> part_decomp;
    std::vector<std::vector<int>> part_vertex_map;  // component vertex -> full-graph vertex

    std::optional<DisplayGraph> full;
    if (!pre.kept.trees.empty()) full = build_display_graph(pre.kept);

    bool compatible = true;
    for (const auto& comp : profile_components(pre.kept)) {
        DisplayGraph g = build_display_graph(comp.profile);
        SearchOutcome search = search_legal_triangulation(g, limit);
        report.stats.candidates += search.candidates;
        report.stats.subsets_examined += search.subsets_examined;
        if (!search.triangulation) {
            compatible = false;
            report.certificate = std::to_string(search.subsets_examined) + "/" +
                                 std::to_string(std::uint64_t(1) << search.candidates) +
                                 " fill subsets exhausted";
            break;
        }

        CliqueTree ct = build_clique_tree(search.triangulation->filled());
        TreeDecomposition concise = make_concise(g, ct);
        Triangulation concise_tri = triangulation_from_decomposition(g.graph, concise);
        CliqueTree concise_ct = build_clique_tree(concise_tri.filled());
        ExtractionResult extracted = extract_supertree(g, concise_ct);

        part_supertrees.push_back(extracted.supertree);
        part_tri.push_back(*search.triangulation);
        part_concise_tri.push_back(concise_tri);
        part_decomp.push_back(concise);

        // Component display vertices expressed in the full graph's ids.
        std::vector<int> vmap(g.graph.num_vertices());
        for (int v = 0; v < g.graph.num_vertices(); ++v) {
            const auto& info = g.vertices[v];
            vmap[v] = info.leaf ? full->leaf_by_label.at(info.label)
                                : full->display_of(comp.original_indices[info.tree_index],
                                                   info.tree_vertex);
        }
        part_vertex_map.push_back(std::move(vmap));
    }

    if (compatible) {
        PhyloTree supertree = join_supertrees(part_supertrees, pre.dropped_labels);

        CompatWitness witness{supertree, {}, std::nullopt, std::nullopt, std::nullopt};
        for (const auto& tree : p.trees) {
            auto phi = compute_embedding(supertree, tree);
            if (!phi) throw InternalError("decide: witness supertree does not display an input tree");
            std::string why;
            if (!verify_embedding(*phi, &why))
                throw InternalError("decide: witness embedding fails verification: " + why);
            witness.embeddings.push_back(std::move(*phi));
        }

        if (full) {
            auto map_fill = [&](const std::vector<Triangulation>& tris) {
                std::vector<Edge> fill;
                for (size_t c = 0; c < tris.size(); ++c) {
                    for (const auto& [u, v] : tris[c].fill)
                        fill.push_back(make_edge(part_vertex_map[c][u], part_vertex_map[c][v]));
                }
                std::sort(fill.begin(), fill.end());
                return Triangulation{full->graph, std::move(fill)};
            };
            witness.triangulation = map_fill(part_tri);
            witness.concise_triangulation = map_fill(part_concise_tri);

            // Component decompositions, re-indexed and chained into one tree.
            TreeDecomposition joined;
            int first_of_prev = -1;
            for (size_t c = 0; c < part_decomp.size(); ++c) {
                int offset = joined.num_nodes();
                for (const auto& bag : part_decomp[c].bags) {
                    std::vector<int> mapped;
                    for (int v : bag) mapped.push_back(part_vertex_map[c][v]);
                    std::sort(mapped.begin(), mapped.end());
                    joined.bags.push_back(std::move(mapped));
                }
                for (const auto& [a, b] : part_decomp[c].tree_edges)
                    joined.tree_edges.push_back(make_edge(a + offset, b + offset));
                if (first_of_prev >= 0)
                    joined.tree_edges.push_back(make_edge(first_of_prev, offset));
                first_of_prev = offset;
            }
            std::sort(joined.tree_edges.begin(), joined.tree_edges.end());
            witness.concise_decomposition = std::move(joined);
        }

        report.compatible = true;
        report.witness = std::move(witness);
    }

    report.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

void enumerate_binary_topologies(const std::vector<std::string>& labels,
                                 const std::function<bool(const PhyloTree&)>& visit) {
    const int n = static_cast<int>(labels.size());
    if (n < 3 || n > kMaxOracleTaxa)
        throw InputError("enumerate_binary_topologies: need between 3 and " +
                         std::to_string(kMaxOracleTaxa) + " labels");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("enumerate_binary_topologies: duplicate label");

    std::map<int, std::string> names;
    for (int i = 0; i < n; ++i) names[i] = sorted[i];

    // Leaves are 0..n-1, internals n..2n-3; each new leaf subdivides one
    // existing edge, which yields every topology exactly once.
    std::vector<Edge> edges{{0, n}, {1, n}, {2, n}};
    bool stop = false;

    std::function<void(int, int)> grow = [&](int leaf, int next_internal) {
        if (stop) return;
        if (leaf == n) {
            std::map<int, std::string> used;
            for (int i = 0; i < n; ++i) used[i] = names[i];
            stop = !visit(PhyloTree::from_edges(next_internal, edges, used));
            return;
        }
        std::vector<Edge> current = edges;  // snapshot; edges mutate below
        std::sort(current.begin(), current.end());
        for (const auto& e : current) {
            edges.erase(std::find(edges.begin(), edges.end(), e));
            edges.push_back({e.first, next_internal});
            edges.push_back({e.second, next_internal});
            edges.push_back({leaf, next_internal});
            grow(leaf + 1, next_internal + 1);
            edges.pop_back();
            edges.pop_back();
            edges.pop_back();
            edges.push_back(e);
            if (stop) return;
        }
    };
    grow(3, n + 1);
}

std::vector<PhyloTree> all_binary_topologies(const std::vector<std::string>& labels) {
    std::vector<PhyloTree> out;
    enumerate_binary_topologies(labels, [&](const PhyloTree& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

CompatReport brute_force_compatible(const Profile& p) {
    auto t0 = std::chrono::steady_clock::now();
    if (p.trees.empty()) throw InputError("profile must contain at least one tree");

    std::set<std::string> unions;
    for (const auto& t : p.trees) {
        auto ls = t.label_set();
        unions.insert(ls.begin(), ls.end());
    }
    if (static_cast<int>(unions.size()) > kMaxOracleTaxa)
        throw TooLargeError("brute force supports at most " + std::to_string(kMaxOracleTaxa) +
                            " taxa, got " + std::to_string(unions.size()));

    CompatReport report;
    std::vector<std::string> labels(unions.begin(), unions.end());

    auto finish = [&](const std::optional<PhyloTree>& supertree) {
        if (supertree) {
            CompatWitness w{*supertree, {}, std::nullopt, std::nullopt, std::nullopt};
            for (const auto& tree : p.trees) {
                auto phi = compute_embedding(*supertree, tree);
                if (!phi) throw InternalError("brute force witness fails to display an input");
                w.embeddings.push_back(std::move(*phi));
            }
            report.compatible = true;
            report.witness = std::move(w);
        } else {
            report.certificate =
                std::to_string(report.stats.subsets_examined) + " supertree topologies exhausted";
        }
        report.stats.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    };

    if (labels.size() < 3) {
        // Nothing to resolve: a structureless tree over the labels works.
        return finish(tree_on_labels(labels));
    }

    std::optional<PhyloTree> found;
    enumerate_binary_topologies(labels, [&](const PhyloTree& s) {
        ++report.stats.subsets_examined;
        for (const auto& tree : p.trees) {
            if (!displays(s, tree)) return true;  // keep searching
        }
        found = s;
        return false;
    });
    return finish(found);
}

Profile random_profile(std::uint64_t seed, int k, int n, double overlap) {
    if (k < 1) throw InputError("random_profile: need at least one tree");
    if (n < 3) throw InputError("random_profile: trees need at least three leaves");
    if (!(overlap >= 0.0 && overlap <= 1.0))
        throw InputError("random_profile: overlap must be within [0,1]");

    const int fresh_per_tree = static_cast<int>(std::lround(n * (1.0 - overlap)));
    const int pool_size = n + (k - 1) * fresh_per_tree;

    std::vector<std::string> pool;
    for (int i = 0; i < pool_size; ++i) {
        if (pool_size <= 26) pool.push_back(std::string(1, static_cast<char>('a' + i)));
        else pool.push_back("t" + std::to_string(i + 1));
    }

    // mt19937_64 plus explicit modulo draws keep the output identical across
    // standard libraries.
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };

    Profile profile;
    for (int t = 0; t < k; ++t) {
        std::vector<std::string> chosen = pool;
        for (int i = 0; i < n; ++i) {
            int j = i + draw(chosen.size() - i);
            std::swap(chosen[i], chosen[j]);
        }
        chosen.resize(n);
        std::sort(chosen.begin(), chosen.end());

        std::map<int, std::string> names;
        for (int i = 0; i < n; ++i) names[i] = chosen[i];
        std::vector<Edge> edges{{0, n}, {1, n}, {2, n}};
        int next_internal = n + 1;
        for (int leaf = 3; leaf < n; ++leaf) {
            std::vector<Edge> sorted = edges;
            std::sort(sorted.begin(), sorted.end());
            Edge e = sorted[draw(sorted.size())];
            edges.erase(std::find(edges.begin(), edges.end(), e));
            edges.push_back({e.first, next_internal});
            edges.push_back({e.second, next_internal});
            edges.push_back({leaf, next_internal});
            ++next_internal;
        }
        profile.trees.push_back(PhyloTree::from_edges(next_internal, edges, names));
    }
    return profile;
}

}  // namespace treecompat
