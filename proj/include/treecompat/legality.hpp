#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treecompat/chordal.hpp"
#include "treecompat/display_graph.hpp"
#include "treecompat/embedding.hpp"

namespace treecompat {

/// One clique that holds an internal edge plus another original edge.
struct CliqueConflict {
    std::vector<int> clique;
    Edge internal_edge;
    Edge other_edge;
};

struct LegalityReport {
    bool legal = false;
    /// Maximal cliques containing an internal edge together with some other
    /// edge of the display graph.
    std::vector<CliqueConflict> clique_conflicts;
    /// Fill edges with a leaf endpoint or with both endpoints in one tree.
    std::vector<Edge> bad_fill_edges;
};

/// Legality of a chordal triangulation of the display graph: no maximal
/// clique may combine an internal edge with any other original edge, and
/// fill edges must join internal vertices of different trees. Throws
/// InputError when t.base differs from the display graph or base+fill is
/// not chordal.
LegalityReport check_legal(const DisplayGraph& g, const Triangulation& t);

/// Conciseness: every internal edge lies in exactly one maximal clique of
/// base+fill, and so does every leaf vertex. Requires a legal input
/// (InputError otherwise).
bool check_concise(const DisplayGraph& g, const Triangulation& t);

/// Clique-tree nodes whose bag contains v (coherence makes this set a
/// subtree); for an edge, the nodes containing both endpoints.
std::vector<int> bags_containing(const CliqueTree& ct, int v);
std::vector<int> bags_containing(const CliqueTree& ct, Edge e);

/// Contract the clique tree of a legal triangulation into a decomposition
/// whose associated triangulation is legal and concise: first collapse the
/// occurrence set of every leaf, then of every edge's common occurrence
/// set. Throws InputError when ct is not the clique tree of a legal
/// triangulation of g.
TreeDecomposition make_concise(const DisplayGraph& g, const CliqueTree& ct);

/// Tree decomposition of the display graph derived from a supertree and one
/// verified embedding per input tree: bags collect the embedding images,
/// then every supertree edge is subdivided so that each crossing edge gets
/// a bag. The associated triangulation is legal and the width is at most
/// the number of input trees. Throws InputError when the embeddings do not
/// verify or do not match the profile.
TreeDecomposition decomposition_from_supertree(const Profile& p, const PhyloTree& supertree,
                                               const std::vector<EmbeddingFunction>& phis);

struct SearchOutcome {
    std::optional<Triangulation> triangulation;  // first legal fill, if any
    int candidates = 0;
    std::uint64_t subsets_examined = 0;
};

inline constexpr int kDefaultCandidateLimit = 24;

/// Exhaustive search for a legal triangulation: subsets of the candidate
/// fill edges are tried in nondecreasing size (lexicographic within a
/// size), so the witness is a minimum-cardinality legal fill. Throws
/// TooLargeError when there are more candidates than `limit`.
SearchOutcome search_legal_triangulation(const DisplayGraph& g,
                                         int limit = kDefaultCandidateLimit);

}  // namespace treecompat
