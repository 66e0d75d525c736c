#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "treecompat/extraction.hpp"
#include "treecompat/legality.hpp"

namespace treecompat {

struct SearchStats {
    int candidates = 0;                  // candidate fill edges, summed over components
    std::uint64_t subsets_examined = 0;  // fill subsets (or supertree topologies) tried
    double elapsed_seconds = 0.0;
};

struct CompatWitness {
    PhyloTree supertree;
    std::vector<EmbeddingFunction> embeddings;  // one per input tree, verified
    /// Present when the witness came through the display-graph pipeline;
    /// the decision oracle fills only the supertree and embeddings.
    std::optional<Triangulation> triangulation;          // minimum legal fill found
    std::optional<Triangulation> concise_triangulation;  // after the contraction step
    std::optional<TreeDecomposition> concise_decomposition;
};

struct CompatReport {
    bool compatible = false;
    std::optional<CompatWitness> witness;
    std::string certificate;  // e.g. "16/16 fill subsets exhausted" when incompatible
    SearchStats stats;
};

/// Decide compatibility through the display graph: search for a legal
/// triangulation, contract it to a concise one, extract a supertree and
/// embeddings, and re-verify that the supertree displays every input tree.
/// Disconnected profiles are decided per component and the component
/// supertrees joined. Throws TooLargeError when a component has more
/// candidate fill edges than `limit`.
CompatReport decide(const Profile& p, int limit = kDefaultCandidateLimit);

/// Independent oracle: try every binary supertree topology over the union
/// of the labels (refining a supertree never loses displayed trees, so
/// binary topologies suffice). Throws TooLargeError beyond 8 taxa.
CompatReport brute_force_compatible(const Profile& p);

inline constexpr int kMaxOracleTaxa = 8;

/// Visit every binary unrooted topology over the given labels exactly once
/// (recursive leaf insertion, deterministic order). The visitor returns
/// false to stop early. Requires 3 <= |labels| <= 8.
void enumerate_binary_topologies(const std::vector<std::string>& labels,
                                 const std::function<bool(const PhyloTree&)>& visit);

/// All topologies, materialized; (2n-5)!! of them.
std::vector<PhyloTree> all_binary_topologies(const std::vector<std::string>& labels);

/// Deterministic random profile: k trees with n leaves each, drawn over a
/// label pool sized so that consecutive trees share about `overlap` of
/// their taxa. Same arguments -> same profile, independent of platform.
Profile random_profile(std::uint64_t seed, int k, int n, double overlap);

}  // namespace treecompat
