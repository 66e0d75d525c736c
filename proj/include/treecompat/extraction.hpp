#pragma once

#include <string>
#include <vector>

#include "treecompat/display_graph.hpp"
#include "treecompat/embedding.hpp"
#include "treecompat/legality.hpp"

namespace treecompat {

/// Labeled tree that need not satisfy the phylogeny invariants yet
/// (unlabeled degree-1 or degree-2 vertices allowed). Empty label means
/// unlabeled.
struct LabeledTree {
    std::vector<std::vector<int>> adj;
    std::vector<std::string> labels;
};

struct ExtractionResult {
    PhyloTree supertree;
    std::vector<EmbeddingFunction> embeddings;  // one per input tree
};

/// Build a supertree and verified embeddings from the clique tree of a
/// concise legal triangulation: bags holding a labeled vertex grow a leaf,
/// bags holding an internal edge split in two, remaining bags map straight
/// onto their per-tree vertices. The result is normalized and re-verified
/// (embeddings and displays) before returning. Throws InputError when the
/// triangulation behind ct is not concise and legal.
ExtractionResult extract_supertree(const DisplayGraph& g, const CliqueTree& ct);

/// Drop unlabeled degree-1 chains and suppress unlabeled degree-2 vertices
/// until the phylogeny invariants hold. Throws InternalError when a labeled
/// vertex has degree > 1.
PhyloTree normalize_supertree(const LabeledTree& raw);

/// normalize_supertree plus the vertex mapping (old id -> new id, -1 for
/// removed vertices).
struct NormalizedTree {
    PhyloTree tree;
    std::vector<int> new_id;
};
NormalizedTree normalize_supertree_with_map(const LabeledTree& raw);

}  // namespace treecompat
