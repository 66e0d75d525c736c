#pragma once

#include <map>
#include <optional>
#include <string>

#include "treecompat/phylo_tree.hpp"

namespace treecompat {

/// Partial surjective vertex map from a supertree onto one input tree.
/// A valid embedding preserves labels, has connected preimages, and gives
/// every target edge exactly one source-edge preimage.
struct EmbeddingFunction {
    PhyloTree source;
    PhyloTree target;
    std::map<int, int> map;  // source vertex -> target vertex
};

/// Total predicate: surjectivity plus the three embedding conditions.
/// When `why` is given, the first failure is described there.
bool verify_embedding(const EmbeddingFunction& phi, std::string* why = nullptr);

/// Same check over a raw labeled tree that need not satisfy phylogeny
/// invariants (used on intermediate supertrees during extraction).
bool verify_embedding_raw(const std::vector<std::vector<int>>& source_adj,
                          const std::vector<std::string>& source_labels,
                          const PhyloTree& target, const std::map<int, int>& map,
                          std::string* why = nullptr);

/// A verified embedding from t onto ti when t displays ti, nullopt
/// otherwise. Built from the induced subtree: internal edges of the
/// restriction whose split does not survive in ti are contracted, the
/// contraction classes become preimages, and suppressed path vertices are
/// absorbed into the class of the path's first endpoint.
/// Throws InputError when ti's labels are not contained in t's.
std::optional<EmbeddingFunction> compute_embedding(const PhyloTree& t, const PhyloTree& ti);

}  // namespace treecompat
