#pragma once

#include <string>

#include "treecompat/phylo_tree.hpp"

namespace treecompat {

/// Parse one Newick tree ("...;"). Branch lengths and internal node names
/// are accepted and discarded; quoted labels and underscore-for-space follow
/// the usual conventions. A degree-2 root is suppressed so the result is
/// unrooted. Throws ParseError (with offset) or InputError.
PhyloTree parse_tree(const std::string& text);

/// Deterministic Newick serialization: rooted next to the smallest label,
/// children ordered by their smallest descendant label. parse_tree of the
/// output is label-isomorphic to the input.
std::string write_tree(const PhyloTree& t);

/// One tree per line; blank lines and '#' comment lines are skipped.
/// Errors are reported with 1-based line numbers.
Profile parse_profile(const std::string& text);

std::string write_profile(const Profile& p);

}  // namespace treecompat
