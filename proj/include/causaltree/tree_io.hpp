#pragma once

#include <string>

#include "causaltree/ptree.hpp"

namespace causaltree {

/// Structured-text document for a tree: one object per node carrying id,
/// variable name ("O" for the root), value, theta (decimal strings, exact
/// round-trip) and nested children.
std::string tree_to_document(const PTree& tree);

PTree tree_from_document(const std::string& text);

}  // namespace causaltree
