#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causaltree/ptree.hpp"

namespace causaltree {

/// A fully-connected causal ordering: each variable depends on all its
/// predecessors.
struct CausalOrder {
  std::vector<int> order;
};

/// Three-variable structure where the pivot is decided first and the order of
/// the remaining two variables flips for the listed pivot values.
struct ContextSwapSpec {
  int pivot = 0;
  std::set<int> swap_values;
  std::array<int, 2> base_order{1, 2};
};

/// S causal hypotheses as subtrees of one meta tree whose root branches on
/// the hypothesis variable G. Subtrees are stored directly; meta_tree()
/// materializes the combined tree.
struct HypothesisSet {
  VariableSpace space;
  std::vector<PTree> trees;
  std::vector<std::string> labels;
  std::vector<double> prior_g;
  /// Variable order when hypothesis k is a chain; nullopt for
  /// context-dependent structures. Used by the entropy baseline.
  std::vector<std::optional<std::vector<int>>> chain_orders;

  int size() const { return static_cast<int>(trees.size()); }
  PTree meta_tree() const;
};

/// Per-node Dirichlet concentrations alpha^(n) for every hypothesis subtree.
struct PriorTable {
  double alpha = 1.0;
  /// node_alpha[k][node id]; zero entries at leaves.
  std::vector<std::vector<double>> node_alpha;
};

/// Full-depth tree branching on order[0], then order[1], ... with uniform
/// transitions.
PTree chain_tree(const VariableSpace& space, const CausalOrder& order);

/// Tree whose root branches on the pivot; beneath pivot value v the two
/// remaining variables follow base_order, reversed when v is a swap value.
PTree context_swap_tree(const VariableSpace& space, const ContextSwapSpec& spec);

/// Canonical labels, e.g. "X1>X2>X3" and "ctx(X1:1; X2>X3)".
std::string label_for_chain(const VariableSpace& space, const CausalOrder& order);
std::string label_for_context(const VariableSpace& space, const ContextSwapSpec& spec);

/// Meta set with a uniform hypothesis prior. Labels may be empty (H1..HS).
HypothesisSet build_hypothesis_set(std::vector<PTree> trees, std::vector<std::string> labels);

/// The order of variables along a chain-shaped tree, or nullopt when levels
/// do not branch on one common variable.
std::optional<std::vector<int>> chain_order_of(const PTree& tree);

/// Observational-neutral concentrations: alpha^(n) = leaf_count(n)/|ch(n)| * alpha.
PriorTable assign_priors(const HypothesisSet& hset, double alpha);

/// Hypothesis sets for the standard experiment families.
HypothesisSet two_orientation_hypotheses(const VariableSpace& space);
HypothesisSet all_permutation_hypotheses(const VariableSpace& space);
HypothesisSet context_hypotheses(const VariableSpace& space);

}  // namespace causaltree
