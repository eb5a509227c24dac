#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causaltree/errors.hpp"
#include "causaltree/grid.hpp"
#include "causaltree/rng.hpp"

namespace causaltree {

/// Names and cardinalities of the modeled discrete variables. The dummy root
/// variable is not part of the space.
struct VariableSpace {
  std::vector<std::string> names;
  std::vector<int> cardinalities;

  int size() const { return static_cast<int>(names.size()); }
  void validate() const;
  bool operator==(const VariableSpace&) const = default;

  /// Space with default names X1..Xm.
  static VariableSpace make(std::vector<int> cardinalities);
};

/// One variable assignment "variable = value".
struct Statement {
  int variable = -1;
  int value = -1;
  bool operator==(const Statement&) const = default;
};

/// A single-variable intervention do(X = x); an empty target means passive
/// observation.
struct Intervention {
  std::optional<Statement> target;

  static Intervention none() { return {}; }
  static Intervention make(int variable, int value) {
    return Intervention{Statement{variable, value}};
  }
  bool empty() const { return !target.has_value(); }
  bool operator==(const Intervention&) const = default;
};

/// Tree node. Nodes live in the owning tree's arena; `children` holds arena
/// ids, and ids equal arena positions (depth-first preorder).
struct PNode {
  Statement statement;  // variable == -1 marks the root (dummy O = 1)
  std::vector<int> children;
  std::vector<double> theta;

  bool is_root() const { return statement.variable < 0; }
  bool is_leaf() const { return children.empty(); }
};

struct PathStep {
  int node = -1;
  int child_index = -1;
};

/// Immutable probability tree. Every root-to-leaf path assigns each variable
/// of the space exactly once; all children of a node assign the same variable.
class PTree {
 public:
  PTree() = default;
  PTree(VariableSpace space, std::vector<PNode> nodes);

  const VariableSpace& space() const { return space_; }
  const std::vector<PNode>& nodes() const { return nodes_; }
  const PNode& node(int id) const { return nodes_[id]; }
  const PNode& root() const { return nodes_[0]; }
  int node_count() const { return static_cast<int>(nodes_.size()); }

  /// Variable assigned by the children of `id`, or -1 for a leaf.
  int branch_variable(int id) const { return branch_var_[id]; }

  /// Number of leaves in the subtree rooted at `id` (1 for a leaf).
  int leaf_count(int id) const { return leaf_counts_[id]; }

  /// Builds a full tree over the space: at each node, `next_variable` maps the
  /// statements collected so far to the variable the node branches on. Theta
  /// is uniform everywhere.
  static PTree build(const VariableSpace& space,
                     const std::function<int(std::span<const Statement>)>& next_variable);

  /// Same structure, new transition probabilities (theta[node id] reassigned).
  PTree with_theta(std::vector<std::vector<double>> theta) const;

 private:
  VariableSpace space_;
  std::vector<PNode> nodes_;
  std::vector<int> branch_var_;
  std::vector<int> leaf_counts_;

  void validate_and_index();
};

/// Root-to-leaf decisions for a complete assignment, one step per internal
/// node on the path.
std::vector<PathStep> realization_path(const PTree& tree, const Assignment& x);

/// Product of the transition probabilities along the realization path.
double realization_probability(const PTree& tree, const Assignment& x);

/// Probability of the event "all statements hold". Contradictory statements
/// give 0 by definition.
double event_probability(const PTree& tree, std::span<const Statement> event);

/// Tree with every branch deciding the target variable forced to the
/// intervened value. Throws ValueError if no node assigns the variable.
PTree intervene(const PTree& tree, const Intervention& j);

/// One generative draw, with forced choices applied when `j` is nonempty.
Assignment sample(const PTree& tree, const Intervention& j, Rng& rng);

}  // namespace causaltree
