#include "causaltree/hypotheses.hpp"

#include <algorithm>
#include <numeric>

namespace causaltree {

PTree chain_tree(const VariableSpace& space, const CausalOrder& order) {
  const int m = space.size();
  if (static_cast<int>(order.order.size()) != m)
    throw ValueError("causal order length does not match variable space");
  std::vector<char> seen(m, 0);
  for (int v : order.order) {
    if (v < 0 || v >= m || seen[v]) throw ValueError("causal order is not a permutation");
    seen[v] = 1;
  }
  return PTree::build(space, [&](std::span<const Statement> path) {
    return order.order[path.size()];
  });
}

PTree context_swap_tree(const VariableSpace& space, const ContextSwapSpec& spec) {
  if (space.size() != 3) throw ValueError("context swap trees are defined for three variables");
  if (spec.pivot < 0 || spec.pivot >= 3) throw ValueError("context swap pivot out of range");
  for (int v : spec.swap_values)
    if (v < 0 || v >= space.cardinalities[spec.pivot])
      throw ValueError("context swap value exceeds pivot cardinality");
  for (int v : spec.base_order)
    if (v < 0 || v >= 3 || v == spec.pivot)
      throw ValueError("context swap base order must list the two non-pivot variables");
  if (spec.base_order[0] == spec.base_order[1])
    throw ValueError("context swap base order must list distinct variables");

  return PTree::build(space, [&](std::span<const Statement> path) -> int {
    if (path.empty()) return spec.pivot;
    const bool swapped = spec.swap_values.count(path.front().value) > 0;
    const int first = swapped ? spec.base_order[1] : spec.base_order[0];
    const int second = swapped ? spec.base_order[0] : spec.base_order[1];
    return path.size() == 1 ? first : second;
  });
}

std::string label_for_chain(const VariableSpace& space, const CausalOrder& order) {
  std::string s;
  for (std::size_t i = 0; i < order.order.size(); ++i) {
    if (i) s += ">";
    s += space.names[order.order[i]];
  }
  return s;
}

std::string label_for_context(const VariableSpace& space, const ContextSwapSpec& spec) {
  std::string s = "ctx(" + space.names[spec.pivot] + ":";
  bool first = true;
  for (int v : spec.swap_values) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  }
  s += "; " + space.names[spec.base_order[0]] + ">" + space.names[spec.base_order[1]] + ")";
  return s;
}

HypothesisSet build_hypothesis_set(std::vector<PTree> trees, std::vector<std::string> labels) {
  if (trees.size() < 2) throw ValueError("a hypothesis set needs at least two hypotheses");
  for (std::size_t k = 1; k < trees.size(); ++k)
    if (!(trees[k].space() == trees[0].space()))
      throw ValueError("all hypotheses must share one variable space");
  if (labels.empty())
    for (std::size_t k = 0; k < trees.size(); ++k) labels.push_back("H" + std::to_string(k + 1));
  if (labels.size() != trees.size())
    throw ValueError("label count does not match hypothesis count");

  HypothesisSet hs;
  hs.space = trees[0].space();
  hs.prior_g.assign(trees.size(), 1.0 / static_cast<double>(trees.size()));
  hs.chain_orders.reserve(trees.size());
  for (const PTree& t : trees) hs.chain_orders.push_back(chain_order_of(t));
  hs.trees = std::move(trees);
  hs.labels = std::move(labels);
  return hs;
}

std::optional<std::vector<int>> chain_order_of(const PTree& tree) {
  const int m = tree.space().size();
  std::vector<int> order;
  std::vector<int> level{0};
  for (int d = 0; d < m; ++d) {
    int var = tree.branch_variable(level.front());
    std::vector<int> next;
    for (int id : level) {
      if (tree.branch_variable(id) != var) return std::nullopt;
      for (int c : tree.node(id).children) next.push_back(c);
    }
    order.push_back(var);
    level = std::move(next);
  }
  return order;
}

PriorTable assign_priors(const HypothesisSet& hset, double alpha) {
  if (!(alpha > 0.0)) throw ValueError("alpha must be positive");
  PriorTable pt;
  pt.alpha = alpha;
  pt.node_alpha.resize(hset.size());
  for (int k = 0; k < hset.size(); ++k) {
    const PTree& t = hset.trees[k];
    pt.node_alpha[k].assign(t.node_count(), 0.0);
    for (int id = 0; id < t.node_count(); ++id) {
      const PNode& nd = t.node(id);
      if (nd.is_leaf()) continue;
      pt.node_alpha[k][id] =
          alpha * static_cast<double>(t.leaf_count(id)) / static_cast<double>(nd.children.size());
    }
  }
  return pt;
}

PTree HypothesisSet::meta_tree() const {
  const int s = size();
  VariableSpace meta_space;
  meta_space.names.push_back("G");
  meta_space.cardinalities.push_back(s);
  for (int v = 0; v < space.size(); ++v) {
    meta_space.names.push_back(space.names[v]);
    meta_space.cardinalities.push_back(space.cardinalities[v]);
  }

  std::vector<PNode> nodes(1);
  nodes[0].theta = prior_g;
  for (int k = 0; k < s; ++k) {
    const int offset = static_cast<int>(nodes.size());
    nodes[0].children.push_back(offset);
    for (const PNode& src : trees[k].nodes()) {
      PNode nd = src;
      if (nd.is_root())
        nd.statement = Statement{0, k};  // G = k on the embedded subtree root
      else
        nd.statement.variable += 1;
      for (int& c : nd.children) c += offset;
      nodes.push_back(std::move(nd));
    }
  }
  return PTree(std::move(meta_space), std::move(nodes));
}

HypothesisSet two_orientation_hypotheses(const VariableSpace& space) {
  if (space.size() != 2) throw ValueError("two-orientation sets need exactly two variables");
  std::vector<PTree> trees;
  std::vector<std::string> labels;
  for (const std::vector<int>& ord : {std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
    trees.push_back(chain_tree(space, CausalOrder{ord}));
    labels.push_back(label_for_chain(space, CausalOrder{ord}));
  }
  return build_hypothesis_set(std::move(trees), std::move(labels));
}

HypothesisSet all_permutation_hypotheses(const VariableSpace& space) {
  std::vector<int> perm(space.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<PTree> trees;
  std::vector<std::string> labels;
  do {
    trees.push_back(chain_tree(space, CausalOrder{perm}));
    labels.push_back(label_for_chain(space, CausalOrder{perm}));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return build_hypothesis_set(std::move(trees), std::move(labels));
}

HypothesisSet context_hypotheses(const VariableSpace& space) {
  if (space.size() != 3) throw ValueError("context hypothesis sets need exactly three variables");
  const CausalOrder chain{{0, 1, 2}};
  const ContextSwapSpec swap0{0, {0}, {1, 2}};
  const ContextSwapSpec swap1{0, {1}, {1, 2}};
  std::vector<PTree> trees;
  trees.push_back(chain_tree(space, chain));
  trees.push_back(context_swap_tree(space, swap0));
  trees.push_back(context_swap_tree(space, swap1));
  std::vector<std::string> labels{label_for_chain(space, chain),
                                  label_for_context(space, swap0),
                                  label_for_context(space, swap1)};
  return build_hypothesis_set(std::move(trees), std::move(labels));
}

}  // namespace causaltree
