#include "causaltree/ptree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace causaltree {

namespace {
constexpr double kThetaSumTol = 1e-12;
}

void VariableSpace::validate() const {
  if (names.empty() || names.size() != cardinalities.size())
    throw ValueError("variable space needs matching, nonempty name/cardinality lists");
  for (int c : cardinalities)
    if (c < 2) throw ValueError("every variable cardinality must be at least 2");
}

VariableSpace VariableSpace::make(std::vector<int> cardinalities) {
  VariableSpace s;
  s.cardinalities = std::move(cardinalities);
  s.names.reserve(s.cardinalities.size());
  for (std::size_t i = 0; i < s.cardinalities.size(); ++i)
    s.names.push_back("X" + std::to_string(i + 1));
  s.validate();
  return s;
}

PTree::PTree(VariableSpace space, std::vector<PNode> nodes)
    : space_(std::move(space)), nodes_(std::move(nodes)) {
  validate_and_index();
}

void PTree::validate_and_index() {
  space_.validate();
  if (nodes_.empty()) throw StructureError("tree has no nodes");
  if (!nodes_[0].is_root()) throw StructureError("node 0 must be the root marker");

  const int m = space_.size();
  const int n = node_count();
  branch_var_.assign(n, -1);
  leaf_counts_.assign(n, 0);

  // One DFS pass: children assign a single shared variable with distinct
  // values, theta is a distribution, ids are unique, and the statements on
  // every root-to-leaf path partition the variables.
  std::vector<char> seen(n, 0);
  std::vector<char> assigned(m, 0);
  int depth_assigned = 0;

  std::function<void(int)> walk = [&](int id) {
    if (id < 0 || id >= n) throw StructureError("child id out of range");
    if (seen[id]) throw StructureError("node reachable twice; ids must be unique");
    seen[id] = 1;
    const PNode& nd = nodes_[id];
    if (id != 0) {
      const Statement& st = nd.statement;
      if (st.variable < 0 || st.variable >= m) throw StructureError("statement variable out of range");
      if (st.value < 0 || st.value >= space_.cardinalities[st.variable])
        throw StructureError("statement value exceeds cardinality");
      if (assigned[st.variable])
        throw StructureError("variable assigned twice on one path");
      assigned[st.variable] = 1;
      ++depth_assigned;
    }
    if (nd.is_leaf()) {
      if (!nd.theta.empty()) throw StructureError("leaf with transition probabilities");
      if (depth_assigned != m)
        throw StructureError("root-to-leaf path does not assign every variable");
      leaf_counts_[id] = 1;
    } else {
      if (nd.theta.size() != nd.children.size())
        throw StructureError("theta length must equal child count");
      double sum = 0.0;
      for (double t : nd.theta) {
        if (t < 0.0 || t > 1.0) throw StructureError("theta entry outside [0, 1]");
        sum += t;
      }
      if (std::abs(sum - 1.0) > kThetaSumTol * std::max<std::size_t>(1, nd.children.size()))
        throw StructureError("theta does not sum to 1");

      int var = -1;
      std::vector<char> used;
      for (int c : nd.children) {
        if (c < 0 || c >= n) throw StructureError("child id out of range");
        const Statement& st = nodes_[c].statement;
        if (st.variable < 0) throw StructureError("non-root node without a statement");
        if (var < 0) {
          var = st.variable;
          used.assign(space_.cardinalities[var], 0);
        } else if (st.variable != var) {
          throw StructureError("children of one node must assign the same variable");
        }
        if (st.value < 0 || st.value >= space_.cardinalities[var] || used[st.value])
          throw StructureError("duplicate or out-of-range child value");
        used[st.value] = 1;
      }
      branch_var_[id] = var;
      for (int c : nd.children) {
        walk(c);
        leaf_counts_[id] += leaf_counts_[c];
      }
    }
    if (id != 0) {
      assigned[nd.statement.variable] = 0;
      --depth_assigned;
    }
  };
  walk(0);
  for (int id = 0; id < n; ++id)
    if (!seen[id]) throw StructureError("unreachable node in arena");
}

PTree PTree::build(const VariableSpace& space,
                   const std::function<int(std::span<const Statement>)>& next_variable) {
  space.validate();
  const int m = space.size();
  std::vector<PNode> nodes;
  std::vector<Statement> path;

  std::function<int()> grow = [&]() -> int {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[id].statement = path.empty() ? Statement{} : path.back();
    if (static_cast<int>(path.size()) == m) return id;
    const int var = next_variable(path);
    if (var < 0 || var >= m) throw ValueError("tree builder chose a variable out of range");
    for (const Statement& st : path)
      if (st.variable == var) throw ValueError("tree builder revisited a variable");
    const int card = space.cardinalities[var];
    nodes[id].theta.assign(card, 1.0 / card);
    nodes[id].children.resize(card);
    for (int v = 0; v < card; ++v) {
      path.push_back(Statement{var, v});
      int child = grow();
      nodes[id].children[v] = child;
      path.pop_back();
    }
    return id;
  };
  grow();
  return PTree(space, std::move(nodes));
}

PTree PTree::with_theta(std::vector<std::vector<double>> theta) const {
  if (theta.size() != nodes_.size()) throw ValueError("theta table size mismatch");
  std::vector<PNode> out = nodes_;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!out[i].is_leaf()) out[i].theta = std::move(theta[i]);
  return PTree(space_, std::move(out));
}

std::vector<PathStep> realization_path(const PTree& tree, const Assignment& x) {
  const VariableSpace& sp = tree.space();
  if (static_cast<int>(x.size()) != sp.size())
    throw ValueError("assignment length does not match variable space");
  for (int v = 0; v < sp.size(); ++v)
    if (x[v] < 0 || x[v] >= sp.cardinalities[v])
      throw ValueError("assignment value exceeds cardinality");

  std::vector<PathStep> path;
  int id = 0;
  while (!tree.node(id).is_leaf()) {
    const PNode& nd = tree.node(id);
    int chosen = -1;
    for (std::size_t c = 0; c < nd.children.size(); ++c) {
      const Statement& st = tree.node(nd.children[c]).statement;
      if (x[st.variable] == st.value) {
        if (chosen >= 0) throw StructureError("ambiguous realization path");
        chosen = static_cast<int>(c);
      }
    }
    if (chosen < 0) throw StructureError("no realization path for assignment");
    path.push_back(PathStep{id, chosen});
    id = nd.children[chosen];
  }
  return path;
}

double realization_probability(const PTree& tree, const Assignment& x) {
  double p = 1.0;
  for (const PathStep& step : realization_path(tree, x))
    p *= tree.node(step.node).theta[step.child_index];
  return p;
}

double event_probability(const PTree& tree, std::span<const Statement> event) {
  const VariableSpace& sp = tree.space();
  std::vector<int> fixed(sp.size(), -1);
  for (const Statement& st : event) {
    if (st.variable < 0 || st.variable >= sp.size() || st.value < 0 ||
        st.value >= sp.cardinalities[st.variable])
      throw ValueError("event statement out of range");
    if (fixed[st.variable] >= 0 && fixed[st.variable] != st.value) return 0.0;
    fixed[st.variable] = st.value;
  }

  std::function<double(int)> walk = [&](int id) -> double {
    const PNode& nd = tree.node(id);
    if (nd.is_leaf()) return 1.0;
    double total = 0.0;
    for (std::size_t c = 0; c < nd.children.size(); ++c) {
      const Statement& st = tree.node(nd.children[c]).statement;
      if (fixed[st.variable] >= 0 && fixed[st.variable] != st.value) continue;
      total += nd.theta[c] * walk(nd.children[c]);
    }
    return total;
  };
  return walk(0);
}

PTree intervene(const PTree& tree, const Intervention& j) {
  if (j.empty()) throw ValueError("intervene requires a nonempty intervention");
  const Statement& t = *j.target;
  if (t.variable < 0 || t.variable >= tree.space().size() || t.value < 0 ||
      t.value >= tree.space().cardinalities[t.variable])
    throw ValueError("intervention target out of range");

  std::vector<PNode> out = tree.nodes();
  bool found = false;
  for (PNode& nd : out) {
    bool touches = false;
    for (int c : nd.children)
      if (tree.node(c).statement.variable == t.variable) touches = true;
    if (!touches) continue;
    found = true;
    for (std::size_t c = 0; c < nd.children.size(); ++c) {
      const Statement& st = tree.node(nd.children[c]).statement;
      if (st.variable == t.variable) nd.theta[c] = st.value == t.value ? 1.0 : 0.0;
    }
  }
  if (!found) throw ValueError("intervened variable is never assigned in the tree");
  return PTree(tree.space(), std::move(out));
}

Assignment sample(const PTree& tree, const Intervention& j, Rng& rng) {
  Assignment x(tree.space().size(), -1);
  int id = 0;
  while (!tree.node(id).is_leaf()) {
    const PNode& nd = tree.node(id);
    int var = tree.branch_variable(id);
    int c;
    if (!j.empty() && j.target->variable == var) {
      c = -1;
      for (std::size_t i = 0; i < nd.children.size(); ++i)
        if (tree.node(nd.children[i]).statement.value == j.target->value)
          c = static_cast<int>(i);
      if (c < 0) throw StructureError("forced value has no matching child");
    } else {
      c = rng.categorical(nd.theta);
    }
    const Statement& st = tree.node(nd.children[c]).statement;
    x[st.variable] = st.value;
    id = nd.children[c];
  }
  return x;
}

}  // namespace causaltree
