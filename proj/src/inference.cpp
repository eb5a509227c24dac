#include "causaltree/inference.hpp"

#include <algorithm>
#include <cmath>

namespace causaltree {

CountTable CountTable::zeros(const HypothesisSet& hset) {
  CountTable t;
  t.counts.resize(hset.size());
  for (int k = 0; k < hset.size(); ++k) {
    const PTree& tree = hset.trees[k];
    t.counts[k].resize(tree.node_count());
    for (int id = 0; id < tree.node_count(); ++id)
      t.counts[k][id].assign(tree.node(id).children.size(), 0.0);
  }
  return t;
}

void update_counts(CountTable& table, const HypothesisSet& hset, const DataRecord& record,
                   double weight) {
  for (int k = 0; k < hset.size(); ++k) {
    const PTree& tree = hset.trees[k];
    for (const PathStep& step : realization_path(tree, record.x)) {
      if (!record.j.empty() && tree.branch_variable(step.node) == record.j.target->variable)
        continue;  // forced choice, not evidence about the mechanism
      table.counts[k][step.node][step.child_index] += weight;
    }
  }
  table.total_records += weight;
}

double log_marginal_likelihood(const BeliefState& state, int k) {
  const PTree& tree = state.hyp.trees[k];
  double lml = 0.0;
  for (int id = 0; id < tree.node_count(); ++id) {
    const PNode& nd = tree.node(id);
    if (nd.is_leaf()) continue;
    const double a = state.priors.node_alpha[k][id];
    const auto& n = state.counts.counts[k][id];
    const double c = static_cast<double>(nd.children.size());
    double total = 0.0;
    for (double nj : n) {
      lml += std::lgamma(nj + a) - std::lgamma(a);
      total += nj;
    }
    lml += std::lgamma(c * a) - std::lgamma(total + c * a);
  }
  return lml;
}

Posterior posterior(const BeliefState& state) {
  const int s = state.hyp.size();
  Posterior post;
  post.log_probs.resize(s);
  for (int k = 0; k < s; ++k)
    post.log_probs[k] = std::log(state.hyp.prior_g[k]) + log_marginal_likelihood(state, k);

  const double mx = *std::max_element(post.log_probs.begin(), post.log_probs.end());
  double z = 0.0;
  for (double lw : post.log_probs) z += std::exp(lw - mx);
  const double log_z = mx + std::log(z);
  post.probs.resize(s);
  for (int k = 0; k < s; ++k) {
    post.log_probs[k] -= log_z;
    post.probs[k] = std::exp(post.log_probs[k]);
  }
  return post;
}

double log_record_predictive(const BeliefState& state, int k, const DataRecord& record) {
  const PTree& tree = state.hyp.trees[k];
  double lp = 0.0;
  for (const PathStep& step : realization_path(tree, record.x)) {
    if (!record.j.empty() && tree.branch_variable(step.node) == record.j.target->variable)
      continue;
    const double a = state.priors.node_alpha[k][step.node];
    const auto& n = state.counts.counts[k][step.node];
    double total = 0.0;
    for (double nj : n) total += nj;
    lp += std::log((n[step.child_index] + a) / (total + static_cast<double>(n.size()) * a));
  }
  return lp;
}

GridDist predictive(const BeliefState& state, int k, const Intervention& j) {
  const PTree& tree = state.hyp.trees[k];
  GridDist dist(tree.space().cardinalities);

  Assignment x(tree.space().size(), -1);
  std::function<void(int, double)> walk = [&](int id, double p) {
    const PNode& nd = tree.node(id);
    if (nd.is_leaf()) {
      dist.at(x) = p;
      return;
    }
    const int var = tree.branch_variable(id);
    const bool forced = !j.empty() && j.target->variable == var;
    const double a = state.priors.node_alpha[k][id];
    const auto& n = state.counts.counts[k][id];
    double total = 0.0;
    for (double nj : n) total += nj;
    const double denom = total + static_cast<double>(n.size()) * a;
    for (std::size_t c = 0; c < nd.children.size(); ++c) {
      const Statement& st = tree.node(nd.children[c]).statement;
      if (forced && st.value != j.target->value) continue;
      const double q = forced ? 1.0 : (n[c] + a) / denom;
      x[st.variable] = st.value;
      walk(nd.children[c], p * q);
      x[st.variable] = -1;
    }
  };
  walk(0, 1.0);
  return dist;
}

}  // namespace causaltree
