#include "causaltree/gain.hpp"

#include <algorithm>
#include <cmath>

#include "causaltree/simharness.hpp"

namespace causaltree {

namespace {

constexpr double kEps = 1e-12;

double clamp_prob(double p) { return std::clamp(p, kEps, 1.0 - kEps); }

double logit(double p) {
  p = clamp_prob(p);
  return std::log(p / (1.0 - p));
}

/// Normalizes log weights in place and returns the normalized vector.
std::vector<double> log_normalize(std::vector<double> lw) {
  const double mx = *std::max_element(lw.begin(), lw.end());
  double z = 0.0;
  for (double v : lw) z += std::exp(v - mx);
  const double log_z = mx + std::log(z);
  for (double& v : lw) v -= log_z;
  return lw;
}

void check_intervention(const BeliefState& state, const Intervention& j) {
  if (j.empty()) throw ValueError("a candidate intervention must target a variable");
  const VariableSpace& sp = state.hyp.space;
  if (j.target->variable < 0 || j.target->variable >= sp.size() || j.target->value < 0 ||
      j.target->value >= sp.cardinalities[j.target->variable])
    throw ValueError("intervention target out of range");
}

/// True-parameter posterior over hypotheses given the accumulated counts
/// (sufficient statistics of the non-forced choices).
std::vector<double> truth_log_posterior(const BeliefState& state, const GroundTruth& truth) {
  const int s = state.hyp.size();
  std::vector<double> lw(s);
  for (int k = 0; k < s; ++k) {
    const PTree& tree = truth.trees[k];
    double ll = 0.0;
    for (int id = 0; id < tree.node_count(); ++id) {
      const auto& n = state.counts.counts[k][id];
      const auto& theta = tree.node(id).theta;
      for (std::size_t c = 0; c < n.size(); ++c)
        if (n[c] > 0.0) ll += n[c] * std::log(std::max(theta[c], kEps));
    }
    lw[k] = std::log(state.hyp.prior_g[k]) + ll;
  }
  return log_normalize(std::move(lw));
}

long long consistent_outcomes(const VariableSpace& sp, const Intervention& j) {
  return grid_size(sp.cardinalities) / sp.cardinalities[j.target->variable];
}

/// One draw from the posterior-predictive of subtree k under intervention j.
Assignment sample_predictive(const BeliefState& state, int k, const Intervention& j, Rng& rng) {
  const PTree& tree = state.hyp.trees[k];
  Assignment x(tree.space().size(), -1);
  int id = 0;
  std::vector<double> w;
  while (!tree.node(id).is_leaf()) {
    const PNode& nd = tree.node(id);
    const int var = tree.branch_variable(id);
    int c = -1;
    if (!j.empty() && j.target->variable == var) {
      for (std::size_t i = 0; i < nd.children.size(); ++i)
        if (tree.node(nd.children[i]).statement.value == j.target->value)
          c = static_cast<int>(i);
    } else {
      const double a = state.priors.node_alpha[k][id];
      const auto& n = state.counts.counts[k][id];
      w.assign(n.begin(), n.end());
      for (double& v : w) v += a;
      c = rng.categorical(w);
    }
    const Statement& st = tree.node(nd.children[c]).statement;
    x[st.variable] = st.value;
    id = nd.children[c];
  }
  return x;
}

/// Shared outer loop of the gain expectations: weights[k] over hypotheses,
/// outcome_dist[k] over assignments, evidence change evaluated with the
/// agent's predictives.
double gain_expectation(const BeliefState& state, const Intervention& j,
                        const std::vector<double>& weights,
                        const std::vector<GridDist>& outcome_dists) {
  const int s = state.hyp.size();
  const Posterior post = posterior(state);
  std::vector<GridDist> q(s);
  for (int k = 0; k < s; ++k) q[k] = predictive(state, k, j);

  const std::int64_t cells = q[0].size();
  double acc = 0.0;
  std::vector<double> lw(s);
  for (std::int64_t idx = 0; idx < cells; ++idx) {
    if (q[0].p[idx] == 0.0) continue;  // inconsistent with the intervention
    for (int k = 0; k < s; ++k) lw[k] = post.log_probs[k] + std::log(q[k].p[idx]);
    const std::vector<double> after = log_normalize(lw);
    for (int k = 0; k < s; ++k) {
      const double w = weights[k] * outcome_dists[k].p[idx];
      if (w == 0.0) continue;
      acc += w * (logit(std::exp(after[k])) - logit(post.probs[k]));
    }
  }
  return acc;
}

}  // namespace

double evidence_in_favor(const Posterior& post, int k) { return logit(post.probs[k]); }

double jeffrey_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ValueError("Jeffrey divergence needs equal support sizes");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = std::clamp(p[i], kEps, 1.0);
    const double qi = std::clamp(q[i], kEps, 1.0);
    d += (pi - qi) * std::log(pi / qi);
  }
  return d;
}

double information_gain(const BeliefState& state, const DataRecord& record, int k) {
  if (!record.j.empty() && record.x[record.j.target->variable] != record.j.target->value)
    throw ValueError("record assignment contradicts its intervention");
  const Posterior post = posterior(state);
  std::vector<double> lw(state.hyp.size());
  for (int kk = 0; kk < state.hyp.size(); ++kk)
    lw[kk] = post.log_probs[kk] + log_record_predictive(state, kk, record);
  const std::vector<double> after = log_normalize(std::move(lw));
  return logit(std::exp(after[k])) - logit(post.probs[k]);
}

double expected_gain(const BeliefState& state, const Intervention& j, const GainOptions& opts,
                     Rng* rng) {
  check_intervention(state, j);
  const int s = state.hyp.size();
  const Posterior post = posterior(state);

  if (opts.sampled_outcomes > 0) {
    if (rng == nullptr) throw ValueError("sampled outcome mode needs a random source");
    double acc = 0.0;
    std::vector<double> lw(s);
    for (int draw = 0; draw < opts.sampled_outcomes; ++draw) {
      const int k = rng->categorical(post.probs);
      const DataRecord rec{sample_predictive(state, k, j, *rng), j};
      for (int kk = 0; kk < s; ++kk)
        lw[kk] = post.log_probs[kk] + log_record_predictive(state, kk, rec);
      const std::vector<double> after = log_normalize(lw);
      acc += logit(std::exp(after[k])) - logit(post.probs[k]);
    }
    return 2.0 * acc / opts.sampled_outcomes;
  }

  if (consistent_outcomes(state.hyp.space, j) > opts.outcome_cap)
    throw CapacityError("outcome enumeration exceeds the configured cap");

  std::vector<GridDist> q(s);
  for (int k = 0; k < s; ++k) q[k] = predictive(state, k, j);
  return 2.0 * gain_expectation(state, j, post.probs, q);
}

double actual_gain(const BeliefState& state, const Intervention& j, const GroundTruth& truth,
                   const GainOptions& opts) {
  check_intervention(state, j);
  if (consistent_outcomes(state.hyp.space, j) > opts.outcome_cap)
    throw CapacityError("outcome enumeration exceeds the configured cap");
  const int s = state.hyp.size();
  std::vector<double> lw = truth_log_posterior(state, truth);
  std::vector<double> weights(s);
  for (int k = 0; k < s; ++k) weights[k] = std::exp(lw[k]);
  std::vector<GridDist> p(s);
  for (int k = 0; k < s; ++k) p[k] = assignment_distribution(truth.trees[k], j);
  return gain_expectation(state, j, weights, p);
}

double two_var_actual_gain_closed_form(const std::vector<std::vector<double>>& n,
                                       const GridDist& truth_joint, int x1, double alpha) {
  if (truth_joint.cards.size() != 2) throw ValueError("closed form is for two variables");
  const int k1 = truth_joint.cards[0];
  const int k2 = truth_joint.cards[1];
  if (static_cast<int>(n.size()) != k1) throw ValueError("count matrix shape mismatch");
  for (const auto& row : n)
    if (static_cast<int>(row.size()) != k2) throw ValueError("count matrix shape mismatch");
  if (x1 < 0 || x1 >= k1) throw ValueError("intervened value out of range");
  if (!(alpha > 0.0)) throw ValueError("alpha must be positive");

  double total = 0.0;
  double row_total = 0.0;
  std::vector<double> col_totals(k2, 0.0);
  for (int a = 0; a < k1; ++a)
    for (int b = 0; b < k2; ++b) {
      total += n[a][b];
      col_totals[b] += n[a][b];
      if (a == x1) row_total += n[a][b];
    }

  const std::vector<int> ctx_vars{0};
  const std::vector<int> ctx_vals{x1};
  double gain = 0.0;
  for (int b = 0; b < k2; ++b) {
    const double qc = (n[x1][b] + alpha) / (row_total + k2 * alpha);
    const double qm = (col_totals[b] + k1 * alpha) / (total + k1 * k2 * alpha);
    const double p_cond = truth_joint.conditional(1, b, ctx_vars, ctx_vals, 1.0 / k2);
    double p_marg = 0.0;
    for (int a = 0; a < k1; ++a) p_marg += truth_joint.at(std::vector<int>{a, b});
    gain += 0.5 * (p_cond - p_marg) * std::log(std::max(qc, kEps) / std::max(qm, kEps));
  }
  return gain;
}

GridDist assignment_distribution(const PTree& tree, const Intervention& j) {
  GridDist dist(tree.space().cardinalities);
  Assignment x(tree.space().size(), -1);
  std::function<void(int, double)> walk = [&](int id, double p) {
    const PNode& nd = tree.node(id);
    if (nd.is_leaf()) {
      dist.at(x) = p;
      return;
    }
    const bool forced = !j.empty() && j.target->variable == tree.branch_variable(id);
    for (std::size_t c = 0; c < nd.children.size(); ++c) {
      const Statement& st = tree.node(nd.children[c]).statement;
      if (forced && st.value != j.target->value) continue;
      const double q = forced ? 1.0 : nd.theta[c];
      x[st.variable] = st.value;
      walk(nd.children[c], p * q);
      x[st.variable] = -1;
    }
  };
  walk(0, 1.0);
  return dist;
}

}  // namespace causaltree
