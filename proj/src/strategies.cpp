#include "causaltree/strategies.hpp"

#include <algorithm>
#include <cmath>

#include "causaltree/simharness.hpp"

namespace causaltree {

StrategyKind strategy_from_name(const std::string& name) {
  if (name == "expected") return StrategyKind::ExpectedGain;
  if (name == "actual") return StrategyKind::ActualGain;
  if (name == "random") return StrategyKind::Random;
  if (name == "entropy") return StrategyKind::Entropy;
  throw ValueError("unknown strategy '" + name + "' (expected, actual, random, entropy)");
}

std::string strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::ExpectedGain: return "expected";
    case StrategyKind::ActualGain: return "actual";
    case StrategyKind::Random: return "random";
    case StrategyKind::Entropy: return "entropy";
  }
  return "?";
}

int EdgeBeliefs::pair_rank(int i, int j, int m) {
  // pairs (0,1), (0,2), ..., (0,m-1), (1,2), ...
  return i * m - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<Intervention> all_single_interventions(const VariableSpace& space) {
  std::vector<Intervention> out;
  for (int v = 0; v < space.size(); ++v)
    for (int val = 0; val < space.cardinalities[v]; ++val)
      out.push_back(Intervention::make(v, val));
  return out;
}

namespace {

const std::vector<int>& chain_order_or_throw(const HypothesisSet& hset, int k) {
  if (!hset.chain_orders[k].has_value())
    throw UnsupportedError(
        "hypothesis '" + hset.labels[k] +
        "' is context-dependent; edge beliefs and the entropy strategy need chain hypotheses");
  return *hset.chain_orders[k];
}

}  // namespace

EdgeBeliefs edge_beliefs_from(const Posterior& post, const HypothesisSet& hset) {
  const int m = hset.space.size();
  EdgeBeliefs eb;
  eb.num_variables = m;
  eb.triples.assign(m * (m - 1) / 2, {0.0, 0.0, 0.0});
  for (int k = 0; k < hset.size(); ++k) {
    const std::vector<int>& order = chain_order_or_throw(hset, k);
    std::vector<int> position(m);
    for (int d = 0; d < m; ++d) position[order[d]] = d;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const int slot = position[i] < position[j] ? 0 : 1;
        eb.triples[EdgeBeliefs::pair_rank(i, j, m)][slot] += post.probs[k];
      }
  }
  return eb;
}

EdgeBeliefs edge_beliefs(const BeliefState& state) {
  return edge_beliefs_from(posterior(state), state.hyp);
}

double entropy_of_beliefs(const EdgeBeliefs& beliefs) {
  double h = 0.0;
  for (const auto& t : beliefs.triples)
    for (double p : t)
      if (p > 0.0) h -= p * std::log(p);
  return h;
}

double entropy_cost(const BeliefState& state) { return entropy_of_beliefs(edge_beliefs(state)); }

double expected_entropy_after(const BeliefState& state, const Intervention& j,
                              const GainOptions& opts) {
  if (j.empty()) throw ValueError("a candidate intervention must target a variable");
  const int s = state.hyp.size();
  for (int k = 0; k < s; ++k) chain_order_or_throw(state.hyp, k);
  const std::int64_t outcomes =
      grid_size(state.hyp.space.cardinalities) / state.hyp.space.cardinalities[j.target->variable];
  if (outcomes > opts.outcome_cap)
    throw CapacityError("outcome enumeration exceeds the configured cap");

  const Posterior post = posterior(state);
  std::vector<GridDist> q(s);
  for (int k = 0; k < s; ++k) q[k] = predictive(state, k, j);

  double acc = 0.0;
  std::vector<double> lw(s);
  Posterior after;
  for (std::int64_t idx = 0; idx < q[0].size(); ++idx) {
    if (q[0].p[idx] == 0.0) continue;
    double mix = 0.0;
    for (int k = 0; k < s; ++k) {
      lw[k] = post.log_probs[k] + std::log(q[k].p[idx]);
      mix += post.probs[k] * q[k].p[idx];
    }
    const double mx = *std::max_element(lw.begin(), lw.end());
    double z = 0.0;
    for (double v : lw) z += std::exp(v - mx);
    const double log_z = mx + std::log(z);
    after.log_probs.assign(s, 0.0);
    after.probs.assign(s, 0.0);
    for (int k = 0; k < s; ++k) {
      after.log_probs[k] = lw[k] - log_z;
      after.probs[k] = std::exp(after.log_probs[k]);
    }
    acc += mix * entropy_of_beliefs(edge_beliefs_from(after, state.hyp));
  }
  return acc;
}

int argmax_with_ties(std::span<const double> scores, double tol) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i)
    if (scores[i] > scores[best] + tol) best = i;
  return best;
}

std::vector<GainScore> score_interventions(StrategyKind kind, const BeliefState& state,
                                           std::span<const Intervention> candidates,
                                           const GroundTruth* truth, const GainOptions& opts,
                                           Rng* rng) {
  std::vector<GainScore> out;
  out.reserve(candidates.size());
  for (const Intervention& j : candidates) {
    double score = 0.0;
    switch (kind) {
      case StrategyKind::ExpectedGain:
        score = expected_gain(state, j, opts, rng);
        break;
      case StrategyKind::ActualGain:
        if (truth == nullptr)
          throw ValueError("the actual-gain strategy needs a ground-truth oracle");
        score = actual_gain(state, j, *truth, opts);
        break;
      case StrategyKind::Entropy:
        score = -expected_entropy_after(state, j, opts);
        break;
      case StrategyKind::Random:
        throw ValueError("the random strategy has no scores");
    }
    out.push_back(GainScore{j, score});
  }
  return out;
}

Intervention select(StrategyKind kind, const BeliefState& state,
                    std::span<const Intervention> candidates, Rng& rng, const GroundTruth* truth,
                    const GainOptions& opts) {
  if (candidates.empty()) throw ValueError("no candidate interventions");
  if (kind == StrategyKind::Random) return candidates[rng.uniform_int(candidates.size())];

  const std::vector<GainScore> scored =
      score_interventions(kind, state, candidates, truth, opts, &rng);
  std::vector<double> scores;
  scores.reserve(scored.size());
  for (const GainScore& g : scored) scores.push_back(g.score);
  return candidates[argmax_with_ties(scores)];
}

}  // namespace causaltree
