#pragma once

#include <vector>

#include "causaltree/grid.hpp"
#include "causaltree/hypotheses.hpp"

namespace causaltree {

/// One observed record: the realized complete assignment and the intervention
/// (possibly empty) it was observed under.
struct DataRecord {
  Assignment x;
  Intervention j;
};

using Dataset = std::vector<DataRecord>;

/// Realization counts N_{j|n} per hypothesis, node and child, with choices
/// forced by an intervention excluded. Values are reals so that analytic
/// count tables (e.g. N * p) can be injected; ordinary updates add 1.
struct CountTable {
  /// counts[k][node id][child index]
  std::vector<std::vector<std::vector<double>>> counts;
  double total_records = 0.0;

  static CountTable zeros(const HypothesisSet& hset);
};

/// Walks the record's realization path in every hypothesis subtree and
/// increments the chosen-child counts, skipping nodes that branch on the
/// intervened variable.
void update_counts(CountTable& table, const HypothesisSet& hset, const DataRecord& record,
                   double weight = 1.0);

/// Read-only bundle the scoring operations work over.
struct BeliefState {
  const HypothesisSet& hyp;
  const CountTable& counts;
  const PriorTable& priors;
};

/// Posterior over hypotheses; log_probs are normalized log probabilities.
struct Posterior {
  std::vector<double> log_probs;
  std::vector<double> probs;
};

/// Log Dirichlet-multinomial evidence of the data under hypothesis k,
/// including the prior normalizer, in nats. Zero for an empty table.
double log_marginal_likelihood(const BeliefState& state, int k);

/// Posterior over hypotheses via log-sum-exp of prior_g and the marginal
/// likelihoods.
Posterior posterior(const BeliefState& state);

/// Log posterior-predictive probability of a record under hypothesis k:
/// the product over non-forced path nodes of the alpha-smoothed transition
/// (N + alpha^(n)) / (sum N + |ch| alpha^(n)).
double log_record_predictive(const BeliefState& state, int k, const DataRecord& record);

/// Posterior-predictive distribution over complete assignments under
/// hypothesis k and intervention j (possibly empty). Assignments inconsistent
/// with j have probability zero; the rest sum to one.
GridDist predictive(const BeliefState& state, int k, const Intervention& j);

}  // namespace causaltree
