#pragma once

#include <span>

#include "causaltree/inference.hpp"

namespace causaltree {

struct GroundTruth;  // simharness.hpp

/// Log posterior odds of hypothesis k against all alternatives, in nats.
/// Probabilities are clamped to [1e-12, 1 - 1e-12] before the logs.
double evidence_in_favor(const Posterior& post, int k);

/// Symmetrized divergence sum_x (p - q) log(p/q); entries clamped to
/// [1e-12, 1] before use.
double jeffrey_divergence(std::span<const double> p, std::span<const double> q);

struct GainOptions {
  /// Maximum number of outcomes enumerated per intervention.
  long long outcome_cap = 1'000'000;
  /// When positive, estimate the outcome expectation from this many draws
  /// instead of enumerating (requires an Rng).
  int sampled_outcomes = 0;
};

/// A scored candidate intervention, in nats.
struct GainScore {
  Intervention intervention;
  double score = 0.0;
};

/// Increase in evidence in favor of hypothesis k from appending the record;
/// the live state is not modified.
double information_gain(const BeliefState& state, const DataRecord& record, int k);

/// Agent-computable expectation of the evidence increase over hypotheses and
/// outcomes of the candidate intervention, normalized so that the
/// two-variable observational case equals the Jeffrey divergence between the
/// predictive conditional and marginal.
double expected_gain(const BeliefState& state, const Intervention& j,
                     const GainOptions& opts = {}, Rng* rng = nullptr);

/// The same expectation taken under the true model: hypotheses weighted by
/// the true-parameter posterior and outcomes by the true intervened
/// distribution. The inner evidence term is still the agent's.
double actual_gain(const BeliefState& state, const Intervention& j, const GroundTruth& truth,
                   const GainOptions& opts = {});

/// Closed form for the two-variable, two-orientation, observational-only
/// case: 1/2 sum_x2 [P(x2|x1) - P(x2)] log Q(x2|x1,D)/Q(x2|D), from a raw
/// count matrix n[x1][x2] and the true joint.
double two_var_actual_gain_closed_form(const std::vector<std::vector<double>>& n,
                                       const GridDist& truth_joint, int x1, double alpha);

/// Realization probabilities of the (optionally intervened) tree over the
/// full assignment grid.
GridDist assignment_distribution(const PTree& tree, const Intervention& j);

}  // namespace causaltree
