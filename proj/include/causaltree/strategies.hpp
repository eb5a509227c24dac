#pragma once

#include <array>
#include <string>

#include "causaltree/gain.hpp"

namespace causaltree {

enum class StrategyKind { ExpectedGain, ActualGain, Random, Entropy };

StrategyKind strategy_from_name(const std::string& name);
std::string strategy_name(StrategyKind kind);

/// For each unordered variable pair, probabilities of the three edge
/// outcomes (i->j, j->i, no edge), derived from the hypothesis posterior.
/// Fully-connected chain hypotheses give the no-edge outcome mass zero.
struct EdgeBeliefs {
  int num_variables = 0;
  std::vector<std::array<double, 3>> triples;  // pairs (i, j), i < j, lexicographic

  static int pair_rank(int i, int j, int m);
};

/// All candidate single-variable interventions, lexicographic by
/// (variable index, value). The empty intervention is never a candidate.
std::vector<Intervention> all_single_interventions(const VariableSpace& space);

EdgeBeliefs edge_beliefs_from(const Posterior& post, const HypothesisSet& hset);
EdgeBeliefs edge_beliefs(const BeliefState& state);

/// Sum of the Shannon entropies (nats) of the per-pair belief triples.
double entropy_of_beliefs(const EdgeBeliefs& beliefs);
double entropy_cost(const BeliefState& state);

/// Expectation of the post-update entropy cost over hypotheses and outcomes
/// of the candidate intervention, using the same alpha-smoothed predictives
/// as the gain scores.
double expected_entropy_after(const BeliefState& state, const Intervention& j,
                              const GainOptions& opts = {});

/// Index of the best score; scores within `tol` of the incumbent leave the
/// earlier candidate selected, so exact ties resolve to the lowest
/// (variable, value).
int argmax_with_ties(std::span<const double> scores, double tol = 1e-9);

/// Scores every candidate under the given strategy (gain in nats; for the
/// entropy strategy the score is the negated expected cost).
std::vector<GainScore> score_interventions(StrategyKind kind, const BeliefState& state,
                                           std::span<const Intervention> candidates,
                                           const GroundTruth* truth = nullptr,
                                           const GainOptions& opts = {}, Rng* rng = nullptr);

/// Picks the next intervention. Deterministic given the state snapshot and
/// the random source's seed.
Intervention select(StrategyKind kind, const BeliefState& state,
                    std::span<const Intervention> candidates, Rng& rng,
                    const GroundTruth* truth = nullptr, const GainOptions& opts = {});

}  // namespace causaltree
