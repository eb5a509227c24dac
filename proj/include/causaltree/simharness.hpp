#pragma once

#include <cstdint>
#include <functional>

#include "causaltree/strategies.hpp"

namespace causaltree {

/// Joint distributions are full-grid tables; see GridDist.
using JointTable = GridDist;

/// Symmetric two-variable joint: diagonal mass rho spread over K cells,
/// the rest uniform off-diagonal.
JointTable make_joint_symmetric(int K, double rho);

/// The asymmetric K=4 two-variable joint: one flat heavy row plus one heavy
/// cell in the last row, 5 cells at rho/5 and 11 at (1-rho)/11.
JointTable make_joint_asymmetric(double rho);

/// 0/1 sparsity pattern helpers for the pattern-mixture joints.
std::vector<std::uint8_t> diagonal_pattern(int cardinality);
std::vector<std::uint8_t> random_pattern_cells(std::int64_t cells, int cells_set, Rng& rng);
std::vector<std::uint8_t> random_pattern(int cardinality, int cells_set, Rng& rng);

/// Mixture joint (rho/M) * pattern + ((1-rho)/(cells - M)) * (1 - pattern)
/// over an arbitrary grid.
JointTable make_joint_pattern(std::vector<int> cards, double rho,
                              std::span<const std::uint8_t> pattern);

/// Three-variable special case with a common cardinality.
JointTable make_joint_three(int cardinality, double rho, std::span<const std::uint8_t> pattern);

/// The true mechanism: every hypothesis subtree re-parameterized with the
/// exact conditionals of the joint, plus the index of the true hypothesis.
/// Sampling uses subtree k_star.
struct GroundTruth {
  int k_star = 0;
  std::vector<PTree> trees;
  JointTable joint;
};

/// Fills every subtree's transitions with the joint's conditionals given the
/// statements on the path so far. Zero-probability contexts fall back to
/// uniform transitions.
GroundTruth parameterize_truth(const HypothesisSet& hset, const JointTable& joint, int k_star);

struct EpisodeParams {
  int n_obs = 300;
  int max_interventions = 40;
  double alpha = 1.0;
  StrategyKind strategy = StrategyKind::ExpectedGain;
  double threshold = 0.95;
  GainOptions gain;

  void validate(int num_hypotheses) const;
};

struct EpisodeResult {
  /// posteriors[t][k]; index 0 is the state after the observational hot
  /// start, index t the state after the t-th intervention.
  std::vector<std::vector<double>> posteriors;
  std::vector<double> posterior_true;
  std::vector<Intervention> chosen;
  /// First step at which the posterior on the true hypothesis reached the
  /// certainty threshold; max_interventions when it never did.
  int steps_to_certainty = 0;
};

EpisodeResult run_episode(const HypothesisSet& hset, const GroundTruth& truth,
                          const EpisodeParams& params, std::uint64_t seed);

/// Everything one restart needs. The factory may draw from the rng (e.g. a
/// fresh sparsity pattern per restart) or return a fixed setup.
struct Setup {
  HypothesisSet hyp;
  GroundTruth truth;
};
using SetupFactory = std::function<Setup(Rng&)>;

struct ExperimentAggregate {
  std::vector<double> mean_posterior_true;  // per step, 0..max_interventions
  std::vector<double> se_posterior_true;
  double mean_steps_to_certainty = 0.0;
  double se_steps_to_certainty = 0.0;
};

struct ExperimentResult {
  ExperimentAggregate aggregate;
  std::vector<EpisodeResult> episodes;
};

/// Runs `restarts` independent seeded episodes (in parallel when threads > 1)
/// and aggregates the per-step mean and standard error of the mean.
/// Deterministic given the base seed.
ExperimentResult run_experiment(const SetupFactory& factory, const EpisodeParams& params,
                                int restarts, std::uint64_t base_seed, int threads = 1);

/// Index-parallel loop helper; used for restarts and the pairs benchmark.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace causaltree
