#pragma once

#include <string>
#include <vector>

#include "causaltree/pairsdata.hpp"

namespace causaltree {

enum class ExperimentKind { Symmetric, Asymmetric, ThreeVar, Context, Pairs, CustomTree };

ExperimentKind experiment_from_name(const std::string& name);
std::string experiment_name(ExperimentKind kind);

/// One hypothesis-set description entry, either "chain: 0,1,2" or
/// "context_swap: pivot=0; swap=1; base=1,2".
struct HypothesisSpecEntry {
  enum class Kind { Chain, ContextSwap } kind = Kind::Chain;
  std::vector<int> order;
  ContextSwapSpec swap;
};

HypothesisSpecEntry parse_hypothesis_entry(const std::string& text);

/// Fully resolved configuration for one CLI invocation.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::Asymmetric;
  std::vector<StrategyKind> strategies{StrategyKind::ExpectedGain, StrategyKind::Random};
  int n_obs = 300;
  int restarts = 100;
  double alpha = 1.0;
  double rho = 0.9;
  int cardinality = 0;  // 0 = per-experiment default
  std::vector<int> cardinalities;  // custom-tree only
  std::uint64_t seed = 1;
  std::string out_dir;  // default from $CAUSALTREE_OUT, else "out"
  std::string dataset_dir;
  std::string dataset_csv;
  bool oracle = false;
  double threshold = 0.95;
  int max_interventions = 40;
  int sampled_outcomes = 0;
  int truth_index = -1;  // -1 = per-experiment default
  int pattern_m = 0;     // 0 = per-experiment default
  int threads = 1;
  bool dump_tree = false;
  std::vector<HypothesisSpecEntry> hypotheses;

  void validate() const;
};

/// Hypothesis set for the configured experiment.
HypothesisSet make_hypothesis_set(const RunConfig& cfg);

/// Hypothesis set plus ground truth for one restart; the rng seeds the
/// sparsity pattern where the experiment draws one.
Setup make_setup(const RunConfig& cfg, Rng& rng);

/// Runs the configured experiment and writes episodes.csv, aggregate.csv and
/// chart.svg (pairs_summary.csv and pairs_detail.csv for the pairs kind)
/// into the output directory.
void cmd_run(const RunConfig& cfg);

/// Scores every candidate intervention against the dataset and writes CSV to
/// the stream.
void cmd_score(const RunConfig& cfg, std::ostream& out);

/// Writes the hypothesis meta-tree document to the stream.
void cmd_dump_tree(const RunConfig& cfg, std::ostream& out);

/// Entry point used by the binary: parses flags/config and dispatches.
/// Exit codes: 0 success, 1 usage error, 2 runtime error.
int run_cli(int argc, const char* const* argv);

}  // namespace causaltree
