#pragma once

#include <filesystem>
#include <string>

#include "causaltree/simharness.hpp"

namespace causaltree {

/// One line of the pair metadata file: pair id, 1-based cause/effect column
/// ranges, and the weight that de-duplicates similar data sets.
struct PairMetaEntry {
  std::string id;
  int cause_first = 0, cause_last = 0;
  int effect_first = 0, effect_last = 0;
  double weight = 1.0;
};

/// First cause column and first effect column of one pair data file.
struct PairRecord {
  std::string id;
  std::vector<double> cause;
  std::vector<double> effect;
  double weight = 1.0;
};

std::vector<PairMetaEntry> load_pairmeta(const std::filesystem::path& meta_path);

PairRecord load_pair(const std::filesystem::path& data_path, const PairMetaEntry& meta);

/// Equiprobable binning: edges at the empirical i/K quantiles, values exactly
/// on an edge go to the lower bin. `degenerate` (optional) is set when some
/// bin receives no points.
std::vector<int> quantile_bin(std::span<const double> values, int K,
                              bool* degenerate = nullptr);

struct BinnedPair {
  std::vector<int> cause_bins;
  std::vector<int> effect_bins;
  int K = 5;
  bool degenerate = false;
};

BinnedPair bin_pair(const PairRecord& record, int K);

/// Empirical joint of two equal-length bin sequences over a K x K grid.
JointTable empirical_joint(std::span<const int> a, std::span<const int> b, int K);

struct PairsBenchmarkParams {
  int n_obs = 100;
  std::vector<StrategyKind> strategies{StrategyKind::ExpectedGain, StrategyKind::Random};
  int restarts = 20;
  double alpha = 1.0;
  int max_interventions = 40;
  double threshold = 0.95;
  int bins = 5;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct PairsSummaryRow {
  std::string strategy;
  double weighted_mean_interventions = 0.0;
  double weighted_se = 0.0;
};

struct PairsPairRow {
  std::string pair_id;
  std::string strategy;
  double mean_interventions = 0.0;
  double weight = 1.0;
  bool degenerate = false;
};

struct PairsBenchmarkResult {
  std::vector<PairsSummaryRow> summary;
  std::vector<PairsPairRow> per_pair;
};

/// Table-style benchmark over a directory of pair files plus pairmeta.txt:
/// per pair, the true orientation is cause -> effect, the ground truth is the
/// empirical binned joint, and the metric is the mean number of interventions
/// until the posterior on the true orientation reaches the threshold.
PairsBenchmarkResult run_pairs_benchmark(const std::filesystem::path& dataset_dir,
                                         const PairsBenchmarkParams& params);

}  // namespace causaltree
