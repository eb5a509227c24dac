#include "causaltree/pairsdata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace causaltree {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, const std::filesystem::path& file, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("non-numeric value '" + tok + "' in " + file.string() + " line " +
                     std::to_string(line_no));
  }
}

}  // namespace

std::vector<PairMetaEntry> load_pairmeta(const std::filesystem::path& meta_path) {
  std::ifstream in(meta_path);
  if (!in) throw ParseError("missing metadata file " + meta_path.string());
  std::vector<PairMetaEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 6)
      throw ParseError("expected 6 fields in " + meta_path.string() + " line " +
                       std::to_string(line_no));
    PairMetaEntry e;
    e.id = tok[0];
    e.cause_first = static_cast<int>(parse_number(tok[1], meta_path, line_no));
    e.cause_last = static_cast<int>(parse_number(tok[2], meta_path, line_no));
    e.effect_first = static_cast<int>(parse_number(tok[3], meta_path, line_no));
    e.effect_last = static_cast<int>(parse_number(tok[4], meta_path, line_no));
    e.weight = parse_number(tok[5], meta_path, line_no);
    if (e.cause_first < 1 || e.effect_first < 1)
      throw ParseError("column indices are 1-based in " + meta_path.string() + " line " +
                       std::to_string(line_no));
    if (!(e.weight > 0.0))
      throw ParseError("nonpositive weight in " + meta_path.string() + " line " +
                       std::to_string(line_no));
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw ParseError("metadata file " + meta_path.string() + " is empty");
  return entries;
}

PairRecord load_pair(const std::filesystem::path& data_path, const PairMetaEntry& meta) {
  std::ifstream in(data_path);
  if (!in) throw ParseError("missing pair data file " + data_path.string());
  PairRecord rec;
  rec.id = meta.id;
  rec.weight = meta.weight;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    const int need = std::max(meta.cause_first, meta.effect_first);
    if (static_cast<int>(tok.size()) < need)
      throw ParseError("expected at least " + std::to_string(need) + " columns in " +
                       data_path.string() + " line " + std::to_string(line_no));
    rec.cause.push_back(parse_number(tok[meta.cause_first - 1], data_path, line_no));
    rec.effect.push_back(parse_number(tok[meta.effect_first - 1], data_path, line_no));
  }
  if (rec.cause.empty()) throw ParseError("pair data file " + data_path.string() + " is empty");
  return rec;
}

std::vector<int> quantile_bin(std::span<const double> values, int K, bool* degenerate) {
  if (K < 2) throw ValueError("need at least two bins");
  if (values.empty()) throw ValueError("cannot bin an empty sequence");
  const std::int64_t n = static_cast<std::int64_t>(values.size());
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  // Edge i sits at the empirical i/K quantile: the smallest value whose
  // empirical CDF reaches i/K. A value equal to an edge stays in the lower
  // bin, so equal values always share a bin.
  std::vector<double> edges(K - 1);
  for (int i = 1; i < K; ++i) edges[i - 1] = sorted[(i * n + K - 1) / K - 1];

  std::vector<int> bins(values.size());
  std::vector<std::int64_t> occupancy(K, 0);
  for (std::size_t t = 0; t < values.size(); ++t) {
    int b = 0;
    while (b < K - 1 && values[t] > edges[b]) ++b;
    bins[t] = b;
    ++occupancy[b];
  }
  if (degenerate != nullptr)
    *degenerate = std::any_of(occupancy.begin(), occupancy.end(),
                              [](std::int64_t c) { return c == 0; });
  return bins;
}

BinnedPair bin_pair(const PairRecord& record, int K) {
  BinnedPair bp;
  bp.K = K;
  bool deg_cause = false, deg_effect = false;
  bp.cause_bins = quantile_bin(record.cause, K, &deg_cause);
  bp.effect_bins = quantile_bin(record.effect, K, &deg_effect);
  bp.degenerate = deg_cause || deg_effect;
  return bp;
}

JointTable empirical_joint(std::span<const int> a, std::span<const int> b, int K) {
  if (a.size() != b.size() || a.empty())
    throw ValueError("bin sequences must be nonempty and equally long");
  JointTable joint(std::vector<int>{K, K});
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] < 0 || a[t] >= K || b[t] < 0 || b[t] >= K) throw ValueError("bin index out of range");
    joint.p[a[t] * K + b[t]] += 1.0;
  }
  joint.normalize();
  return joint;
}

PairsBenchmarkResult run_pairs_benchmark(const std::filesystem::path& dataset_dir,
                                         const PairsBenchmarkParams& params) {
  const std::vector<PairMetaEntry> meta = load_pairmeta(dataset_dir / "pairmeta.txt");
  const int num_pairs = static_cast<int>(meta.size());
  const int num_strategies = static_cast<int>(params.strategies.size());
  if (num_strategies == 0) throw ValueError("no strategies requested");

  // per_pair_means[pair][strategy]
  std::vector<std::vector<double>> per_pair_means(num_pairs,
                                                  std::vector<double>(num_strategies, 0.0));
  std::vector<char> degenerate(num_pairs, 0);

  parallel_for(num_pairs, params.threads, [&](int pi) {
    const PairRecord rec = load_pair(dataset_dir / ("pair" + meta[pi].id + ".txt"), meta[pi]);
    const BinnedPair binned = bin_pair(rec, params.bins);
    degenerate[pi] = binned.degenerate ? 1 : 0;
    const JointTable joint = empirical_joint(binned.cause_bins, binned.effect_bins, params.bins);

    VariableSpace space;
    space.names = {"cause", "effect"};
    space.cardinalities = {params.bins, params.bins};
    const HypothesisSet hset = two_orientation_hypotheses(space);
    const GroundTruth truth = parameterize_truth(hset, joint, /*k_star=*/0);

    for (int si = 0; si < num_strategies; ++si) {
      EpisodeParams ep;
      ep.n_obs = params.n_obs;
      ep.max_interventions = params.max_interventions;
      ep.alpha = params.alpha;
      ep.strategy = params.strategies[si];
      ep.threshold = params.threshold;
      double total_steps = 0.0;
      for (int r = 0; r < params.restarts; ++r) {
        const std::uint64_t seed =
            derive_seed(params.seed, (static_cast<std::uint64_t>(pi) << 24) ^
                                         (static_cast<std::uint64_t>(si) << 16) ^
                                         static_cast<std::uint64_t>(r));
        total_steps += run_episode(hset, truth, ep, seed).steps_to_certainty;
      }
      per_pair_means[pi][si] = total_steps / params.restarts;
    }
  });

  PairsBenchmarkResult result;
  for (int si = 0; si < num_strategies; ++si) {
    double w_sum = 0.0, w2_sum = 0.0, mean = 0.0;
    for (int pi = 0; pi < num_pairs; ++pi) {
      w_sum += meta[pi].weight;
      w2_sum += meta[pi].weight * meta[pi].weight;
      mean += meta[pi].weight * per_pair_means[pi][si];
    }
    mean /= w_sum;
    double var = 0.0;
    for (int pi = 0; pi < num_pairs; ++pi) {
      const double d = per_pair_means[pi][si] - mean;
      var += meta[pi].weight * d * d;
    }
    // weighted sample variance with the effective sample size of the weights
    const double n_eff = w_sum * w_sum / w2_sum;
    double se = 0.0;
    if (n_eff > 1.0) se = std::sqrt(var / w_sum * n_eff / (n_eff - 1.0) / n_eff);
    result.summary.push_back(
        PairsSummaryRow{strategy_name(params.strategies[si]), mean, se});
    for (int pi = 0; pi < num_pairs; ++pi)
      result.per_pair.push_back(PairsPairRow{meta[pi].id, strategy_name(params.strategies[si]),
                                             per_pair_means[pi][si], meta[pi].weight,
                                             degenerate[pi] != 0});
  }
  return result;
}

}  // namespace causaltree
