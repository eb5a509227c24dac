#include "causaltree/simharness.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace causaltree {

JointTable make_joint_symmetric(int K, double rho) {
  if (K < 2) throw ValueError("K must be at least 2");
  if (rho < 0.0 || rho > 1.0) throw ValueError("rho must be in [0, 1]");
  JointTable joint(std::vector<int>{K, K});
  const double diag = rho / K;
  const double off = (1.0 - rho) / (static_cast<double>(K) * (K - 1));
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b) joint.p[a * K + b] = a == b ? diag : off;
  return joint;
}

JointTable make_joint_asymmetric(double rho) {
  if (rho < 0.0 || rho > 1.0) throw ValueError("rho must be in [0, 1]");
  constexpr int K = 4;
  JointTable joint(std::vector<int>{K, K});
  const double heavy = rho / 5.0;
  const double light = (1.0 - rho) / 11.0;
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b) {
      const bool is_heavy = a == 0 || (a == 3 && b == 0);
      joint.p[a * K + b] = is_heavy ? heavy : light;
    }
  return joint;
}

std::vector<std::uint8_t> diagonal_pattern(int cardinality) {
  const std::int64_t n = static_cast<std::int64_t>(cardinality) * cardinality * cardinality;
  std::vector<std::uint8_t> pattern(n, 0);
  for (int v = 0; v < cardinality; ++v)
    pattern[(static_cast<std::int64_t>(v) * cardinality + v) * cardinality + v] = 1;
  return pattern;
}

std::vector<std::uint8_t> random_pattern_cells(std::int64_t cells, int cells_set, Rng& rng) {
  if (cells_set <= 0 || cells_set >= cells)
    throw ValueError("pattern must set between 1 and cells - 1 entries");
  std::vector<std::int64_t> idx(cells);
  for (std::int64_t i = 0; i < cells; ++i) idx[i] = i;
  // partial Fisher-Yates: the first cells_set entries become the chosen cells
  for (int i = 0; i < cells_set; ++i) {
    const int pick = i + rng.uniform_int(static_cast<int>(cells - i));
    std::swap(idx[i], idx[pick]);
  }
  std::vector<std::uint8_t> pattern(cells, 0);
  for (int i = 0; i < cells_set; ++i) pattern[idx[i]] = 1;
  return pattern;
}

std::vector<std::uint8_t> random_pattern(int cardinality, int cells_set, Rng& rng) {
  return random_pattern_cells(
      static_cast<std::int64_t>(cardinality) * cardinality * cardinality, cells_set, rng);
}

JointTable make_joint_pattern(std::vector<int> cards, double rho,
                              std::span<const std::uint8_t> pattern) {
  if (rho < 0.0 || rho > 1.0) throw ValueError("rho must be in [0, 1]");
  const std::int64_t n = grid_size(cards);
  if (static_cast<std::int64_t>(pattern.size()) != n)
    throw ValueError("pattern size must match the assignment grid");
  std::int64_t m = 0;
  for (std::uint8_t b : pattern) m += b ? 1 : 0;
  if (m == 0 || m == n) throw ValueError("pattern must be neither empty nor full");

  JointTable joint(std::move(cards));
  const double heavy = rho / static_cast<double>(m);
  const double light = (1.0 - rho) / static_cast<double>(n - m);
  for (std::int64_t i = 0; i < n; ++i) joint.p[i] = pattern[i] ? heavy : light;
  return joint;
}

JointTable make_joint_three(int cardinality, double rho, std::span<const std::uint8_t> pattern) {
  if (cardinality < 2) throw ValueError("cardinality must be at least 2");
  return make_joint_pattern({cardinality, cardinality, cardinality}, rho, pattern);
}

GroundTruth parameterize_truth(const HypothesisSet& hset, const JointTable& joint, int k_star) {
  if (k_star < 0 || k_star >= hset.size()) throw ValueError("true hypothesis index out of range");
  if (joint.cards != hset.space.cardinalities)
    throw ValueError("joint table shape does not match the variable space");
  if (std::abs(joint.total() - 1.0) > 1e-9) throw ValueError("joint table is not normalized");

  GroundTruth truth;
  truth.k_star = k_star;
  truth.joint = joint;
  truth.trees.reserve(hset.size());

  for (int k = 0; k < hset.size(); ++k) {
    const PTree& tree = hset.trees[k];
    std::vector<std::vector<double>> theta(tree.node_count());
    std::vector<int> ctx_vars, ctx_vals;

    std::function<void(int)> walk = [&](int id) {
      const PNode& nd = tree.node(id);
      if (nd.is_leaf()) return;
      const int var = tree.branch_variable(id);
      theta[id].resize(nd.children.size());
      double sum = 0.0;
      for (std::size_t c = 0; c < nd.children.size(); ++c) {
        const int value = tree.node(nd.children[c]).statement.value;
        theta[id][c] = joint.conditional(var, value, ctx_vars, ctx_vals,
                                         1.0 / static_cast<double>(nd.children.size()));
        sum += theta[id][c];
      }
      for (double& t : theta[id]) t /= sum;  // remove rounding drift
      for (std::size_t c = 0; c < nd.children.size(); ++c) {
        ctx_vars.push_back(var);
        ctx_vals.push_back(tree.node(nd.children[c]).statement.value);
        walk(nd.children[c]);
        ctx_vars.pop_back();
        ctx_vals.pop_back();
      }
    };
    walk(0);
    truth.trees.push_back(tree.with_theta(std::move(theta)));
  }
  return truth;
}

void EpisodeParams::validate(int num_hypotheses) const {
  if (num_hypotheses < 2) throw ValueError("need at least two hypotheses");
  if (n_obs < 0) throw ValueError("n_obs must be nonnegative");
  if (max_interventions < 0) throw ValueError("max_interventions must be nonnegative");
  if (!(alpha > 0.0)) throw ValueError("alpha must be positive");
  if (!(threshold > 0.5 && threshold < 1.0)) throw ValueError("threshold must be in (0.5, 1)");
}

EpisodeResult run_episode(const HypothesisSet& hset, const GroundTruth& truth,
                          const EpisodeParams& params, std::uint64_t seed) {
  params.validate(hset.size());
  Rng rng(seed);
  CountTable counts = CountTable::zeros(hset);
  const PriorTable priors = assign_priors(hset, params.alpha);
  const BeliefState state{hset, counts, priors};
  const PTree& mechanism = truth.trees[truth.k_star];

  for (int i = 0; i < params.n_obs; ++i)
    update_counts(counts, hset, DataRecord{sample(mechanism, Intervention::none(), rng),
                                           Intervention::none()});

  EpisodeResult result;
  result.steps_to_certainty = params.max_interventions;
  bool certain = false;
  auto record_posterior = [&](int step) {
    const Posterior post = posterior(state);
    result.posteriors.push_back(post.probs);
    result.posterior_true.push_back(post.probs[truth.k_star]);
    if (!certain && post.probs[truth.k_star] >= params.threshold) {
      certain = true;
      result.steps_to_certainty = step;
    }
  };
  record_posterior(0);

  const std::vector<Intervention> candidates = all_single_interventions(hset.space);
  for (int t = 1; t <= params.max_interventions; ++t) {
    const Intervention j =
        select(params.strategy, state, candidates, rng, &truth, params.gain);
    const Assignment x = sample(mechanism, j, rng);
    update_counts(counts, hset, DataRecord{x, j});
    result.chosen.push_back(j);
    record_posterior(t);
  }
  return result;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ExperimentResult run_experiment(const SetupFactory& factory, const EpisodeParams& params,
                                int restarts, std::uint64_t base_seed, int threads) {
  if (restarts < 1) throw ValueError("need at least one restart");
  ExperimentResult result;
  result.episodes.resize(restarts);

  parallel_for(restarts, threads, [&](int r) {
    Rng setup_rng(derive_seed(base_seed, 0x517cc1b727220a95ULL + static_cast<std::uint64_t>(r)));
    const Setup setup = factory(setup_rng);
    result.episodes[r] =
        run_episode(setup.hyp, setup.truth, params, derive_seed(base_seed, r));
  });

  const int steps = params.max_interventions + 1;
  ExperimentAggregate& agg = result.aggregate;
  agg.mean_posterior_true.assign(steps, 0.0);
  agg.se_posterior_true.assign(steps, 0.0);
  for (int t = 0; t < steps; ++t) {
    double mean = 0.0;
    for (const EpisodeResult& ep : result.episodes) mean += ep.posterior_true[t];
    mean /= restarts;
    double var = 0.0;
    for (const EpisodeResult& ep : result.episodes) {
      const double d = ep.posterior_true[t] - mean;
      var += d * d;
    }
    agg.mean_posterior_true[t] = mean;
    agg.se_posterior_true[t] =
        restarts > 1 ? std::sqrt(var / (restarts - 1) / restarts) : 0.0;
  }
  double mean_steps = 0.0;
  for (const EpisodeResult& ep : result.episodes) mean_steps += ep.steps_to_certainty;
  mean_steps /= restarts;
  double var_steps = 0.0;
  for (const EpisodeResult& ep : result.episodes) {
    const double d = ep.steps_to_certainty - mean_steps;
    var_steps += d * d;
  }
  agg.mean_steps_to_certainty = mean_steps;
  agg.se_steps_to_certainty =
      restarts > 1 ? std::sqrt(var_steps / (restarts - 1) / restarts) : 0.0;
  return result;
}

}  // namespace causaltree
