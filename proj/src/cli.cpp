#include "causaltree/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "causaltree/csv.hpp"
#include "causaltree/numfmt.hpp"
#include "causaltree/svg_chart.hpp"
#include "causaltree/tree_io.hpp"

namespace causaltree {

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "symmetric") return ExperimentKind::Symmetric;
  if (name == "asymmetric") return ExperimentKind::Asymmetric;
  if (name == "three-var") return ExperimentKind::ThreeVar;
  if (name == "context") return ExperimentKind::Context;
  if (name == "pairs") return ExperimentKind::Pairs;
  if (name == "custom-tree") return ExperimentKind::CustomTree;
  throw ValueError("unknown experiment '" + name +
                   "' (symmetric, asymmetric, three-var, context, pairs, custom-tree)");
}

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Symmetric: return "symmetric";
    case ExperimentKind::Asymmetric: return "asymmetric";
    case ExperimentKind::ThreeVar: return "three-var";
    case ExperimentKind::Context: return "context";
    case ExperimentKind::Pairs: return "pairs";
    case ExperimentKind::CustomTree: return "custom-tree";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ValueError("empty entry in integer list '" + s + "'");
    std::size_t used = 0;
    out.push_back(std::stoi(tok, &used));
    if (used != tok.size()) throw ValueError("bad integer '" + tok + "'");
  }
  if (out.empty()) throw ValueError("empty integer list");
  return out;
}

}  // namespace

HypothesisSpecEntry parse_hypothesis_entry(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ValueError("hypothesis entry needs the form 'chain: ...' or 'context_swap: ...'");
  const std::string kind = trim(text.substr(0, colon));
  const std::string body = trim(text.substr(colon + 1));
  HypothesisSpecEntry entry;
  if (kind == "chain") {
    entry.kind = HypothesisSpecEntry::Kind::Chain;
    entry.order = parse_int_list(body);
    return entry;
  }
  if (kind == "context_swap") {
    entry.kind = HypothesisSpecEntry::Kind::ContextSwap;
    bool have_pivot = false, have_swap = false, have_base = false;
    std::stringstream in(body);
    std::string part;
    while (std::getline(in, part, ';')) {
      part = trim(part);
      const auto eq = part.find('=');
      if (eq == std::string::npos)
        throw ValueError("context_swap entry needs pivot=, swap=, base= parts");
      const std::string key = trim(part.substr(0, eq));
      const std::string value = trim(part.substr(eq + 1));
      if (key == "pivot") {
        entry.swap.pivot = parse_int_list(value).at(0);
        have_pivot = true;
      } else if (key == "swap") {
        entry.swap.swap_values.clear();
        for (int v : parse_int_list(value)) entry.swap.swap_values.insert(v);
        have_swap = true;
      } else if (key == "base") {
        const std::vector<int> base = parse_int_list(value);
        if (base.size() != 2) throw ValueError("base= needs exactly two variables");
        entry.swap.base_order = {base[0], base[1]};
        have_base = true;
      } else {
        throw ValueError("unknown context_swap key '" + key + "'");
      }
    }
    if (!have_pivot || !have_swap || !have_base)
      throw ValueError("context_swap entry needs pivot=, swap=, base= parts");
    return entry;
  }
  throw ValueError("unknown hypothesis kind '" + kind + "'");
}

void RunConfig::validate() const {
  if (rho < 0.0 || rho > 1.0) throw ValueError("rho must be in [0, 1]");
  if (!(alpha > 0.0)) throw ValueError("alpha must be positive");
  if (!(threshold > 0.5 && threshold < 1.0)) throw ValueError("threshold must be in (0.5, 1)");
  if (n_obs < 0) throw ValueError("n-obs must be nonnegative");
  if (restarts < 1) throw ValueError("restarts must be at least 1");
  if (max_interventions < 0) throw ValueError("max-interventions must be nonnegative");
  if (cardinality != 0 && cardinality < 2) throw ValueError("k must be at least 2");
  if (sampled_outcomes < 0) throw ValueError("sampled-outcomes must be nonnegative");
  if (threads < 1) throw ValueError("threads must be at least 1");
  if (truth_index < -1) throw ValueError("truth index must be nonnegative");
  if (strategies.empty()) throw ValueError("at least one strategy is required");
  if (experiment == ExperimentKind::Asymmetric && cardinality != 0 && cardinality != 4)
    throw ValueError("the asymmetric experiment is defined for k=4");
  if (experiment == ExperimentKind::CustomTree && hypotheses.size() < 2)
    throw ValueError("custom-tree needs at least two hypothesis entries");
}

namespace {

int default_cardinality(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Symmetric: return 4;
    case ExperimentKind::Asymmetric: return 4;
    case ExperimentKind::ThreeVar: return 6;
    case ExperimentKind::Context: return 3;
    case ExperimentKind::Pairs: return 5;  // bins
    case ExperimentKind::CustomTree: return 0;
  }
  return 0;
}

int resolved_cardinality(const RunConfig& cfg) {
  return cfg.cardinality != 0 ? cfg.cardinality : default_cardinality(cfg.experiment);
}

int resolved_truth(const RunConfig& cfg) {
  if (cfg.truth_index >= 0) return cfg.truth_index;
  return cfg.experiment == ExperimentKind::Context ? 1 : 0;
}

}  // namespace

HypothesisSet make_hypothesis_set(const RunConfig& cfg) {
  const int k = resolved_cardinality(cfg);
  switch (cfg.experiment) {
    case ExperimentKind::Symmetric:
    case ExperimentKind::Asymmetric:
      return two_orientation_hypotheses(VariableSpace::make({k, k}));
    case ExperimentKind::ThreeVar:
      return all_permutation_hypotheses(VariableSpace::make({k, k, k}));
    case ExperimentKind::Context:
      return context_hypotheses(VariableSpace::make({k, k, k}));
    case ExperimentKind::Pairs: {
      VariableSpace space;
      space.names = {"cause", "effect"};
      space.cardinalities = {k, k};
      return two_orientation_hypotheses(space);
    }
    case ExperimentKind::CustomTree: {
      if (cfg.cardinalities.empty())
        throw ValueError("custom-tree needs --cardinalities");
      const VariableSpace space = VariableSpace::make(cfg.cardinalities);
      std::vector<PTree> trees;
      std::vector<std::string> labels;
      for (const HypothesisSpecEntry& e : cfg.hypotheses) {
        if (e.kind == HypothesisSpecEntry::Kind::Chain) {
          trees.push_back(chain_tree(space, CausalOrder{e.order}));
          labels.push_back(label_for_chain(space, CausalOrder{e.order}));
        } else {
          trees.push_back(context_swap_tree(space, e.swap));
          labels.push_back(label_for_context(space, e.swap));
        }
      }
      return build_hypothesis_set(std::move(trees), std::move(labels));
    }
  }
  throw ValueError("unreachable experiment kind");
}

Setup make_setup(const RunConfig& cfg, Rng& rng) {
  HypothesisSet hset = make_hypothesis_set(cfg);
  const int k = resolved_cardinality(cfg);
  JointTable joint;
  switch (cfg.experiment) {
    case ExperimentKind::Symmetric:
      joint = make_joint_symmetric(k, cfg.rho);
      break;
    case ExperimentKind::Asymmetric:
      joint = make_joint_asymmetric(cfg.rho);
      break;
    case ExperimentKind::ThreeVar: {
      const int m = cfg.pattern_m > 0 ? cfg.pattern_m : k * k;
      joint = make_joint_three(k, cfg.rho, random_pattern(k, m, rng));
      break;
    }
    case ExperimentKind::Context:
      joint = make_joint_three(k, cfg.rho, diagonal_pattern(k));
      break;
    case ExperimentKind::CustomTree: {
      const std::int64_t cells = grid_size(hset.space.cardinalities);
      const int m = cfg.pattern_m > 0 ? cfg.pattern_m
                                      : static_cast<int>((cells + 5) / 6);
      joint = make_joint_pattern(hset.space.cardinalities, cfg.rho,
                                 random_pattern_cells(cells, m, rng));
      break;
    }
    case ExperimentKind::Pairs:
      throw ValueError("the pairs experiment takes its ground truth from the dataset");
  }
  GroundTruth truth = parameterize_truth(hset, joint, resolved_truth(cfg));
  return Setup{std::move(hset), std::move(truth)};
}

namespace {

EpisodeParams episode_params(const RunConfig& cfg, StrategyKind strategy) {
  EpisodeParams p;
  p.n_obs = cfg.n_obs;
  p.max_interventions = cfg.max_interventions;
  p.alpha = cfg.alpha;
  p.strategy = strategy;
  p.threshold = cfg.threshold;
  p.gain.sampled_outcomes = cfg.sampled_outcomes;
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

void run_pairs(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  if (cfg.dataset_dir.empty()) throw ValueError("the pairs experiment needs --dataset-dir");
  PairsBenchmarkParams params;
  params.n_obs = cfg.n_obs;
  params.strategies = cfg.strategies;
  params.restarts = cfg.restarts;
  params.alpha = cfg.alpha;
  params.max_interventions = cfg.max_interventions;
  params.threshold = cfg.threshold;
  params.bins = resolved_cardinality(cfg);
  params.seed = cfg.seed;
  params.threads = cfg.threads;
  const PairsBenchmarkResult result = run_pairs_benchmark(cfg.dataset_dir, params);

  std::ostringstream summary;
  summary << "N_obs,strategy,weighted_mean_interventions,weighted_stderr\n";
  for (const PairsSummaryRow& row : result.summary)
    summary << cfg.n_obs << ',' << row.strategy << ','
            << fmt_sig12(row.weighted_mean_interventions) << ',' << fmt_sig12(row.weighted_se)
            << '\n';
  write_file(out_dir / "pairs_summary.csv", summary.str());

  std::ostringstream detail;
  detail << "pair_id,strategy,mean_interventions,weight,degenerate\n";
  for (const PairsPairRow& row : result.per_pair)
    detail << row.pair_id << ',' << row.strategy << ',' << fmt_sig12(row.mean_interventions)
           << ',' << fmt_sig12(row.weight) << ',' << (row.degenerate ? 1 : 0) << '\n';
  write_file(out_dir / "pairs_detail.csv", detail.str());
}

}  // namespace

void cmd_run(const RunConfig& cfg) {
  const std::filesystem::path out_dir(cfg.out_dir);
  std::filesystem::create_directories(out_dir);

  if (cfg.dump_tree && cfg.experiment != ExperimentKind::Pairs) {
    std::ofstream tree_out(out_dir / "tree.json", std::ios::binary);
    cmd_dump_tree(cfg, tree_out);
  }
  if (cfg.experiment == ExperimentKind::Pairs) {
    run_pairs(cfg, out_dir);
    return;
  }

  const SetupFactory factory = [&cfg](Rng& rng) { return make_setup(cfg, rng); };
  const HypothesisSet hset = make_hypothesis_set(cfg);

  std::ostringstream episodes;
  episodes << "strategy,restart,step,posterior_true,chosen_var,chosen_val,steps_to_certainty\n";
  std::ostringstream aggregate;
  aggregate << "strategy,step,mean_posterior_true,stderr\n";
  std::vector<ChartSeries> series;

  for (StrategyKind strategy : cfg.strategies) {
    const ExperimentResult result =
        run_experiment(factory, episode_params(cfg, strategy), cfg.restarts, cfg.seed,
                       cfg.threads);
    const std::string name = strategy_name(strategy);
    for (int r = 0; r < cfg.restarts; ++r) {
      const EpisodeResult& ep = result.episodes[r];
      for (std::size_t t = 0; t < ep.posterior_true.size(); ++t) {
        episodes << name << ',' << r << ',' << t << ',' << fmt_sig12(ep.posterior_true[t])
                 << ',';
        if (t > 0) {
          const Intervention& j = ep.chosen[t - 1];
          episodes << hset.space.names[j.target->variable] << ',' << j.target->value;
        } else {
          episodes << ',';
        }
        episodes << ',' << ep.steps_to_certainty << '\n';
      }
    }
    for (std::size_t t = 0; t < result.aggregate.mean_posterior_true.size(); ++t)
      aggregate << name << ',' << t << ',' << fmt_sig12(result.aggregate.mean_posterior_true[t])
                << ',' << fmt_sig12(result.aggregate.se_posterior_true[t]) << '\n';
    series.push_back(ChartSeries{name, result.aggregate.mean_posterior_true,
                                 result.aggregate.se_posterior_true});
  }

  write_file(out_dir / "episodes.csv", episodes.str());
  write_file(out_dir / "aggregate.csv", aggregate.str());
  write_file(out_dir / "chart.svg",
             render_line_chart(experiment_name(cfg.experiment) + " experiment", "intervention",
                               "mean posterior of true hypothesis", series));
}

void cmd_score(const RunConfig& cfg, std::ostream& out) {
  const HypothesisSet hset = make_hypothesis_set(cfg);
  const PriorTable priors = assign_priors(hset, cfg.alpha);
  CountTable counts = CountTable::zeros(hset);
  if (!cfg.dataset_csv.empty()) {
    std::ifstream in(cfg.dataset_csv, std::ios::binary);
    if (!in) throw ParseError("cannot open dataset " + cfg.dataset_csv);
    std::stringstream buf;
    buf << in.rdbuf();
    for (const DataRecord& rec : dataset_from_csv(buf.str(), hset.space))
      update_counts(counts, hset, rec);
  }
  const BeliefState state{hset, counts, priors};
  GainOptions opts;
  opts.sampled_outcomes = cfg.sampled_outcomes;
  Rng rng(cfg.seed);

  std::optional<Setup> oracle_setup;
  if (cfg.oracle) {
    Rng setup_rng(derive_seed(cfg.seed, 0));
    oracle_setup = make_setup(cfg, setup_rng);
  }

  out << "intervention_var,intervention_val,expected_gain";
  if (cfg.oracle) out << ",actual_gain";
  out << '\n';
  for (const Intervention& j : all_single_interventions(hset.space)) {
    const double eg = expected_gain(state, j, opts, &rng);
    out << hset.space.names[j.target->variable] << ',' << j.target->value << ','
        << fmt_sig12(eg);
    if (cfg.oracle) out << ',' << fmt_sig12(actual_gain(state, j, oracle_setup->truth, opts));
    out << '\n';
  }
}

void cmd_dump_tree(const RunConfig& cfg, std::ostream& out) {
  out << tree_to_document(make_hypothesis_set(cfg).meta_tree());
}

namespace {

struct CliState {
  RunConfig cfg;
  std::vector<std::string> strategy_names{"expected", "random"};
  std::vector<std::string> hypothesis_texts;
  std::string experiment_text = "asymmetric";
};

void add_common_options(CLI::App* cmd, CliState& st) {
  cmd->set_config("--config", "", "Flat key=value configuration file; flags override it");
  cmd->add_option("--experiment", st.experiment_text,
                  "symmetric | asymmetric | three-var | context | pairs | custom-tree");
  cmd->add_option("--strategies", st.strategy_names, "Comma-separated strategy list")
      ->delimiter(',');
  cmd->add_option("--n-obs", st.cfg.n_obs, "Observational hot-start records");
  cmd->add_option("--restarts", st.cfg.restarts, "Independent seeded restarts");
  cmd->add_option("--alpha", st.cfg.alpha, "Dirichlet concentration factor");
  cmd->add_option("--rho", st.cfg.rho, "Correlation mass of the ground-truth joint");
  cmd->add_option("--k", st.cfg.cardinality, "Variable cardinality (bins for pairs)");
  cmd->add_option("--cardinalities", st.cfg.cardinalities,
                  "Comma-separated cardinalities (custom-tree)")
      ->delimiter(',');
  cmd->add_option("--seed", st.cfg.seed, "Base random seed");
  cmd->add_option("--out", st.cfg.out_dir, "Output directory (default $CAUSALTREE_OUT or out)");
  cmd->add_option("--dataset-dir", st.cfg.dataset_dir, "Pairs dataset directory");
  cmd->add_flag("--oracle", st.cfg.oracle, "Also report the ground-truth actual gain");
  cmd->add_option("--threshold", st.cfg.threshold, "Certainty threshold");
  cmd->add_option("--max-interventions", st.cfg.max_interventions, "Intervention budget");
  cmd->add_option("--sampled-outcomes", st.cfg.sampled_outcomes,
                  "Estimate outcome expectations from this many draws (0 = exact)");
  cmd->add_option("--truth", st.cfg.truth_index, "True hypothesis index");
  cmd->add_option("--pattern-m", st.cfg.pattern_m, "Cells set in the sparsity pattern");
  cmd->add_option("--threads", st.cfg.threads, "Worker threads for restarts");
  cmd->add_option("--hypothesis", st.hypothesis_texts,
                  "Hypothesis entry: 'chain: 0,1' or 'context_swap: pivot=0; swap=1; base=1,2'");
}

void finalize_config(CliState& st, const CLI::App* cmd) {
  st.cfg.experiment = experiment_from_name(st.experiment_text);
  st.cfg.strategies.clear();
  for (const std::string& name : st.strategy_names)
    st.cfg.strategies.push_back(strategy_from_name(name));
  st.cfg.hypotheses.clear();
  for (const std::string& text : st.hypothesis_texts)
    st.cfg.hypotheses.push_back(parse_hypothesis_entry(text));

  if (cmd->count("--n-obs") == 0) {
    if (st.cfg.experiment == ExperimentKind::Context) st.cfg.n_obs = 400;
    if (st.cfg.experiment == ExperimentKind::Pairs) st.cfg.n_obs = 100;
  }
  if (cmd->count("--restarts") == 0) {
    if (st.cfg.experiment == ExperimentKind::ThreeVar) st.cfg.restarts = 15;
    if (st.cfg.experiment == ExperimentKind::Pairs) st.cfg.restarts = 20;
  }
  if (st.cfg.out_dir.empty()) {
    const char* env = std::getenv("CAUSALTREE_OUT");
    st.cfg.out_dir = env != nullptr && *env != '\0' ? env : "out";
  }
  st.cfg.validate();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Bayesian active learning of causal probability trees"};
  app.require_subcommand(1);

  CliState run_state, score_state, dump_state;
  std::string score_dataset;

  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment and write CSV/SVG outputs");
  add_common_options(run_cmd, run_state);
  run_cmd->add_flag("--dump-tree", run_state.cfg.dump_tree,
                    "Also write the hypothesis meta-tree document");

  CLI::App* score_cmd = app.add_subcommand(
      "score-interventions", "Score every candidate intervention against a dataset CSV");
  add_common_options(score_cmd, score_state);
  score_cmd->add_option("--dataset", score_dataset, "Dataset CSV (empty = no data)");

  CLI::App* dump_cmd =
      app.add_subcommand("dump-tree", "Print the hypothesis meta-tree document");
  add_common_options(dump_cmd, dump_state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      finalize_config(run_state, run_cmd);
      cmd_run(run_state.cfg);
    } else if (score_cmd->parsed()) {
      score_state.cfg.dataset_csv = score_dataset;
      finalize_config(score_state, score_cmd);
      cmd_score(score_state.cfg, std::cout);
    } else if (dump_cmd->parsed()) {
      finalize_config(dump_state, dump_cmd);
      cmd_dump_tree(dump_state.cfg, std::cout);
    }
  } catch (const ValueError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace causaltree
