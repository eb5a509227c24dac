#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "causaltree/cli.hpp"
#include "causaltree/csv.hpp"
#include "causaltree/tree_io.hpp"

namespace py = pybind11;
using namespace causaltree;

namespace {

Intervention make_intervention(std::optional<std::pair<int, int>> target) {
  if (!target.has_value()) return Intervention::none();
  return Intervention::make(target->first, target->second);
}

std::optional<std::pair<int, int>> intervention_target(const Intervention& j) {
  if (j.empty()) return std::nullopt;
  return std::make_pair(j.target->variable, j.target->value);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bayesian active learning of causal probability trees";

  py::register_exception<Error>(m, "CausaltreeError");

  py::class_<VariableSpace>(m, "VariableSpace")
      .def(py::init([](std::vector<int> cards, std::optional<std::vector<std::string>> names) {
             if (!names.has_value()) return VariableSpace::make(std::move(cards));
             VariableSpace s;
             s.names = std::move(*names);
             s.cardinalities = std::move(cards);
             s.validate();
             return s;
           }),
           py::arg("cardinalities"), py::arg("names") = std::nullopt)
      .def_readonly("names", &VariableSpace::names)
      .def_readonly("cardinalities", &VariableSpace::cardinalities)
      .def("__len__", &VariableSpace::size);

  py::class_<Intervention>(m, "Intervention")
      .def(py::init(&make_intervention), py::arg("target") = std::nullopt)
      .def_property_readonly("target", &intervention_target)
      .def("__repr__", [](const Intervention& j) {
        if (j.empty()) return std::string("Intervention()");
        return "Intervention((" + std::to_string(j.target->variable) + ", " +
               std::to_string(j.target->value) + "))";
      });

  py::class_<PTree>(m, "PTree")
      .def_property_readonly("space", &PTree::space)
      .def("node_count", &PTree::node_count)
      .def("leaf_count", &PTree::leaf_count, py::arg("node") = 0)
      .def("realization_probability",
           [](const PTree& t, const Assignment& x) { return realization_probability(t, x); })
      .def("event_probability",
           [](const PTree& t, const std::vector<std::pair<int, int>>& event) {
             std::vector<Statement> st;
             for (auto& [var, val] : event) st.push_back(Statement{var, val});
             return event_probability(t, st);
           })
      .def("intervene",
           [](const PTree& t, int variable, int value) {
             return intervene(t, Intervention::make(variable, value));
           })
      .def("sample",
           [](const PTree& t, const Intervention& j, std::uint64_t seed, int n) {
             Rng rng(seed);
             std::vector<Assignment> out;
             out.reserve(n);
             for (int i = 0; i < n; ++i) out.push_back(sample(t, j, rng));
             return out;
           },
           py::arg("intervention") = Intervention::none(), py::arg("seed") = 1,
           py::arg("n") = 1)
      .def("to_document", &tree_to_document)
      .def_static("from_document", &tree_from_document);

  m.def("chain_tree", [](const VariableSpace& s, const std::vector<int>& order) {
    return chain_tree(s, CausalOrder{order});
  });
  m.def(
      "context_swap_tree",
      [](const VariableSpace& s, int pivot, const std::set<int>& swap_values,
         std::pair<int, int> base_order) {
        return context_swap_tree(
            s, ContextSwapSpec{pivot, swap_values, {base_order.first, base_order.second}});
      },
      py::arg("space"), py::arg("pivot"), py::arg("swap_values"), py::arg("base_order"));

  py::class_<HypothesisSet>(m, "HypothesisSet")
      .def_readonly("labels", &HypothesisSet::labels)
      .def_readonly("prior_g", &HypothesisSet::prior_g)
      .def_property_readonly("space", [](const HypothesisSet& h) { return h.space; })
      .def("__len__", &HypothesisSet::size)
      .def("tree", [](const HypothesisSet& h, int k) { return h.trees.at(k); })
      .def("meta_tree", &HypothesisSet::meta_tree);

  m.def("build_hypothesis_set",
        [](std::vector<PTree> trees, std::vector<std::string> labels) {
          return build_hypothesis_set(std::move(trees), std::move(labels));
        },
        py::arg("trees"), py::arg("labels") = std::vector<std::string>{});
  m.def("two_orientation_hypotheses", &two_orientation_hypotheses);
  m.def("all_permutation_hypotheses", &all_permutation_hypotheses);
  m.def("context_hypotheses", &context_hypotheses);

  py::class_<PriorTable>(m, "PriorTable")
      .def_readonly("alpha", &PriorTable::alpha)
      .def_readonly("node_alpha", &PriorTable::node_alpha);
  m.def("assign_priors", &assign_priors);

  py::class_<CountTable>(m, "CountTable")
      .def_static("zeros", &CountTable::zeros)
      .def_readonly("total_records", &CountTable::total_records)
      .def("add",
           [](CountTable& t, const HypothesisSet& h, const Assignment& x, const Intervention& j,
              double weight) { update_counts(t, h, DataRecord{x, j}, weight); },
           py::arg("hset"), py::arg("x"), py::arg("intervention") = Intervention::none(),
           py::arg("weight") = 1.0);

  py::class_<Posterior>(m, "Posterior")
      .def_readonly("log_probs", &Posterior::log_probs)
      .def_readonly("probs", &Posterior::probs);

  m.def("posterior", [](const HypothesisSet& h, const CountTable& c, const PriorTable& p) {
    return posterior(BeliefState{h, c, p});
  });
  m.def("log_marginal_likelihood",
        [](const HypothesisSet& h, const CountTable& c, const PriorTable& p, int k) {
          return log_marginal_likelihood(BeliefState{h, c, p}, k);
        });
  m.def("predictive",
        [](const HypothesisSet& h, const CountTable& c, const PriorTable& p, int k,
           const Intervention& j) {
          const GridDist dist = predictive(BeliefState{h, c, p}, k, j);
          return dist.p;
        },
        py::arg("hset"), py::arg("counts"), py::arg("priors"), py::arg("k"),
        py::arg("intervention") = Intervention::none());

  m.def("evidence_in_favor", &evidence_in_favor);
  m.def("jeffrey_divergence", [](const std::vector<double>& p, const std::vector<double>& q) {
    return jeffrey_divergence(p, q);
  });
  m.def("information_gain",
        [](const HypothesisSet& h, const CountTable& c, const PriorTable& p, const Assignment& x,
           const Intervention& j, int k) {
          return information_gain(BeliefState{h, c, p}, DataRecord{x, j}, k);
        });
  m.def("expected_gain",
        [](const HypothesisSet& h, const CountTable& c, const PriorTable& p,
           const Intervention& j) { return expected_gain(BeliefState{h, c, p}, j); });
  m.def("actual_gain",
        [](const HypothesisSet& h, const CountTable& c, const PriorTable& p, const Intervention& j,
           const GroundTruth& truth) { return actual_gain(BeliefState{h, c, p}, j, truth); });

  py::enum_<StrategyKind>(m, "StrategyKind")
      .value("EXPECTED_GAIN", StrategyKind::ExpectedGain)
      .value("ACTUAL_GAIN", StrategyKind::ActualGain)
      .value("RANDOM", StrategyKind::Random)
      .value("ENTROPY", StrategyKind::Entropy);
  m.def("strategy_from_name", &strategy_from_name);

  m.def("entropy_cost", [](const HypothesisSet& h, const CountTable& c, const PriorTable& p) {
    return entropy_cost(BeliefState{h, c, p});
  });
  m.def("select_intervention",
        [](StrategyKind kind, const HypothesisSet& h, const CountTable& c, const PriorTable& p,
           const GroundTruth* truth, std::uint64_t seed) {
          Rng rng(seed);
          const std::vector<Intervention> candidates = all_single_interventions(h.space);
          return select(kind, BeliefState{h, c, p}, candidates, rng, truth);
        },
        py::arg("strategy"), py::arg("hset"), py::arg("counts"), py::arg("priors"),
        py::arg("truth") = nullptr, py::arg("seed") = 1);

  m.def("make_joint_symmetric", &make_joint_symmetric);
  m.def("make_joint_asymmetric", &make_joint_asymmetric);
  m.def("make_joint_three",
        [](int card, double rho, const std::vector<std::uint8_t>& pattern) {
          return make_joint_three(card, rho, pattern);
        });
  m.def("diagonal_pattern", &diagonal_pattern);

  py::class_<JointTable>(m, "JointTable")
      .def(py::init([](std::vector<int> cards, std::vector<double> p) {
             JointTable t(std::move(cards));
             if (p.size() != t.p.size()) throw ValueError("probability table size mismatch");
             t.p = std::move(p);
             return t;
           }),
           py::arg("cardinalities"), py::arg("p"))
      .def_readonly("cardinalities", &GridDist::cards)
      .def_readonly("p", &GridDist::p);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def_readonly("k_star", &GroundTruth::k_star)
      .def_readonly("joint", &GroundTruth::joint)
      .def("tree", [](const GroundTruth& g, int k) { return g.trees.at(k); });
  m.def("parameterize_truth", &parameterize_truth);

  py::class_<EpisodeParams>(m, "EpisodeParams")
      .def(py::init<>())
      .def_readwrite("n_obs", &EpisodeParams::n_obs)
      .def_readwrite("max_interventions", &EpisodeParams::max_interventions)
      .def_readwrite("alpha", &EpisodeParams::alpha)
      .def_readwrite("strategy", &EpisodeParams::strategy)
      .def_readwrite("threshold", &EpisodeParams::threshold);

  py::class_<EpisodeResult>(m, "EpisodeResult")
      .def_readonly("posteriors", &EpisodeResult::posteriors)
      .def_readonly("posterior_true", &EpisodeResult::posterior_true)
      .def_readonly("steps_to_certainty", &EpisodeResult::steps_to_certainty)
      .def_property_readonly("chosen", [](const EpisodeResult& r) {
        std::vector<std::optional<std::pair<int, int>>> out;
        for (const Intervention& j : r.chosen) out.push_back(intervention_target(j));
        return out;
      });
  m.def("run_episode", &run_episode, py::arg("hset"), py::arg("truth"), py::arg("params"),
        py::arg("seed"));

  py::class_<ExperimentAggregate>(m, "ExperimentAggregate")
      .def_readonly("mean_posterior_true", &ExperimentAggregate::mean_posterior_true)
      .def_readonly("se_posterior_true", &ExperimentAggregate::se_posterior_true)
      .def_readonly("mean_steps_to_certainty", &ExperimentAggregate::mean_steps_to_certainty)
      .def_readonly("se_steps_to_certainty", &ExperimentAggregate::se_steps_to_certainty);

  m.def("run_standard_experiment",
        [](const std::string& experiment, const std::string& strategy, int n_obs, int restarts,
           double alpha, double rho, int k, std::uint64_t seed, int max_interventions,
           double threshold, int threads) {
          RunConfig cfg;
          cfg.experiment = experiment_from_name(experiment);
          cfg.n_obs = n_obs;
          cfg.alpha = alpha;
          cfg.rho = rho;
          cfg.cardinality = k;
          cfg.threshold = threshold;
          cfg.max_interventions = max_interventions;
          EpisodeParams params;
          params.n_obs = n_obs;
          params.max_interventions = max_interventions;
          params.alpha = alpha;
          params.strategy = strategy_from_name(strategy);
          params.threshold = threshold;
          const ExperimentResult result = run_experiment(
              [&cfg](Rng& rng) { return make_setup(cfg, rng); }, params, restarts, seed, threads);
          return result.aggregate;
        },
        py::arg("experiment"), py::arg("strategy"), py::arg("n_obs") = 300,
        py::arg("restarts") = 10, py::arg("alpha") = 1.0, py::arg("rho") = 0.9, py::arg("k") = 0,
        py::arg("seed") = 1, py::arg("max_interventions") = 40, py::arg("threshold") = 0.95,
        py::arg("threads") = 1);

  m.def("quantile_bin", [](const std::vector<double>& values, int K) {
    bool degenerate = false;
    std::vector<int> bins = quantile_bin(values, K, &degenerate);
    return std::make_pair(bins, degenerate);
  });

  m.def("dataset_to_csv", [](const std::vector<std::pair<Assignment, Intervention>>& records,
                             const VariableSpace& space) {
    Dataset data;
    for (auto& [x, j] : records) data.push_back(DataRecord{x, j});
    return dataset_to_csv(data, space);
  });
}
