"""Bayesian active learning of causal probability trees."""

from causaltree._core import (
    CausaltreeError,
    CountTable,
    EpisodeParams,
    EpisodeResult,
    ExperimentAggregate,
    GroundTruth,
    HypothesisSet,
    Intervention,
    JointTable,
    Posterior,
    PriorTable,
    PTree,
    StrategyKind,
    VariableSpace,
    actual_gain,
    all_permutation_hypotheses,
    assign_priors,
    build_hypothesis_set,
    chain_tree,
    context_hypotheses,
    context_swap_tree,
    dataset_to_csv,
    diagonal_pattern,
    entropy_cost,
    evidence_in_favor,
    expected_gain,
    information_gain,
    jeffrey_divergence,
    log_marginal_likelihood,
    make_joint_asymmetric,
    make_joint_symmetric,
    make_joint_three,
    parameterize_truth,
    posterior,
    predictive,
    quantile_bin,
    run_episode,
    run_standard_experiment,
    select_intervention,
    strategy_from_name,
    two_orientation_hypotheses,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
