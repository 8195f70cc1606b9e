"""linkdiscrim: how well do link-prediction metrics discriminate predictor quality?

The package simulates networks with known link likelihoods, degrades an
oracle predictor with controlled noise, evaluates nine ranking metrics
exactly, and summarizes each metric's ability to tell noise levels apart as
an empirical p-value matrix.
"""

__version__ = "0.1.0"

from .discrim import (
    BinaryDiscriminationMatrix,
    DiscriminationMatrix,
    SampleTable,
    SweepConfig,
    binarize,
    discrimination_matrix,
    distinguishable_area,
    matrix_metric_names,
    metric_names,
    run_trial,
    sweep,
)
from .errors import (
    ConfigError,
    DegenerateClassesError,
    FileFormatError,
    InvalidParameterError,
    LinkDiscrimError,
    MismatchedDimensionsError,
    OutputDirectoryError,
    ScoreFileError,
    TooFewEdgesError,
    UnknownMetricError,
)
from .metrics import (
    ConfusionAtK,
    CurvePoint,
    MetricReport,
    ThresholdScores,
    auc_approx,
    auc_exact,
    auc_mroc,
    auc_pairwise_oracle,
    aupr,
    balanced_precision,
    confusion_at_k,
    metric_report,
    ndcg,
    pr_curve,
    precision_recall_f1_mcc,
    report_values,
    roc_curve,
    threshold_from_multiplier,
)
from .oracle import RankedOutcome, ScoredCandidates, rank_candidates, score_candidates
from .runner import RunManifest, load_run_config, parse_config_file, run_config
from .scores import ExternalScoreSet, dump_scores, eval_scores, load_score_file, rank_scores
from .synthnet import (
    EdgeSplit,
    LikelihoodModel,
    export_edge_list,
    generate_likelihoods,
    indices_to_pairs,
    pair_count,
    pairs_to_indices,
    realize_graph,
    split_edges,
)

__all__ = [
    "__version__",
    # synthnet
    "LikelihoodModel",
    "EdgeSplit",
    "generate_likelihoods",
    "realize_graph",
    "split_edges",
    "export_edge_list",
    "pair_count",
    "pairs_to_indices",
    "indices_to_pairs",
    # oracle
    "ScoredCandidates",
    "RankedOutcome",
    "score_candidates",
    "rank_candidates",
    # metrics
    "ConfusionAtK",
    "ThresholdScores",
    "MetricReport",
    "CurvePoint",
    "confusion_at_k",
    "precision_recall_f1_mcc",
    "balanced_precision",
    "auc_exact",
    "auc_approx",
    "auc_pairwise_oracle",
    "aupr",
    "ndcg",
    "auc_mroc",
    "roc_curve",
    "pr_curve",
    "metric_report",
    "report_values",
    "threshold_from_multiplier",
    # discrim
    "SweepConfig",
    "SampleTable",
    "DiscriminationMatrix",
    "BinaryDiscriminationMatrix",
    "run_trial",
    "sweep",
    "discrimination_matrix",
    "binarize",
    "distinguishable_area",
    "metric_names",
    "matrix_metric_names",
    # runner / scores
    "RunManifest",
    "run_config",
    "parse_config_file",
    "load_run_config",
    "ExternalScoreSet",
    "load_score_file",
    "rank_scores",
    "eval_scores",
    "dump_scores",
    # errors
    "LinkDiscrimError",
    "InvalidParameterError",
    "TooFewEdgesError",
    "MismatchedDimensionsError",
    "DegenerateClassesError",
    "UnknownMetricError",
    "FileFormatError",
    "ConfigError",
    "ScoreFileError",
    "OutputDirectoryError",
]
