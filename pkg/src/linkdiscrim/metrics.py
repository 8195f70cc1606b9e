"""Evaluation metrics computed exactly from rank positions.

Everything here consumes a :class:`~linkdiscrim.oracle.RankedOutcome` with
positions ``r_1 < ... < r_m`` among ``n_c`` candidates, of which
``n_neg = n_c - m`` are negatives.  Metrics are exact (no sampling) and are
invariant under any strictly increasing transformation of the underlying
scores, since only ranks enter the formulas.
"""

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DegenerateClassesError, InvalidParameterError
from .oracle import RankedOutcome


class CurvePoint(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class ConfusionAtK:
    """Confusion counts when the top-k candidates are called positive."""

    k: int
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParameterError("k must be at least 1")
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise InvalidParameterError("confusion counts must be non-negative")
        if self.tp + self.fp != self.k:
            raise InvalidParameterError("tp + fp must equal k")


@dataclass(frozen=True)
class ThresholdScores:
    precision: float
    recall: float
    f1: float
    mcc: float


@dataclass(frozen=True)
class MetricReport:
    """All metric values for one trial; threshold metrics keyed by k."""

    thresholds: dict[int, ThresholdScores]
    bp: float
    auc_exact: float
    auc_approx: float
    aupr: float
    ndcg: float
    auc_mroc: float


def confusion_at_k(outcome: RankedOutcome, k: int) -> ConfusionAtK:
    """Count tp/fp/tn/fn when the top-k candidates are predicted positive."""
    n_c, m = outcome.candidate_count, outcome.positive_count
    if not 1 <= k <= n_c:
        raise InvalidParameterError(f"k must lie in [1, {n_c}], got {k}")
    tp = int(np.searchsorted(outcome.positions, k, side="right"))
    fp = k - tp
    fn = m - tp
    tn = n_c - k - fn
    return ConfusionAtK(k=k, tp=tp, fp=fp, tn=tn, fn=fn)


def precision_recall_f1_mcc(c: ConfusionAtK) -> tuple[float, float, float, float]:
    """Threshold metrics from one confusion; degenerate denominators give 0.

    F1 is 0 when precision + recall is 0 (the limit of the harmonic mean),
    and MCC is 0 when any factor under its square root is 0.
    """
    tp, fp, tn, fn = c.tp, c.fp, c.tn, c.fn
    positives = tp + fn
    precision = tp / c.k
    recall = tp / positives if positives else 0.0
    f1 = 0.0 if precision + recall == 0.0 else 2.0 * precision * recall / (precision + recall)
    denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    mcc = 0.0 if denom == 0 else (tp * tn - fp * fn) / math.sqrt(denom)
    return precision, recall, f1, mcc


def balanced_precision(outcome: RankedOutcome) -> float:
    """Precision at k = m, where the precision and recall curves intersect."""
    m = outcome.positive_count
    tp = int(np.searchsorted(outcome.positions, m, side="right"))
    return tp / m


def auc_exact(outcome: RankedOutcome) -> float:
    """Mean winning probability of the positives against all negatives.

    A positive at position r_i loses against the r_i - i negatives ranked
    above it, so its winning probability is 1 - (r_i - i) / n_neg.
    """
    m, n_neg = outcome.positive_count, outcome.negative_count
    if n_neg == 0:
        raise DegenerateClassesError("AUC needs at least one negative candidate")
    losses = outcome.positions - np.arange(1, m + 1)
    return float(np.mean(1.0 - losses / n_neg))


def auc_pairwise_oracle(outcome: RankedOutcome) -> float:
    """Brute-force AUC: fraction of positive-negative pairs won outright.

    Enumerates all m * n_neg rank comparisons; quadratic, meant as an
    independent cross-check of :func:`auc_exact` on small outcomes.
    """
    m, n_c, n_neg = outcome.positive_count, outcome.candidate_count, outcome.negative_count
    if n_neg == 0:
        raise DegenerateClassesError("AUC needs at least one negative candidate")
    negatives = np.setdiff1d(
        np.arange(1, n_c + 1), outcome.positions, assume_unique=True
    )
    wins = np.count_nonzero(outcome.positions[:, None] < negatives[None, :])
    return wins / (m * n_neg)


def auc_approx(outcome: RankedOutcome) -> float:
    """Ranking-score approximation 1 - <r>/n_c, accurate for sparse problems."""
    return 1.0 - float(np.mean(outcome.positions)) / outcome.candidate_count


def aupr(outcome: RankedOutcome) -> float:
    """Area under the precision-recall curve in closed form.

    Averages, for each positive i, the precision when it enters the top list
    (i / r_i) and the precision just before the next positive enters
    (i / (r_{i+1} - 1)), with r_{m+1} defined as n_c + 1.  Note the value on
    a perfect outcome is 1 - 1/(2m) + 1/(2 n_c), reaching 1 only in the
    limit; this is deliberate.
    """
    m, n_c = outcome.positive_count, outcome.candidate_count
    r = outcome.positions.astype(np.float64)
    i = np.arange(1, m + 1, dtype=np.float64)
    r_next = np.append(r[1:], n_c + 1)
    return float((np.sum(i / r) + np.sum(i / (r_next - 1.0))) / (2.0 * m))


def ndcg(outcome: RankedOutcome) -> float:
    """Discounted cumulative gain normalized by its best attainable value."""
    m = outcome.positive_count
    gain = np.sum(1.0 / np.log2(1.0 + outcome.positions))
    ideal = np.sum(1.0 / np.log2(1.0 + np.arange(1, m + 1)))
    return float(gain / ideal)


def auc_mroc(outcome: RankedOutcome) -> float:
    """Area under the ROC curve with both axes log-rescaled.

    The transformed coordinates at cutoff k are
    ``log(1 + fp) / log(1 + n_neg)`` and ``log(1 + tp) / log(1 + m)``.  The
    underlying curve is a staircase, so the area is accumulated exactly by
    the rectangle rule: between consecutive positives the tp level is
    constant while fp sweeps a block of negatives.
    """
    m, n_c, n_neg = outcome.positive_count, outcome.candidate_count, outcome.negative_count
    if n_neg == 0:
        raise DegenerateClassesError("AUC-mROC needs at least one negative candidate")
    tp_levels = np.arange(0, m + 1, dtype=np.float64)
    r_ext = np.concatenate(([0], outcome.positions))
    fp_start = r_ext - tp_levels
    fp_end = np.concatenate((outcome.positions, [n_c + 1])) - 1.0 - tp_levels
    mtpr = np.log1p(tp_levels) / math.log1p(m)
    dmfpr = (np.log1p(fp_end) - np.log1p(fp_start)) / math.log1p(n_neg)
    return float(np.sum(mtpr * dmfpr))


def roc_curve(outcome: RankedOutcome) -> list[CurvePoint]:
    """Scan the ranking from the top: positives step up 1/m, negatives step right 1/n_neg."""
    m, n_c, n_neg = outcome.positive_count, outcome.candidate_count, outcome.negative_count
    if n_neg == 0:
        raise DegenerateClassesError("a ROC curve needs at least one negative candidate")
    is_positive = np.zeros(n_c, dtype=bool)
    is_positive[outcome.positions - 1] = True
    tp = np.concatenate(([0], np.cumsum(is_positive)))
    fp = np.arange(n_c + 1) - tp
    return [CurvePoint(float(x), float(y)) for x, y in zip(fp / n_neg, tp / m)]


def pr_curve(outcome: RankedOutcome) -> list[CurvePoint]:
    """Points (recall@k, precision@k) for every cutoff k = 1..n_c."""
    m, n_c = outcome.positive_count, outcome.candidate_count
    is_positive = np.zeros(n_c, dtype=bool)
    is_positive[outcome.positions - 1] = True
    tp = np.cumsum(is_positive)
    k = np.arange(1, n_c + 1)
    return [CurvePoint(float(x), float(y)) for x, y in zip(tp / m, tp / k)]


def metric_report(outcome: RankedOutcome, thresholds: Iterable[int]) -> MetricReport:
    """Assemble every metric for one outcome; duplicate thresholds collapse."""
    per_k: dict[int, ThresholdScores] = {}
    for k in sorted(set(int(k) for k in thresholds)):
        p, r, f1, mcc = precision_recall_f1_mcc(confusion_at_k(outcome, k))
        per_k[k] = ThresholdScores(precision=p, recall=r, f1=f1, mcc=mcc)
    return MetricReport(
        thresholds=per_k,
        bp=balanced_precision(outcome),
        auc_exact=auc_exact(outcome),
        auc_approx=auc_approx(outcome),
        aupr=aupr(outcome),
        ndcg=ndcg(outcome),
        auc_mroc=auc_mroc(outcome),
    )


def threshold_from_multiplier(multiplier: float, positive_count: int, candidate_count: int) -> int:
    """Resolve a threshold given as a multiple of m; floors, clamps to [1, n_c]."""
    if multiplier <= 0.0:
        raise InvalidParameterError("threshold multipliers must be positive")
    k = int(math.floor(multiplier * positive_count))
    return max(1, min(candidate_count, k))


def report_values(report: MetricReport, thresholds: Iterable[int]) -> list[float]:
    """Flatten a report to the canonical column order.

    Threshold metrics come first, grouped (precision, recall, f1, mcc) per
    requested k in the given order, followed by bp, auc, auc_approx, aupr,
    ndcg, auc_mroc.
    """
    row: list[float] = []
    for k in thresholds:
        t = report.thresholds[int(k)]
        row.extend((t.precision, t.recall, t.f1, t.mcc))
    row.extend(
        (report.bp, report.auc_exact, report.auc_approx, report.aupr, report.ndcg, report.auc_mroc)
    )
    return row
