"""Evaluation of external score files.

A score file is a CSV with header ``id,score,label`` where label is
``positive`` or ``negative``.  Rows are ranked by score descending with
random tie-breaking under a fixed auxiliary seed, so evaluating the same
file twice gives the same report even when scores tie.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .discrim import metric_names
from .errors import DegenerateClassesError, ScoreFileError
from .metrics import MetricReport, metric_report, report_values, threshold_from_multiplier
from .oracle import RankedOutcome, ScoredCandidates
from .synthnet import EdgeSplit, indices_to_pairs

SCORE_HEADER = "id,score,label"

# Auxiliary tie-break stream for external files; fixed so results are stable.
EVAL_TIEBREAK_SEED = 715

_LABELS = {"positive": True, "negative": False}


@dataclass(eq=False)
class ExternalScoreSet:
    """Parsed score file: parallel ids, scores, and positive-class flags."""

    ids: tuple[str, ...]
    scores: np.ndarray
    positive: np.ndarray

    def __post_init__(self):
        self.scores = np.asarray(self.scores, dtype=float)
        self.positive = np.asarray(self.positive, dtype=bool)
        if not (len(self.ids) == self.scores.shape[0] == self.positive.shape[0]):
            raise ScoreFileError("ids, scores, and labels must have equal length")
        if len(set(self.ids)) != len(self.ids):
            raise ScoreFileError("candidate identifiers must be unique")
        n_pos = int(np.count_nonzero(self.positive))
        if n_pos == 0 or n_pos == len(self.ids):
            raise DegenerateClassesError(
                "score file must contain at least one positive and one negative row"
            )

    @property
    def n_rows(self) -> int:
        return len(self.ids)

    @property
    def n_positives(self) -> int:
        return int(np.count_nonzero(self.positive))


def load_score_file(path) -> ExternalScoreSet:
    """Parse and validate a score CSV; errors carry the offending line number."""
    path = Path(path)
    ids: list[str] = []
    seen: set[str] = set()
    scores: list[float] = []
    positive: list[bool] = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\r\n")
        if header != SCORE_HEADER:
            raise ScoreFileError(f"{path}:1: expected header {SCORE_HEADER!r}, got {header!r}")
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\r\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ScoreFileError(f"{path}:{lineno}: expected 3 fields, got {len(parts)}")
            row_id, score_s, label = parts
            if row_id in seen:
                raise ScoreFileError(f"{path}:{lineno}: duplicate id {row_id!r}")
            try:
                score = float(score_s)
            except ValueError:
                raise ScoreFileError(f"{path}:{lineno}: bad score {score_s!r}") from None
            if not np.isfinite(score):
                raise ScoreFileError(f"{path}:{lineno}: score must be finite, got {score_s!r}")
            if label not in _LABELS:
                raise ScoreFileError(
                    f"{path}:{lineno}: label must be positive or negative, got {label!r}"
                )
            seen.add(row_id)
            ids.append(row_id)
            scores.append(score)
            positive.append(_LABELS[label])
    if not ids:
        raise ScoreFileError(f"{path}: no score rows")
    try:
        return ExternalScoreSet(
            ids=tuple(ids), scores=np.array(scores), positive=np.array(positive)
        )
    except DegenerateClassesError as err:
        raise DegenerateClassesError(f"{path}: {err}") from None


def rank_scores(scoreset: ExternalScoreSet) -> RankedOutcome:
    """Rank rows by score descending; ties break uniformly under the fixed seed."""
    rng = np.random.default_rng(np.random.SeedSequence(EVAL_TIEBREAK_SEED))
    n = scoreset.n_rows
    perm = rng.permutation(n)
    order = np.argsort(-scoreset.scores[perm], kind="stable")
    ranked_positive = scoreset.positive[perm[order]]
    positions = np.flatnonzero(ranked_positive) + 1
    return RankedOutcome.from_positions(positions, n)


def eval_scores(path, multipliers=(0.5, 1.0, 2.0)) -> MetricReport:
    """Full metric report for a score file at the given threshold multipliers."""
    scoreset = load_score_file(path)
    outcome = rank_scores(scoreset)
    ks = [
        threshold_from_multiplier(m, outcome.positive_count, outcome.candidate_count)
        for m in multipliers
    ]
    return metric_report(outcome, ks)


def eval_scores_csv(path, multipliers=(0.5, 1.0, 2.0)) -> tuple[str, str]:
    """Header and value lines for the CLI: one labeled CSV row per file."""
    scoreset = load_score_file(path)
    outcome = rank_scores(scoreset)
    ks = [
        threshold_from_multiplier(m, outcome.positive_count, outcome.candidate_count)
        for m in multipliers
    ]
    report = metric_report(outcome, ks)
    header = ",".join(metric_names(multipliers))
    row = ",".join("%.6g" % v for v in report_values(report, ks))
    return header, row


def dump_scores(scored: ScoredCandidates, split: EdgeSplit, path) -> None:
    """Write a trial's scores as a score file (full repr precision).

    Candidate ids are ``i-j`` pair strings; labels mark test-set membership.
    Evaluating the dump reproduces the in-memory report whenever scores are
    tie-free (almost surely, for continuous noise).
    """
    i, j = indices_to_pairs(scored.candidate_index, scored.n_nodes)
    test_idx = set(split.test_index_array().tolist())
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(SCORE_HEADER + "\n")
        for idx, a, b, s in zip(scored.candidate_index, i, j, scored.scores):
            label = "positive" if int(idx) in test_idx else "negative"
            fh.write(f"{a}-{b},{float(s)!r},{label}\n")
