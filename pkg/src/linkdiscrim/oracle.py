"""Noise-parametrized predictor and its reduction to rank positions.

The predictor scores every candidate pair with its true likelihood plus
i.i.d. uniform noise on [-eta, eta]; eta = 0 is the model-optimal predictor
and larger eta degrades it continuously.  Every evaluation metric consumes
only the 1-based positions of the test edges in the descending-score
candidate list, captured here as :class:`RankedOutcome`.
"""

from dataclasses import dataclass

import numpy as np
from numpy.random import Generator

from .errors import InvalidParameterError, MismatchedDimensionsError
from .synthnet import EdgeSplit, LikelihoodModel, indices_to_pairs, pair_count


@dataclass(eq=False)
class ScoredCandidates:
    """Predictor scores over the candidate universe U - train.

    ``candidate_index`` holds the condensed pair indices in ascending order
    and ``scores`` is parallel to it.  Scores are deliberately not clamped
    to [0, 1]: only their order matters downstream, and clamping would
    manufacture ties at the boundaries.
    """

    n_nodes: int
    candidate_index: np.ndarray
    scores: np.ndarray
    noise_level: float

    def __post_init__(self):
        self.candidate_index = np.asarray(self.candidate_index, dtype=np.int64)
        self.scores = np.asarray(self.scores, dtype=np.float64)
        if self.candidate_index.shape != self.scores.shape:
            raise InvalidParameterError("candidate_index and scores must be parallel")
        if self.noise_level < 0.0:
            raise InvalidParameterError("noise_level must be non-negative")

    def as_pair_dict(self) -> dict[tuple[int, int], float]:
        """Scores keyed by canonical pair; intended for small instances."""
        i, j = indices_to_pairs(self.candidate_index, self.n_nodes)
        return {
            (int(a), int(b)): float(s)
            for a, b, s in zip(i, j, self.scores)
        }


@dataclass(frozen=True, eq=False)
class RankedOutcome:
    """Positions of the test edges within the sorted candidate list.

    ``positions`` is strictly increasing, 1-based, with
    ``positions[-1] <= candidate_count`` and
    ``len(positions) == positive_count``.
    """

    positions: np.ndarray
    candidate_count: int
    positive_count: int

    def __post_init__(self):
        positions = np.asarray(self.positions, dtype=np.int64)
        object.__setattr__(self, "positions", positions)
        if positions.ndim != 1 or positions.size == 0:
            raise InvalidParameterError("positions must be a non-empty 1-d sequence")
        if positions.size != self.positive_count:
            raise InvalidParameterError("positive_count must equal len(positions)")
        if self.positive_count > self.candidate_count:
            raise InvalidParameterError("more positives than candidates")
        if positions[0] < 1 or positions[-1] > self.candidate_count:
            raise InvalidParameterError("positions must lie in [1, candidate_count]")
        if positions.size > 1 and (np.diff(positions) <= 0).any():
            raise InvalidParameterError("positions must be strictly increasing")

    @classmethod
    def from_positions(cls, positions, candidate_count: int) -> "RankedOutcome":
        positions = np.asarray(positions, dtype=np.int64)
        return cls(
            positions=positions,
            candidate_count=candidate_count,
            positive_count=int(positions.size),
        )

    @property
    def negative_count(self) -> int:
        """|U - E|: candidates that are not test edges."""
        return self.candidate_count - self.positive_count


def score_candidates(
    model: LikelihoodModel,
    split: EdgeSplit,
    noise_level: float,
    rng: Generator,
) -> ScoredCandidates:
    """Score every candidate pair as its likelihood plus U(-eta, eta) noise."""
    if model.n_nodes != split.n_nodes:
        raise MismatchedDimensionsError(
            f"model has {model.n_nodes} nodes but split has {split.n_nodes}"
        )
    if noise_level < 0.0:
        raise InvalidParameterError("noise_level must be non-negative")
    candidates = split.candidate_index_array()
    noise = rng.uniform(-noise_level, noise_level, size=candidates.size)
    scores = model.likelihoods[candidates] + noise
    return ScoredCandidates(
        n_nodes=model.n_nodes,
        candidate_index=candidates,
        scores=scores,
        noise_level=noise_level,
    )


def rank_candidates(
    scored: ScoredCandidates,
    split: EdgeSplit,
    rng: Generator,
) -> RankedOutcome:
    """Sort candidates by score descending and locate the test edges.

    Ties are broken by a uniform random permutation drawn from ``rng`` before
    a stable sort, so equal-scored candidates are ordered uniformly at random
    rather than by pair index.
    """
    if scored.n_nodes != split.n_nodes:
        raise MismatchedDimensionsError(
            f"scores cover {scored.n_nodes} nodes but split has {split.n_nodes}"
        )
    candidates = split.candidate_index_array()
    if not np.array_equal(scored.candidate_index, candidates):
        raise InvalidParameterError("scores do not cover exactly the candidate universe")
    n_c = candidates.size
    perm = rng.permutation(n_c)
    order = np.argsort(-scored.scores[perm], kind="stable")
    ranked = candidates[perm[order]]

    positive = np.zeros(pair_count(split.n_nodes), dtype=bool)
    positive[split.test_index_array()] = True
    positions = np.flatnonzero(positive[ranked]) + 1
    return RankedOutcome(
        positions=positions,
        candidate_count=int(n_c),
        positive_count=int(positions.size),
    )
