"""Synthetic networks with known pairwise link likelihoods.

Nodes are integers ``0..n-1`` and node pairs are canonical tuples ``(i, j)``
with ``i < j``.  Likelihoods live in a dense flat array over the upper
triangle in row-major order; the condensed-index helpers below map between
pairs and flat positions.
"""

from dataclasses import dataclass, field
from os import PathLike
from typing import Iterable

import numpy as np
from numpy.random import Generator

from .errors import InvalidParameterError, TooFewEdgesError

Pair = tuple[int, int]


def pair_count(n_nodes: int) -> int:
    """Number of unordered node pairs, |U| = n(n-1)/2."""
    return n_nodes * (n_nodes - 1) // 2


def _row_starts(n_nodes: int) -> np.ndarray:
    # Condensed index of pair (i, i+1), i.e. where row i begins.
    i = np.arange(n_nodes, dtype=np.int64)
    return i * (n_nodes - 1) - i * (i - 1) // 2


def pairs_to_indices(i, j, n_nodes: int) -> np.ndarray:
    """Map canonical pairs (i < j) to condensed upper-triangle indices."""
    i = np.asarray(i, dtype=np.int64)
    j = np.asarray(j, dtype=np.int64)
    return i * (n_nodes - 1) - i * (i - 1) // 2 + (j - i - 1)


def indices_to_pairs(idx, n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of :func:`pairs_to_indices`, vectorized and exact."""
    idx = np.asarray(idx, dtype=np.int64)
    starts = _row_starts(n_nodes)
    i = np.searchsorted(starts, idx, side="right") - 1
    j = idx - starts[i] + i + 1
    return i, j


@dataclass(eq=False)
class LikelihoodModel:
    """Hidden ground truth: one link likelihood per node pair.

    ``likelihoods[k]`` is the probability of the pair with condensed index
    ``k``; there are exactly ``pair_count(n_nodes)`` entries, each in
    ``[0, q_max]``.
    """

    n_nodes: int
    q_max: float
    likelihoods: np.ndarray

    def __post_init__(self):
        if self.n_nodes < 2:
            raise InvalidParameterError("n_nodes must be at least 2")
        if not 0.0 < self.q_max <= 1.0:
            raise InvalidParameterError("q_max must lie in (0, 1]")
        self.likelihoods = np.asarray(self.likelihoods, dtype=np.float64)
        if self.likelihoods.shape != (pair_count(self.n_nodes),):
            raise InvalidParameterError(
                f"expected {pair_count(self.n_nodes)} likelihood entries, "
                f"got {self.likelihoods.shape}"
            )
        if self.likelihoods.size and (
            self.likelihoods.min() < 0.0 or self.likelihoods.max() > self.q_max
        ):
            raise InvalidParameterError("likelihoods must lie in [0, q_max]")

    def likelihood_of(self, i: int, j: int) -> float:
        """Likelihood of the unordered pair {i, j}; node order is irrelevant."""
        if i > j:
            i, j = j, i
        if not 0 <= i < j < self.n_nodes:
            raise InvalidParameterError(f"({i}, {j}) is not a node pair")
        return float(self.likelihoods[pairs_to_indices(i, j, self.n_nodes)])


def generate_likelihoods(n_nodes: int, q_max: float, rng: Generator) -> LikelihoodModel:
    """Draw all n(n-1)/2 pair likelihoods i.i.d. uniform on [0, q_max]."""
    if n_nodes < 3:
        raise InvalidParameterError("n_nodes must be at least 3")
    if not 0.0 < q_max <= 1.0:
        raise InvalidParameterError("q_max must lie in (0, 1]")
    likelihoods = rng.uniform(0.0, q_max, size=pair_count(n_nodes))
    return LikelihoodModel(n_nodes=n_nodes, q_max=q_max, likelihoods=likelihoods)


def realize_graph(model: LikelihoodModel, rng: Generator) -> set[Pair]:
    """Include each pair independently with its own likelihood."""
    draws = rng.random(model.likelihoods.size)
    idx = np.flatnonzero(draws < model.likelihoods)
    i, j = indices_to_pairs(idx, model.n_nodes)
    return set(zip(i.tolist(), j.tolist()))


@dataclass(eq=False)
class EdgeSplit:
    """Realized edges partitioned into training and test sets.

    The candidate universe scored by a predictor is every pair outside the
    training set, so ``candidate_count = n(n-1)/2 - |train_edges|``.
    """

    n_nodes: int
    train_edges: frozenset[Pair]
    test_edges: frozenset[Pair]
    _train_idx: np.ndarray = field(init=False, repr=False)
    _test_idx: np.ndarray = field(init=False, repr=False)
    _candidate_idx: np.ndarray | None = field(init=False, repr=False, default=None)

    def __post_init__(self):
        if self.n_nodes < 2:
            raise InvalidParameterError("n_nodes must be at least 2")
        self.train_edges = frozenset(self.train_edges)
        self.test_edges = frozenset(self.test_edges)
        if not self.test_edges:
            raise InvalidParameterError("test_edges must not be empty")
        self._train_idx = self._index_array(self.train_edges)
        self._test_idx = self._index_array(self.test_edges)
        overlap = np.intersect1d(self._train_idx, self._test_idx)
        if overlap.size:
            raise InvalidParameterError("train and test edges must be disjoint")

    def _index_array(self, edges: frozenset[Pair]) -> np.ndarray:
        if not edges:
            return np.empty(0, dtype=np.int64)
        arr = np.array(sorted(edges), dtype=np.int64)
        i, j = arr[:, 0], arr[:, 1]
        if (i < 0).any() or (i >= j).any() or (j >= self.n_nodes).any():
            raise InvalidParameterError("edges must be canonical pairs within range")
        return pairs_to_indices(i, j, self.n_nodes)

    @property
    def candidate_count(self) -> int:
        """|U - train|: every pair a predictor must score."""
        return pair_count(self.n_nodes) - len(self.train_edges)

    def train_index_array(self) -> np.ndarray:
        """Condensed indices of the training edges, ascending."""
        return self._train_idx

    def test_index_array(self) -> np.ndarray:
        """Condensed indices of the test edges, ascending."""
        return self._test_idx

    def candidate_index_array(self) -> np.ndarray:
        """Condensed indices of the candidate universe, ascending (cached)."""
        if self._candidate_idx is None:
            mask = np.ones(pair_count(self.n_nodes), dtype=bool)
            mask[self._train_idx] = False
            self._candidate_idx = np.flatnonzero(mask)
        return self._candidate_idx


def split_edges(
    edges: Iterable[Pair],
    test_fraction: float,
    rng: Generator,
    *,
    n_nodes: int,
) -> EdgeSplit:
    """Hide a uniform random ``round(test_fraction * |edges|)`` subset as the test set.

    Rounding is half-up.  Raises :class:`TooFewEdgesError` whenever either
    side of the split would come out empty.
    """
    if not 0.0 < test_fraction < 1.0:
        raise InvalidParameterError("test_fraction must lie in (0, 1)")
    edge_list = sorted(set(edges))
    n_edges = len(edge_list)
    if n_edges < 2:
        raise TooFewEdgesError(f"need at least 2 edges to split, got {n_edges}")
    n_test = int(np.floor(test_fraction * n_edges + 0.5))
    if n_test < 1:
        raise TooFewEdgesError(
            f"test fraction {test_fraction} of {n_edges} edges rounds to an empty test set"
        )
    if n_test >= n_edges:
        raise TooFewEdgesError(
            f"test fraction {test_fraction} of {n_edges} edges leaves an empty training set"
        )
    picks = rng.choice(n_edges, size=n_test, replace=False)
    test = frozenset(edge_list[p] for p in picks)
    train = frozenset(edge_list) - test
    return EdgeSplit(n_nodes=n_nodes, train_edges=train, test_edges=test)


def export_edge_list(split: EdgeSplit, path: str | PathLike) -> None:
    """Write the split as text lines ``"i j label"`` sorted by pair."""
    labeled = [(e, "train") for e in split.train_edges]
    labeled += [(e, "test") for e in split.test_edges]
    labeled.sort()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for (i, j), label in labeled:
            fh.write(f"{i} {j} {label}\n")
