"""Shared fixtures: the hand-checked L1 ranking and a small pipeline setup."""

import numpy as np
import pytest

from linkdiscrim import (
    RankedOutcome,
    generate_likelihoods,
    realize_graph,
    split_edges,
)


@pytest.fixture
def l1_outcome() -> RankedOutcome:
    """Five candidates, positives at ranks 1 and 3 — all metric values known."""
    return RankedOutcome.from_positions([1, 3], 5)


@pytest.fixture
def small_model():
    rng = np.random.default_rng(42)
    return generate_likelihoods(30, 0.5, rng)


@pytest.fixture
def small_split(small_model):
    rng = np.random.default_rng(43)
    edges = realize_graph(small_model, rng)
    return split_edges(edges, 0.1, np.random.default_rng(44), n_nodes=small_model.n_nodes)


def random_outcome(rng: np.random.Generator, max_candidates: int = 200) -> RankedOutcome:
    """A uniformly random ranked outcome with 1 <= m < n_c <= max_candidates."""
    n_c = int(rng.integers(2, max_candidates + 1))
    m = int(rng.integers(1, n_c))
    positions = np.sort(rng.choice(n_c, size=m, replace=False)) + 1
    return RankedOutcome.from_positions(positions, n_c)
