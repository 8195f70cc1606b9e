"""Hierarchical random streams for reproducible parallel sweeps.

Every random decision is owned by a dedicated stream keyed on the master
seed plus the coordinates of the decision (purpose tag, network index, run
index, noise-level index).  Streams therefore never depend on scheduling
order or worker count, and a sweep is bit-reproducible from its master seed
alone.
"""

from numpy.random import Generator, SeedSequence, default_rng

_TAG_MODEL = 1
_TAG_REALIZE = 2
_TAG_SPLIT = 3
_TAG_TRIAL = 4


def _stream(master_seed: int, tag: int, network: int, run: int, level: int) -> Generator:
    if master_seed < 0:
        raise ValueError("master_seed must be non-negative")
    return default_rng(SeedSequence([master_seed, tag, network, run, level]))


def model_stream(master_seed: int, network: int) -> Generator:
    """Stream that draws the pairwise likelihoods of one network."""
    return _stream(master_seed, _TAG_MODEL, network, 0, 0)


def realize_stream(master_seed: int, network: int) -> Generator:
    """Stream that realizes the edges of one network."""
    return _stream(master_seed, _TAG_REALIZE, network, 0, 0)


def split_stream(master_seed: int, network: int, run: int = 0) -> Generator:
    """Stream that selects the test edges; run index 0 is the shared split."""
    return _stream(master_seed, _TAG_SPLIT, network, run, 0)


def trial_stream(master_seed: int, network: int, run: int, level: int) -> Generator:
    """Stream consumed by a single trial (noise draws, then tie-breaking)."""
    return _stream(master_seed, _TAG_TRIAL, network, run, level)
