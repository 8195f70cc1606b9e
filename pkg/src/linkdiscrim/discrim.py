"""Noise sweeps and p-value discrimination matrices.

A sweep draws ``n_networks`` synthetic networks, fixes one train/test split
per network (optionally re-split per run), and evaluates the noisy predictor
at every noise level of the grid, ``runs_per_network`` times per network.
The ``X = n_networks * runs_per_network`` samples per (metric, noise level)
are paired across noise levels by (network, run), which is what makes the
empirical p-values

    p(eta_1, eta_2) = |{pairs with M(eta_1) <= M(eta_2)}| / X,  eta_1 < eta_2

a low-variance measure of how often a metric fails to order two noise
levels correctly.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np
from numpy.random import Generator

from . import seeding
from .errors import InvalidParameterError, TooFewEdgesError, UnknownMetricError
from .metrics import MetricReport, metric_report, report_values, threshold_from_multiplier
from .oracle import rank_candidates, score_candidates
from .synthnet import EdgeSplit, LikelihoodModel, generate_likelihoods, realize_graph, split_edges

DEFAULT_NOISE_GRID = tuple(i / 20 for i in range(1, 21))

RANK_METRICS = ("bp", "auc", "auc_approx", "aupr", "ndcg", "auc_mroc")
THRESHOLD_METRICS = ("precision", "recall", "f1", "mcc")


def _multiplier_label(multiplier: float) -> str:
    return "%g" % multiplier


def metric_names(threshold_multipliers) -> tuple[str, ...]:
    """Sample-table column names: threshold metrics per multiplier, then rank metrics."""
    names = []
    for mult in threshold_multipliers:
        label = _multiplier_label(mult)
        names.extend(f"{base}@{label}m" for base in THRESHOLD_METRICS)
    names.extend(RANK_METRICS)
    return tuple(names)


def matrix_metric_names(threshold_multipliers) -> tuple[str, ...]:
    """Metrics that get a discrimination matrix of their own.

    bp duplicates precision@1m entrywise and auc_approx is a diagnostic
    companion of auc, so neither gets a separate matrix.
    """
    names = [n for n in metric_names(threshold_multipliers) if n not in ("bp", "auc_approx")]
    return tuple(names)


@dataclass(frozen=True)
class SweepConfig:
    """Full parameterization of a sweep; defaults follow the reference grid."""

    n_nodes: int = 1000
    q_max: float = 0.5
    test_fraction: float = 0.1
    noise_grid: tuple[float, ...] = DEFAULT_NOISE_GRID
    n_networks: int = 10
    runs_per_network: int = 100
    threshold_multipliers: tuple[float, ...] = (0.5, 1.0, 2.0)
    p_star: float = 0.01
    master_seed: int = 1
    paired: bool = True
    resplit_per_run: bool = False
    workers: int = 0

    def __post_init__(self):
        object.__setattr__(self, "noise_grid", tuple(float(e) for e in self.noise_grid))
        object.__setattr__(
            self, "threshold_multipliers", tuple(float(m) for m in self.threshold_multipliers)
        )
        if self.n_nodes < 3:
            raise InvalidParameterError("n_nodes must be at least 3")
        if not 0.0 < self.q_max <= 1.0:
            raise InvalidParameterError("q_max must lie in (0, 1]")
        if not 0.0 < self.test_fraction < 1.0:
            raise InvalidParameterError("test_fraction must lie in (0, 1)")
        if not self.noise_grid:
            raise InvalidParameterError("noise_grid must not be empty")
        if self.noise_grid[0] < 0.0:
            raise InvalidParameterError("noise levels must be non-negative")
        if any(b <= a for a, b in zip(self.noise_grid, self.noise_grid[1:])):
            raise InvalidParameterError("noise_grid must be strictly ascending")
        if self.n_networks < 1 or self.runs_per_network < 1:
            raise InvalidParameterError("n_networks and runs_per_network must be at least 1")
        if not self.threshold_multipliers or min(self.threshold_multipliers) <= 0.0:
            raise InvalidParameterError("threshold multipliers must be positive")
        if not 0.0 < self.p_star < 1.0:
            raise InvalidParameterError("p_star must lie in (0, 1)")
        if self.master_seed < 0:
            raise InvalidParameterError("master_seed must be non-negative")
        if self.workers < 0:
            raise InvalidParameterError("workers must be non-negative (0 = auto)")

    @property
    def samples_per_level(self) -> int:
        """X: paired samples collected per (metric, noise level)."""
        return self.n_networks * self.runs_per_network

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(eq=False)
class SampleTable:
    """Metric samples indexed by (metric, noise level, network, run)."""

    noise_grid: tuple[float, ...]
    n_networks: int
    runs_per_network: int
    metrics: tuple[str, ...]
    values: np.ndarray  # shape (n_metrics, n_levels, n_networks, runs_per_network)

    def __post_init__(self):
        expected = (
            len(self.metrics),
            len(self.noise_grid),
            self.n_networks,
            self.runs_per_network,
        )
        if self.values.shape != expected:
            raise InvalidParameterError(
                f"values shape {self.values.shape} does not match {expected}"
            )

    @property
    def sample_count(self) -> int:
        """X: samples per (metric, noise level)."""
        return self.n_networks * self.runs_per_network

    def metric_index(self, metric: str) -> int:
        try:
            return self.metrics.index(metric)
        except ValueError:
            raise UnknownMetricError(metric) from None

    def level_index(self, eta: float) -> int:
        diffs = np.abs(np.asarray(self.noise_grid) - eta)
        idx = int(np.argmin(diffs))
        if diffs[idx] > 1e-9:
            raise InvalidParameterError(f"noise level {eta} is not on the grid")
        return idx

    def samples(self, metric: str, eta: float) -> np.ndarray:
        """All X values for one metric at one noise level, network-major."""
        return self.values[self.metric_index(metric), self.level_index(eta)].reshape(-1)


@dataclass(eq=False)
class DiscriminationMatrix:
    """Symmetric grid of empirical p-values with 0.5 on the diagonal."""

    noise_grid: tuple[float, ...]
    metric: str
    p_values: np.ndarray

    def __post_init__(self):
        k = len(self.noise_grid)
        if self.p_values.shape != (k, k):
            raise InvalidParameterError("p_values must be square over the noise grid")


@dataclass(eq=False)
class BinaryDiscriminationMatrix:
    """Thresholded discrimination matrix: True where p < p_star."""

    noise_grid: tuple[float, ...]
    metric: str
    distinguishable: np.ndarray
    p_star: float


def run_trial(
    model: LikelihoodModel,
    split: EdgeSplit,
    noise_level: float,
    thresholds,
    rng: Generator,
) -> MetricReport:
    """Score, rank, and evaluate one trial of the noisy predictor."""
    scored = score_candidates(model, split, noise_level, rng)
    outcome = rank_candidates(scored, split, rng)
    return metric_report(outcome, thresholds)


def _build_network(config: SweepConfig, network: int):
    model = generate_likelihoods(
        config.n_nodes, config.q_max, seeding.model_stream(config.master_seed, network)
    )
    edges = realize_graph(model, seeding.realize_stream(config.master_seed, network))
    return model, edges


def _split_for(config: SweepConfig, edges, network: int, run: int) -> EdgeSplit:
    run_key = run if config.resplit_per_run else 0
    try:
        return split_edges(
            edges,
            config.test_fraction,
            seeding.split_stream(config.master_seed, network, run_key),
            n_nodes=config.n_nodes,
        )
    except TooFewEdgesError as err:
        raise TooFewEdgesError(f"network {network}: {err}") from err


def _sweep_chunk(args) -> np.ndarray:
    """Run the trials for a chunk of (network, run) pairs.

    Returns an array of shape (len(pairs), n_levels, n_metrics).  The chunk
    regenerates each network it touches from the master seed, so no model
    state crosses process boundaries.
    """
    config, pairs = args
    n_levels = len(config.noise_grid)
    n_metrics = len(metric_names(config.threshold_multipliers))
    out = np.empty((len(pairs), n_levels, n_metrics))

    cached_network = -1
    model = edges = split = None
    ks: list[int] = []
    for row, (network, run) in enumerate(pairs):
        if network != cached_network:
            model, edges = _build_network(config, network)
            cached_network = network
            split = None
        if split is None or config.resplit_per_run:
            split = _split_for(config, edges, network, run)
            m = len(split.test_edges)
            ks = [
                threshold_from_multiplier(mult, m, split.candidate_count)
                for mult in config.threshold_multipliers
            ]
        for level, eta in enumerate(config.noise_grid):
            rng = seeding.trial_stream(config.master_seed, network, run, level)
            report = run_trial(model, split, eta, ks, rng)
            out[row, level, :] = report_values(report, ks)
    return out


def sweep(config: SweepConfig) -> SampleTable:
    """Collect every metric sample of the configured grid.

    Work is distributed over processes in chunks of (network, run) pairs;
    the result is identical for any worker count because each trial owns a
    stream keyed only on its coordinates.
    """
    names = metric_names(config.threshold_multipliers)
    pairs = [
        (network, run)
        for network in range(config.n_networks)
        for run in range(config.runs_per_network)
    ]
    workers = config.workers or os.cpu_count() or 1
    workers = min(workers, len(pairs))

    values = np.empty(
        (len(names), len(config.noise_grid), config.n_networks, config.runs_per_network)
    )

    if workers <= 1:
        chunks = [pairs]
        results = [_sweep_chunk((config, pairs))]
    else:
        chunk_size = max(1, math.ceil(len(pairs) / (4 * workers)))
        chunks = [pairs[i : i + chunk_size] for i in range(0, len(pairs), chunk_size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_chunk, ((config, c) for c in chunks)))

    for chunk, rows in zip(chunks, results):
        for (network, run), row in zip(chunk, rows):
            values[:, :, network, run] = row.T

    return SampleTable(
        noise_grid=config.noise_grid,
        n_networks=config.n_networks,
        runs_per_network=config.runs_per_network,
        metrics=names,
        values=values,
    )


def discrimination_matrix(
    table: SampleTable, metric: str, paired: bool = True
) -> DiscriminationMatrix:
    """Empirical p-values p(eta_i, eta_j) for one metric.

    For eta_i < eta_j the p-value is the fraction of comparisons with
    M(eta_i) <= M(eta_j); ties count against the metric.  Paired mode
    compares samples sharing a (network, run) index; unpaired mode compares
    all X**2 cross pairs.
    """
    midx = table.metric_index(metric)
    k = len(table.noise_grid)
    p = np.full((k, k), 0.5)
    flat = table.values[midx].reshape(k, -1)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = flat[i], flat[j]
            if paired:
                value = float(np.mean(a <= b))
            else:
                value = float(np.mean(a[:, None] <= b[None, :]))
            p[i, j] = p[j, i] = value
    return DiscriminationMatrix(noise_grid=table.noise_grid, metric=metric, p_values=p)


def binarize(matrix: DiscriminationMatrix, p_star: float) -> BinaryDiscriminationMatrix:
    """Threshold strictly at p_star; the diagonal is never distinguishable."""
    if not 0.0 < p_star < 1.0:
        raise InvalidParameterError("p_star must lie in (0, 1)")
    distinguishable = matrix.p_values < p_star
    np.fill_diagonal(distinguishable, False)
    return BinaryDiscriminationMatrix(
        noise_grid=matrix.noise_grid,
        metric=matrix.metric,
        distinguishable=distinguishable,
        p_star=p_star,
    )


def distinguishable_area(matrix: BinaryDiscriminationMatrix) -> float:
    """Fraction of off-diagonal noise pairs the metric tells apart."""
    k = len(matrix.noise_grid)
    off_diagonal = k * k - k
    if off_diagonal == 0:
        return 0.0
    return int(np.count_nonzero(matrix.distinguishable)) / off_diagonal
