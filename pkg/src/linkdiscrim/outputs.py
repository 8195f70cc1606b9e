"""CSV serialization of sweep samples, summaries, and discrimination matrices.

All files are UTF-8 with LF line endings and carry floats at six significant
digits.  Matrix files hold a header row of noise levels followed by the
square matrix rows; the metric name lives in the filename
(``pvalues_<metric>.csv`` / ``binary_<metric>.csv`` with ``@`` mapped to
``_``).
"""

from pathlib import Path

import numpy as np

from .discrim import BinaryDiscriminationMatrix, DiscriminationMatrix, SampleTable
from .errors import FileFormatError

ENCODING = "utf-8"

SAMPLES_HEADER = "metric,eta,network,run,value"
SUMMARY_HEADER = "metric,eta,mean,std"
AREAS_HEADER = "metric,distinguishable_area"


def fmt(value: float) -> str:
    """Render a float at six significant digits."""
    return "%.6g" % value


def sanitize_metric(metric: str) -> str:
    """Make a metric name filesystem-friendly (precision@0.5m -> precision_0.5m)."""
    return metric.replace("@", "_")


def _write_lines(path, lines) -> None:
    path = Path(path)
    with open(path, "w", encoding=ENCODING, newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


def write_samples(table: SampleTable, path) -> None:
    """One row per (metric, eta, network, run) with the sampled value."""
    lines = [SAMPLES_HEADER]
    for mi, metric in enumerate(table.metrics):
        for li, eta in enumerate(table.noise_grid):
            block = table.values[mi, li]
            for network in range(table.n_networks):
                for run in range(table.runs_per_network):
                    lines.append(
                        f"{metric},{fmt(eta)},{network},{run},{fmt(block[network, run])}"
                    )
    _write_lines(path, lines)


def load_samples(path) -> SampleTable:
    """Rebuild a SampleTable from a samples.csv file."""
    path = Path(path)
    metrics: list[str] = []
    metric_pos: dict[str, int] = {}
    levels: list[float] = []
    rows: list[tuple[int, int, int, int, float]] = []
    max_network = -1
    max_run = -1
    with open(path, encoding=ENCODING) as fh:
        header = fh.readline().rstrip("\n")
        if header != SAMPLES_HEADER:
            raise FileFormatError(f"{path}: unexpected header {header!r}")
        for lineno, raw in enumerate(fh, start=2):
            parts = raw.rstrip("\n").split(",")
            if len(parts) != 5:
                raise FileFormatError(f"{path}:{lineno}: expected 5 fields, got {len(parts)}")
            metric, eta_s, network_s, run_s, value_s = parts
            try:
                eta = float(eta_s)
                network = int(network_s)
                run = int(run_s)
                value = float(value_s)
            except ValueError as err:
                raise FileFormatError(f"{path}:{lineno}: {err}") from None
            if metric not in metric_pos:
                metric_pos[metric] = len(metrics)
                metrics.append(metric)
            li = next(
                (i for i, known in enumerate(levels) if abs(eta - known) <= 1e-9), None
            )
            if li is None:
                li = len(levels)
                levels.append(eta)
            rows.append((metric_pos[metric], li, network, run, value))
            max_network = max(max_network, network)
            max_run = max(max_run, run)
    if not rows:
        raise FileFormatError(f"{path}: no sample rows")
    values = np.full((len(metrics), len(levels), max_network + 1, max_run + 1), np.nan)
    for mi, li, network, run, value in rows:
        values[mi, li, network, run] = value
    if np.isnan(values).any():
        raise FileFormatError(f"{path}: incomplete sample grid")
    return SampleTable(
        noise_grid=tuple(levels),
        n_networks=max_network + 1,
        runs_per_network=max_run + 1,
        metrics=tuple(metrics),
        values=values,
    )


def write_summary(table: SampleTable, path) -> None:
    """Mean and sample standard deviation per (metric, noise level)."""
    lines = [SUMMARY_HEADER]
    for mi, metric in enumerate(table.metrics):
        for li, eta in enumerate(table.noise_grid):
            block = table.values[mi, li].reshape(-1)
            mean = float(np.mean(block))
            std = float(np.std(block, ddof=1)) if block.size > 1 else 0.0
            lines.append(f"{metric},{fmt(eta)},{fmt(mean)},{fmt(std)}")
    _write_lines(path, lines)


def load_summary(path) -> dict:
    """Read summary.csv as {metric: (eta array, mean array, std array)}."""
    path = Path(path)
    per_metric: dict[str, list[tuple[float, float, float]]] = {}
    with open(path, encoding=ENCODING) as fh:
        header = fh.readline().rstrip("\n")
        if header != SUMMARY_HEADER:
            raise FileFormatError(f"{path}: unexpected header {header!r}")
        for lineno, raw in enumerate(fh, start=2):
            parts = raw.rstrip("\n").split(",")
            if len(parts) != 4:
                raise FileFormatError(f"{path}:{lineno}: expected 4 fields, got {len(parts)}")
            metric = parts[0]
            try:
                eta, mean, std = (float(p) for p in parts[1:])
            except ValueError as err:
                raise FileFormatError(f"{path}:{lineno}: {err}") from None
            per_metric.setdefault(metric, []).append((eta, mean, std))
    return {
        metric: tuple(np.array(col) for col in zip(*triples))
        for metric, triples in per_metric.items()
    }


def _matrix_lines(noise_grid, cells) -> list[str]:
    lines = [",".join(fmt(eta) for eta in noise_grid)]
    for row in cells:
        lines.append(",".join(row))
    return lines


def write_pvalue_matrix(matrix: DiscriminationMatrix, directory) -> Path:
    """Write pvalues_<metric>.csv into directory; returns the path."""
    path = Path(directory) / f"pvalues_{sanitize_metric(matrix.metric)}.csv"
    cells = [[fmt(v) for v in row] for row in matrix.p_values]
    _write_lines(path, _matrix_lines(matrix.noise_grid, cells))
    return path


def write_binary_matrix(binary: BinaryDiscriminationMatrix, directory) -> Path:
    """Write binary_<metric>.csv (0/1 cells) into directory; returns the path."""
    path = Path(directory) / f"binary_{sanitize_metric(binary.metric)}.csv"
    cells = [["1" if v else "0" for v in row] for row in binary.distinguishable]
    _write_lines(path, _matrix_lines(binary.noise_grid, cells))
    return path


def _load_matrix(path):
    path = Path(path)
    with open(path, encoding=ENCODING) as fh:
        raw_lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not raw_lines:
        raise FileFormatError(f"{path}: empty matrix file")
    try:
        noise_grid = tuple(float(v) for v in raw_lines[0].split(","))
    except ValueError as err:
        raise FileFormatError(f"{path}:1: {err}") from None
    k = len(noise_grid)
    if len(raw_lines) - 1 != k:
        raise FileFormatError(f"{path}: expected {k} matrix rows, got {len(raw_lines) - 1}")
    cells = np.empty((k, k))
    for i, line in enumerate(raw_lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != k:
            raise FileFormatError(f"{path}:{i}: expected {k} fields, got {len(parts)}")
        try:
            cells[i - 2] = [float(p) for p in parts]
        except ValueError as err:
            raise FileFormatError(f"{path}:{i}: {err}") from None
    return noise_grid, cells


def metric_from_filename(path, known_metrics=()) -> str:
    """Recover the metric name from a matrix filename.

    Sanitization maps ``@`` to ``_``, which is not invertible in general
    (auc_mroc has a literal underscore), so prefer a match against the known
    metric names and fall back to the sanitized stem.
    """
    stem = Path(path).stem
    for prefix in ("pvalues_", "binary_"):
        if stem.startswith(prefix):
            stem = stem[len(prefix) :]
            break
    for metric in known_metrics:
        if sanitize_metric(metric) == stem:
            return metric
    return stem


def load_pvalue_matrix(path, metric: str | None = None) -> DiscriminationMatrix:
    noise_grid, cells = _load_matrix(path)
    if metric is None:
        metric = metric_from_filename(path)
    return DiscriminationMatrix(noise_grid=noise_grid, metric=metric, p_values=cells)


def load_binary_matrix(
    path, metric: str | None = None, p_star: float = float("nan")
) -> BinaryDiscriminationMatrix:
    noise_grid, cells = _load_matrix(path)
    if metric is None:
        metric = metric_from_filename(path)
    return BinaryDiscriminationMatrix(
        noise_grid=noise_grid,
        metric=metric,
        distinguishable=cells.astype(bool),
        p_star=p_star,
    )


def write_areas(areas: dict, path) -> None:
    """distinguishable_area per metric, in the given order."""
    lines = [AREAS_HEADER]
    for metric, area in areas.items():
        lines.append(f"{metric},{fmt(area)}")
    _write_lines(path, lines)


def load_areas(path) -> dict:
    path = Path(path)
    areas: dict[str, float] = {}
    with open(path, encoding=ENCODING) as fh:
        header = fh.readline().rstrip("\n")
        if header != AREAS_HEADER:
            raise FileFormatError(f"{path}: unexpected header {header!r}")
        for lineno, raw in enumerate(fh, start=2):
            parts = raw.rstrip("\n").split(",")
            if len(parts) != 2:
                raise FileFormatError(f"{path}:{lineno}: expected 2 fields, got {len(parts)}")
            try:
                areas[parts[0]] = float(parts[1])
            except ValueError as err:
                raise FileFormatError(f"{path}:{lineno}: {err}") from None
    return areas
