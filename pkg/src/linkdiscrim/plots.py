"""Figure rendering from sweep CSV data.

Every figure is a pure function of data already serialized to CSV — nothing
here re-simulates or re-ranks.  Output is SVG with a fixed hash salt and no
date metadata, so repeated runs emit byte-identical files.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .discrim import BinaryDiscriminationMatrix, SampleTable
from .errors import FileFormatError, InvalidParameterError
from .outputs import load_binary_matrix, load_samples, load_summary, metric_from_filename

DEFAULT_TRACE_LEVELS = (0.1, 0.3, 0.5, 0.7, 0.9)
TRACE_METRICS = ("auc", "aupr", "ndcg")

_SAVE_OPTS = {"format": "svg", "metadata": {"Date": None}}


def _configure_determinism() -> None:
    plt.rcParams["svg.hashsalt"] = "linkdiscrim"


def _panel_grid(n_panels: int, n_cols: int = 4):
    n_cols = min(n_cols, n_panels)
    n_rows = -(-n_panels // n_cols)
    fig, axes = plt.subplots(
        n_rows, n_cols, figsize=(3.2 * n_cols, 2.6 * n_rows), squeeze=False
    )
    flat = axes.reshape(-1)
    for ax in flat[n_panels:]:
        ax.set_visible(False)
    return fig, flat[:n_panels]


def figure_metric_vs_noise(summary: dict, metric_order=None):
    """Mean-with-error-bar panels, one per metric.

    ``summary`` maps metric name to (eta, mean, std) arrays as returned by
    ``load_summary``; error-bar half-lengths are exactly the std values.
    """
    _configure_determinism()
    order = list(metric_order) if metric_order is not None else list(summary)
    if not order:
        raise InvalidParameterError("no metrics to plot")
    fig, axes = _panel_grid(len(order))
    for ax, metric in zip(axes, order):
        eta, mean, std = summary[metric]
        ax.errorbar(eta, mean, yerr=std, fmt="o-", ms=3, lw=1, capsize=2, color="tab:blue")
        ax.set_title(metric, fontsize=9)
        ax.set_xlabel(r"$\eta$", fontsize=8)
        ax.tick_params(labelsize=7)
    fig.tight_layout()
    return fig


def select_trace_levels(noise_grid, wanted=DEFAULT_TRACE_LEVELS) -> tuple[float, ...]:
    """Map the wanted trace levels to the nearest grid levels, deduplicated."""
    grid = np.asarray(noise_grid)
    chosen: list[float] = []
    for eta in wanted:
        nearest = float(grid[np.argmin(np.abs(grid - eta))])
        if nearest not in chosen:
            chosen.append(nearest)
    return tuple(chosen)


def figure_run_traces(table: SampleTable, metrics=None, trace_levels=None):
    """Per-run value traces at five noise levels, one panel per rank metric."""
    _configure_determinism()
    if metrics is None:
        metrics = [m for m in TRACE_METRICS if m in table.metrics]
    if not metrics:
        raise InvalidParameterError("no trace metrics present in the sample table")
    levels = (
        tuple(trace_levels)
        if trace_levels is not None
        else select_trace_levels(table.noise_grid)
    )
    runs = np.arange(table.sample_count)
    fig, axes = _panel_grid(len(metrics), n_cols=3)
    for ax, metric in zip(axes, metrics):
        for eta in levels:
            ax.plot(runs, table.samples(metric, eta), lw=0.6, label=rf"$\eta={eta:g}$")
        ax.set_title(metric, fontsize=9)
        ax.set_xlabel("run", fontsize=8)
        ax.tick_params(labelsize=7)
    axes[-1].legend(fontsize=6, loc="lower right")
    fig.tight_layout()
    return fig


def figure_binary_heatmaps(matrices):
    """One 0/1 heatmap per metric; colored cells are the distinguishable pairs."""
    _configure_determinism()
    matrices = list(matrices)
    if not matrices:
        raise InvalidParameterError("no binary matrices to plot")
    cmap = matplotlib.colors.ListedColormap(["white", "tab:blue"])
    fig, axes = _panel_grid(len(matrices))
    for ax, matrix in zip(axes, matrices):
        grid = np.asarray(matrix.noise_grid)
        ax.imshow(
            matrix.distinguishable.astype(int),
            cmap=cmap,
            vmin=0,
            vmax=1,
            origin="lower",
            interpolation="nearest",
        )
        ticks = np.arange(0, len(grid), max(1, len(grid) // 4))
        ax.set_xticks(ticks, [f"{grid[t]:g}" for t in ticks], fontsize=7)
        ax.set_yticks(ticks, [f"{grid[t]:g}" for t in ticks], fontsize=7)
        ax.set_title(matrix.metric, fontsize=9)
    fig.tight_layout()
    return fig


def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def emit_plots(results_dir, out_dir=None) -> list[Path]:
    """Render all three figure families from the CSVs in results_dir."""
    results_dir = Path(results_dir)
    out_dir = Path(out_dir) if out_dir is not None else results_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    samples_path = results_dir / "samples.csv"
    if not samples_path.exists():
        raise FileFormatError(f"{samples_path}: not found")
    table = load_samples(samples_path)

    summary_path = results_dir / "summary.csv"
    if summary_path.exists():
        summary = load_summary(summary_path)
    else:
        summary = {
            metric: (
                np.asarray(table.noise_grid),
                table.values[mi].reshape(len(table.noise_grid), -1).mean(axis=1),
                table.values[mi].reshape(len(table.noise_grid), -1).std(axis=1, ddof=1),
            )
            for mi, metric in enumerate(table.metrics)
        }

    written = [
        _save(figure_metric_vs_noise(summary, metric_order=table.metrics),
              out_dir / "metric_vs_noise.svg"),
        _save(figure_run_traces(table), out_dir / "run_traces.svg"),
    ]

    binary_paths = sorted(results_dir.glob("binary_*.csv"))
    if binary_paths:
        matrices = [
            load_binary_matrix(p, metric=metric_from_filename(p, table.metrics))
            for p in binary_paths
        ]
        matrices.sort(key=lambda mtx: _order_key(mtx.metric, table.metrics))
        written.append(_save(figure_binary_heatmaps(matrices), out_dir / "binary_heatmaps.svg"))
    return written


def _order_key(metric: str, known_metrics) -> tuple[int, str]:
    try:
        return (known_metrics.index(metric), metric)
    except ValueError:
        return (len(known_metrics), metric)


__all__ = [
    "figure_metric_vs_noise",
    "figure_run_traces",
    "figure_binary_heatmaps",
    "select_trace_levels",
    "emit_plots",
]
