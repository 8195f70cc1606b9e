"""Run orchestration: config files, full runs, and the reproducibility manifest.

A run configuration is a flat ``key = value`` text file whose keys are
exactly the SweepConfig field names; unknown keys are hard errors so a typo
cannot silently misconfigure a long job.  ``run_config`` executes
sweep -> discrimination matrices -> binarization -> CSVs -> plots and
records every emitted file with its SHA-256 digest in ``manifest.json``.
Re-running from that manifest reproduces the outputs digest-identically.
"""

import hashlib
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .discrim import (
    SweepConfig,
    binarize,
    discrimination_matrix,
    distinguishable_area,
    sweep,
)
from .errors import ConfigError, OutputDirectoryError
from .outputs import (
    write_areas,
    write_binary_matrix,
    write_pvalue_matrix,
    write_samples,
    write_summary,
)
from .plots import emit_plots

ENV_OUT_DIR = "LINKDISCRIM_OUT"


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_float_tuple(text: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("expected a comma-separated list of numbers")
    return tuple(float(p) for p in parts)


_FIELD_PARSERS = {
    "n_nodes": int,
    "q_max": float,
    "test_fraction": float,
    "noise_grid": _parse_float_tuple,
    "n_networks": int,
    "runs_per_network": int,
    "threshold_multipliers": _parse_float_tuple,
    "p_star": float,
    "master_seed": int,
    "paired": _parse_bool,
    "resplit_per_run": _parse_bool,
    "workers": int,
}


def parse_config_file(path) -> SweepConfig:
    """Read a flat key=value config; every diagnostic carries its line number."""
    path = Path(path)
    values = {}
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"{path}: {err}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _FIELD_PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = _FIELD_PARSERS[key](value)
        except ValueError as err:
            raise ConfigError(f"{path}:{lineno}: {key}: {err}") from None
    try:
        return SweepConfig(**values)
    except ValueError as err:
        raise ConfigError(f"{path}: {err}") from None


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to audit or exactly repeat a run."""

    tool: str
    version: str
    config: SweepConfig
    started: str
    finished: str
    outputs: dict  # filename -> sha256 hex digest

    def to_json(self) -> str:
        payload = {
            "tool": self.tool,
            "version": self.version,
            "config": self.config.as_dict(),
            "started": self.started,
            "finished": self.finished,
            "outputs": self.outputs,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, source: str = "manifest") -> "RunManifest":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"{source}: invalid JSON: {err}") from None
        try:
            config_fields = dict(payload["config"])
            config_fields["noise_grid"] = tuple(config_fields["noise_grid"])
            config_fields["threshold_multipliers"] = tuple(
                config_fields["threshold_multipliers"]
            )
            return cls(
                tool=payload["tool"],
                version=payload["version"],
                config=SweepConfig(**config_fields),
                started=payload["started"],
                finished=payload["finished"],
                outputs=dict(payload["outputs"]),
            )
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigError(f"{source}: bad manifest: {err}") from None


def load_run_config(path) -> SweepConfig:
    """Accept either a flat config file or a previously written manifest.json."""
    path = Path(path)
    if path.suffix == ".json":
        return RunManifest.from_json(
            path.read_text(encoding="utf-8"), source=str(path)
        ).config
    return parse_config_file(path)


def resolve_out_dir(explicit=None, default: str = "results") -> Path:
    """Precedence: explicit flag, then the environment override, then default."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_OUT_DIR)
    if env:
        return Path(env)
    return Path(default)


def _prepare_out_dir(out_dir: Path) -> None:
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write-probe"
        probe.write_bytes(b"")
        probe.unlink()
    except OSError as err:
        raise OutputDirectoryError(f"output directory {out_dir} is not writable: {err}") from None


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def write_matrices(table, out_dir: Path, p_star: float, paired: bool = True) -> list[Path]:
    """Emit pvalues_/binary_ CSVs and areas.csv for every matrix metric."""
    matrix_metrics = [m for m in table.metrics if m not in ("bp", "auc_approx")]
    written = []
    areas = {}
    for metric in matrix_metrics:
        matrix = discrimination_matrix(table, metric, paired=paired)
        written.append(write_pvalue_matrix(matrix, out_dir))
        binary = binarize(matrix, p_star)
        written.append(write_binary_matrix(binary, out_dir))
        areas[metric] = distinguishable_area(binary)
    areas_path = out_dir / "areas.csv"
    write_areas(areas, areas_path)
    written.append(areas_path)
    return written


def run_config(config_path, out_dir=None, make_plots: bool = True) -> RunManifest:
    """Execute a full run and write its manifest; returns the manifest."""
    config = load_run_config(config_path)
    out = resolve_out_dir(out_dir)
    _prepare_out_dir(out)
    started = _utc_now()

    table = sweep(config)

    emitted: list[Path] = []
    samples_path = out / "samples.csv"
    write_samples(table, samples_path)
    emitted.append(samples_path)
    summary_path = out / "summary.csv"
    write_summary(table, summary_path)
    emitted.append(summary_path)
    emitted.extend(write_matrices(table, out, config.p_star, paired=config.paired))
    if make_plots:
        emitted.extend(emit_plots(out))

    manifest = RunManifest(
        tool="linkdiscrim",
        version=__version__,
        config=config,
        started=started,
        finished=_utc_now(),
        outputs={path.name: _sha256(path) for path in emitted},
    )
    (out / "manifest.json").write_text(manifest.to_json() + "\n", encoding="utf-8")
    return manifest
