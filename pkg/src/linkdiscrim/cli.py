"""Command-line interface.

Subcommands::

    linkdiscrim sweep <config>           run a full configured sweep
    linkdiscrim matrix <samples.csv>     recompute matrices from saved samples
    linkdiscrim plot <results-dir>       render figures from saved CSVs
    linkdiscrim eval-scores <file>       evaluate an external score file

The output directory resolves as ``--out`` flag, then the LINKDISCRIM_OUT
environment variable, then a subcommand-specific default.
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .errors import LinkDiscrimError
from .outputs import load_samples
from .plots import emit_plots
from .runner import ENV_OUT_DIR, resolve_out_dir, run_config, write_matrices
from .scores import eval_scores_csv


def _parse_multipliers(text: str) -> tuple[float, ...]:
    try:
        parts = tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multiplier list {text!r}") from None
    if not parts:
        raise argparse.ArgumentTypeError("multiplier list must not be empty")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkdiscrim",
        description="Measure how well link-prediction metrics discriminate predictor quality.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a configured noise sweep end to end")
    p_sweep.add_argument("config", help="flat key=value config file or a manifest.json")
    p_sweep.add_argument(
        "--out", default=None, help=f"output directory (overrides ${ENV_OUT_DIR}; default: results)"
    )

    p_matrix = sub.add_parser("matrix", help="recompute discrimination matrices from samples.csv")
    p_matrix.add_argument("samples", help="samples.csv produced by a sweep")
    p_matrix.add_argument("--p-star", type=float, default=0.01, help="significance level")
    p_matrix.add_argument(
        "--unpaired", action="store_true", help="compare all sample pairs instead of paired runs"
    )
    p_matrix.add_argument(
        "--out", default=None, help="output directory (default: alongside the samples file)"
    )

    p_plot = sub.add_parser("plot", help="render figures from a results directory")
    p_plot.add_argument("results", help="directory holding samples.csv and matrix CSVs")
    p_plot.add_argument("--out", default=None, help="image output directory (default: results dir)")

    p_eval = sub.add_parser("eval-scores", help="evaluate an external id,score,label file")
    p_eval.add_argument("scores", help="CSV score file")
    p_eval.add_argument(
        "--k",
        type=_parse_multipliers,
        default=(0.5, 1.0, 2.0),
        metavar="MULTS",
        help="comma-separated threshold multipliers of m (default: 0.5,1,2)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            manifest = run_config(args.config, out_dir=resolve_out_dir(args.out))
            print(f"wrote {len(manifest.outputs)} files + manifest.json")
        elif args.command == "matrix":
            table = load_samples(args.samples)
            default_dir = str(Path(args.samples).resolve().parent)
            out = resolve_out_dir(args.out, default=default_dir)
            out.mkdir(parents=True, exist_ok=True)
            written = write_matrices(table, out, args.p_star, paired=not args.unpaired)
            print(f"wrote {len(written)} files to {out}")
        elif args.command == "plot":
            out = resolve_out_dir(args.out, default=args.results)
            written = emit_plots(args.results, out)
            print(f"wrote {len(written)} figures to {out}")
        elif args.command == "eval-scores":
            header, row = eval_scores_csv(args.scores, args.k)
            print(header)
            print(row)
        else:  # pragma: no cover - argparse enforces the choices
            raise AssertionError(args.command)
    except LinkDiscrimError as err:
        print(f"linkdiscrim: error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"linkdiscrim: error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
