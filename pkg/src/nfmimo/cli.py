"""Command-line front end.

Subcommands ``rotation-sweep``, ``shape-sweep``, and ``evaluate`` each
take ``--config <path>`` (JSON, see config module) and an optional
``--out <dir>``; the NFMIMO_OUT_DIR environment variable also overrides
the output directory. Every run writes a CSV of rows plus a JSON summary
(argmax, config echo, toolkit version) and prints the argmax line.

Exit codes: 0 success, 2 config error, 3 every grid point infeasible,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .channel import build_los_channel
from .config import ExperimentConfig, load_config
from .errors import ConfigError
from .geometry import ORIGIN, LinkGeometry, Point3, build_upa
from .metrics import evaluate, snr_db_to_budget
from .sweep import SweepResult, SweepSpec, rotation_sweep, shape_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4

ENV_OUT_DIR = "NFMIMO_OUT_DIR"

ROTATION_HEADER = "theta_deg,feasible,capacity_wf_bpcu,capacity_eq_bpcu,edof"
SHAPE_HEADER = "alpha_requested,alpha_realized,nx,ny,feasible,edof"
SINGLE_HEADER = "edof,capacity_wf_bpcu,capacity_eq_bpcu"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _rotation_csv(result: SweepResult) -> str:
    lines = [ROTATION_HEADER]
    for row in result.rows:
        if row.feasible:
            m = row.metrics
            lines.append(
                f"{_fmt(row.value)},true,{_fmt(m.capacity_waterfill)},"
                f"{_fmt(m.capacity_equal)},{_fmt(m.edof)}"
            )
        else:
            lines.append(f"{_fmt(row.value)},false,,,")
    return "\n".join(lines) + "\n"


def _shape_csv(result: SweepResult) -> str:
    lines = [SHAPE_HEADER]
    for row in result.rows:
        s = row.shape
        prefix = f"{_fmt(row.value)},{_fmt(s.alpha_realized)},{s.nx},{s.ny}"
        if row.feasible:
            lines.append(f"{prefix},true,{_fmt(row.metrics.edof)}")
        else:
            lines.append(f"{prefix},false,")
    return "\n".join(lines) + "\n"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _output_paths(config: ExperimentConfig, out_dir: str) -> tuple[str, str]:
    csv_path = config.output_path
    if not os.path.isabs(csv_path):
        csv_path = os.path.join(out_dir, csv_path)
    stem, _ = os.path.splitext(csv_path)
    return csv_path, stem + ".json"


def _write_summary(path: str, config: ExperimentConfig, payload: dict) -> None:
    summary = {"toolkit_version": __version__, "config": config.to_dict(), **payload}
    _write_text(path, json.dumps(summary, indent=2, sort_keys=True) + "\n")


def _run_sweep(config: ExperimentConfig, out_dir: str) -> int:
    if config.experiment == "rotation":
        spec = SweepSpec(
            parameter="rotation_deg", grid=config.grid, base=config, metric="capacity_waterfill"
        )
        result = rotation_sweep(spec)
        csv_text = _rotation_csv(result)
        value_name = "theta_deg"
        metric_column = "capacity_wf_bpcu"
    else:
        spec = SweepSpec(parameter="shape_ratio", grid=config.grid, base=config, metric="edof")
        result = shape_sweep(spec)
        csv_text = _shape_csv(result)
        value_name = "alpha_requested"
        metric_column = "edof"

    csv_path, json_path = _output_paths(config, out_dir)
    argmax = None
    if result.argmax is not None:
        argmax = {
            "parameter": value_name,
            "value": result.argmax.value,
            "metric": metric_column,
            "metric_value": result.argmax.metric,
        }
    _write_text(csv_path, csv_text)
    _write_summary(
        json_path,
        config,
        {
            "experiment": config.experiment,
            "argmax": argmax,
            "csv": os.path.basename(csv_path),
            "feasible_rows": sum(1 for r in result.rows if r.feasible),
            "rows": len(result.rows),
        },
    )
    if result.all_infeasible:
        print("argmax: none (every grid point is infeasible)")
        return EXIT_INFEASIBLE
    print(f"argmax {value_name}={_fmt(result.argmax.value)} {metric_column}={_fmt(result.argmax.metric)}")
    return EXIT_OK


def _run_single(config: ExperimentConfig, out_dir: str) -> int:
    tx = build_upa(config.L, config.L, config.nx, config.ny, ORIGIN, 0.0)
    rx = build_upa(config.L, config.L, config.nx, config.ny, Point3(0.0, config.d, 0.0), 0.0)
    P, N0 = snr_db_to_budget(config.snr_db)
    H = build_los_channel(LinkGeometry.between(tx, rx), config.epsilon_clear)
    report = evaluate(H, P, N0, config.normalize)

    csv_path, json_path = _output_paths(config, out_dir)
    _write_text(
        csv_path,
        SINGLE_HEADER
        + "\n"
        + f"{_fmt(report.edof)},{_fmt(report.capacity_waterfill)},{_fmt(report.capacity_equal)}\n",
    )
    metrics = {
        "edof": report.edof,
        "capacity_wf_bpcu": report.capacity_waterfill,
        "capacity_eq_bpcu": report.capacity_equal,
    }
    _write_summary(
        json_path,
        config,
        {"experiment": "single", "argmax": None, "metrics": metrics, "csv": os.path.basename(csv_path)},
    )
    print(
        f"edof={_fmt(report.edof)} capacity_wf_bpcu={_fmt(report.capacity_waterfill)} "
        f"capacity_eq_bpcu={_fmt(report.capacity_equal)}"
    )
    return EXIT_OK


def run(config: ExperimentConfig, out_dir: str = ".") -> int:
    """Execute one configured experiment, writing CSV and JSON results."""
    if config.experiment == "single":
        return _run_single(config, out_dir)
    return _run_sweep(config, out_dir)


_COMMAND_EXPERIMENT = {
    "rotation-sweep": "rotation",
    "shape-sweep": "shape",
    "evaluate": "single",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfmimo",
        description="Near-field MIMO performance analysis: sweeps and single-link evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, experiment in _COMMAND_EXPERIMENT.items():
        p = sub.add_parser(name, help=f"run a {experiment} experiment from a JSON config")
        p.add_argument("--config", required=True, help="path to the JSON config file")
        p.add_argument("--out", default=None, help="output directory (default: cwd)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    expected = _COMMAND_EXPERIMENT[args.command]
    if config.experiment != expected:
        print(
            f"config error: experiment: {args.command} requires "
            f"experiment={expected!r}, config says {config.experiment!r}",
            file=sys.stderr,
        )
        return EXIT_CONFIG

    out_dir = args.out or os.environ.get(ENV_OUT_DIR) or "."
    try:
        return run(config, out_dir)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
