"""Render sweep CSVs as line figures.

A plot spec is a small JSON document naming the input CSV, the x column,
one or more y columns, and optionally a feasibility column. Rows whose
feasibility value is not "true" are drawn as gaps: the curve is split
into segments of consecutive feasible rows and never interpolated across
a hole. A dashed vertical marker highlights the argmax of the first y
column.

Usage:

    nfmimo-plot --spec spec.json [--dump-points points.csv]

``--dump-points`` writes every plotted (x, y) pair as ``column,x,y``
lines so the rendered point set can be checked against the CSV exactly.

Exit codes: 0 success, 2 bad spec or malformed/missing input,
3 empty feasible set (an annotated empty figure is still written),
4 output I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_EMPTY = 3
EXIT_IO = 4


class PlotSpecError(ValueError):
    """Malformed plot spec or input CSV; the message names the problem."""


@dataclass(frozen=True)
class PlotSpec:
    input_csv: str
    x_column: str
    y_columns: tuple[str, ...]
    output_image: str
    feasibility_column: Optional[str] = None
    title: str = ""
    x_label: str = ""
    y_label: str = ""


_REQUIRED_KEYS = {"input_csv", "x_column", "y_columns", "output_image"}
_OPTIONAL_KEYS = {"feasibility_column", "title", "x_label", "y_label"}


def parse_spec(doc) -> PlotSpec:
    """Validate a spec document (JSON text or dict)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise PlotSpecError(f"spec is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise PlotSpecError("spec must be a JSON object")
    for key in _REQUIRED_KEYS:
        if key not in doc:
            raise PlotSpecError(f"missing required key: {key}")
    for key in doc:
        if key not in _REQUIRED_KEYS | _OPTIONAL_KEYS:
            raise PlotSpecError(f"unknown key: {key}")
    y_columns = doc["y_columns"]
    if isinstance(y_columns, str):
        y_columns = [y_columns]
    if not isinstance(y_columns, list) or not y_columns:
        raise PlotSpecError("y_columns: expected a nonempty list of column names")
    return PlotSpec(
        input_csv=doc["input_csv"],
        x_column=doc["x_column"],
        y_columns=tuple(y_columns),
        output_image=doc["output_image"],
        feasibility_column=doc.get("feasibility_column"),
        title=doc.get("title", ""),
        x_label=doc.get("x_label", ""),
        y_label=doc.get("y_label", ""),
    )


def load_spec(path: str) -> PlotSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())


def _read_rows(spec: PlotSpec):
    with open(spec.input_csv, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in (spec.x_column, *spec.y_columns):
            if column not in header:
                raise PlotSpecError(f"column '{column}' not in CSV header {header}")
        if spec.feasibility_column is not None and spec.feasibility_column not in header:
            raise PlotSpecError(f"column '{spec.feasibility_column}' not in CSV header {header}")
        return list(reader)


def _feasible(spec: PlotSpec, row: dict) -> bool:
    if spec.feasibility_column is None:
        return True
    return row[spec.feasibility_column] == "true"


def _segments(spec: PlotSpec, rows):
    """Runs of consecutive feasible rows, each a list of (x, {column: y}) pairs."""
    segments = []
    current = []
    for row in rows:
        if _feasible(spec, row):
            x = float(row[spec.x_column])
            ys = {column: float(row[column]) for column in spec.y_columns}
            current.append((x, ys))
        elif current:
            segments.append(current)
            current = []
    if current:
        segments.append(current)
    return segments


def render(spec: PlotSpec, dump_points_path: Optional[str] = None) -> int:
    """Plot the feasible rows of the CSV; returns a process exit code."""
    rows = _read_rows(spec)
    segments = _segments(spec, rows)
    points = [
        (column, x, ys[column])
        for segment in segments
        for x, ys in segment
        for column in spec.y_columns
    ]

    if dump_points_path is not None:
        with open(dump_points_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("column,x,y\n")
            for column, x, y in points:
                fh.write(f"{column},{x!r},{y!r}\n")

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.set_title(spec.title)
    ax.set_xlabel(spec.x_label or spec.x_column)
    ax.set_ylabel(spec.y_label or ", ".join(spec.y_columns))

    if not segments:
        ax.text(
            0.5, 0.5, "no feasible rows", ha="center", va="center",
            transform=ax.transAxes, fontsize=14, color="crimson",
        )
        fig.savefig(spec.output_image, dpi=150, bbox_inches="tight")
        plt.close(fig)
        return EXIT_EMPTY

    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for i, column in enumerate(spec.y_columns):
        color = colors[i % len(colors)]
        for j, segment in enumerate(segments):
            xs = [x for x, _ in segment]
            ys = [ys[column] for _, ys in segment]
            ax.plot(
                xs, ys, color=color, marker="o", markersize=2.5,
                label=column if j == 0 else None,
            )

    # argmax of the first y column over all plotted points
    first = spec.y_columns[0]
    best_x, best_y = max(
        ((x, ys[first]) for segment in segments for x, ys in segment),
        key=lambda xy: (xy[1], -xy[0]),
    )
    ax.axvline(best_x, color="gray", linestyle="--", linewidth=1)
    ax.annotate(
        f"argmax {first} at {best_x:g}",
        xy=(best_x, best_y), xytext=(5, -12), textcoords="offset points", fontsize=8,
    )

    ax.legend()
    ax.grid(alpha=0.3)
    fig.savefig(spec.output_image, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nfmimo-plot", description="Render a sweep CSV as a line figure."
    )
    parser.add_argument("--spec", required=True, help="path to the JSON plot spec")
    parser.add_argument(
        "--dump-points", default=None,
        help="also write every plotted (column, x, y) point to this CSV",
    )
    args = parser.parse_args(argv)
    try:
        spec = load_spec(args.spec)
        return render(spec, args.dump_points)
    except PlotSpecError as exc:
        print(f"plot spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except FileNotFoundError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
