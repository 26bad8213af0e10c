"""Render sweep-result CSV files into figures.

A pure view of the results CSV written by the skirental harness: nothing is
recomputed, every plotted value comes straight out of the file. Two figure
kinds:

  * ``cr_vs_cc``     - empirical competitive ratio per policy against the
                       combo price, plus the worst-case bound line.
  * ``ratio_vs_bias`` - average cost ratio against prediction bias, one
                       curve per trust setting (trust 0 is the
                       follow-the-prediction policy, trust 1 the robust one).

Input contract: header ``axis,algo,count,skipped,empirical_cr,avg_ratio,
bound,cum_norm_cost`` exactly. Output is vector (SVG/PDF) by default; any
extension matplotlib supports works.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
import warnings
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

RESULTS_HEADER = (
    "axis", "algo", "count", "skipped",
    "empirical_cr", "avg_ratio", "bound", "cum_norm_cost",
)

FIGURE_KINDS = ("cr_vs_cc", "ratio_vs_bias")

THEME = {
    "figure.figsize": (5.2, 3.6),
    "figure.dpi": 110,
    "axes.grid": True,
    "grid.alpha": 0.35,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 9.5,
    "legend.fontsize": 8.5,
    "lines.linewidth": 1.6,
    "lines.markersize": 4.0,
}


class SchemaError(ValueError):
    """The input CSV does not match the results-file contract."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    figure_kind: str
    output_path: str

    def __post_init__(self):
        if self.figure_kind not in FIGURE_KINDS:
            raise SchemaError(
                f"unknown figure kind {self.figure_kind!r}; "
                f"expected one of {', '.join(FIGURE_KINDS)}"
            )


def read_results(path) -> list[dict]:
    """Parse a results CSV, enforcing the exact header."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SchemaError("missing header row") from None
        missing = [col for col in RESULTS_HEADER if col not in header]
        if missing:
            raise SchemaError(f"missing column {missing[0]!r} in {header}")
        if header != RESULTS_HEADER:
            raise SchemaError(
                f"header mismatch: expected {','.join(RESULTS_HEADER)}, "
                f"got {','.join(header)}"
            )
        rows = []
        for raw in reader:
            if not raw:
                continue
            row = dict(zip(header, raw))
            rows.append({
                "axis": float(row["axis"]),
                "algo": row["algo"],
                "count": int(row["count"]),
                "skipped": int(row["skipped"]),
                "empirical_cr": _maybe_float(row["empirical_cr"]),
                "avg_ratio": _maybe_float(row["avg_ratio"]),
                "bound": _maybe_float(row["bound"]),
                "cum_norm_cost": _maybe_float(row["cum_norm_cost"]),
            })
        return rows


def _maybe_float(field: str) -> float | None:
    return float(field) if field else None


def _series(rows, algo, column):
    points = [
        (row["axis"], row[column])
        for row in rows
        if row["algo"] == algo and row[column] is not None
    ]
    points.sort()
    return [p[0] for p in points], [p[1] for p in points]


def _trust_legend(algo: str) -> str:
    match = re.fullmatch(r"ladtsr\(theta=([^)]*)\)(?:\[(\w+)\])?", algo)
    if not match:
        return algo
    theta, tag = match.groups()
    if tag:
        return f"{tag.upper()} (trust={theta})"
    return f"trust={theta}"


def _empty_figure(ax, message: str):
    warnings.warn(message, stacklevel=3)
    ax.text(0.5, 0.5, message, ha="center", va="center",
            transform=ax.transAxes, fontsize=9, color="0.4")


def render(spec: FigureSpec) -> str:
    """Draw the requested figure and write it to spec.output_path."""
    rows = read_results(spec.input_csv)
    with plt.rc_context(THEME):
        fig, ax = plt.subplots()
        if spec.figure_kind == "cr_vs_cc":
            _draw_cr_vs_cc(ax, rows)
        else:
            _draw_ratio_vs_bias(ax, rows)
        fig.tight_layout()
        fig.savefig(spec.output_path)
        plt.close(fig)
    return spec.output_path


def _draw_cr_vs_cc(ax, rows):
    algos = sorted({row["algo"] for row in rows})
    for algo in algos:
        xs, ys = _series(rows, algo, "empirical_cr")
        if xs:
            ax.plot(xs, ys, marker="o", label=algo)
    bound_x, bound_y = _series(rows, "rdtsr", "bound")
    if bound_x:
        ax.plot(bound_x, bound_y, linestyle="--", color="black",
                label="worst-case bound (rdtsr)")
    ax.set_xlabel("combo price")
    ax.set_ylabel("empirical competitive ratio")
    if rows:
        ax.legend()
    else:
        _empty_figure(ax, "no data rows in results CSV")


def _draw_ratio_vs_bias(ax, rows):
    algos = sorted({row["algo"] for row in rows})
    for algo in algos:
        xs, ys = _series(rows, algo, "avg_ratio")
        if xs:
            ax.plot(xs, ys, marker="o", label=_trust_legend(algo))
    ax.set_xlabel("prediction bias")
    ax.set_ylabel("average cost ratio")
    if rows:
        ax.legend()
    else:
        _empty_figure(ax, "no data rows in results CSV")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="skirental-plots",
        description="Render a skirental results CSV into a figure.",
    )
    parser.add_argument("--in", dest="input_csv", required=True,
                        help="results CSV produced by the sweep commands")
    parser.add_argument("--kind", required=True, choices=FIGURE_KINDS,
                        help="figure kind")
    parser.add_argument("--out", required=True,
                        help="output image path (vector formats preferred)")
    args = parser.parse_args(argv)
    try:
        render(FigureSpec(args.input_csv, args.kind, args.out))
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
