"""Delimited output and companion figures for sweeps and tables.

Figures are rendered with the Agg backend next to the CSV they illustrate:
writing `foo.csv` also produces `foo.png` unless figures are disabled.
"""

from __future__ import annotations

import csv
import math
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .scalar import QuadScalar

PELL_HEADER = ["p", "q", "d", "alpha", "delta", "lambda1sq_normalized"]
HEX_HEADER = ["alpha", "delta"]
THETA_HEADER = ["parameter", "value", "tail_bound"]


def _figure_path(csv_path: str | Path) -> Path:
    return Path(csv_path).with_suffix(".png")


def _new_axes():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    return plt, fig, ax


def write_pell_table(
    path: str | Path, rows: Sequence[dict], figure: bool = True
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(PELL_HEADER)
        for row in rows:
            writer.writerow(
                [
                    row["p"],
                    row["q"],
                    row["d"],
                    row["alpha"],
                    row["delta"],
                    row["lambda1sq_normalized"],
                ]
            )
    if figure and rows:
        plt, fig, ax = _new_axes()
        alphas = [row["alpha"] for row in rows]
        deltas = [row["delta"] for row in rows]
        ax.plot(alphas, deltas, "o-")
        ax.set_xlabel("alpha = p/q")
        ax.set_ylabel("center density")
        ax.set_title("Integral members of the deformed family")
        fig.tight_layout()
        fig.savefig(_figure_path(path), dpi=150)
        plt.close(fig)


def write_hex_sweep(
    path: str | Path,
    sweep: Sequence[tuple[Fraction, QuadScalar]],
    figure: bool = True,
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(HEX_HEADER)
        for alpha, delta in sweep:
            writer.writerow([float(alpha), delta.to_float()])
    if figure and sweep:
        plt, fig, ax = _new_axes()
        xs = [float(alpha) for alpha, _ in sweep]
        ys = [delta.to_float() for _, delta in sweep]
        ax.plot(xs, ys, "-")
        ax.axhline(0.25, linestyle="--", color="gray", label="square lattice")
        ax.axhline(
            1.0 / (2.0 * math.sqrt(3.0)),
            linestyle="--",
            color="green",
            label="hexagonal lattice",
        )
        ax.set_xlabel("alpha")
        ax.set_ylabel("center density")
        ax.set_title("Planar deformation sweep")
        ax.legend()
        fig.tight_layout()
        fig.savefig(_figure_path(path), dpi=150)
        plt.close(fig)


def write_theta_rows(
    path: str | Path,
    rows: Sequence[tuple[float, float, float]],
    figure: bool = True,
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(THETA_HEADER)
        for row in rows:
            writer.writerow(list(row))
    if figure and rows:
        plt, fig, ax = _new_axes()
        ax.plot([r[0] for r in rows], [r[1] for r in rows], "o-")
        ax.set_xlabel("parameter")
        ax.set_ylabel("value")
        ax.set_title("Truncated theta evaluation")
        fig.tight_layout()
        fig.savefig(_figure_path(path), dpi=150)
        plt.close(fig)
