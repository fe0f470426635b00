"""Render figures from the blochdim CLI's CSV files.

This package is coupled to the primary component only through the documented
CSV schemas:

  bloch_coverage.csv  kind, n_x, n_y, n_z, norm, purity
  vectors_k{K}.csv    edge, n_x, n_y, n_z

Figures are deterministic for fixed inputs: view angles, colors, and binning
are hard-coded and nothing is sampled here.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "FigureSpec",
    "FigureResult",
    "MissingInputError",
    "SchemaError",
    "plot_coverage",
    "plot_saturation",
]

COVERAGE_COLUMNS = ("kind", "n_x", "n_y", "n_z", "norm", "purity")
VECTOR_COLUMNS = ("edge", "n_x", "n_y", "n_z")

# fixed so regenerated figures diff cleanly
VIEW_ELEV = 18.0
VIEW_AZIM = -60.0
PURE_COLOR = "#1f77b4"
MIXED_COLOR = "#d62728"
ARROW_COLOR = "#1f77b4"
NORM_BINS = np.linspace(0.0, 1.05, 43)


class MissingInputError(FileNotFoundError):
    """An expected CSV input does not exist."""


class SchemaError(ValueError):
    """A CSV input does not carry the documented columns."""


@dataclass(frozen=True)
class FigureSpec:
    """Inputs and output for one figure; kind is 'coverage' or 'saturation'."""

    kind: str
    inputs: tuple[str, ...]
    output: str


@dataclass(frozen=True)
class FigureResult:
    output: str
    panels: int
    points_per_panel: tuple[int, ...]


def _read_table(path: str | Path, expected_columns: tuple[str, ...], command_hint: str):
    path = Path(path)
    if not path.exists():
        raise MissingInputError(
            f"{path} not found; generate it with `{command_hint}`"
        )
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise SchemaError(f"{path} is empty (no header row)")
    header = tuple(rows[0])
    missing = [column for column in expected_columns if column not in header]
    if missing:
        raise SchemaError(f"{path} is missing columns {missing}; header is {list(header)}")
    if len(rows) == 1:
        raise SchemaError(f"{path} has a header but no data rows")
    index = {column: header.index(column) for column in expected_columns}
    return rows[1:], index


def _unit_sphere(ax):
    u = np.linspace(0.0, 2.0 * np.pi, 48)
    v = np.linspace(0.0, np.pi, 24)
    x = np.outer(np.cos(u), np.sin(v))
    y = np.outer(np.sin(u), np.sin(v))
    z = np.outer(np.ones_like(u), np.cos(v))
    ax.plot_surface(x, y, z, color="#cccccc", alpha=0.15, linewidth=0.0)
    ax.set_xlim(-1.1, 1.1)
    ax.set_ylim(-1.1, 1.1)
    ax.set_zlim(-1.1, 1.1)
    ax.set_xlabel("$n_x$")
    ax.set_ylabel("$n_y$")
    ax.set_zlabel("$n_z$")
    ax.view_init(elev=VIEW_ELEV, azim=VIEW_AZIM)


def plot_coverage(spec: FigureSpec) -> FigureResult:
    """Two panels: projected states on the translucent unit sphere, and the
    norm histogram with pure and mixed rows distinguished."""
    if spec.kind != "coverage":
        raise ValueError(f"spec kind is {spec.kind!r}, expected 'coverage'")
    if len(spec.inputs) != 1:
        raise ValueError("coverage figure takes exactly one input CSV")
    rows, col = _read_table(
        spec.inputs[0], COVERAGE_COLUMNS, "blochdim bloch-coverage --out-dir <dir>"
    )
    kinds = np.array([row[col["kind"]] for row in rows])
    points = np.array(
        [[float(row[col[c]]) for c in ("n_x", "n_y", "n_z")] for row in rows]
    )
    norms = np.array([float(row[col["norm"]]) for row in rows])

    fig = plt.figure(figsize=(6.0, 9.0))
    ax3d = fig.add_subplot(2, 1, 1, projection="3d")
    _unit_sphere(ax3d)
    for kind, color in (("pure", PURE_COLOR), ("mixed", MIXED_COLOR)):
        mask = kinds == kind
        if mask.any():
            ax3d.scatter(
                points[mask, 0],
                points[mask, 1],
                points[mask, 2],
                s=10,
                color=color,
                label=kind,
                depthshade=False,
            )
    ax3d.legend(loc="upper right")
    ax3d.set_title(f"Projection of {len(rows)} random states")

    ax_hist = fig.add_subplot(2, 1, 2)
    for kind, color in (("pure", PURE_COLOR), ("mixed", MIXED_COLOR)):
        mask = kinds == kind
        if mask.any():
            ax_hist.hist(norms[mask], bins=NORM_BINS, color=color, alpha=0.7, label=kind)
    ax_hist.axvline(1.0, color="black", linestyle="--", linewidth=0.8)
    ax_hist.set_xlabel("vector norm")
    ax_hist.set_ylabel("count")
    ax_hist.legend(loc="upper left")
    ax_hist.set_title("Norm distribution")

    fig.tight_layout()
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
    return FigureResult(output=spec.output, panels=2, points_per_panel=(len(rows), len(rows)))


def plot_saturation(spec: FigureSpec) -> FigureResult:
    """One panel per valence: k unit arrows from the origin in a common
    frame, annotated with the rank of the spanned space."""
    if spec.kind != "saturation":
        raise ValueError(f"spec kind is {spec.kind!r}, expected 'saturation'")
    if not spec.inputs:
        raise ValueError("saturation figure needs at least one vectors CSV")
    panels = []
    for path in spec.inputs:
        rows, col = _read_table(
            path, VECTOR_COLUMNS, "blochdim saturation --out-dir <dir>"
        )
        vectors = np.array(
            [[float(row[col[c]]) for c in ("n_x", "n_y", "n_z")] for row in rows]
        )
        panels.append((Path(path).stem, vectors))

    n_panels = len(panels)
    n_cols = min(n_panels, 2)
    n_rows = (n_panels + n_cols - 1) // n_cols
    fig = plt.figure(figsize=(5.0 * n_cols, 4.5 * n_rows))
    for index, (name, vectors) in enumerate(panels, start=1):
        ax = fig.add_subplot(n_rows, n_cols, index, projection="3d")
        _unit_sphere(ax)
        origin = np.zeros(len(vectors))
        ax.quiver(
            origin,
            origin,
            origin,
            vectors[:, 0],
            vectors[:, 1],
            vectors[:, 2],
            color=ARROW_COLOR,
            arrow_length_ratio=0.08,
            linewidth=1.4,
        )
        rank = int(np.linalg.matrix_rank(vectors, tol=1e-10))
        ax.set_title(f"{name}: {len(vectors)} vectors, rank {rank}")
    fig.tight_layout()
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
    return FigureResult(
        output=spec.output,
        panels=n_panels,
        points_per_panel=tuple(len(vectors) for _, vectors in panels),
    )
