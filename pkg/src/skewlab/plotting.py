"""SVG line plots of CSV columns.

Plots read the CSV written by a sweep and draw its columns verbatim; no
quantity is recomputed here.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .scenarios import read_csv

WIDTH_PX, HEIGHT_PX = 800, 600
_SVG_DPI = 72  # matplotlib's SVG backend uses points, so 72 dpi maps 1 pt to 1 user unit


def plot_columns(csv_path, x: str, columns: Sequence[str], out_path, *, title: str = "",
                 filter_col: str | None = None, filter_value: float | None = None,
                 ylabel: str = "") -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "skewlab"
    matplotlib.rcParams["svg.fonttype"] = "none"

    data = read_csv(csv_path)
    keep = range(len(data[x]))
    if filter_col is not None:
        keep = [i for i, v in enumerate(data[filter_col]) if abs(v - filter_value) < 1e-12]
    xs = [data[x][i] for i in keep]

    fig, ax = plt.subplots(figsize=(WIDTH_PX / _SVG_DPI, HEIGHT_PX / _SVG_DPI), dpi=_SVG_DPI)
    for col in columns:
        ax.plot(xs, [data[col][i] for i in keep], label=col, linewidth=1.2)
    ax.set_xlabel(x)
    if ylabel:
        ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=9)
    ax.grid(True, alpha=0.3)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return out_path
