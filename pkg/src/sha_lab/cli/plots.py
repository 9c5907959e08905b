"""Static SVG figures rendered with matplotlib's Agg backend.

Output is byte-deterministic: the SVG id salt is fixed, text stays text, and
no creation date is embedded.
"""

import math
from collections.abc import Sequence
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import numpy as np  # noqa: E402
from matplotlib.axes import Axes  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from numpy.typing import NDArray  # noqa: E402

from ..core.enums import PlotKind  # noqa: E402
from ..core.exceptions import EmptyDataError  # noqa: E402
from ..core.schemas.plots import PlotSpec  # noqa: E402

SVG_RC = {
    "svg.hashsalt": "sha-lab",
    "svg.fonttype": "none",
    "font.size": 10,
}
FIGSIZE = (8.0, 5.0)


def _finite(values: Sequence[Optional[float]]) -> bool:
    return all(v is None or math.isfinite(v) for v in values)


def check_plot_data(spec: PlotSpec) -> None:
    """
    Reject figures with nothing to draw.

    Raises:
        EmptyDataError: No series (or heatmap cells), no present point, or a non-finite value
    """
    if spec.kind == PlotKind.HEATMAP:
        if not spec.matrix or not spec.matrix[0]:
            raise EmptyDataError(f"Heatmap {spec.title!r} has no cells")
        if not all(_finite(row) for row in spec.matrix):
            raise EmptyDataError(f"Heatmap {spec.title!r} has non-finite cells")
        return
    if not spec.series:
        raise EmptyDataError(f"Figure {spec.title!r} has no series")
    present = 0
    for series in spec.series:
        if not (_finite(series.y) and _finite(series.x)):
            raise EmptyDataError(f"Series {series.name!r} has non-finite values")
        present += sum(v is not None for v in series.y)
    if present == 0:
        raise EmptyDataError(f"Figure {spec.title!r} has no data points")


def _as_array(values: list[Optional[float]]) -> NDArray[np.float64]:
    return np.array([np.nan if v is None else v for v in values], dtype=np.float64)


def _draw_bars(ax: Axes, spec: PlotSpec) -> None:
    positions = np.arange(len(spec.categories), dtype=np.float64)
    width = 0.8 / len(spec.series)
    for i, series in enumerate(spec.series):
        offset = (i - (len(spec.series) - 1) / 2.0) * width
        keep = [j for j, v in enumerate(series.y) if v is not None]
        heights = [series.y[j] for j in keep]
        ax.bar(positions[keep] + offset, heights, width=width, label=series.name)
    ax.set_xticks(positions)
    ax.set_xticklabels(spec.categories, rotation=30, ha="right")
    ax.legend()


def _draw_lines(ax: Axes, spec: PlotSpec) -> None:
    for series in spec.series:
        x = series.x or list(range(len(series.y)))
        ax.plot(x, _as_array(series.y), marker="o", markersize=3, label=series.name)
    if spec.log_x:
        ax.set_xscale("log")
    ax.legend()


def _draw_scatter(ax: Axes, spec: PlotSpec) -> None:
    for series in spec.series:
        ax.scatter(series.x, _as_array(series.y), s=6, alpha=0.6, label=series.name)
    ax.legend()


def _draw_heatmap(fig: Figure, ax: Axes, spec: PlotSpec) -> None:
    assert spec.matrix is not None
    data = np.array(spec.matrix, dtype=np.float64)
    image = ax.imshow(data, cmap="coolwarm", vmin=-1.0, vmax=1.0)
    ticks = np.arange(data.shape[0])
    ax.set_xticks(ticks)
    ax.set_yticks(ticks)
    ax.set_xticklabels(spec.categories)
    ax.set_yticklabels(spec.categories)
    for i in range(data.shape[0]):
        for j in range(data.shape[1]):
            ax.text(j, i, f"{data[i, j]:.2f}", ha="center", va="center")
    fig.colorbar(image, ax=ax)


def emit_svg(spec: PlotSpec, path: str | Path) -> Path:
    """
    Render ``spec`` to a standalone SVG file.

    Args:
        spec: Figure kind, labels and data
        path: Destination file; parent directories are created

    Returns:
        The written path

    Raises:
        EmptyDataError: Nothing finite to draw
    """
    check_plot_data(spec)
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=FIGSIZE)
        ax = fig.add_subplot()
        if spec.kind == PlotKind.GROUPED_BARS:
            _draw_bars(ax, spec)
        elif spec.kind == PlotKind.LINE:
            _draw_lines(ax, spec)
        elif spec.kind == PlotKind.SCATTER:
            _draw_scatter(ax, spec)
        else:
            _draw_heatmap(fig, ax, spec)
        ax.set_title(spec.title)
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label)
        fig.tight_layout()
        fig.savefig(out, format="svg", metadata={"Date": None})
    return out
