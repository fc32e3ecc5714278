"""単位円板と変動領域の SVG (matplotlib)

単位円板を 512×512 (pt) の画像に写す。原点が中央、y 軸は上向き:
px = 256 + 256 x, py = 256 - 256 y。

各アーティストには gid を付ける。SVG では同じ id の <g> になる:
unit-circle, region-{i}, region-point-{i}, grid-samples-{i}, samples-{i}, nodes, queries, empty
"""
import io
from collections.abc import Sequence

import matplotlib
from matplotlib.axes import Axes
from matplotlib.colors import to_rgba
from matplotlib.figure import Figure
from matplotlib.patches import Circle
from pydantic import Field

from ..schur.types import DomainModel
from ..schur.variability import VariabilityRegion

SIZE = 512
# SVG は 72 dpi (1 pt = 1 px) で書き出される
DPI = 72
# マーカーやクリップパスの id を実行ごとに変えない
SVG_RC = {"svg.hashsalt": "schur-regions", "svg.fonttype": "none"}


class QueryFigure(DomainModel):
    z: complex
    region: VariabilityRegion
    # |ε| = 1 の f_ε(z)
    boundary_samples: list[complex] = Field(default_factory=list)
    # 閉円板内の ε 格子での f_ε(z)
    grid_samples: list[complex] = Field(default_factory=list)


def to_pixel(z: complex) -> tuple[float, float]:
    scale = SIZE / 2
    return scale + scale * z.real, scale - scale * z.imag


def _markers(ax: Axes, points: Sequence[complex], gid: str, size: float, color: str) -> None:
    ax.plot(
        [complex(w).real for w in points],
        [complex(w).imag for w in points],
        linestyle="none",
        marker="o",
        markersize=size,
        markeredgewidth=0,
        color=color,
        gid=gid,
    )


def build_figure(marked_points: Sequence[complex], figures: Sequence[QueryFigure]) -> Figure:
    """pyplot を通さずに Figure を組み立てる (スレッドから呼べる)"""
    fig = Figure(figsize=(SIZE / DPI, SIZE / DPI), dpi=DPI)
    ax = fig.add_axes((0, 0, 1, 1))
    ax.set_xlim(-1, 1)
    ax.set_ylim(-1, 1)
    ax.set_axis_off()
    ax.add_patch(Circle((0, 0), 1.0, fill=False, edgecolor="black", linewidth=1.0, gid="unit-circle"))

    for i, figure in enumerate(figures):
        region = figure.region
        if region.kind == "disk":
            ax.add_patch(
                Circle(
                    (region.center.real, region.center.imag),
                    region.radius,
                    facecolor=to_rgba("steelblue", 0.3),
                    edgecolor="steelblue",
                    linewidth=1.0,
                    gid=f"region-{i}",
                )
            )
        elif region.kind == "point":
            _markers(ax, [region.center], f"region-point-{i}", 6.0, "steelblue")
        if figure.grid_samples:
            _markers(ax, figure.grid_samples, f"grid-samples-{i}", 2.0, "gray")
        if figure.boundary_samples:
            _markers(ax, figure.boundary_samples, f"samples-{i}", 3.0, "darkorange")

    if marked_points:
        _markers(ax, marked_points, "nodes", 8.0, "black")
    queries = [figure.z for figure in figures if figure.region.kind != "empty"]
    if queries:
        _markers(ax, queries, "queries", 8.0, "crimson")
    if any(figure.region.kind == "empty" for figure in figures):
        ax.text(0, 0, "EMPTY", ha="center", va="center", fontsize=24, gid="empty")
    return fig


def render_svg(marked_points: Sequence[complex], figures: Sequence[QueryFigure]) -> str:
    with matplotlib.rc_context(SVG_RC):
        fig = build_figure(marked_points, figures)
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", dpi=DPI, metadata={"Date": None})
    return buffer.getvalue()
