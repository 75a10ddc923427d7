"""Barcode figures.

Bars are drawn as thin rectangles on one shared action axis, grouped by
degree from bottom to top.  Semi-infinite bars run to the right edge and end
in an arrowhead.  Every rectangle carries the SVG id ``bar-<i>`` and every
arrowhead ``arrow-<i>`` (``i`` the bar index), so SVG output can be inspected
by element count.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrow, Rectangle  # noqa: E402

from .barcodes import GradedBarcode  # noqa: E402

BAR_HEIGHT = 0.6
ROW_GAP = 1.0
DEGREE_GAP = 0.8
MARGIN = 0.15  # fraction of the finite span added on both sides
ARROW_LENGTH = 0.06  # fraction of the axis width
COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]

_RC = {"svg.hashsalt": "floerbars", "svg.fonttype": "none", "font.size": 9}


def _axis_limits(B: GradedBarcode) -> tuple[float, float]:
    pts = [float(x) for x in B.finite_endpoints()]
    if not pts:
        return -1.0, 1.0
    lo, hi = min(pts), max(pts)
    span = hi - lo or 1.0
    return lo - MARGIN * span, hi + 2 * MARGIN * span


def barcode_figure(B: GradedBarcode, title: str | None = None):
    """Build (but do not save) the figure for ``B``; returns ``(fig, ax)``."""
    with plt.rc_context(_RC):
        xmin, xmax = _axis_limits(B)
        width = xmax - xmin
        rows = len(B) + DEGREE_GAP * max(len(B.degrees) - 1, 0)
        fig, ax = plt.subplots(figsize=(6.4, 1.2 + 0.35 * max(rows, 1)))
        y = 0.0
        ticks, labels = [], []
        for k, deg in enumerate(B.degrees):
            start = y
            color = COLORS[k % len(COLORS)]
            for i, bar in B.in_degree(deg):
                left = float(bar.left)
                right = xmax - ARROW_LENGTH * width if bar.is_infinite else float(bar.right)
                rect = Rectangle((left, y), right - left, BAR_HEIGHT, facecolor=color, edgecolor="none")
                rect.set_gid(f"bar-{i}")
                ax.add_patch(rect)
                if bar.is_infinite:
                    arrow = FancyArrow(
                        right, y + BAR_HEIGHT / 2, ARROW_LENGTH * width * 0.4, 0,
                        width=BAR_HEIGHT * 0.5, head_width=BAR_HEIGHT * 1.3,
                        head_length=ARROW_LENGTH * width * 0.6, length_includes_head=False,
                        color=color,
                    )
                    arrow.set_gid(f"arrow-{i}")
                    ax.add_patch(arrow)
                y += ROW_GAP
            ticks.append((start + y - ROW_GAP + BAR_HEIGHT) / 2)
            labels.append(f"deg {deg}")
            y += DEGREE_GAP
        ax.set_xlim(xmin, xmax)
        ax.set_ylim(-0.4, max(y - DEGREE_GAP, 1.0) + 0.2)
        ax.set_yticks(ticks, labels)
        ax.set_xlabel("action")
        for side in ("top", "right"):
            ax.spines[side].set_visible(False)
        if title:
            ax.set_title(title)
        fig.tight_layout()
    return fig, ax


def render_barcode(B: GradedBarcode, path, title: str | None = None) -> Path:
    """Write the barcode figure; the format follows the file suffix (svg, png, pdf)."""
    path = Path(path)
    fig, _ = barcode_figure(B, title)
    with plt.rc_context(_RC):
        fig.savefig(path, metadata={"Date": None} if path.suffix.lower() == ".svg" else None)
    plt.close(fig)
    return path
