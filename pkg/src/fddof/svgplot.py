"""Minimal deterministic SVG rendering of DoF regions.

Hand-rolled on purpose: output must be byte-identical for identical input,
and the plots are simple enough (a handful of convex polygons on labeled
axes) that a plotting library would only add nondeterminism.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .regions import DofRegion

WIDTH = 640
HEIGHT = 480
MARGIN_LEFT = 64
MARGIN_RIGHT = 16
MARGIN_TOP = 18
MARGIN_BOTTOM = 48

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#17becf",
    "#8c564b",
    "#e377c2",
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_regions(entries: Sequence[tuple[str, DofRegion]]) -> str:
    """SVG document showing each (label, region) as a filled polygon."""
    span = max(
        [float(r.d1_cap) for _, r in entries]
        + [float(r.d2_cap) for _, r in entries]
        + [1.0]
    )
    span *= 1.08
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(v: float) -> float:
        return MARGIN_LEFT + v / span * plot_w

    def sy(v: float) -> float:
        return MARGIN_TOP + plot_h - v / span * plot_h

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    # axes
    x0, y0 = sx(0.0), sy(0.0)
    lines.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(sx(span))}" '
        f'y2="{_fmt(y0)}" stroke="black" stroke-width="1"/>'
    )
    lines.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" '
        f'y2="{_fmt(sy(span))}" stroke="black" stroke-width="1"/>'
    )
    lines.append(
        f'<text x="{_fmt(sx(span / 2))}" y="{HEIGHT - 10}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle">d1</text>'
    )
    lines.append(
        f'<text x="16" y="{_fmt(sy(span / 2))}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 16 {_fmt(sy(span / 2))})">d2</text>'
    )

    # integer tick marks while they stay readable
    step = 1
    while span / step > 12:
        step *= 2
    tick = step
    while tick < span:
        lines.append(
            f'<line x1="{_fmt(sx(tick))}" y1="{_fmt(y0)}" x2="{_fmt(sx(tick))}" '
            f'y2="{_fmt(y0 + 5)}" stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{_fmt(sx(tick))}" y="{_fmt(y0 + 20)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle">{tick}</text>'
        )
        lines.append(
            f'<line x1="{_fmt(x0 - 5)}" y1="{_fmt(sy(tick))}" x2="{_fmt(x0)}" '
            f'y2="{_fmt(sy(tick))}" stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{_fmt(x0 - 9)}" y="{_fmt(sy(tick) + 4)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end">{tick}</text>'
        )
        tick += step

    for i, (label, region) in enumerate(entries):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(
            f"{_fmt(sx(float(x)))},{_fmt(sy(float(y)))}"
            for x, y in region.vertices
        )
        if len(region.vertices) >= 3:
            lines.append(
                f'<polygon points="{points}" fill="{color}" fill-opacity="0.12" '
                f'stroke="{color}" stroke-width="2"/>'
            )
        else:
            lines.append(
                f'<polyline points="{points}" fill="none" stroke="{color}" '
                f'stroke-width="2"/>'
            )

    # legend, top right
    lx = WIDTH - MARGIN_RIGHT - 230
    ly = MARGIN_TOP + 14
    for i, (label, _) in enumerate(entries):
        color = PALETTE[i % len(PALETTE)]
        y = ly + 18 * i
        lines.append(
            f'<line x1="{lx}" y1="{y - 4}" x2="{lx + 24}" y2="{y - 4}" '
            f'stroke="{color}" stroke-width="3"/>'
        )
        lines.append(
            f'<text x="{lx + 30}" y="{y}" font-family="sans-serif" '
            f'font-size="12">{label}</text>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(path: str | Path, entries: Sequence[tuple[str, DofRegion]]) -> None:
    Path(path).write_text(render_regions(entries), encoding="utf-8")
