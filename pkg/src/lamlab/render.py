"""Deterministic SVG chord diagrams on the unit disc.

Identical inputs produce byte-identical output: all coordinates are emitted
with fixed precision and every element list is sorted before writing.
Leaves render as straight chords by default, or as circular arcs orthogonal
to the unit circle in geodesic mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .circle import Leaf, leaf_length

P_COLOR = "#1f77b4"
Q_COLOR = "#d62728"
POLY_OPACITY = "0.15"


@dataclass(frozen=True)
class RenderStyle:
    geodesic: bool = False
    palette: tuple[str, str] = (P_COLOR, Q_COLOR)
    size: int = 600


def _fmt(v: float) -> str:
    out = f"{v:.3f}"
    return "0.000" if out == "-0.000" else out


def _xy(t: Fraction, cx: float, cy: float, r: float) -> tuple[float, float]:
    theta = 2 * math.pi * (t.numerator / t.denominator)
    return cx + r * math.cos(theta), cy - r * math.sin(theta)


def _chord_path(l: Leaf, cx: float, cy: float, r: float, geodesic: bool) -> str:
    x1, y1 = _xy(l.a, cx, cy, r)
    x2, y2 = _xy(l.b, cx, cy, r)
    if not geodesic or leaf_length(l) == Fraction(1, 2):
        return f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"
    # circle orthogonal to the unit circle through both endpoints: on unit
    # vectors u, v its centre is (u + v) / (1 + u.v), radius sqrt(|c|^2 - 1)
    ux, uy = _xy(l.a, 0.0, 0.0, 1.0)
    vx, vy = _xy(l.b, 0.0, 0.0, 1.0)
    dot = ux * vx + uy * vy
    cxg, cyg = (ux + vx) / (1 + dot), (uy + vy) / (1 + dot)
    rho = math.sqrt(cxg * cxg + cyg * cyg - 1.0) * r
    # pick the arc bulging away from the centre of the orthogonal circle
    cross = (vx - ux) * (cyg - uy) - (vy - uy) * (cxg - ux)
    sweep = 1 if cross > 0 else 0
    return (
        f"M {_fmt(x1)} {_fmt(y1)} A {_fmt(rho)} {_fmt(rho)} 0 0 {sweep} "
        f"{_fmt(x2)} {_fmt(y2)}"
    )


def render_svg(
    p_leaves,
    q_leaves=(),
    polygons=(),
    style: RenderStyle = RenderStyle(),
) -> str:
    """One circle element, one path per leaf, low-opacity polygon fills."""
    size = style.size
    cx = cy = size / 2.0
    r = size * 0.46
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
        'fill="none" stroke="#222222" stroke-width="1"/>',
    ]
    for poly in sorted(polygons, key=lambda p: p.vertices):
        pts = " ".join(
            f"{_fmt(x)},{_fmt(y)}" for x, y in (_xy(v, cx, cy, r) for v in poly.vertices)
        )
        parts.append(
            f'<polygon points="{pts}" fill="{style.palette[0]}" '
            f'fill-opacity="{POLY_OPACITY}" stroke="none"/>'
        )
    for leaves, color in ((p_leaves, style.palette[0]), (q_leaves, style.palette[1])):
        for l in sorted(set(leaves)):
            parts.append(
                f'<path d="{_chord_path(l, cx, cy, r, style.geodesic)}" '
                f'fill="none" stroke="{color}" stroke-width="1"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
