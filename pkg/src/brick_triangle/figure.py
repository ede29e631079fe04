"""Static SVG drawings of bricks with an inscribed triangle.

Each panel is an orthographic projection along a fixed oblique direction:
the brick as a wireframe, the three carrying edges emphasized and the
triangle filled.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .geometry import ALL_EDGES, Brick, Placement, triangle_metrics

WIDTH, HEIGHT = 900, 300
MARGIN = 30.0

# Screen axes for the projection: right and up, orthonormal.
_VIEW = np.array([1.0, -0.8, 0.6])
_VIEW /= np.linalg.norm(_VIEW)
_RIGHT = np.cross([0.0, 0.0, 1.0], _VIEW)
_RIGHT /= np.linalg.norm(_RIGHT)
_UP = np.cross(_VIEW, _RIGHT)


@dataclass(frozen=True)
class Panel:
    title: str
    brick: Brick
    placement: Placement


def project(points) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    return np.stack([pts @ _RIGHT, pts @ _UP], axis=1)


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _panel_svg(panel: Panel, x0: float, width: float) -> list[str]:
    brick, placement = panel.brick, panel.placement
    segs = [e.endpoints(brick) for e in ALL_EDGES]
    tri = placement.points(brick)
    every = project(np.concatenate([np.array(s) for s in segs] + [tri]))
    lo, hi = every.min(axis=0), every.max(axis=0)
    avail_w, avail_h = width - 2 * MARGIN, HEIGHT - 2.5 * MARGIN
    scale = min(avail_w / max(hi[0] - lo[0], 1e-12), avail_h / max(hi[1] - lo[1], 1e-12))
    cx = x0 + width / 2 - scale * (lo[0] + hi[0]) / 2
    cy = HEIGHT / 2 + 0.75 * MARGIN + scale * (lo[1] + hi[1]) / 2

    def screen(p):
        q = project(p)[0]
        return cx + scale * q[0], cy - scale * q[1]

    carried = set(placement.triple.edges)
    out = ['<g class="panel">']
    for edge, (p, q) in zip(ALL_EDGES, segs):
        (x1, y1), (x2, y2) = screen(p), screen(q)
        style = 'stroke="#000" stroke-width="2"' if edge in carried else 'stroke="#888" stroke-width="1"'
        out.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" {style}/>'
        )
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (screen(v) for v in tri))
    out.append(f'<polygon points="{pts}" fill="#d33" fill-opacity="0.35" stroke="#d33" stroke-width="1.5"/>')
    side_sq = triangle_metrics(brick, placement).min_sq
    a, b, c = brick.sides
    cx_text = _fmt(x0 + width / 2)
    lines = (panel.title, f"{a:.4f} x {b:.4f} x {c:.4f}, side^2 = {side_sq:.6f}")
    for k, text in enumerate(lines):
        out.append(
            f'<text x="{cx_text}" y="{_fmt(14.0 + 14.0 * k)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{escape(text)}</text>'
        )
    out.append("</g>")
    return out


def render_svg(panels: list[Panel]) -> str:
    """SVG 1.1 document with the panels side by side in a 900 x 300 view box."""
    if not panels:
        raise ValueError("nothing to draw")
    width = WIDTH / len(panels)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#fff"/>',
    ]
    for i, panel in enumerate(panels):
        lines.extend(_panel_svg(panel, i * width, width))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def canonical_panels() -> list[Panel]:
    from .oracle import CANONICAL_OPTIMA

    return [Panel(o.id, o.brick, o.placement) for o in CANONICAL_OPTIMA]
