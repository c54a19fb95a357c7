"""Deterministic SVG drawings of patches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import LARGE
from .model import Patch, build_tangency_graph


@dataclass(frozen=True)
class Style:
    large_fill: str = "#c6dbef"
    small_fill: str = "#fdae6b"
    stroke: str = "#252525"
    edge_stroke: str = "#cb181d"
    scale: float = 40.0
    margin: float = 0.5


def _f(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _copies(p: Patch, repeat: int):
    if not p.is_periodic or repeat <= 1:
        return [np.zeros(2)]
    a, b = (np.array(v) for v in p.periods)
    return [s * a + t * b for t in range(repeat) for s in range(repeat)]


def render_svg(p: Patch, edges: bool = False, repeat: int = 1, style: Style = Style()) -> str:
    """SVG 1.1 document: one circle per disc copy, optional large-large contact segments."""
    r = p.r
    circles = []
    for shift in _copies(p, repeat):
        for d in p.discs:
            x, y = d.x + shift[0], d.y + shift[1]
            circles.append((round(y, 9), round(x, 9), d.size.char, d.radius(r)))
    circles.sort()

    segments = []
    if edges:
        g = build_tangency_graph(p)
        for shift in _copies(p, repeat):
            for i, j, off in g.edges():
                if p.discs[i].size is not LARGE or p.discs[j].size is not LARGE:
                    continue
                x0, y0 = p.discs[i].x + shift[0], p.discs[i].y + shift[1]
                x1, y1 = p.image(j, off)
                x1, y1 = x1 + shift[0], y1 + shift[1]
                a, b = sorted([(round(y0, 9), round(x0, 9)), (round(y1, 9), round(x1, 9))])
                segments.append((a, b))
        segments = sorted(set(segments))

    if circles:
        xs = [c[1] for c in circles]
        ys = [c[0] for c in circles]
        pad = 1.0 + style.margin
        xmin, xmax = min(xs) - pad, max(xs) + pad
        ymin, ymax = min(ys) - pad, max(ys) + pad
    else:
        xmin = ymin = 0.0
        xmax = ymax = 1.0
    s = style.scale
    width, height = (xmax - xmin) * s, (ymax - ymin) * s

    def tx(x):
        return _f((x - xmin) * s)

    def ty(y):  # flip so y grows upward as in the plane
        return _f((ymax - y) * s)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">',
        f"<title>{p.radius_class.id} packing, r = {p.r:.10f}</title>",
        f'<g stroke="{style.stroke}" stroke-width="1">',
    ]
    for y, x, size, rad in circles:
        fill = style.large_fill if size == LARGE.char else style.small_fill
        out.append(f'<circle cx="{tx(x)}" cy="{ty(y)}" r="{_f(rad * s)}" fill="{fill}"/>')
    out.append("</g>")
    if segments:
        out.append(f'<g stroke="{style.edge_stroke}" stroke-width="2">')
        for (y0, x0), (y1, x1) in segments:
            out.append(f'<line x1="{tx(x0)}" y1="{ty(y0)}" x2="{tx(x1)}" y2="{ty(y1)}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
