"""Plain SVG 1.1 pictures of tilings.

Coordinates are computed exactly (shifted to the region's bounding box and
scaled), flipped so that y points up, and only then rounded to 12
significant digits for display.
"""
from __future__ import annotations

import logging

from .exactfield import rat, to_float
from .tileengine import Tiling, verify_tiling

log = logging.getLogger(__name__)

__all__ = ["render_svg", "PALETTE"]

PALETTE = ("#f4d35e", "#ee964b", "#0d3b66", "#83c5be", "#f95738", "#b8b8d1", "#5a8f29", "#faf0ca")


def _fmt(u) -> str:
    s = f"{to_float(u):.12g}"
    return "0" if s == "-0" else s


def render_svg(t: Tiling, scale="100", check: bool = True) -> str:
    """SVG text with one ``<path>`` per tile and a ``<polygon>`` region outline."""
    if check and t.placements:
        rep = verify_tiling(t)
        if not rep.ok:
            log.warning("rendering a tiling that does not verify: %s", "; ".join(rep.failures[:3]))
    k = rat(scale) if not isinstance(scale, float) else rat(str(scale))
    pts = t.region.vertices() or list(t.prototile.vertices)
    for p in t.placements:
        pts.extend(p.polygon.vertices)
    x0 = min(p.x for p in pts)
    y0 = min(p.y for p in pts)
    x1 = max(p.x for p in pts)
    y1 = max(p.y for p in pts)

    def xy(p):
        return f"{_fmt((p.x - x0) * k)},{_fmt((y1 - p.y) * k)}"

    w, h = _fmt((x1 - x0) * k), _fmt((y1 - y0) * k)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
    ]
    for i, pl in enumerate(t.placements):
        d = "M " + " L ".join(xy(v) for v in pl.polygon.vertices) + " Z"
        colour = PALETTE[i % len(PALETTE)]
        out.append(f'<path d="{d}" fill="{colour}" fill-opacity="0.8" stroke="#000000" stroke-width="1"/>')
    for loop in t.region.loops():
        pts_attr = " ".join(xy(v) for v in loop.vertices)
        out.append(f'<polygon points="{pts_attr}" fill="none" stroke="#000000" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
