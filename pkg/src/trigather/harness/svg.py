"""Deterministic SVG snapshots of a configuration."""
from __future__ import annotations

import math

from trigather.swarm import SER, Configuration, bounding_polygon

SCALE = 60.0  # pixels per edge length
MARGIN = 0.75  # edge lengths of blank space around the drawing
ROBOT_RADIUS = 0.22
_RT3_2 = math.sqrt(3) / 2


def _xy(col, hrow) -> tuple[float, float]:
    # SVG y grows downward
    return (float(col) * _RT3_2 * SCALE, -float(hrow) / 2 * SCALE)


def _fmt(v: float) -> str:
    text = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def emit_svg(config: Configuration, ser: SER | None = None, radius: int = 1, title: str | None = None) -> str:
    """Robots as circles, co-located robots labelled with their count.

    Lattice edges are drawn ``radius`` columns (and ``2 * radius`` half-rows)
    beyond the occupied region.  Passing the initial ``ser`` adds the
    bounding polygon outline.
    """
    if not config.positions:
        raise ValueError("nothing to draw")
    occ = config.occupancy
    cols = [p.col for p in occ]
    rows = [p.hrow for p in occ]
    c_lo, c_hi = min(cols) - radius, max(cols) + radius
    h_lo, h_hi = min(rows) - 2 * radius, max(rows) + 2 * radius

    outline = None
    if ser is not None:
        outline = [_xy(c, h) for c, h in bounding_polygon(ser).vertices()]

    xs = [c_lo * _RT3_2 * SCALE, c_hi * _RT3_2 * SCALE]
    ys = [-h_hi / 2 * SCALE, -h_lo / 2 * SCALE]
    if outline:
        xs += [x for x, _ in outline]
        ys += [y for _, y in outline]
    pad = MARGIN * SCALE
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) + pad - x0, max(ys) + pad - y0

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}" '
        f'width="{_fmt(w)}" height="{_fmt(h)}">'
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")

    out.append('<g stroke="#c8c8c8" stroke-width="1">')
    for c in range(c_lo, c_hi + 1):
        for hr in range(h_lo, h_hi + 1):
            if (c - hr) % 2:
                continue
            # each edge once: up, up-right, down-right
            for dc, dh in ((0, 2), (1, 1), (1, -1)):
                c2, h2 = c + dc, hr + dh
                if c2 <= c_hi and h_lo <= h2 <= h_hi:
                    (xa, ya), (xb, yb) = _xy(c, hr), _xy(c2, h2)
                    out.append(f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" x2="{_fmt(xb)}" y2="{_fmt(yb)}"/>')
    out.append("</g>")

    if outline:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in outline)
        out.append(f'<polygon points="{pts}" fill="none" stroke="#4477aa" stroke-width="2" stroke-dasharray="6 4"/>')

    r = ROBOT_RADIUS * SCALE
    for p in sorted(occ):
        x, y = _xy(*p)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="#ee6677" stroke="#222"/>')
        if occ[p] > 1:
            out.append(
                f'<text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="middle" dominant-baseline="central" '
                f'font-family="sans-serif" font-size="{_fmt(r)}">{occ[p]}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
