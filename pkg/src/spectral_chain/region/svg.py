"""Deterministic SVG rendering of a region."""

from __future__ import annotations

from fractions import Fraction

from .core import SpectralRegion
from .primitives import Circle, ClosedDisk, Point, Segment

STYLE = {
    "disk": 'fill="#9ecae1" fill-opacity="0.6" stroke="#3182bd"',
    "circle": 'fill="none" stroke="#e6550d"',
    "segment": 'stroke="#31a354" stroke-linecap="round"',
    "point": 'fill="#000000"',
}
CANVAS = 400


def _extent(r: SpectralRegion) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    for p in r.primitives:
        if isinstance(p, Segment):
            xs += [p.a.re, p.b.re]
            ys += [p.a.im, p.b.im]
        elif isinstance(p, Point):
            xs.append(p.center.re)
            ys.append(p.center.im)
        else:
            xs += [p.center.re - p.radius, p.center.re + p.radius]
            ys += [p.center.im - p.radius, p.center.im + p.radius]
    if not xs:
        return Fraction(-1), Fraction(-1), Fraction(1), Fraction(1)
    return min(xs), min(ys), max(xs), max(ys)


def _num(x: Fraction | float) -> str:
    text = format(float(x), ".6g")
    return "0" if text == "-0" else text


def render_svg(r: SpectralRegion) -> str:
    """SVG text for ``r``: viewport from the extents plus a 5% margin.

    The y axis is flipped so that the imaginary axis points up.
    """
    x0, y0, x1, y1 = _extent(r)
    size = max(x1 - x0, y1 - y0) or Fraction(1)
    margin = size / 20
    vx, vy = x0 - margin, -(y1 + margin)
    w, h = (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin
    if w == 2 * margin:
        w = size + 2 * margin
        vx -= size / 2
    if h == 2 * margin:
        h = size + 2 * margin
        vy -= size / 2
    stroke = size / 200
    dot = size / 100
    height = max(1, round(CANVAS * float(h / w)))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{height}" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(w)} {_num(h)}">',
    ]
    for p in r.primitives:
        if isinstance(p, (ClosedDisk, Circle)):
            lines.append(
                f'  <circle cx="{_num(p.center.re)}" cy="{_num(-p.center.im)}" r="{_num(p.radius)}" '
                f'stroke-width="{_num(stroke)}" {STYLE[p.kind]}/>'
            )
        elif isinstance(p, Segment):
            lines.append(
                f'  <line x1="{_num(p.a.re)}" y1="{_num(-p.a.im)}" x2="{_num(p.b.re)}" y2="{_num(-p.b.im)}" '
                f'stroke-width="{_num(stroke)}" {STYLE["segment"]}/>'
            )
        else:
            lines.append(
                f'  <circle cx="{_num(p.center.re)}" cy="{_num(-p.center.im)}" r="{_num(dot)}" {STYLE["point"]}/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
