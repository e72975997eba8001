"""SVG figures of the arbelos, its chains and the theorem constructions.

Geometry stays exact until emission. The document uses model coordinates
directly (y negated, since SVG grows downward) with a viewBox fitted to
the exact bounding box of everything drawn plus a 5% margin per side.

Element budget, not counting ``<text>`` labels:

* 3 ``circle.base`` elements and one ``circle.chain`` per index in range;
* each overlay adds 2 ``line`` elements (the construction line and the
  vertical through D_n) and 2 ``circle.mark`` elements (H and D_n).

With labels on, A, B, C get one ``<text>`` each and every overlay adds
two more (H and D_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union
from xml.sax.saxutils import escape, quoteattr

from .chain import (
    ChainSpec,
    Circle,
    LineCoeffs,
    Point,
    chain_circle,
    configure_chain,
    eq3_coeffs,
    eq3_height,
    theorem1_point,
)
from .errors import PappusError, RenderError
from .numeric import to_float


@dataclass(frozen=True)
class Theorem1Overlay:
    i: int
    n: int


@dataclass(frozen=True)
class Theorem2Overlay:
    i: int
    j: int
    n: int


Overlay = Union[Theorem1Overlay, Theorem2Overlay]


@dataclass(frozen=True)
class Style:
    stroke_width: float = 1.5
    labels: bool = True
    width: int = 800

    def __post_init__(self):
        if not self.stroke_width > 0:
            raise ValueError("stroke width must be positive")
        if int(self.width) != self.width or self.width <= 0:
            raise ValueError("canvas width must be a positive integer")


@dataclass(frozen=True)
class FigureSpec:
    chain: ChainSpec
    index_range: tuple[int, int]
    overlays: tuple[Overlay, ...] = ()
    style: Style = field(default_factory=Style)

    def __post_init__(self):
        lo, hi = self.index_range
        if lo > hi:
            raise ValueError(f"empty index range {lo}..{hi}")
        object.__setattr__(self, "overlays", tuple(self.overlays))

    @property
    def indices(self) -> range:
        lo, hi = self.index_range
        return range(lo, hi + 1)


def _fmt(x: Fraction) -> str:
    v = to_float(x)
    if not math.isfinite(v):
        raise RenderError(f"coordinate {x} is out of the double range")
    # shortest repr that round-trips; avoid "-0.0"
    return repr(v + 0.0)


@dataclass
class _Segment:
    p: Point
    q: Point
    css: str


@dataclass
class _Mark:
    at: Point
    label: str


def _span(points: list[Point], key) -> tuple[Point, Point]:
    ordered = sorted(points, key=key)
    return ordered[0], ordered[-1]


def _overlay_parts(spec: ChainSpec, ov: Overlay) -> tuple[list[_Segment], list[_Mark]]:
    try:
        d_n = chain_circle(spec, ov.n).center
        foot = Point(d_n.x, Fraction(0))
        if isinstance(ov, Theorem1Overlay):
            h = theorem1_point(spec, ov.i, ov.n)
            d_i = chain_circle(spec, ov.i).center
            p1 = spec.anchor_p1
            on_line = [p1, d_i, h]
            label = f"H{ov.i}({ov.n})"
            css = "theorem1"
        else:
            line: LineCoeffs = eq3_coeffs(spec, ov.i, ov.j)
            h = Point(d_n.x, eq3_height(spec, ov.i, ov.j, ov.n))
            on_line = [chain_circle(spec, k).center for k in (ov.i, ov.j)] + [h]
            if not all(line.contains(p) for p in on_line):
                raise RenderError(f"overlay {ov} is inconsistent")
            label = f"H{ov.i},{ov.j}({ov.n})"
            css = "theorem2"
    except PappusError as exc:
        if isinstance(exc, RenderError):
            raise
        raise RenderError(f"overlay {ov} cannot be drawn: {exc}") from exc
    key = (lambda p: (p.y, p.x)) if all(p.x == on_line[0].x for p in on_line) else (lambda p: (p.x, p.y))
    lo, hi = _span(on_line, key)
    vlo, vhi = _span([foot, d_n, h], lambda p: p.y)
    segments = [_Segment(lo, hi, css), _Segment(vlo, vhi, "vertical")]
    marks = [_Mark(h, label), _Mark(d_n, f"D{ov.n}")]
    return segments, marks


def _bbox(circles: list[Circle], points: list[Point]):
    xs_lo = [c.center.x - c.geometric_radius for c in circles] + [p.x for p in points]
    xs_hi = [c.center.x + c.geometric_radius for c in circles] + [p.x for p in points]
    ys_lo = [c.center.y - c.geometric_radius for c in circles] + [p.y for p in points]
    ys_hi = [c.center.y + c.geometric_radius for c in circles] + [p.y for p in points]
    return min(xs_lo), min(ys_lo), max(xs_hi), max(ys_hi)


def render_figure(fig: FigureSpec) -> str:
    """Return a standalone SVG 1.1 document for ``fig``."""
    spec = fig.chain
    bases = spec.base_circles()
    members = [(n, chain_circle(spec, n).circle) for n in fig.indices]
    segments: list[_Segment] = []
    marks: list[_Mark] = []
    for ov in fig.overlays:
        seg, mk = _overlay_parts(spec, ov)
        segments += seg
        marks += mk

    anchors = [("A", spec.point_a), ("B", spec.point_b), ("C", spec.point_c)]
    pts = [s.p for s in segments] + [s.q for s in segments] + [m.at for m in marks]
    x0, y0, x1, y1 = _bbox(list(bases.values()) + [c for _, c in members], pts)
    pad_x = (x1 - x0) / 20
    pad_y = (y1 - y0) / 20
    x0, x1, y0, y1 = x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y
    vb_w, vb_h = x1 - x0, y1 - y0

    style = fig.style
    unit = vb_w / style.width  # model units per pixel
    sw = unit * Fraction(style.stroke_width)
    mark_r = 3 * sw
    font = 14 * unit
    height = Fraction(style.width) * vb_h / vb_w

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{style.width}" height="{_fmt(height)}" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(vb_w)} {_fmt(vb_h)}">',
        f"<title>{escape(spec.variant.value)} chain, a={spec.a}, b={spec.b}</title>",
        f'<g fill="none" stroke="black" stroke-width="{_fmt(sw)}">',
    ]
    for name, c in bases.items():
        out.append(
            f'<circle class="base" id={quoteattr(name)} cx="{_fmt(c.center.x)}" '
            f'cy="{_fmt(-c.center.y)}" r="{_fmt(c.geometric_radius)}"/>'
        )
    for n, c in members:
        out.append(
            f'<circle class="chain" data-n="{n}" cx="{_fmt(c.center.x)}" '
            f'cy="{_fmt(-c.center.y)}" r="{_fmt(c.geometric_radius)}" stroke="#1f4e9c"/>'
        )
    for s in segments:
        color = "#b22222" if s.css != "vertical" else "#555555"
        out.append(
            f'<line class={quoteattr(s.css)} x1="{_fmt(s.p.x)}" y1="{_fmt(-s.p.y)}" '
            f'x2="{_fmt(s.q.x)}" y2="{_fmt(-s.q.y)}" stroke="{color}"/>'
        )
    out.append("</g>")
    out.append('<g fill="black" stroke="none">')
    for m in marks:
        out.append(
            f'<circle class="mark" data-label={quoteattr(m.label)} cx="{_fmt(m.at.x)}" '
            f'cy="{_fmt(-m.at.y)}" r="{_fmt(mark_r)}"/>'
        )
    out.append("</g>")
    if style.labels:
        out.append(f'<g font-family="serif" font-size="{_fmt(font)}" fill="black">')
        for label, p in anchors:
            out.append(f'<text x="{_fmt(p.x)}" y="{_fmt(-p.y + font)}">{escape(label)}</text>')
        for m in marks:
            out.append(
                f'<text x="{_fmt(m.at.x + mark_r)}" y="{_fmt(-m.at.y - mark_r)}">{escape(m.label)}</text>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def element_budget(fig: FigureSpec) -> int:
    """Number of circle and line elements ``render_figure`` emits for ``fig``."""
    return 3 + len(fig.indices) + 4 * len(fig.overlays)


PRESETS = {
    "fig1": dict(a=1, b=1, variant="alpha", index_range=(0, 5), overlays=()),
    "fig2": dict(a="3/2", b=1, variant="alpha", index_range=(0, 4), overlays=(Theorem1Overlay(1, 3),)),
    "fig3": dict(a="3/2", b=1, variant="beta", index_range=(0, 3), overlays=(Theorem2Overlay(0, 1, 2),)),
}


def preset_figure(name: str, style: Style | None = None) -> FigureSpec:
    """Figure layouts matching the three published illustrations."""
    try:
        p = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown figure preset {name!r}") from None
    return FigureSpec(
        configure_chain(p["a"], p["b"], p["variant"]),
        p["index_range"],
        p["overlays"],
        style or Style(),
    )
