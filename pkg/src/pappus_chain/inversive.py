"""Circle inversion and the ladder construction of chain members.

Inverting about the anchor point P1 sends the two circles every member
touches (both pass through P1) to parallel vertical lines. Between two
parallel lines the chain becomes a stack of congruent circles, which is
trivial to write down; inverting that stack back yields the members
without using the closed forms at all.

Inside this module circles carry their geometric radius only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .chain import ChainCircle, ChainSpec, Circle, LineCoeffs, Point
from .errors import DegenerateGeometryError, DomainError, UndefinedImageError
from .numeric import RationalLike, as_rational, format_rational, rational_sqrt


@dataclass(frozen=True)
class Line:
    coeffs: LineCoeffs

    def to_dict(self):
        return {"line": self.coeffs.to_dict()}


GeneralizedCircle = Union[Circle, Line]


@dataclass(frozen=True)
class InversionMap:
    center: Point
    power: Fraction

    def __post_init__(self):
        p = as_rational(self.power)
        if p <= 0:
            raise DomainError(f"inversion power must be positive, got {p}")
        object.__setattr__(self, "power", p)

    def to_dict(self):
        return {"center": self.center.to_dict(), "power": format_rational(self.power)}


def orthogonal_power(center: Point, target: Circle) -> Fraction:
    """Squared radius of the circle about ``center`` orthogonal to ``target``."""
    k2 = center.dist2(target.center) - target.radius * target.radius
    if k2 <= 0:
        raise DomainError(f"{center} is not strictly outside {target}")
    return k2


def _invert_point(m: InversionMap, p: Point) -> Point:
    v = p - m.center
    d2 = v.norm2()
    if d2 == 0:
        raise UndefinedImageError("the inversion center has no image")
    return m.center + v.scaled(m.power / d2)


def _invert_circle(m: InversionMap, c: Circle) -> GeneralizedCircle:
    v = c.center - m.center
    d2 = v.norm2()
    rho = c.geometric_radius
    gap = d2 - rho * rho
    if gap == 0:
        # through the center: image is the line perpendicular to v through
        # the image of the diametrically opposite point
        far = _invert_point(m, m.center + v.scaled(Fraction(2)))
        return Line(LineCoeffs(v.x, v.y, -(v.x * far.x + v.y * far.y)))
    s = m.power / gap
    return Circle(m.center + v.scaled(s), abs(s) * rho)


def _invert_line(m: InversionMap, line: Line) -> GeneralizedCircle:
    co = line.coeffs
    val = co.residue(m.center)
    if val == 0:
        return line
    nn = co.coef_a * co.coef_a + co.coef_b * co.coef_b
    norm = rational_sqrt(nn)
    if norm is None:
        raise DomainError(f"image of {co} has an irrational radius")
    # image of the foot of the perpendicular is the point of the image circle
    # farthest from the center
    k = m.power / (2 * val)
    center = Point(m.center.x - k * co.coef_a, m.center.y - k * co.coef_b)
    return Circle(center, abs(k) * norm)


def invert(m: InversionMap, obj):
    """Image of a Point, Circle or Line under the inversion ``m``."""
    if isinstance(obj, Point):
        return _invert_point(m, obj)
    if isinstance(obj, Circle):
        return _invert_circle(m, obj)
    if isinstance(obj, Line):
        return _invert_line(m, obj)
    raise TypeError(f"cannot invert {type(obj).__name__}")


def generalized_tangent(g1: GeneralizedCircle, g2: GeneralizedCircle) -> bool:
    """Exact tangency of two generalized circles; distinct parallel lines touch at infinity."""
    if isinstance(g1, Circle) and isinstance(g2, Circle):
        d2 = g1.center.dist2(g2.center)
        r1, r2 = g1.geometric_radius, g2.geometric_radius
        if d2 == 0 and r1 == r2:
            raise DegenerateGeometryError("tangency of a circle with itself is undefined")
        return d2 == (r1 + r2) ** 2 or (d2 > 0 and d2 == (r1 - r2) ** 2)
    if isinstance(g1, Line) and isinstance(g2, Line):
        a1, a2 = g1.coeffs, g2.coeffs
        if a1 == a2:
            raise DegenerateGeometryError("tangency of a line with itself is undefined")
        return a1.coef_a * a2.coef_b == a1.coef_b * a2.coef_a
    line, circ = (g1, g2) if isinstance(g1, Line) else (g2, g1)
    co = line.coeffs
    val = co.residue(circ.center)
    return val * val == circ.radius ** 2 * (co.coef_a ** 2 + co.coef_b ** 2)


@dataclass(frozen=True)
class LadderTrace:
    """Intermediate objects of one ladder construction."""

    inversion: InversionMap
    image_lines: tuple[Line, Line]
    ladder_circle: Circle | None
    result: ChainCircle

    def to_dict(self):
        return {
            "inversion": self.inversion.to_dict(),
            "image_lines": [ln.coeffs.to_dict() for ln in self.image_lines],
            "ladder_circle": None if self.ladder_circle is None else self.ladder_circle.to_dict(),
            "circle": {"n": self.result.index, **self.result.circle.to_dict()},
        }


def ladder_trace(spec: ChainSpec, n: int, power: RationalLike = 1) -> LadderTrace:
    m = InversionMap(spec.anchor_p1, as_rational(power))
    images = []
    for base in spec.tangent_pair:
        img = invert(m, base)
        if not isinstance(img, Line) or not img.coeffs.is_vertical:
            raise DegenerateGeometryError(f"{base} did not invert to a vertical line")
        images.append(img)
    u2, u3 = (-ln.coeffs.coef_c / ln.coeffs.coef_a for ln in images)
    if n == 0:
        seed = spec.base_circles()[spec.seed_name]
        if spec.seed_name == "gamma":
            # the enclosing seed carries a negative radius by convention
            seed = Circle(seed.center, -seed.radius)
        return LadderTrace(m, tuple(images), None, ChainCircle(0, seed))
    width = abs(u2 - u3)
    rung = Circle(Point((u2 + u3) / 2, n * width), width / 2)
    back = invert(m, rung)
    if not isinstance(back, Circle):
        raise DegenerateGeometryError(f"ladder circle {n} passes through P1")
    return LadderTrace(m, tuple(images), rung, ChainCircle(n, back))


def ladder_chain_circle(spec: ChainSpec, n: int, power: RationalLike = 1) -> ChainCircle:
    """Member n rebuilt by inversion; with the closed forms, this is the oracle pair."""
    return ladder_trace(spec, n, power).result
