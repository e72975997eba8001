"""Arbelos configuration, Pappus chain circles and the identity checkers.

Coordinates put C at the origin with A = (-2b, 0) and B = (2a, 0), so the
three base circles are alpha on BC, beta on CA and gamma on AB. A chain
is the two-sided family of circles touching two of the base circles and
containing the third as its member of index 0.

Every quantity is an exact :class:`~fractions.Fraction`; identities are
checked by equality, never by tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .errors import (
    DegenerateGeometryError,
    DomainError,
    InternalConsistencyError,
    NoIntersectionError,
    ParameterError,
)
from .numeric import RationalLike, as_rational, format_rational

ZERO = Fraction(0)


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, k: Fraction) -> "Point":
        return Point(k * self.x, k * self.y)

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def dist2(self, other: "Point") -> Fraction:
        return (self - other).norm2()

    def to_dict(self) -> dict[str, str]:
        return {"x": format_rational(self.x), "y": format_rational(self.y)}


@dataclass(frozen=True)
class Circle:
    """Circle with a signed radius; ``abs(radius)`` is the geometric radius.

    A negative radius marks the enclosing circle gamma when it appears as
    member 0 of the gamma chain.
    """

    center: Point
    radius: Fraction

    def __post_init__(self):
        r = as_rational(self.radius)
        if r == 0:
            raise DomainError("circle radius must be nonzero")
        object.__setattr__(self, "radius", r)

    @property
    def geometric_radius(self) -> Fraction:
        return abs(self.radius)

    def contains_on_boundary(self, p: Point) -> bool:
        return self.center.dist2(p) == self.radius * self.radius

    def same_set(self, other: "Circle") -> bool:
        """Equality as point sets, ignoring the orientation sign."""
        return self.center == other.center and self.geometric_radius == other.geometric_radius

    def to_dict(self) -> dict[str, Any]:
        return {"center": self.center.to_dict(), "r": format_rational(self.radius)}


def _normalize_line(a: Fraction, b: Fraction, c: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    if a == 0 and b == 0:
        raise DegenerateGeometryError("line coefficients (A, B) are both zero")
    den = math.lcm(a.denominator, b.denominator, c.denominator)
    ints = [int(v * den) for v in (a, b, c)]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    lead = ints[0] if ints[0] != 0 else ints[1]
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(Fraction(v) for v in ints)


@dataclass(frozen=True)
class LineCoeffs:
    """The line ``coef_a*x + coef_b*y + coef_c = 0``.

    Instances are always normalized: coprime integer coefficients with the
    first nonzero of (coef_a, coef_b) positive, so equal lines compare equal.
    """

    coef_a: Fraction
    coef_b: Fraction
    coef_c: Fraction

    def __post_init__(self):
        a, b, c = _normalize_line(
            as_rational(self.coef_a), as_rational(self.coef_b), as_rational(self.coef_c)
        )
        object.__setattr__(self, "coef_a", a)
        object.__setattr__(self, "coef_b", b)
        object.__setattr__(self, "coef_c", c)

    @classmethod
    def through(cls, p: Point, q: Point) -> "LineCoeffs":
        if p == q:
            raise DegenerateGeometryError(f"no unique line through coincident points {p}")
        return cls(q.y - p.y, p.x - q.x, q.x * p.y - p.x * q.y)

    def residue(self, p: Point) -> Fraction:
        return self.coef_a * p.x + self.coef_b * p.y + self.coef_c

    def contains(self, p: Point) -> bool:
        return self.residue(p) == 0

    @property
    def is_vertical(self) -> bool:
        return self.coef_b == 0

    def y_at(self, x: Fraction) -> Fraction:
        if self.coef_b == 0:
            raise NoIntersectionError(f"vertical line {self} has no single point at x = {x}")
        return -(self.coef_a * x + self.coef_c) / self.coef_b

    def to_dict(self) -> dict[str, str]:
        return {
            "coefA": format_rational(self.coef_a),
            "coefB": format_rational(self.coef_b),
            "coefC": format_rational(self.coef_c),
        }

    def __str__(self):
        a, b, c = (int(v) for v in (self.coef_a, self.coef_b, self.coef_c))
        return f"{a}x {'+' if b >= 0 else '-'} {abs(b)}y {'+' if c >= 0 else '-'} {abs(c)} = 0"


class ChainVariant(enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"

    @classmethod
    def parse(cls, text: str) -> "ChainVariant":
        try:
            return cls(text.lower())
        except ValueError:
            raise ParameterError(f"unknown chain variant {text!r}") from None


@dataclass(frozen=True)
class ChainSpec:
    """Arbelos with radii a (circle on BC) and b (circle on CA), plus a chain choice."""

    a: Fraction
    b: Fraction
    variant: ChainVariant

    def __post_init__(self):
        a, b = as_rational(self.a), as_rational(self.b)
        if a <= 0 or b <= 0:
            raise DomainError(f"arbelos radii must be positive, got a={a}, b={b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        # specs key every lru_cache in the sweep; hash and label once
        object.__setattr__(self, "_hash", hash((a, b, self.variant)))
        object.__setattr__(
            self,
            "_label",
            {"variant": self.variant.value, "a": format_rational(a), "b": format_rational(b)},
        )

    def __hash__(self):
        return self._hash

    @property
    def c(self) -> Fraction:
        return self.a + self.b

    @property
    def point_a(self) -> Point:
        return Point(-2 * self.b, ZERO)

    @property
    def point_b(self) -> Point:
        return Point(2 * self.a, ZERO)

    @property
    def point_c(self) -> Point:
        return Point(ZERO, ZERO)

    @property
    def base_alpha(self) -> Circle:
        return Circle(Point(self.a, ZERO), self.a)

    @property
    def base_beta(self) -> Circle:
        return Circle(Point(-self.b, ZERO), self.b)

    @property
    def base_gamma(self) -> Circle:
        return Circle(Point(self.a - self.b, ZERO), self.c)

    def base_circles(self) -> dict[str, Circle]:
        return {"alpha": self.base_alpha, "beta": self.base_beta, "gamma": self.base_gamma}

    @property
    def anchor_p1(self) -> Point:
        """Common point of the two circles every chain member touches."""
        return {
            ChainVariant.ALPHA: self.point_a,
            ChainVariant.BETA: self.point_b,
            ChainVariant.GAMMA: self.point_c,
        }[self.variant]

    @property
    def tangent_pair_names(self) -> tuple[str, str]:
        return {
            ChainVariant.ALPHA: ("beta", "gamma"),
            ChainVariant.BETA: ("gamma", "alpha"),
            ChainVariant.GAMMA: ("alpha", "beta"),
        }[self.variant]

    @property
    def tangent_pair(self) -> tuple[Circle, Circle]:
        bases = self.base_circles()
        first, second = self.tangent_pair_names
        return bases[first], bases[second]

    @property
    def seed_name(self) -> str:
        return self.variant.value

    @property
    def seed(self) -> Circle:
        """Member 0 of the chain, with the signed radius of the closed form."""
        return chain_circle(self, 0).circle

    def describe(self) -> dict[str, str]:
        return dict(self._label)


def configure_chain(a: RationalLike, b: RationalLike, variant: ChainVariant | str) -> ChainSpec:
    if isinstance(variant, str):
        variant = ChainVariant.parse(variant)
    return ChainSpec(as_rational(a), as_rational(b), variant)


@dataclass(frozen=True)
class ChainCircle:
    index: int
    circle: Circle

    @property
    def center(self) -> Point:
        return self.circle.center

    @property
    def radius(self) -> Fraction:
        return self.circle.radius


@lru_cache(maxsize=65536)
def chain_circle(spec: ChainSpec, n: int) -> ChainCircle:
    """Member n of the chain from the closed forms; the center height is 2*n*r."""
    a, b, c = spec.a, spec.b, spec.c
    n2 = n * n
    if spec.variant is ChainVariant.ALPHA:
        den = n2 * a * a + b * c
        x = -2 * b + b * c * (b + c) / den
    elif spec.variant is ChainVariant.BETA:
        den = n2 * b * b + c * a
        x = 2 * a - c * a * (c + a) / den
    else:
        den = n2 * c * c - a * b
        x = a * b * (b - a) / den
    r = a * b * c / den
    return ChainCircle(n, Circle(Point(x, 2 * n * r), r))


def _center(spec: ChainSpec, n: int) -> Point:
    return chain_circle(spec, n).center


def line_through_centers(spec: ChainSpec, i: int, j: int) -> LineCoeffs:
    """Line through the centers of members i and j, built from the two points."""
    if i == j:
        raise ParameterError("line through centers needs i != j")
    return LineCoeffs.through(_center(spec, i), _center(spec, j))


def eq3_raw(spec: ChainSpec, i: int, j: int) -> tuple[Fraction, Fraction, Fraction]:
    """Unnormalized closed-form coefficients (A, B, C) of the line l_ij."""
    if i == j:
        raise ParameterError("closed-form line needs i != j")
    a, b, c = spec.a, spec.b, spec.c
    ij, s = i * j, i + j
    if spec.variant is ChainVariant.ALPHA:
        return (
            2 * (b * c - a * a * ij),
            a * (b + c) * s,
            -2 * b * (2 * a * a * ij - c * (b - c)),
        )
    if spec.variant is ChainVariant.BETA:
        return (
            2 * (c * a - b * b * ij),
            -b * (c + a) * s,
            2 * a * (2 * b * b * ij + c * (c - a)),
        )
    return (
        2 * (a * b + c * c * ij),
        c * (a - b) * s,
        -2 * a * b * (a - b),
    )


@lru_cache(maxsize=65536)
def eq3_coeffs(spec: ChainSpec, i: int, j: int) -> LineCoeffs:
    return LineCoeffs(*eq3_raw(spec, i, j))


def eq3_residue(spec: ChainSpec, i: int, j: int, p: Point) -> Fraction:
    a, b, c = eq3_raw(spec, i, j)
    return a * p.x + b * p.y + c


def theorem1_point(spec: ChainSpec, i: int, n: int) -> Point:
    """Meet of line P1-D_i with the vertical through D_n.

    When that line is itself the vertical through D_n (gamma chain with
    a = b, where all centers sit on the y-axis), the point is taken as
    the center of the image of member i under the inversion about P1
    that fixes member n, which is the same point whenever the meet is
    unique.
    """
    p1 = spec.anchor_p1
    d_i = _center(spec, i)
    d_n = _center(spec, n)
    if d_i == p1:
        raise DegenerateGeometryError(
            f"center of member {i} coincides with P1 for {spec.describe()}"
        )
    line = LineCoeffs.through(p1, d_i)
    if not line.is_vertical:
        return Point(d_n.x, line.y_at(d_n.x))
    if d_i.x != d_n.x:
        raise NoIntersectionError(f"line P1-D_{i} is vertical and misses x = x_{n}")
    target = chain_circle(spec, n).circle
    power = p1.dist2(target.center) - target.radius * target.radius
    if power == 0:
        raise DegenerateGeometryError(f"P1 lies on member {n}")
    circ_i = chain_circle(spec, i).circle
    s = power / (p1.dist2(circ_i.center) - circ_i.radius * circ_i.radius)
    return p1 + (d_i - p1).scaled(s)


@dataclass(frozen=True)
class CheckResult:
    identity_name: str
    parameters: dict[str, Any]
    lhs: Fraction
    rhs: Fraction
    details: tuple["CheckResult", ...] = field(default=(), compare=False)

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs and all(d.holds for d in self.details)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "identity": self.identity_name,
            "parameters": dict(self.parameters),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "holds": self.holds,
        }
        if self.details:
            out["details"] = [d.to_dict() for d in self.details]
        return out


def _params(spec: ChainSpec, **indices: int) -> dict[str, Any]:
    return {**spec.describe(), **indices}


def pappus_check(spec: ChainSpec, n: int, circle: Circle | None = None) -> CheckResult:
    """Height of the center equals 2*n*r (signed)."""
    circle = circle or chain_circle(spec, n).circle
    return CheckResult("pappus", _params(spec, n=n), circle.center.y, 2 * n * circle.radius)


def theorem1_check(spec: ChainSpec, i: int, n: int) -> CheckResult:
    h = theorem1_point(spec, i, n)
    member = chain_circle(spec, n).circle
    lhs = abs(member.center.y - h.y)
    rhs = 2 * abs(n - i) * abs(member.radius)
    return CheckResult("theorem1", _params(spec, i=i, n=n), lhs, rhs)


def f_factor(i: int, j: int, n: int) -> Fraction:
    """2(n-i)(n-j)/(i+j); only defined for i + j != 0."""
    if i + j == 0:
        raise ParameterError("f_factor requires i + j != 0")
    return Fraction(2 * (n - i) * (n - j), i + j)


@lru_cache(maxsize=65536)
def eq3_height(spec: ChainSpec, i: int, j: int, n: int) -> Fraction:
    """Height of the meet of l_ij with the vertical through D_n."""
    if i == j:
        raise ParameterError("theorem 2 requires i != j")
    line = eq3_coeffs(spec, i, j)
    x_n = _center(spec, n).x
    if line.is_vertical:
        if line.contains(Point(x_n, ZERO)):
            raise DegenerateGeometryError(
                f"l_{i},{j} coincides with the vertical through D_{n} for {spec.describe()}"
            )
        if i + j != 0:
            raise InternalConsistencyError(f"l_{i},{j} is vertical although i + j != 0")
        raise NoIntersectionError(f"l_{i},{j} is parallel to x = x_{n}")
    return line.y_at(x_n)


def signed_offset(spec: ChainSpec, i: int, j: int, n: int) -> Fraction:
    """d_ij(n) = h_ij(n) - y_n."""
    return eq3_height(spec, i, j, n) - _center(spec, n).y


def theorem2_check(spec: ChainSpec, i: int, j: int, n: int) -> CheckResult:
    if i == j:
        raise ParameterError("theorem 2 requires i != j")
    if i + j == 0:
        raise ParameterError("theorem 2 requires i + j != 0")
    h = eq3_height(spec, i, j, n)
    member = chain_circle(spec, n).circle
    d = h - member.center.y
    params = _params(spec, i=i, j=j, n=n)
    proof = CheckResult("theorem2_proof", params, h * (i + j), 2 * (n * n + i * j) * member.radius)
    return CheckResult("theorem2", params, d, f_factor(i, j, n) * member.radius, (proof,))


def corollaries_check(spec: ChainSpec, i: int, j: int, n: int) -> list[CheckResult]:
    results: list[CheckResult] = []
    params = _params(spec, i=i, j=j, n=n)
    r_n = chain_circle(spec, n).radius
    if i == 0 and j in (1, -1, 2, -2):
        d = signed_offset(spec, i, j, n)
        if abs(j) == 1:
            rhs = j * 2 * n * (n - j) * r_n
            name = "corollary1_i"
        else:
            rhs = (j // 2) * n * (n - j) * r_n
            name = "corollary1_ii"
        results.append(CheckResult(name, params, d, rhs))
    if i != j and i != -j:
        if chain_circle(spec, -n).radius != r_n:
            raise InternalConsistencyError(f"r_{-n} != r_{n} for {spec.describe()}")
        lhs = signed_offset(spec, i, j, n) - signed_offset(spec, i, j, -n)
        results.append(CheckResult("corollary2", params, lhs, -4 * n * r_n))
    return results


class Tangency(enum.Enum):
    EXTERNAL = "external"
    INTERNAL = "internal"
    NONE = "none"


def tangency_classify(c1: Circle, c2: Circle) -> Tangency:
    """Exact tangency kind judged on geometric radii and squared center distance."""
    rho1, rho2 = c1.geometric_radius, c2.geometric_radius
    d2 = c1.center.dist2(c2.center)
    if d2 == 0 and rho1 == rho2:
        raise DegenerateGeometryError("tangency of a circle with itself is undefined")
    if d2 == (rho1 + rho2) ** 2:
        return Tangency.EXTERNAL
    if d2 == (rho1 - rho2) ** 2 and d2 > 0:
        return Tangency.INTERNAL
    return Tangency.NONE


def expected_base_tangency(spec: ChainSpec, n: int, name: str) -> Tangency:
    """Kind of contact between member n and a base circle it must touch.

    Members are inside gamma and outside alpha and beta, except member 0
    of the gamma chain, which is gamma itself and encloses both.
    """
    if spec.variant is ChainVariant.GAMMA and n == 0:
        return Tangency.INTERNAL
    return Tangency.INTERNAL if name == "gamma" else Tangency.EXTERNAL


def expected_neighbor_tangency(spec: ChainSpec, n: int) -> Tangency:
    """Kind of contact between members n and n + 1."""
    if spec.variant is ChainVariant.GAMMA and n in (-1, 0):
        return Tangency.INTERNAL
    return Tangency.EXTERNAL
