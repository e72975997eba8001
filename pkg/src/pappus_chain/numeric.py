"""Exact rational scalars.

:class:`fractions.Fraction` already keeps numerator and denominator in
canonical form (positive denominator, coprime parts) after every
operation, so it is used directly as the scalar type of the package.
This module adds the construction, conversion and text helpers the rest
of the code relies on.
"""

from __future__ import annotations

import math
import operator
import re
from fractions import Fraction
from typing import Union

from .errors import ConstructionError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*")


def make_rational(num: int, den: int = 1) -> Fraction:
    """Return num/den in canonical form.

    Raises ConstructionError for a zero denominator.
    """
    if den == 0:
        raise ConstructionError(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def rational_arith(lhs: Fraction, rhs: Fraction, op: str) -> Fraction:
    """Apply one of ``add``, ``sub``, ``mul``, ``div`` exactly.

    Division by zero raises :class:`ZeroDivisionError`, which is an
    ``ArithmeticError`` and therefore distinct from ConstructionError.
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(Fraction(lhs), Fraction(rhs))


def to_float(x: Fraction) -> float:
    """Nearest double; magnitudes beyond the double range saturate to +/-inf."""
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


def format_rational(x: Fraction) -> str:
    """Canonical ``p/q`` text, or ``p`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p`` (integers only, optional sign)."""
    m = _RATIONAL_RE.fullmatch(text)
    if m is None:
        raise ConstructionError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return make_rational(num, den)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``p/q`` string; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ConstructionError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ConstructionError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None
