"""Exact construction and verification of Pappus chains in the arbelos."""

from .chain import (
    ChainCircle,
    ChainSpec,
    ChainVariant,
    CheckResult,
    Circle,
    LineCoeffs,
    Point,
    Tangency,
    chain_circle,
    configure_chain,
    corollaries_check,
    eq3_coeffs,
    f_factor,
    line_through_centers,
    tangency_classify,
    theorem1_check,
    theorem1_point,
    theorem2_check,
)
from .inversive import InversionMap, Line, invert, ladder_chain_circle, orthogonal_power
from .numeric import format_rational, make_rational, parse_rational, rational_arith, to_float

__version__ = "0.1.0"
