"""Exact arithmetic: rationals, number fields, polynomials, series, roots."""

from fractions import Fraction as Rational

from .algebraic import exact_roots, integer_primitive, quadratic_roots, small_factors
from .fields import (
    NFElem,
    NumberField,
    cyclotomic_coeffs,
    cyclotomic_field,
    field_of,
    is_zero,
    nf_make,
    quadratic_field,
    root_of_unity,
    scalar_json,
    to_complex,
)
from .mpoly import MPoly, RFunc
from .roots import RootFindingError, aberth, newton_polish, roots_complex
from .series import OrderExceedsTruncation, TruncSeries, series_leading
from .upoly import (
    UPoly,
    det,
    interpolate,
    poly_discriminant,
    poly_gcd,
    poly_resultant,
    squarefree_decomposition,
    squarefree_part,
    sylvester_resultant,
)

__all__ = [
    "Rational",
    "NFElem",
    "NumberField",
    "nf_make",
    "quadratic_field",
    "cyclotomic_field",
    "cyclotomic_coeffs",
    "root_of_unity",
    "field_of",
    "is_zero",
    "to_complex",
    "scalar_json",
    "UPoly",
    "poly_gcd",
    "poly_resultant",
    "poly_discriminant",
    "sylvester_resultant",
    "squarefree_decomposition",
    "squarefree_part",
    "interpolate",
    "det",
    "MPoly",
    "RFunc",
    "TruncSeries",
    "series_leading",
    "OrderExceedsTruncation",
    "roots_complex",
    "aberth",
    "newton_polish",
    "RootFindingError",
    "exact_roots",
    "small_factors",
    "quadratic_roots",
    "integer_primitive",
]
