"""Exact rational polynomials and polynomial linear algebra."""

from .matrix import RatMatrix, bareiss_det, cofactor_det, leibniz_det, poly_det, rational_det
from .multipoly import (
    MultiPoly,
    Rational,
    as_rational,
    eval_poly,
    partial_derivative,
    poly_arith,
    polys_nvars,
)
from .parse import PolyParseError, parse_poly
from .unipoly import (
    UniPoly,
    crt_pair,
    invmod,
    is_squarefree,
    lagrange_interpolate,
    squarefree_part,
    uni_gcd,
    uni_xgcd,
)

__all__ = [
    "MultiPoly", "PolyParseError", "RatMatrix", "Rational", "UniPoly",
    "as_rational", "bareiss_det", "cofactor_det", "crt_pair", "eval_poly", "invmod",
    "is_squarefree", "lagrange_interpolate", "leibniz_det", "parse_poly",
    "partial_derivative", "poly_arith", "poly_det", "polys_nvars", "rational_det",
    "squarefree_part", "uni_gcd", "uni_xgcd",
]
