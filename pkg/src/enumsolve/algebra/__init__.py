"""Exact algebra kernel: fields, orders, polynomials, matrices, parsing."""

from .fields import QQ, FieldDesc, Fp, mpq
from .matrix import Matrix, char_poly, det, det_cofactor, exterior_power
from .orders import MonomialOrder
from .parsing import IdealFile, ParseError, format_ideal_file, parse_ideal_text, parse_poly, read_ideal_file, render_poly
from .poly import NEG_INF, MultiPoly, RingContext, RingMismatch
from .unipoly import UniPoly, uni_gcd

__all__ = [
    "QQ", "FieldDesc", "Fp", "mpq", "Matrix", "char_poly", "det", "det_cofactor", "exterior_power",
    "MonomialOrder", "IdealFile", "ParseError", "format_ideal_file", "parse_ideal_text", "parse_poly",
    "read_ideal_file", "render_poly", "NEG_INF", "MultiPoly", "RingContext", "RingMismatch", "UniPoly", "uni_gcd",
]


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """``op`` in {add, sub, mul}."""
    if a.ring != b.ring:
        raise RingMismatch("operands live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")
