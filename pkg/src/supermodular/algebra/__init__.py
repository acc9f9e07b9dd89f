"""Exact arithmetic: real algebraic numbers and cyclotomic field elements."""
from .cyclotomic import CyclotomicElement, cyc, sqrt_of_rational_in_cyclotomic
from .real import AlgebraicReal, arith, make_algebraic, poly_eval, real_roots, refine, sign, to_algebraic

__all__ = [
    "AlgebraicReal",
    "CyclotomicElement",
    "arith",
    "cyc",
    "make_algebraic",
    "poly_eval",
    "real_roots",
    "refine",
    "sign",
    "sqrt_of_rational_in_cyclotomic",
    "to_algebraic",
]
