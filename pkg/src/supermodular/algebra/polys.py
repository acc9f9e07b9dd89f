"""Integer polynomial helpers used by the real algebraic number layer.

Polynomials are tuples of Python ints, highest degree first.  Heavy lifting
(resultants, factorization, Sturm counting) is delegated to sympy; the cheap
hot paths (evaluation at rationals) are done here in pure integer arithmetic.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import sympy
from sympy import Poly

_x, _y = sympy.symbols("x y")

IntPoly = tuple  # tuple[int, ...], highest degree first


def normalize(coeffs: Sequence[int]) -> IntPoly:
    """Strip leading zeros, divide out the content, make the leading coefficient positive."""
    cs = [int(c) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if not cs:
        return ()
    g = 0
    for c in cs:
        g = gcd(g, c)
    if cs[0] < 0:
        g = -g
    return tuple(c // g for c in cs)


def from_rational_coeffs(coeffs: Sequence[Fraction]) -> IntPoly:
    den = 1
    for c in coeffs:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    return normalize([int(Fraction(c) * den) for c in coeffs])


def to_sympy(p: IntPoly, var=_x) -> Poly:
    return Poly(list(p), var, domain="ZZ")


def from_sympy(P: Poly) -> IntPoly:
    return normalize([int(c) for c in P.all_coeffs()])


def degree(p: IntPoly) -> int:
    return len(p) - 1


def sign_at(p: IntPoly, x: Fraction) -> int:
    """Exact sign of p(x) for rational x."""
    a, b = x.numerator, x.denominator
    acc = 0
    bpow = 1
    # sum c_i a^(n-i) b^i, computed by Horner in a with b powers accumulated
    for c in p:
        acc = acc * a + c * bpow
        bpow *= b
    # acc = b^n p(a/b) up to the order of accumulation; b > 0 so sign is preserved
    return (acc > 0) - (acc < 0)


def eval_at(p: IntPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def count_roots(p: IntPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the closed interval [lo, hi]."""
    P = to_sympy(p)
    return int(P.count_roots(sympy.Rational(lo.numerator, lo.denominator),
                             sympy.Rational(hi.numerator, hi.denominator)))


@lru_cache(maxsize=4096)
def irreducible_factors(p: IntPoly) -> tuple[IntPoly, ...]:
    """Distinct irreducible factors over Z of positive degree."""
    _, facs = to_sympy(p).factor_list()
    out = []
    for f, _mult in facs:
        q = from_sympy(f)
        if len(q) > 1:
            out.append(q)
    return tuple(sorted(set(out)))


@lru_cache(maxsize=4096)
def isolate_real_roots(p: IntPoly) -> tuple[tuple[Fraction, Fraction], ...]:
    """Isolating intervals of the real roots of an irreducible polynomial, increasing."""
    ivs = to_sympy(p).intervals()
    out = []
    for (a, b), _mult in ivs:
        out.append((Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))))
    return tuple(out)


def negate_arg(p: IntPoly) -> IntPoly:
    """Polynomial whose roots are the negatives of the roots of p."""
    n = len(p) - 1
    return normalize([c * (-1) ** (n - i) for i, c in enumerate(p)])


def reverse(p: IntPoly) -> IntPoly:
    """Polynomial whose roots are the reciprocals of the (nonzero) roots of p."""
    q = list(reversed(p))
    return normalize(q)


def shift(p: IntPoly, r: Fraction) -> IntPoly:
    """Roots of the result are (roots of p) + r."""
    P = to_sympy(p)
    Q = P.compose(Poly(_x - sympy.Rational(r.numerator, r.denominator), _x))
    return from_sympy(Q.clear_denoms()[1].set_domain("ZZ"))


def scale(p: IntPoly, r: Fraction) -> IntPoly:
    """Roots of the result are (roots of p) * r, for r != 0."""
    # q(x) = p(x / r) * r^n
    n = len(p) - 1
    a, b = r.numerator, r.denominator
    # p(x b / a) * a^n = sum c_i (x b)^(n-i) a^i
    return normalize([c * b ** (n - i) * a ** i for i, c in enumerate(p)])


def _bivariate(p: IntPoly, expr) -> Poly:
    """p evaluated at a sympy expression in x, y, as a Poly in y, x."""
    n = len(p) - 1
    total = sum(int(c) * expr ** (n - i) for i, c in enumerate(p))
    return Poly(sympy.expand(total), _y, _x, domain="ZZ")


def resultant_sum(p: IntPoly, q: IntPoly) -> IntPoly:
    """Polynomial vanishing at alpha + beta for p(alpha) = q(beta) = 0."""
    A = _bivariate(p, _y)
    B = _bivariate(q, _x - _y)
    return from_sympy(Poly(A.resultant(B).as_expr(), _x, domain="ZZ"))


def resultant_product(p: IntPoly, q: IntPoly) -> IntPoly:
    """Polynomial vanishing at alpha * beta for nonzero roots alpha, beta."""
    m = len(q) - 1
    A = _bivariate(p, _y)
    # y^m q(x / y)
    terms = sum(int(c) * _x ** (m - i) * _y ** i for i, c in enumerate(q))
    B = Poly(sympy.expand(terms), _y, _x, domain="ZZ")
    return from_sympy(Poly(A.resultant(B).as_expr(), _x, domain="ZZ"))


def resultant_polyeval(p: IntPoly, g: Sequence[Fraction]) -> IntPoly:
    """Polynomial vanishing at g(alpha) for p(alpha) = 0 and rational g (highest first)."""
    g = [Fraction(c) for c in g]
    while g and g[0] == 0:
        g.pop(0)
    if not g:
        return (1, 0)
    gi = from_rational_coeffs(g)
    s = g[0] / gi[0]  # g = s * gi
    n = len(gi) - 1
    gexpr = sum(int(c) * _y ** (n - i) for i, c in enumerate(gi))
    A = _bivariate(p, _y)
    # x = s * gi(y)  <=>  den(s) * x - num(s) * gi(y) = 0
    B = Poly(sympy.expand(s.denominator * _x - s.numerator * gexpr), _y, _x, domain="ZZ")
    return from_sympy(Poly(A.resultant(B).as_expr(), _x, domain="ZZ"))


def poly_str(p: IntPoly) -> str:
    return str(to_sympy(p).as_expr())
