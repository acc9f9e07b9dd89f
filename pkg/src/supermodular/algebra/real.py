"""Exact real algebraic numbers.

A value is an irreducible integer polynomial together with a rational interval
that isolates one of its real roots.  Arithmetic is lazy: ``a + b`` builds a
node and only computes a defining polynomial (via resultants) when an exact
answer is demanded.  Sign and order queries first try interval enclosures of
the expression tree and fall back to the exact normal form only when the
enclosure straddles zero, which in practice means the answer is zero.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

from ..errors import DivisionByZero, MultipleRootsInInterval, NoRootInInterval, ZeroPolynomial
from . import polys

Number = Union[int, Fraction, "AlgebraicReal"]

_ENCLOSURE_BITS = (24, 64, 160)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class AlgebraicReal:
    """A real algebraic number with decidable equality and sign.

    Instances are immutable values.  Internally a node may memoize its normal
    form and leaf refinements; neither changes the designated root.
    """

    __slots__ = ("_poly", "_lo", "_hi", "_node", "_refined")

    def __init__(self):  # use the constructors below
        raise TypeError("use make_algebraic(), AlgebraicReal.rational() or arithmetic")

    # construction -------------------------------------------------------

    @classmethod
    def _leaf(cls, poly: tuple, lo: Fraction, hi: Fraction) -> "AlgebraicReal":
        obj = object.__new__(cls)
        obj._poly = poly
        obj._lo = lo
        obj._hi = hi
        obj._node = None
        obj._refined = {}
        return obj

    @classmethod
    def _lazy(cls, op: str, *args) -> "AlgebraicReal":
        obj = object.__new__(cls)
        obj._poly = None
        obj._lo = obj._hi = None
        obj._node = (op,) + args
        obj._refined = {}
        return obj

    @classmethod
    def rational(cls, q) -> "AlgebraicReal":
        q = _frac(q)
        return cls._leaf((q.denominator, -q.numerator), q, q)

    @classmethod
    def sqrt(cls, q) -> "AlgebraicReal":
        """Positive square root of a nonnegative rational."""
        q = _frac(q)
        if q < 0:
            raise ValueError("square root of a negative rational is not real")
        return make_algebraic(polys.from_rational_coeffs([1, 0, -q]), (Fraction(0), max(Fraction(1), q)))

    # normal form --------------------------------------------------------

    def _normalized(self) -> "AlgebraicReal":
        if self._node is None:
            return self
        if self._poly is None:
            leaf = _normalize_node(self)
            self._poly, self._lo, self._hi = leaf._poly, leaf._lo, leaf._hi
            self._refined = {}
            self._node = None
        return self

    @property
    def minpoly(self) -> tuple:
        """Minimal polynomial over Z: primitive, positive leading coefficient, highest degree first."""
        return self._normalized()._poly

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        n = self._normalized()
        return (n._lo, n._hi)

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        p = self.minpoly
        if len(p) != 2:
            raise ValueError(f"{self!r} is not rational")
        return Fraction(-p[1], p[0])

    # refinement -----------------------------------------------------------

    def _leaf_interval(self, bits: int) -> tuple[Fraction, Fraction]:
        lo, hi = self._lo, self._hi
        if lo == hi:
            return lo, hi
        cached = self._refined.get(bits)
        if cached is not None:
            return cached
        # start from the best cached refinement below the requested precision
        best = max((b for b in self._refined if b < bits), default=None)
        if best is not None:
            lo, hi = self._refined[best]
        width = Fraction(1, 1 << bits)
        p = self._poly
        slo = polys.sign_at(p, lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = polys.sign_at(p, mid)
            if sm == 0:
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        self._refined[bits] = (lo, hi)
        return lo, hi

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        """A rational interval containing the value (leaves refined to width 2**-bits)."""
        if self._node is None:
            return self._leaf_interval(bits)
        return _enclose_node(self._node, bits)

    def refine(self, eps) -> tuple[Fraction, Fraction]:
        """Isolating interval of width < eps containing the value; never mutates the value."""
        eps = _frac(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        n = self._normalized()
        if n._lo == n._hi:
            return n._lo, n._hi
        bits = 1
        while Fraction(1, 1 << bits) >= eps:
            bits += 1
        return n._leaf_interval(bits)

    def __float__(self) -> float:
        lo, hi = self.enclosure(60)
        return float((lo + hi) / 2)

    def approx(self, digits: int = 12) -> str:
        bits = int(digits * 3.33) + 8
        lo, hi = self.enclosure(bits)
        return f"{float((lo + hi) / 2):.{digits}g}"

    # sign & comparison --------------------------------------------------------

    def sign(self) -> int:
        if self._node is not None and self._poly is None:
            for bits in _ENCLOSURE_BITS:
                lo, hi = _enclose_node(self._node, bits)
                if lo > 0:
                    return 1
                if hi < 0:
                    return -1
        n = self._normalized()
        if len(n._poly) == 2:
            r = Fraction(-n._poly[1], n._poly[0])
            return (r > 0) - (r < 0)
        bits = 8
        while True:
            lo, hi = n._leaf_interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def is_zero(self) -> bool:
        return self.sign() == 0

    def _cmp(self, other) -> int:
        other = _coerce(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare AlgebraicReal with {type(other).__name__}")
        return (self - other).sign()

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # cheap separation first
        for bits in _ENCLOSURE_BITS[:2]:
            a, b = self.enclosure(bits), other.enclosure(bits)
            if a[1] < b[0] or b[1] < a[0]:
                return False
        x, y = self._normalized(), other._normalized()
        if x._poly != y._poly:
            return False
        lo, hi = max(x._lo, y._lo), min(x._hi, y._hi)
        if lo > hi:
            return False
        return polys.count_roots(x._poly, lo, hi) >= 1

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self) -> int:
        n = self._normalized()
        if len(n._poly) == 2:
            return hash(Fraction(-n._poly[1], n._poly[0]))
        return hash(n._poly)

    # arithmetic -------------------------------------------------------------

    def __neg__(self):
        return AlgebraicReal._lazy("neg", self)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraicReal._lazy("add", self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraicReal._lazy("add", self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraicReal._lazy("add", other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgebraicReal._lazy("mul", self, other)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicReal":
        if self.sign() == 0:
            raise DivisionByZero("inverse of zero")
        return AlgebraicReal._lazy("inv", self)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self.inverse()) ** (-n)
        result = AlgebraicReal.rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "AlgebraicReal":
        return self

    def real(self) -> "AlgebraicReal":
        return self

    def __repr__(self) -> str:
        if self._node is not None and self._poly is None:
            return f"AlgebraicReal(<lazy {self._node[0]}> ~{self.approx(10)})"
        if len(self._poly) == 2:
            return f"AlgebraicReal({self.as_fraction()})"
        return (f"AlgebraicReal(root of {polys.poly_str(self._poly)} in "
                f"[{self._lo}, {self._hi}] ~{self.approx(10)})")


# ---------------------------------------------------------------------------


def _coerce(x):
    if isinstance(x, AlgebraicReal):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return AlgebraicReal.rational(Fraction(x))
    if isinstance(x, bool):
        return AlgebraicReal.rational(int(x))
    from .cyclotomic import CyclotomicElement

    if isinstance(x, CyclotomicElement):
        if not x.is_real():
            return NotImplemented
        return x.to_algebraic_real()
    return NotImplemented


def _imul(a, b):
    cands = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(cands), max(cands)


def _enclose_node(node, bits):
    op = node[0]
    if op == "neg":
        lo, hi = node[1].enclosure(bits)
        return -hi, -lo
    if op == "add":
        a, b = node[1].enclosure(bits), node[2].enclosure(bits)
        return a[0] + b[0], a[1] + b[1]
    if op == "mul":
        return _imul(node[1].enclosure(bits), node[2].enclosure(bits))
    if op == "inv":
        b = bits
        while True:
            lo, hi = node[1].enclosure(b)
            if lo > 0 or hi < 0:
                return 1 / hi, 1 / lo
            b *= 2
    if op == "polyeval":
        coeffs, a = node[1], node[2]
        iv = a.enclosure(bits)
        acc = (Fraction(0), Fraction(0))
        for c in coeffs:
            acc = _imul(acc, iv)
            acc = (acc[0] + c, acc[1] + c)
        return acc
    raise AssertionError(op)


def _normalize_node(x: AlgebraicReal) -> AlgebraicReal:
    op = x._node[0]
    if op == "neg":
        a = x._node[1]._normalized()
        return AlgebraicReal._leaf(polys.negate_arg(a._poly), -a._hi, -a._lo)
    if op == "inv":
        a = x._node[1]._normalized()
        if len(a._poly) == 2:
            return AlgebraicReal.rational(1 / a.as_fraction())
        bits = 8
        while True:
            lo, hi = a._leaf_interval(bits)
            if lo > 0 or hi < 0:
                return AlgebraicReal._leaf(polys.reverse(a._poly), 1 / hi, 1 / lo)
            bits *= 2
    if op in ("add", "mul"):
        a, b = x._node[1]._normalized(), x._node[2]._normalized()
        ra, rb = len(a._poly) == 2, len(b._poly) == 2
        if ra and rb:
            fa, fb = a.as_fraction(), b.as_fraction()
            return AlgebraicReal.rational(fa + fb if op == "add" else fa * fb)
        if op == "mul" and ((ra and a.as_fraction() == 0) or (rb and b.as_fraction() == 0)):
            return AlgebraicReal.rational(0)
        if ra or rb:
            r, other = (a.as_fraction(), b) if ra else (b.as_fraction(), a)
            if op == "add":
                poly = polys.shift(other._poly, r)
                return AlgebraicReal._leaf(poly, other._lo + r, other._hi + r)
            poly = polys.scale(other._poly, r)
            lo, hi = sorted((other._lo * r, other._hi * r))
            return AlgebraicReal._leaf(poly, lo, hi)
        cand = (polys.resultant_sum if op == "add" else polys.resultant_product)(a._poly, b._poly)
        return _select_root(cand, x._node, x)
    if op == "polyeval":
        coeffs, a = x._node[1], x._node[2]._normalized()
        if len(a._poly) == 2:
            v = a.as_fraction()
            acc = Fraction(0)
            for c in coeffs:
                acc = acc * v + c
            return AlgebraicReal.rational(acc)
        cand = polys.resultant_polyeval(a._poly, coeffs)
        return _select_root(cand, x._node, x)
    raise AssertionError(op)


def _select_root(cand: tuple, node, x) -> AlgebraicReal:
    """Pick the irreducible factor of cand and an isolating interval for the node's value."""
    factors = polys.irreducible_factors(cand)
    bits = 16
    while True:
        lo, hi = _enclose_node(node, bits)
        hits = [(f, polys.count_roots(f, lo, hi)) for f in factors]
        total = sum(c for _, c in hits)
        if total == 1:
            f = next(f for f, c in hits if c == 1)
            if len(f) == 2:
                return AlgebraicReal.rational(Fraction(-f[1], f[0]))
            return AlgebraicReal._leaf(f, lo, hi)
        if total == 0:  # pragma: no cover - would indicate a resultant bug
            raise AssertionError("value is not a root of its defining polynomial")
        bits *= 2


# public operations ---------------------------------------------------------


def make_algebraic(minpoly: Sequence[int], interval) -> AlgebraicReal:
    """The unique real root of ``minpoly`` (highest degree first) in the closed ``interval``.

    A point interval [q, q] is accepted when q itself is a root.
    """
    p = polys.normalize(minpoly)
    if not p:
        raise ZeroPolynomial("polynomial is identically zero")
    lo, hi = _frac(interval[0]), _frac(interval[1])
    if lo == hi and len(p) > 1:
        if polys.sign_at(p, lo) != 0:
            raise NoRootInInterval(f"{polys.poly_str(p)} does not vanish at {lo}")
        return AlgebraicReal.rational(lo)
    if not lo < hi:
        raise ValueError(f"interval endpoints must satisfy lo < hi, got [{lo}, {hi}]")
    if len(p) == 1:
        raise NoRootInInterval("nonzero constant polynomial has no roots")
    n = polys.count_roots(p, lo, hi)
    if n == 0:
        raise NoRootInInterval(f"{polys.poly_str(p)} has no real root in [{lo}, {hi}]")
    if n > 1:
        raise MultipleRootsInInterval(f"{polys.poly_str(p)} has {n} real roots in [{lo}, {hi}]")
    for f in polys.irreducible_factors(p):
        if polys.count_roots(f, lo, hi) == 1:
            if len(f) == 2:
                return AlgebraicReal.rational(Fraction(-f[1], f[0]))
            # endpoints are irrational-root free, so sign changes strictly across the root
            return AlgebraicReal._leaf(f, lo, hi)
    raise AssertionError("root not found in any factor")  # pragma: no cover


def real_roots(coeffs: Sequence[int]) -> list[AlgebraicReal]:
    """All distinct real roots of an integer polynomial, in increasing order."""
    p = polys.normalize(coeffs)
    if not p:
        raise ZeroPolynomial("polynomial is identically zero")
    roots: list[AlgebraicReal] = []
    for f in polys.irreducible_factors(p):
        if len(f) == 2:
            roots.append(AlgebraicReal.rational(Fraction(-f[1], f[0])))
            continue
        for lo, hi in polys.isolate_real_roots(f):
            roots.append(AlgebraicReal._leaf(f, lo, hi))
    return _sorted(roots)


def _sorted(values: list[AlgebraicReal]) -> list[AlgebraicReal]:
    import functools

    return sorted(values, key=functools.cmp_to_key(lambda a, b: a._cmp(b)))


def poly_eval(coeffs: Sequence, a: AlgebraicReal) -> AlgebraicReal:
    """g(a) for a rational polynomial g given highest degree first."""
    return AlgebraicReal._lazy("polyeval", tuple(_frac(c) for c in coeffs), a)


def arith(op: str, a: Number, b: Number) -> AlgebraicReal:
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def sign(a: Number) -> int:
    return _coerce(a).sign()


def refine(a: Number, eps) -> tuple[Fraction, Fraction]:
    return _coerce(a).refine(eps)


def to_algebraic(x) -> AlgebraicReal:
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to AlgebraicReal")
    return r
