"""Elements of cyclotomic fields Q(zeta_n) in the power basis modulo Phi_n.

Twists, S-matrix entries and dimensions of the categories handled here all live
in cyclotomic fields, so nearly all exact work happens in this module; real
elements convert to :class:`AlgebraicReal` only when a sign is needed.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import mpmath
import sympy

from ..errors import DivisionByZero, NotReal


@lru_cache(maxsize=None)
def _phi_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    p = sympy.Poly(sympy.cyclotomic_poly(n, sympy.Symbol("z")))
    return tuple(int(c) for c in reversed(p.all_coeffs()))


@lru_cache(maxsize=None)
def _totient(n: int) -> int:
    return int(sympy.totient(n))


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(t for t in range(1, max(n, 2)) if gcd(t, n) == 1) if n > 1 else (1,)


@lru_cache(maxsize=None)
def _trace_weight(n: int, k: int) -> Fraction:
    """Tr(zeta_n^k) / phi(n), which is mu(n/g)/phi(n/g) with g = gcd(k, n)."""
    m = n // gcd(k, n)
    return Fraction(int(sympy.mobius(m)), _totient(m))


def _reduce(n: int, dense: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta (lowest degree first) modulo Phi_n."""
    phi = _phi_poly(n)
    deg = len(phi) - 1
    work = list(dense)
    for top in range(len(work) - 1, deg - 1, -1):
        c = work[top]
        if c:
            shift = top - deg
            # Phi_n is monic: zeta^deg = -sum phi[i] zeta^i
            for i in range(deg):
                if phi[i]:
                    work[shift + i] -= c * phi[i]
            work[top] = 0
    out = work[:deg] + [Fraction(0)] * (deg - len(work))
    return tuple(Fraction(c) for c in out)


class CyclotomicElement:
    """An element of Q(zeta_n), zeta_n = exp(2 pi i / n).

    Values of different conductors interoperate by embedding into the lcm
    conductor.  Equality is exact; hashing uses the normalized trace so that
    equal values of different conductors hash alike.
    """

    __slots__ = ("conductor", "coeffs", "_real_cache")

    def __init__(self, conductor: int, coeffs: Iterable = ()):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = int(conductor)
        self.coeffs = _reduce(self.conductor, [Fraction(c) for c in coeffs])
        self._real_cache = None

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> "CyclotomicElement":
        obj = object.__new__(cls)
        obj.conductor = n
        obj.coeffs = coeffs
        obj._real_cache = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def rational(cls, q) -> "CyclotomicElement":
        return cls._raw(1, (Fraction(q),))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CyclotomicElement":
        """zeta_n ** k."""
        k %= n
        dense = [Fraction(0)] * (k + 1)
        dense[k] = Fraction(1)
        return cls(n, dense)

    @classmethod
    def root_of_unity(cls, exponent) -> "CyclotomicElement":
        """exp(2 pi i * exponent) for a rational exponent."""
        e = Fraction(exponent) % 1
        return cls.zeta(e.denominator, e.numerator)

    # structure --------------------------------------------------------------

    def at_conductor(self, m: int) -> "CyclotomicElement":
        """The same value written in Q(zeta_m); m must be a multiple of the conductor."""
        n = self.conductor
        if m == n:
            return self
        if m % n:
            raise ValueError(f"conductor {m} is not a multiple of {n}")
        step = m // n
        dense = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            dense[i * step] = c
        return CyclotomicElement(m, dense)

    def _pair(self, other) -> tuple["CyclotomicElement", "CyclotomicElement"]:
        m = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        return self.at_conductor(m), other.at_conductor(m)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def galois(self, t: int) -> "CyclotomicElement":
        """Image under zeta -> zeta**t (t coprime to the conductor)."""
        n = self.conductor
        if gcd(t, n) != 1:
            raise ValueError(f"{t} is not a unit mod {n}")
        dense = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if c:
                dense[(i * t) % n] += c
        return CyclotomicElement(n, dense)

    def conj(self) -> "CyclotomicElement":
        return self.galois(-1 % self.conductor) if self.conductor > 2 else self

    conjugate = conj

    def is_real(self) -> bool:
        return self == self.conj()

    def conjugates(self) -> list["CyclotomicElement"]:
        """Distinct Galois conjugates, in order of first appearance over units t."""
        seen: list[CyclotomicElement] = []
        for t in _units(self.conductor):
            g = self.galois(t)
            if all(g.coeffs != s.coeffs for s in seen):
                seen.append(g)
        return seen

    def norm(self) -> Fraction:
        acc = CyclotomicElement.rational(1)
        for t in _units(self.conductor):
            acc = acc * self.galois(t)
        return acc.as_fraction()

    def trace(self) -> Fraction:
        """Normalized trace Tr(x)/[Q(zeta_n):Q]; independent of the chosen conductor."""
        n = self.conductor
        return sum((c * _trace_weight(n, k) for k, c in enumerate(self.coeffs) if c), Fraction(0))

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return CyclotomicElement._raw(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement._raw(self.conductor, tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.conductor == 1:
            q = other.coeffs[0]
            return CyclotomicElement._raw(self.conductor, tuple(c * q for c in self.coeffs))
        if self.conductor == 1:
            q = self.coeffs[0]
            return CyclotomicElement._raw(other.conductor, tuple(c * q for c in other.coeffs))
        a, b = self._pair(other)
        dense = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        dense[i + j] += x * y
        return CyclotomicElement._raw(a.conductor, _reduce(a.conductor, dense))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicElement.rational(1 / self.coeffs[0])
        acc = CyclotomicElement.rational(1)
        for t in _units(self.conductor)[1:]:
            acc = acc * self.galois(t)
        nrm = (acc * self).as_fraction()
        return acc * (1 / nrm)

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

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicElement.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(("cyc", self.trace(), (self * self).trace()))

    # conversion ---------------------------------------------------------------

    def to_complex(self, dps: int = 30) -> mpmath.mpc:
        with mpmath.workdps(dps):
            n = self.conductor
            return mpmath.fsum(c.numerator * mpmath.expjpi(mpmath.mpf(2 * k) / n) / c.denominator
                               for k, c in enumerate(self.coeffs) if c) + mpmath.mpc(0)

    def __complex__(self) -> complex:
        return complex(self.to_complex(20))

    def real_part(self) -> "CyclotomicElement":
        return (self + self.conj()) * Fraction(1, 2)

    def abs2(self) -> "CyclotomicElement":
        return self * self.conj()

    def _real_enclosure(self, dps: int) -> tuple[Fraction, Fraction]:
        """Rigorous interval containing the (real) value, from interval arithmetic."""
        iv = mpmath.iv
        saved = iv.dps
        iv.dps = dps
        try:
            n = self.conductor
            acc = iv.mpf(0)
            for k, c in enumerate(self.coeffs):
                if c:
                    acc += iv.mpf(c.numerator) / c.denominator * iv.cos(2 * iv.pi * k / n)
            lo, hi = acc._mpi_
        finally:
            iv.dps = saved
        return _mpf_to_fraction(lo), _mpf_to_fraction(hi)

    def to_algebraic_real(self):
        """Exact conversion of a real element to :class:`AlgebraicReal`."""
        if self._real_cache is not None:
            return self._real_cache
        from .real import AlgebraicReal
        if self.is_rational():
            out = AlgebraicReal.rational(self.coeffs[0])
        else:
            if not self.is_real():
                raise NotReal(f"{self} is not real")
            out = _to_algebraic_real(self.conductor, self.coeffs)
        self._real_cache = out
        return out

    def sign(self) -> int:
        """Sign of a real element."""
        if self.is_rational():
            c = self.coeffs[0]
            return (c > 0) - (c < 0)
        if not self.is_real():
            raise NotReal(f"{self} is not real")
        if self.is_zero():
            return 0
        for dps in (20, 60):
            lo, hi = self._real_enclosure(dps)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        return self.to_algebraic_real().sign()

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z^{k}" if k else f"{c}")
        return f"Cyc[{self.conductor}]({' + '.join(terms)})"

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclotomicElement":
        return cls(int(obj["conductor"]), [Fraction(c) for c in obj["coeffs"]])


def _mpf_to_fraction(raw) -> Fraction:
    """Exact value of a raw mpmath float tuple."""
    p, q = mpmath.libmp.to_rational(raw)
    return Fraction(int(p), int(q))


@lru_cache(maxsize=8192)
def _to_algebraic_real(n: int, coeffs: tuple):
    from . import polys
    from .real import AlgebraicReal

    x = CyclotomicElement._raw(n, coeffs)
    conj = x.conjugates()
    # minimal polynomial: product of (X - c) over distinct conjugates, built coefficientwise
    poly = [CyclotomicElement.rational(1)]
    for c in conj:
        nxt = [CyclotomicElement.rational(0)] * (len(poly) + 1)
        for i, p in enumerate(poly):
            nxt[i] = nxt[i] + p
            nxt[i + 1] = nxt[i + 1] - p * c
        poly = nxt
    minpoly = polys.from_rational_coeffs([p.as_fraction() for p in poly])
    lo, hi = x._real_enclosure(40)
    dps = 40
    while True:
        if polys.count_roots(minpoly, lo, hi) == 1 and lo < hi:
            break
        dps *= 2
        lo, hi = x._real_enclosure(dps)
    return AlgebraicReal._leaf(minpoly, lo, hi)


def _coerce(x):
    if isinstance(x, CyclotomicElement):
        return x
    if isinstance(x, bool):
        return CyclotomicElement.rational(int(x))
    if isinstance(x, (int, Fraction)):
        return CyclotomicElement.rational(x)
    return NotImplemented


def cyc(x) -> CyclotomicElement:
    """Coerce an int, Fraction or CyclotomicElement."""
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to CyclotomicElement")
    return r


def sqrt_of_rational_in_cyclotomic(q: int) -> CyclotomicElement:
    """sqrt(q) for a squarefree integer q, via a quadratic Gauss sum."""
    if q == 0:
        return CyclotomicElement.rational(0)
    sgn = -1 if q < 0 else 1
    q = abs(q)
    out = CyclotomicElement.rational(1)
    for p, e in sympy.factorint(q).items():
        if e != 1:
            raise ValueError("q must be squarefree")
        out = out * _sqrt_prime(p)
    if sgn < 0:
        out = out * CyclotomicElement.zeta(4)
    return out


def _sqrt_prime(p: int) -> CyclotomicElement:
    if p == 2:
        # sqrt 2 = zeta_8 + zeta_8^{-1}
        return CyclotomicElement.zeta(8) + CyclotomicElement.zeta(8, 7)
    g = CyclotomicElement(p, [0])
    for a in range(1, p):
        g = g + int(sympy.legendre_symbol(a, p)) * CyclotomicElement.zeta(p, a)
    # g^2 = (-1)^((p-1)/2) p
    if p % 4 == 1:
        return g
    return g * (-CyclotomicElement.zeta(4))
