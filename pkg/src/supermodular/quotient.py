"""Fermionic quotients: identify each label X with f X and keep the numerical shadow.

Given super-modular data with fermion f, a partition of the labels into
``pi0`` and ``f.pi0`` yields naive fusion rules ``nhat[a, b, c] = N_ab^c + N_ab^(f.c)``
on ``pi0`` and the quotient matrix ``shat`` (the ``pi0 x pi0`` block of S~,
which repeats in all four blocks).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import AlgebraicReal, CyclotomicElement, cyc
from .errors import (BlockMismatch, FixedPointFermion, IndicatorNotPlusMinusOne, NotSelfDual,
                     NotSuperModular)
from .fusion_ring import FusionRing, validate
from .premodular import PremodularData, fermion_action, muger_center
from .report import ValidationReport


@dataclass(frozen=True)
class QuotientPartition:
    pi0: tuple[int, ...]
    fermion: int
    pairing: tuple[int, ...]  # pairing[i] = f . i for every label

    def position(self, label: int) -> int:
        """Index in pi0 of the class of ``label``."""
        if label in self.pi0:
            return self.pi0.index(label)
        return self.pi0.index(self.pairing[label])

    def swapped(self, label: int, dual: Sequence[int]) -> "QuotientPartition":
        """The partition with ``label`` (and its dual) exchanged for its f-partner, positions kept."""
        pos = self.position(label)
        if pos == 0:
            raise ValueError("the unit cannot be swapped")
        rep = self.pi0[pos]
        new = list(self.pi0)
        new[pos] = self.pairing[rep]
        d = dual[rep]
        if d != rep and d in self.pi0:
            new[self.pi0.index(d)] = self.pairing[d]
        return QuotientPartition(tuple(new), self.fermion, self.pairing)


def make_partition(data: PremodularData, f: int | None = None) -> QuotientPartition:
    """Scan labels in input order; an unassigned label and its dual join pi0, their f-partners the rest."""
    center = muger_center(data)
    if not center.is_supermodular:
        raise NotSuperModular(f"{data.name or 'data'}: Muger center {center.transparent} is not sVec")
    if f is None:
        f = center.fermion
    elif f != center.fermion:
        raise NotSuperModular(f"label {f} is not the fermion")
    return partition_ring(data.ring, f)


def partition_ring(ring: FusionRing, f: int) -> QuotientPartition:
    """The scan-rule partition using only the fusion rules and the fermion label."""
    pairing = tuple(fermion_action(ring, f, i) for i in range(ring.rank))
    fixed = [i for i in range(ring.rank) if pairing[i] == i]
    if fixed:
        raise FixedPointFermion(f"fermion fixes labels {fixed}")
    assigned: dict[int, int] = {}
    for i in range(ring.rank):
        if i in assigned:
            continue
        members = {i, ring.dual[i]}
        if pairing[i] in members:
            # X* = fX: the class is self-dual in the quotient; only X can be kept
            members = {i}
        for m in members:
            assigned[m] = 0
            assigned[pairing[m]] = 1
    pi0 = tuple(i for i in range(ring.rank) if assigned[i] == 0)
    return QuotientPartition(pi0, f, pairing)


def naive_rules(source: PremodularData | FusionRing, p: QuotientPartition) -> np.ndarray:
    N = source.tensor if isinstance(source, FusionRing) else source.ring.tensor
    idx = list(p.pi0)
    fidx = [p.pairing[c] for c in idx]
    return N[np.ix_(idx, idx, idx)] + N[np.ix_(idx, idx, fidx)]


def quotient_S(data: PremodularData, p: QuotientPartition) -> tuple:
    S = data.stilde
    for a in p.pi0:
        for b in p.pi0:
            fa, fb = p.pairing[a], p.pairing[b]
            for x, y in ((fa, b), (a, fb), (fa, fb)):
                if S[x][y] != S[a][b]:
                    raise BlockMismatch(f"S~[{x}][{y}] differs from S~[{a}][{b}]")
    return tuple(tuple(S[a][b] for b in p.pi0) for a in p.pi0)


@dataclass(frozen=True, eq=False)
class FermionicQuotient:
    partition: QuotientPartition
    nhat: np.ndarray
    shat: tuple
    dsq: CyclotomicElement  # global dimension of the super-modular category
    labels: tuple[str, ...] = ()
    dual: tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return self.nhat.shape[0]

    def ring(self, name: str = "") -> FusionRing:
        dual = self.dual or tuple(int(np.nonzero(self.nhat[i, :, 0])[0][0]) for i in range(self.rank))
        return FusionRing(self.nhat, dual, self.labels or (), name)

    def row_matrix(self, i: int) -> np.ndarray:
        """Matrix with entry [j, k] = nhat_{i j}^k."""
        return self.nhat[i]


def build_quotient(data: PremodularData, f: int | None = None,
                   partition: QuotientPartition | None = None) -> FermionicQuotient:
    p = partition or make_partition(data, f)
    nhat = naive_rules(data, p)
    nhat.setflags(write=False)
    shat = quotient_S(data, p)
    dual = tuple(p.position(data.ring.dual[a]) for a in p.pi0)
    return FermionicQuotient(p, nhat, shat, data.dsq, tuple(data.labels[a] for a in p.pi0), dual)


# verification -----------------------------------------------------------------


def _matmul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    return tuple(tuple(sum((A[i][l] * B[l][j] for l in range(m)), cyc(0)) for j in range(k)) for i in range(n))


def verify_quotient(q: FermionicQuotient) -> ValidationReport:
    """Mock S-matrix properties: unitarity up to D^2/2, simultaneous diagonalization, Verlinde."""
    rep = ValidationReport("fermionic quotient")
    S, r, N = q.shat, q.rank, q.nhat
    half = q.dsq * Fraction(1, 2)

    bad = next(((i, j) for i in range(r) for j in range(i + 1, r) if S[i][j] != S[j][i]), None)
    rep.add("(a) symmetric", bad is None, bad)
    Sbar = tuple(tuple(x.conj() for x in row) for row in S)
    P = _matmul(S, Sbar)
    bad = next(((i, j) for i in range(r) for j in range(r) if P[i][j] != (half if i == j else 0)), None)
    rep.add("(a) S conj(S) = D^2/2 Id", bad is None, bad)
    sq = _matmul(S, S)
    dual = q.dual
    bad = next(((i, j) for i in range(r) for j in range(r) if sq[i][j] != (half if dual[i] == j else 0)), None)
    rep.add("(a) S^2 = D^2/2 C", bad is None, bad)
    tot = sum((S[0][i] * S[0][i] for i in range(r)), cyc(0))
    rep.add("sum of squared quotient dimensions = D^2/2", tot == half, detail="")

    ring_rep = validate(q.ring())
    rep.add("(b) naive rules form a commutative fusion rule",
            ring_rep.ok and q.ring().is_commutative(),
            None if ring_rep.ok else ring_rep.first_failure().name)

    # (c) columns are common eigenvectors: sum_k nhat_{ij}^k S_km = S_jm * S_im / S_0m
    bad = None
    if all(not S[0][m].is_zero() for m in range(r)):
        for i in range(r):
            for j in range(r):
                for m in range(r):
                    lhs = sum((int(N[i, j, k]) * S[k][m] for k in range(r) if N[i, j, k]), cyc(0))
                    if lhs * S[0][m] != S[j][m] * S[i][m]:
                        bad = (i, j, m)
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("(c) simultaneous eigenvectors", bad is None, bad)
    else:
        rep.skip("(c) simultaneous eigenvectors", "a quotient dimension vanishes")

    # (d) Verlinde reconstruction with exact integrality
    bad = None
    if half.is_zero() or any(S[0][m].is_zero() for m in range(r)):
        rep.skip("(d) Verlinde reconstruction", "degenerate data")
        return rep
    inv0 = [S[0][m].inverse() for m in range(r)]
    scale = half.inverse()
    for i in range(r):
        for j in range(i, r):
            for k in range(r):
                v = sum((S[i][m] * S[j][m] * Sbar[k][m] * inv0[m] for m in range(r)), cyc(0)) * scale
                if not v.is_rational() or v.as_fraction() != int(N[i, j, k]):
                    bad = (i, j, k, str(v))
                    break
            if bad:
                break
        if bad:
            break
    rep.add("(d) Verlinde reconstruction", bad is None, bad)
    return rep


# Frobenius-Schur indicator -----------------------------------------------------------------


def fs_indicator(data: PremodularData, p: QuotientPartition, j: int) -> CyclotomicElement:
    """nu_2(X_j) from the quotient formula (2/D^2) sum_{a,b in pi0} nhat_ab^j d_a d_b (theta_a/theta_b)^2."""
    if data.ring.dual[j] != j:
        raise NotSelfDual(f"label {data.labels[j]} is not self-dual")
    if not data.has_twists():
        from .errors import MissingTwists

        raise MissingTwists("the indicator needs twists")
    nhat = naive_rules(data, p)
    jpos = p.position(j)
    acc = cyc(0)
    for x, a in enumerate(p.pi0):
        for y, b in enumerate(p.pi0):
            n = int(nhat[x, y, jpos])
            if n:
                ratio = CyclotomicElement.root_of_unity(2 * (data.twists[a] - data.twists[b]))
                acc = acc + n * data.dim(a) * data.dim(b) * ratio
    nu = acc * 2 / data.dsq
    if nu != 1 and nu != -1:
        raise IndicatorNotPlusMinusOne(f"indicator of {data.labels[j]} evaluates to {nu}")
    return nu


# diagonalizer matching -----------------------------------------------------------------


class _CPair:
    """Complex number as a pair of exact reals, for matrices mixing representations."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re, self.im = re, im

    def __mul__(self, o: "_CPair") -> "_CPair":
        return _CPair(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __eq__(self, o) -> bool:
        return self.re == o.re and self.im == o.im

    def is_zero(self) -> bool:
        return self.re.sign() == 0 and self.im.sign() == 0

    def __truediv__(self, o: "_CPair") -> "_CPair":
        den = o.re * o.re + o.im * o.im
        return _CPair((self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"({self.re.approx(8)} + {self.im.approx(8)} i)"


def _to_pair(x) -> _CPair:
    if isinstance(x, AlgebraicReal):
        return _CPair(x, AlgebraicReal.rational(0))
    x = cyc(x)
    re = x.real_part()
    im = (x - x.conj()) * CyclotomicElement.zeta(4).conj() * Fraction(1, 2)
    return _CPair(re.to_algebraic_real(), im.to_algebraic_real())


def _common(S, Sp):
    ents = [x for row in list(S) + list(Sp) for x in row]
    if all(not isinstance(x, (AlgebraicReal, _CPair)) for x in ents):
        conv = cyc
    else:
        conv = _to_pair
    return [[conv(x) for x in row] for row in S], [[conv(x) for x in row] for row in Sp]


def _is_zero(x) -> bool:
    return x.is_zero()


def match_diagonalizers(S, Sp) -> tuple[tuple[int, ...], tuple] | None:
    """Find (perm, diag) with column m of Sp equal to diag[perm[m]] times column perm[m] of S.

    In matrix form Sp = S D' P with D' = diag(diag) and P[perm[m], m] = 1.  Float
    approximations only prune candidate column pairs; every accepted pair is
    confirmed by exact cross-multiplication.
    """
    n = len(S)
    if n != len(Sp) or any(len(row) != n for row in list(S) + list(Sp)):
        return None
    A, B = _common(S, Sp)
    Af = np.array([[complex(x) for x in row] for row in A])
    Bf = np.array([[complex(x) for x in row] for row in B])

    def proportional(m: int, c: int):
        # column m of B against column c of A
        a, b = Af[:, c], Bf[:, m]
        i0 = int(np.argmax(np.abs(a)))
        if abs(a[i0]) < 1e-12 or abs(b[i0]) < 1e-12:
            return None
        if not np.allclose(b, a * (b[i0] / a[i0]), atol=1e-8, rtol=1e-8):
            return None
        if _is_zero(A[i0][c]):
            return None
        for i in range(n):
            if not (B[i][m] * A[i0][c] == B[i0][m] * A[i][c]):
                return None
        return B[i0][m] / A[i0][c]

    options = []
    for m in range(n):
        opts = []
        for c in range(n):
            ratio = proportional(m, c)
            if ratio is not None:
                opts.append((c, ratio))
        if not opts:
            return None
        options.append(opts)
    for choice in itertools.product(*options):
        cols = [c for c, _ in choice]
        if len(set(cols)) == n:
            diag = [None] * n
            for c, ratio in choice:
                diag[c] = ratio
            return tuple(cols), tuple(diag)
    return None


def apply_match(S, perm: Sequence[int], diag: Sequence) -> list[list]:
    """S D' P for the pair returned by :func:`match_diagonalizers`."""
    n = len(S)
    return [[S[i][perm[m]] * diag[perm[m]] for m in range(n)] for i in range(n)]


def match_relabeled(S, Sp) -> tuple[tuple[int, ...], tuple[int, ...], tuple] | None:
    """Like :func:`match_diagonalizers`, also trying every relabeling of the rows of Sp fixing 0.

    Returns (rows, perm, diag) where rows[i] is the row of Sp placed at position i.
    """
    n = len(Sp)
    for rest in itertools.permutations(range(1, n)):
        rows = (0,) + rest
        permuted = [Sp[rows[i]] for i in range(n)]
        found = match_diagonalizers(S, permuted)
        if found is not None:
            return (rows,) + found
    return None
