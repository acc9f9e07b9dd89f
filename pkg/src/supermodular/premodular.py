"""Premodular data (unnormalized S-matrix and twists) over a fusion ring.

Twists are stored as rational exponents ``e`` with ``theta = exp(2 pi i e)``,
so they are exact roots of unity; the S-matrix is a matrix of cyclotomic
elements.  All verdicts are decided by exact equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import AlgebraicReal, CyclotomicElement, cyc
from .errors import MissingTwists, NotSuperModular, ShapeMismatch
from .fusion_ring import (DimensionVector, FusionRing, deligne_product, find_isomorphisms,
                          group_ring_cyclic, validate, vec_ring, z2_gradings)
from .report import ValidationReport

Matrix = tuple  # tuple of tuples of CyclotomicElement


def as_matrix(rows) -> Matrix:
    return tuple(tuple(cyc(x) for x in row) for row in rows)


@dataclass(frozen=True, eq=False)
class PremodularData:
    ring: FusionRing
    stilde: Matrix
    twists: tuple[Fraction, ...] | None = None
    name: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        r = self.ring.rank
        s = as_matrix(self.stilde)
        if len(s) != r or any(len(row) != r for row in s):
            raise ShapeMismatch(f"S-matrix must be {r}x{r}")
        object.__setattr__(self, "stilde", s)
        if self.twists is not None:
            if len(self.twists) != r:
                raise ShapeMismatch(f"{len(self.twists)} twists for rank {r}")
            object.__setattr__(self, "twists", tuple(Fraction(e) % 1 for e in self.twists))

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def labels(self) -> tuple[str, ...]:
        return self.ring.labels

    def dim(self, i: int) -> CyclotomicElement:
        """Categorical dimension d_i = S~_{0,i}."""
        return self.stilde[0][i]

    @cached_property
    def dsq(self) -> CyclotomicElement:
        """Global dimension D^2 = sum of d_i^2, as a cyclotomic element."""
        acc = cyc(0)
        for i in range(self.rank):
            acc = acc + self.dim(i) * self.dim(i)
        return acc

    @cached_property
    def dims(self) -> DimensionVector:
        ents = tuple(self.dim(i).to_algebraic_real() for i in range(self.rank))
        return DimensionVector(ents, self.dsq.to_algebraic_real())

    @property
    def Dsq(self) -> AlgebraicReal:
        return self.dims.total

    def has_twists(self) -> bool:
        return self.twists is not None

    def theta(self, i: int) -> CyclotomicElement:
        if self.twists is None:
            raise MissingTwists(f"{self.name or 'data'} has no twists")
        return CyclotomicElement.root_of_unity(self.twists[i])

    def with_twists(self, twists) -> "PremodularData":
        return PremodularData(self.ring, self.stilde, tuple(twists), self.name, dict(self.metadata))

    def relabel(self, perm: Sequence[int]) -> "PremodularData":
        """Data in which old label i is called perm[i]."""
        r = self.rank
        inv = [0] * r
        for i, p in enumerate(perm):
            inv[p] = i
        s = tuple(tuple(self.stilde[inv[a]][inv[b]] for b in range(r)) for a in range(r))
        tw = None if self.twists is None else tuple(self.twists[inv[a]] for a in range(r))
        return PremodularData(self.ring.relabel(perm), s, tw, self.name, dict(self.metadata))

    def restrict(self, labels: Sequence[int], name: str = "") -> "PremodularData":
        ring = self.ring.subring(labels, name)
        s = tuple(tuple(self.stilde[a][b] for b in labels) for a in labels)
        tw = None if self.twists is None else tuple(self.twists[a] for a in labels)
        return PremodularData(ring, s, tw, name)

    def __repr__(self) -> str:
        return f"PremodularData({self.name or 'unnamed'}, rank={self.rank})"


def deligne_product_data(a: PremodularData, b: PremodularData, name: str | None = None) -> PremodularData:
    ring = deligne_product(a.ring, b.ring, name)
    s = tuple(tuple(a.stilde[i][k] * b.stilde[j][l] for k in range(a.rank) for l in range(b.rank))
              for i in range(a.rank) for j in range(b.rank))
    tw = None
    if a.twists is not None and b.twists is not None:
        tw = tuple(x + y for x in a.twists for y in b.twists)
    return PremodularData(ring, s, tw, ring.name)


# verification -----------------------------------------------------------------


def verify_premodular(data: PremodularData, require_positive_dims: bool = True) -> ValidationReport:
    """Check every premodular-data invariant exactly; each failing check carries a witness."""
    rep = ValidationReport(f"premodular data {data.name}".strip())
    ring_rep = validate(data.ring)
    rep.extend(ring_rep, "ring: ")
    if not ring_rep.ok:
        return rep
    S, r, N, dual = data.stilde, data.rank, data.ring.tensor, data.ring.dual

    bad = next(((i, j) for i in range(r) for j in range(i + 1, r) if S[i][j] != S[j][i]), None)
    rep.add("S symmetric", bad is None, bad)
    rep.add("S unit entry", S[0][0] == 1, (0, 0))

    bad = next((i for i in range(r) if not data.dim(i).is_real()), None)
    rep.add("dimensions real", bad is None, bad)
    if bad is None:
        if require_positive_dims:
            bad = next((i for i in range(r) if data.dim(i).sign() <= 0), None)
            rep.add("dimensions positive", bad is None, bad)
        else:
            bad = next((i for i in range(r) if data.dim(i).is_zero()), None)
            rep.add("dimensions nonzero", bad is None, bad,
                    detail="positivity not required")
        bad = next((i for i in range(r) if data.dim(i) != data.dim(dual[i])), None)
        rep.add("dimensions dual-invariant", bad is None, bad)

    bad = next(((i, j) for i in range(r) for j in range(r) if S[i][dual[j]] != S[i][j].conj()), None)
    rep.add("S conjugation", bad is None, bad)

    # characters: S_ij S_ik = S_0i * sum_m N_jk^m S_im
    bad = None
    if all(not data.dim(i).is_zero() for i in range(r)):
        for i in range(r):
            d = S[0][i]
            for j in range(r):
                for k in range(j, r):
                    rhs = cyc(0)
                    for m in np.nonzero(N[j, k])[0]:
                        rhs = rhs + int(N[j, k, m]) * S[i][int(m)]
                    if S[i][j] * S[i][k] != d * rhs:
                        bad = (i, j, k)
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("column characters", bad is None, bad)
    else:
        rep.skip("column characters", "a dimension vanishes")

    if data.twists is None:
        rep.skip("unit twist", "missing twists")
        rep.skip("balancing", "missing twists")
    else:
        rep.add("unit twist", data.twists[0] == 0, 0)
        bad = next((i for i in range(r) if data.twists[i] != data.twists[dual[i]]), None)
        rep.add("twists dual-invariant", bad is None, bad)
        bad = _balancing_defect(data)
        rep.add("balancing", bad is None, bad)
    return rep


def _balancing_defect(data: PremodularData):
    """First (a, b) violating theta_a theta_b S~_ab = sum_c N_{a* b}^c theta_c d_c."""
    r, N, dual, S = data.rank, data.ring.tensor, data.ring.dual, data.stilde
    th = [data.theta(i) for i in range(r)]
    for a in range(r):
        for b in range(a, r):
            rhs = cyc(0)
            for c in np.nonzero(N[dual[a], b])[0]:
                c = int(c)
                rhs = rhs + int(N[dual[a], b, c]) * th[c] * data.dim(c)
            if th[a] * th[b] * S[a][b] != rhs:
                return (a, b)
    return None


# Muger center -----------------------------------------------------------------


@dataclass
class CenterReport:
    transparent: tuple[int, ...]
    verdict: str  # "modular", "super-modular", "symmetric" or "other"
    fermion: int | None
    notes: list[str] = field(default_factory=list)

    @property
    def is_supermodular(self) -> bool:
        """Muger center is exactly {1, f} with f a fermion (sVec itself included)."""
        return self.fermion is not None and len(self.transparent) == 2

    def to_json(self) -> dict:
        return {"transparent": list(self.transparent), "verdict": self.verdict,
                "fermion": self.fermion, "notes": list(self.notes)}


def transparent_labels(data: PremodularData) -> tuple[int, ...]:
    S, r = data.stilde, data.rank
    return tuple(i for i in range(r)
                 if all(S[i][j] == data.dim(i) * data.dim(j) for j in range(r)))


def muger_center(data: PremodularData) -> CenterReport:
    trans = transparent_labels(data)
    r = data.rank
    ring = data.ring
    notes: list[str] = []
    fermion = None
    if len(trans) == 2:
        f = trans[1]
        if ring.product(f, f) == {0: 1}:
            if data.twists is None:
                raise MissingTwists("fermion detection needs the twist of the transparent invertible")
            if data.twists[f] == Fraction(1, 2):
                fermion = f
            else:
                notes.append(f"transparent invertible {ring.labels[f]} has twist exponent {data.twists[f]}, not 1/2")
    if len(trans) == r:
        verdict = "symmetric"
    elif len(trans) == 1:
        verdict = "modular"
    elif fermion is not None:
        verdict = "super-modular"
        fixed = [i for i in range(r) if ring.tensor[fermion, i, i] > 0]
        if fixed:
            verdict = "other"
            notes.append(f"fermion fixes labels {fixed}")
        else:
            fi = [fermion_action(ring, fermion, i) for i in range(r)]
            bad = [i for i in range(r) if data.dim(fi[i]) != data.dim(i)]
            if bad:
                verdict = "other"
                notes.append(f"d(f.i) != d(i) at {bad}")
            if data.twists is not None:
                bad = [i for i in range(r) if (data.twists[fi[i]] - data.twists[i] - Fraction(1, 2)) % 1 != 0]
                if bad:
                    verdict = "other"
                    notes.append(f"theta(f.i) != -theta(i) at {bad}")
    else:
        verdict = "other"
    return CenterReport(trans, verdict, fermion, notes)


def fermion_action(ring: FusionRing, f: int, i: int) -> int:
    prod = ring.product(f, i)
    if len(prod) != 1 or next(iter(prod.values())) != 1:
        raise ValueError(f"{ring.labels[f]} is not invertible")
    return next(iter(prod))


# split detection -----------------------------------------------------------------


@dataclass
class SplitWitness:
    labels: tuple[int, ...]
    factor: FusionRing
    isomorphism: tuple[int, ...]
    grading: tuple[int, ...] | None
    method: str

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "factor_rank": self.factor.rank,
                "isomorphism": list(self.isomorphism), "grading": None if self.grading is None else list(self.grading),
                "method": self.method}


def svec_ring() -> FusionRing:
    return group_ring_cyclic(2, ["1", "f"], "sVec")


def _product_with_svec(factor_labels: Sequence[int], ring: FusionRing, name: str):
    factor = ring.subring(factor_labels, name)
    prod = deligne_product(factor, svec_ring())
    isos = find_isomorphisms(prod, ring)
    return factor, (isos[0] if isos else None)


def split_ring(ring: FusionRing, f: int, name: str = "factor") -> SplitWitness | None:
    """Grothendieck-level splitting off of sVec = {1, f} via a Z2-grading with f odd."""
    for grading in z2_gradings(ring):
        if grading[f] != 1:
            continue
        labels = [i for i in range(ring.rank) if grading[i] == 0]
        factor, iso = _product_with_svec(labels, ring, name)
        if iso is not None:
            return SplitWitness(tuple(labels), factor, iso, grading, "grading")
    return None


def split_detect(data: PremodularData, f: int | None = None,
                 candidate: Sequence[int] | None = None) -> SplitWitness | None:
    """Fusion-level splitting: a modular factor D with the ring of D x sVec isomorphic to the ring.

    Without a candidate, searches the Z2-gradings for one that puts the fermion
    in the odd part; the even part is then the factor.  With a candidate label
    set, checks that it is a modular subcategory of half the global dimension.
    """
    center = muger_center(data)
    if not center.is_supermodular:
        raise NotSuperModular(f"{data.name or 'data'} has Muger center {center.transparent} ({center.verdict})")
    if f is None:
        f = center.fermion
    if f != center.fermion:
        raise NotSuperModular(f"label {f} is not the fermion")
    ring = data.ring
    if candidate is None:
        return split_ring(ring, f)
    cand = list(candidate)
    try:
        sub = data.restrict(cand)
    except ValueError:
        return None
    if sub.rank > 1 and muger_center(sub).verdict != "modular":
        return None
    if sub.dsq * 2 != data.dsq:
        return None
    factor, iso = _product_with_svec(cand, ring, "factor")
    if iso is None:
        return None
    return SplitWitness(tuple(cand), factor, iso, None, "dimension criterion")


def trivial_data() -> PremodularData:
    return PremodularData(vec_ring(), ((1,),), (Fraction(0),), "Vec")
