"""Fusion rings (unital based rings) at the Grothendieck level.

``tensor[i, j, k]`` is the multiplicity of label ``k`` in ``i ⊗ j``.  The
fusion matrix of ``i`` acts on the right factor: ``fusion_matrix(i)[k, j]``
equals ``tensor[i, j, k]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np
import sympy

from .algebra import AlgebraicReal, real_roots
from .errors import NotValidated, ShapeMismatch
from .report import ValidationReport


@dataclass(frozen=True, eq=False)
class FusionRing:
    tensor: np.ndarray
    dual: tuple[int, ...]
    labels: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        t = np.array(self.tensor, dtype=np.int64)
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
            raise ShapeMismatch(f"fusion tensor must be a cube, got shape {t.shape}")
        r = t.shape[0]
        if len(self.dual) != r:
            raise ShapeMismatch(f"dual has length {len(self.dual)}, rank is {r}")
        t.setflags(write=False)
        object.__setattr__(self, "tensor", t)
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(r))
        if len(labels) != r:
            raise ShapeMismatch(f"{len(labels)} labels for rank {r}")
        object.__setattr__(self, "labels", labels)

    # construction -----------------------------------------------------------

    @classmethod
    def from_rules(cls, labels: Sequence[str], rules: Mapping[tuple[str, str], Iterable[str]],
                   dual: Mapping[str, str] | None = None, name: str = "",
                   commutative: bool = True) -> "FusionRing":
        """Build a ring from products like ``{("X", "X"): ["1", "X"]}``.

        The first label is the unit; products with the unit are filled in, and
        with ``commutative`` each product also defines its mirror.  Repeated
        labels in a product list count with multiplicity.
        """
        idx = {a: i for i, a in enumerate(labels)}
        r = len(labels)
        t = np.zeros((r, r, r), dtype=np.int64)
        for i in range(r):
            t[0, i, i] = t[i, 0, i] = 1
        for (a, b), prods in rules.items():
            row = np.zeros(r, dtype=np.int64)
            for c in prods:
                row[idx[c]] += 1
            t[idx[a], idx[b]] = row
            if commutative:
                t[idx[b], idx[a]] = row
        if dual is None:
            d = [int(np.nonzero(t[i, :, 0])[0][0]) if t[i, :, 0].any() else i for i in range(r)]
        else:
            d = [idx[dual.get(a, a)] for a in labels]
        return cls(t, tuple(d), tuple(labels), name)

    def relabel(self, perm: Sequence[int], name: str | None = None) -> "FusionRing":
        """Ring in which old label ``i`` is called ``perm[i]``."""
        r = self.rank
        inv = [0] * r
        for i, p in enumerate(perm):
            inv[p] = i
        t = self.tensor[np.ix_(inv, inv, inv)]
        dual = tuple(perm[self.dual[inv[n]]] for n in range(r))
        labels = tuple(self.labels[inv[n]] for n in range(r))
        return FusionRing(t, dual, labels, self.name if name is None else name)

    def with_name(self, name: str) -> "FusionRing":
        return FusionRing(self.tensor, self.dual, self.labels, name)

    # basic structure -----------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.tensor.shape[0]

    def fusion_matrix(self, i: int) -> np.ndarray:
        return self.tensor[i].T

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.tensor, self.tensor.transpose(1, 0, 2)))

    def is_self_dual(self, i: int) -> bool:
        return self.dual[i] == i

    def product(self, i: int, j: int) -> dict[int, int]:
        return {k: int(v) for k, v in enumerate(self.tensor[i, j]) if v}

    def invertibles(self) -> list[int]:
        """Labels whose product with their dual is exactly the unit (equivalently FPdim 1)."""
        return [i for i in range(self.rank)
                if int(self.tensor[i, self.dual[i]].sum()) == 1]

    def subring(self, labels: Sequence[int], name: str = "") -> "FusionRing":
        """Restriction to a set of labels closed under products and duals (unit first)."""
        labels = list(labels)
        pos = {a: n for n, a in enumerate(labels)}
        for a in labels:
            if self.dual[a] not in pos:
                raise ValueError(f"label set is not closed under duals ({a})")
            for b in labels:
                for c in self.product(a, b):
                    if c not in pos:
                        raise ValueError(f"label set is not closed under products ({a}, {b}) -> {c}")
        t = self.tensor[np.ix_(labels, labels, labels)]
        return FusionRing(t, tuple(pos[self.dual[a]] for a in labels),
                          tuple(self.labels[a] for a in labels), name)

    def key(self) -> tuple:
        return (self.tensor.shape, self.tensor.tobytes(), self.dual)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FusionRing({self.name or 'unnamed'}, rank={self.rank})"

    def describe(self) -> str:
        """Human-readable multiplication table."""
        lines = []
        for i in range(self.rank):
            for j in range(i if self.is_commutative() else 0, self.rank):
                if i == 0 or j == 0:
                    continue
                terms = []
                for k, m in self.product(i, j).items():
                    terms.append(self.labels[k] if m == 1 else f"{m}{self.labels[k]}")
                lines.append(f"{self.labels[i]} x {self.labels[j]} = {' + '.join(terms)}")
        return "\n".join(lines)


@dataclass(frozen=True)
class DimensionVector:
    entries: tuple[AlgebraicReal, ...]
    total: AlgebraicReal

    def __getitem__(self, i: int) -> AlgebraicReal:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)


# validation -----------------------------------------------------------------


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def associativity_defect(tensor: np.ndarray):
    """First (i, j, k, l) where (i⊗j)⊗k and i⊗(j⊗k) differ in multiplicity of l, or None."""
    lhs = np.einsum("ijm,mkl->ijkl", tensor, tensor)
    rhs = np.einsum("jkm,iml->ijkl", tensor, tensor)
    return _first(lhs != rhs)


def validate(ring: FusionRing) -> ValidationReport:
    """Check the unital based ring axioms; each check records its first failing index tuple."""
    t, dual, r = ring.tensor, ring.dual, ring.rank
    rep = ValidationReport(f"fusion ring {ring.name or ''}".strip())
    rep.add("nonnegative", bool((t >= 0).all()), _first(t < 0))

    eye = np.eye(r, dtype=np.int64)
    bad = _first(t[0] != eye)
    if bad is None:
        bad2 = _first(t[:, 0, :] != eye)
        bad = None if bad2 is None else (bad2[0], 0, bad2[1])
    else:
        bad = (0, bad[0], bad[1])
    rep.add("unit", bad is None, bad)

    involutive = all(0 <= dual[i] < r and dual[dual[i]] == i for i in range(r)) and dual[0] == 0
    rep.add("dual involution", involutive,
            next((i for i in range(r) if not (0 <= dual[i] < r) or dual[dual[i]] != i), 0))
    if not involutive:
        rep.skip("dual pairing", "dual is not an involution")
        rep.skip("transpose", "dual is not an involution")
    else:
        pairing = np.zeros((r, r), dtype=np.int64)
        for i in range(r):
            pairing[i, dual[i]] = 1
        bad = _first(t[:, :, 0] != pairing)
        rep.add("dual pairing", bad is None, None if bad is None else (bad[0], bad[1], 0))
        # N_{i*} is the transpose of N_i: N[i*, j, k] == N[i, k, j]
        bad = _first(t[list(dual)] != t.transpose(0, 2, 1))
        rep.add("transpose", bad is None, bad)
    rep.add("associativity", (bad := associativity_defect(t)) is None, bad)
    comm = ring.is_commutative()
    rep.add("commutative", True, detail="commutative" if comm else "non-commutative")
    return rep


def require_valid(ring: FusionRing) -> None:
    rep = validate(ring)
    if not rep.ok:
        f = rep.first_failure()
        raise NotValidated(f"{ring!r} fails {f.name} at {f.witness}")


# dimensions -----------------------------------------------------------------


@lru_cache(maxsize=2048)
def _pf_root(matrix_key: tuple) -> AlgebraicReal:
    n = int(round(len(matrix_key) ** 0.5))
    M = sympy.Matrix(n, n, list(matrix_key))
    cp = M.charpoly().all_coeffs()
    # real_roots returns every real root in increasing order, so the last one is
    # certified to be the largest; a nonnegative matrix's PF eigenvalue is that root
    return real_roots([int(c) for c in cp])[-1]


def fpdim_of_matrix(M: np.ndarray) -> AlgebraicReal:
    return _pf_root(tuple(int(v) for v in np.asarray(M).flatten()))


def fpdims(ring: FusionRing) -> DimensionVector:
    """Certified Perron-Frobenius dimensions of each label and their sum of squares."""
    require_valid(ring)
    ents = tuple(fpdim_of_matrix(ring.fusion_matrix(i)) for i in range(ring.rank))
    total = AlgebraicReal.rational(0)
    for d in ents:
        total = total + d * d
    total._normalized()
    return DimensionVector(ents, total)


# isomorphisms -----------------------------------------------------------------


def _label_invariant(ring: FusionRing, i: int) -> tuple:
    M = ring.fusion_matrix(i)
    M2 = M @ M
    return (ring.dual[i] == i, tuple(sorted(M.flatten().tolist())), int(np.trace(M)),
            int(np.trace(M2)), int(np.trace(M2 @ M)), int(ring.tensor[i, i, i]))


def find_isomorphisms(r1: FusionRing, r2: FusionRing) -> list[tuple[int, ...]]:
    """All label bijections sigma (sigma[0] = 0) carrying r1's tensor onto r2's, sorted."""
    if r1.rank != r2.rank:
        return []
    r = r1.rank
    inv1 = [_label_invariant(r1, i) for i in range(r)]
    inv2 = [_label_invariant(r2, i) for i in range(r)]
    if sorted(inv1) != sorted(inv2):
        return []
    t1, t2 = r1.tensor, r2.tensor
    # assign labels in order of rarest invariant first
    order = sorted(range(1, r), key=lambda i: (inv2.count(inv1[i]), i))
    order = [0] + order
    sigma = [-1] * r
    used = [False] * r
    out: list[tuple[int, ...]] = []

    def consistent(pos: int) -> bool:
        a = order[pos]
        sa = sigma[a]
        if sigma[r1.dual[a]] not in (-1, r2.dual[sa]):
            return False
        done = order[: pos + 1]
        for b in done:
            sb = sigma[b]
            for c in done:
                sc = sigma[c]
                if (t1[a, b, c] != t2[sa, sb, sc] or t1[b, a, c] != t2[sb, sa, sc]
                        or t1[b, c, a] != t2[sb, sc, sa]):
                    return False
        return True

    def search(pos: int) -> None:
        if pos == r:
            out.append(tuple(sigma))
            return
        a = order[pos]
        cands = [0] if a == 0 else [x for x in range(1, r) if not used[x] and inv2[x] == inv1[a]]
        for x in cands:
            sigma[a] = x
            used[x] = True
            if consistent(pos):
                search(pos + 1)
            used[x] = False
            sigma[a] = -1

    search(0)
    return sorted(out)


def are_isomorphic(r1: FusionRing, r2: FusionRing) -> bool:
    return bool(find_isomorphisms(r1, r2))


def canonical_key(ring: FusionRing) -> tuple:
    """Lexicographically least (tensor, dual) encoding over relabelings fixing 0."""
    r = ring.rank
    best = None
    for rest in itertools.permutations(range(1, r)):
        perm = (0,) + rest
        rl = ring.relabel(perm)
        k = (tuple(rl.tensor.flatten().tolist()), rl.dual)
        if best is None or k < best:
            best = k
    return (r,) + best


# gradings -----------------------------------------------------------------


def z2_gradings(ring: FusionRing) -> list[tuple[int, ...]]:
    """All 2-colorings c with c[0] = 0 and N_{ij}^k != 0 only if c_i + c_j + c_k is even.

    Solved as a linear system over GF(2) (rows are bitmasks), then the kernel is enumerated.
    """
    r = ring.rank
    rows = {1}  # c_0 = 0
    for i, j, k in zip(*np.nonzero(ring.tensor)):
        m = (1 << int(i)) ^ (1 << int(j)) ^ (1 << int(k))
        if m:
            rows.add(m)
    pivots: dict[int, int] = {}
    for row in rows:
        for p, prow in pivots.items():
            if row >> p & 1:
                row ^= prow
        if row:
            p = row.bit_length() - 1
            for q in list(pivots):
                if pivots[q] >> p & 1:
                    pivots[q] ^= row
            pivots[p] = row
    free = [v for v in range(r) if v not in pivots]
    out = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        c = [0] * r
        for v, b in zip(free, bits):
            c[v] = b
        for p, prow in pivots.items():
            s = 0
            for v in free:
                if prow >> v & 1:
                    s ^= c[v]
            c[p] = s
        out.append(tuple(c))
    return sorted(out)


def invertibles_and_z2_gradings(ring: FusionRing) -> tuple[list[int], list[tuple[int, ...]]]:
    require_valid(ring)
    return ring.invertibles(), z2_gradings(ring)


# products -----------------------------------------------------------------


def _pair_label(a: str, b: str) -> str:
    if b == "1":
        return a
    if a == "1":
        return b
    return f"{a}{b}"


def deligne_product(r1: FusionRing, r2: FusionRing, name: str | None = None) -> FusionRing:
    """Ring on label pairs (a, b), indexed a * rank(r2) + b, with componentwise products."""
    n1, n2 = r1.rank, r2.rank
    t = np.einsum("ace,bdg->abcdeg", r1.tensor, r2.tensor).reshape(n1 * n2, n1 * n2, n1 * n2)
    dual = tuple(r1.dual[a] * n2 + r2.dual[b] for a in range(n1) for b in range(n2))
    labels = tuple(_pair_label(la, lb) for la in r1.labels for lb in r2.labels)
    if len(set(labels)) != len(labels):
        labels = tuple(f"({la},{lb})" for la in r1.labels for lb in r2.labels)
    nm = name if name is not None else f"{r1.name or 'R1'} x {r2.name or 'R2'}"
    return FusionRing(t, dual, labels, nm)


def vec_ring() -> FusionRing:
    return FusionRing(np.ones((1, 1, 1), dtype=np.int64), (0,), ("1",), "Vec")


def group_ring_cyclic(n: int, labels: Sequence[str] | None = None, name: str = "") -> FusionRing:
    t = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            t[a, b, (a + b) % n] = 1
    return FusionRing(t, tuple((-a) % n for a in range(n)),
                      tuple(labels) if labels else tuple(["1"] + [f"g{a}" for a in range(1, n)]),
                      name or f"Z{n}")
