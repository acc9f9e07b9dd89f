"""Bounded exact search for super-modular fusion rings of rank 2, 4 and 6.

Pipeline: enumerate candidate naive fusion rules of the fermionic quotient,
keep those admitting a symmetric, projectively unitary simultaneous
diagonalizer and passing the Frobenius-Schur feasibility relaxation, lift the
survivors to fusion rings with a fermion, and sort the lifts into split and
non-split classes.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
import sympy

from .algebra import AlgebraicReal, CyclotomicElement, poly_eval, real_roots
from .catalog import ising_rules, psu2_adjoint, rank_le3_modular_entries, svec
from .errors import BoundTooSmall, UnsupportedRank
from .fusion_ring import DimensionVector, FusionRing, canonical_key, find_isomorphisms, validate
from .premodular import SplitWitness, split_ring
from .quotient import match_relabeled

_x = sympy.Symbol("x")

EXTERNAL_O4 = "[O4, Theorem 3.5]: no premodular category has the rank-3 fusion rules of quotient case (iii)"
EXTERNAL_RANK3 = "modular fusion rings of rank <= 3 are exactly semion, Fibonacci, Z3, Ising, PSU(2)_5"
EXTERNAL_B2 = "[B2, Proposition 4.10]: rank-4 non-split super-modular is PSU(2)_6 (re-derived here)"

DEFAULT_BOUND = 8


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SUPERMODULAR_WORKERS", "1")))
    except ValueError:
        return 1


# quotient rule families -----------------------------------------------------------------


def selfdual_rank3_rules(k: int, l: int, m: int, n: int) -> np.ndarray:
    """Naive rules with N1 = [[0,1,0],[1,m,k],[0,k,l]] and N2 = [[0,0,1],[0,k,l],[1,l,n]]."""
    t = np.zeros((3, 3, 3), dtype=np.int64)
    t[0] = np.eye(3, dtype=np.int64)
    t[1] = [[0, 1, 0], [1, m, k], [0, k, l]]
    t[2] = [[0, 0, 1], [0, k, l], [1, l, n]]
    return t


def selfdual_rank2_rules(m: int) -> np.ndarray:
    t = np.zeros((2, 2, 2), dtype=np.int64)
    t[0] = np.eye(2, dtype=np.int64)
    t[1] = [[0, 1], [1, m]]
    return t


def nonselfdual_rank3_rules(u: int, v: int) -> np.ndarray:
    """x1* = x2 with x1^2 = u x1 + v x2 and x1 x2 = 1 + u x1 + u x2 (Frobenius reciprocity)."""
    t = np.zeros((3, 3, 3), dtype=np.int64)
    t[0] = np.eye(3, dtype=np.int64)
    t[1] = [[0, 1, 0], [0, u, v], [1, u, u]]
    t[2] = [[0, 0, 1], [1, u, u], [0, v, u]]
    return t


def _swap12(params: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    k, l, m, n = params
    return (l, k, n, m)


def _family_key(params: tuple[int, int, int, int]) -> tuple:
    # prefer the member written with l = 1 (the normal form of case (iii)), then m <= n
    return (params[1] != 1, params[2] > params[3], params)


# characters -----------------------------------------------------------------


@dataclass
class CharacterTable:
    """Characters of a commutative self-dual ring via a generic element A with distinct eigenvalues.

    Each basis element is a rational polynomial g_i in A, so the value of the
    character attached to eigenvalue lambda on x_i is g_i(lambda).
    """

    charpoly: tuple[int, ...]
    roots: list[AlgebraicReal]
    polys: list[tuple[Fraction, ...]]
    fp: int
    combination: tuple[int, ...]

    def value(self, char: int, label: int) -> AlgebraicReal:
        return poly_eval(self.polys[label], self.roots[char])

    def fp_expr(self, coeffs) -> AlgebraicReal:
        """A rational polynomial (in the FP eigenvalue) evaluated exactly."""
        return poly_eval(coeffs, self.roots[self.fp])


def character_table(nhat: np.ndarray) -> CharacterTable | None:
    """None when no combination of the basis matrices has distinct eigenvalues."""
    r = nhat.shape[0]
    mats = [sympy.Matrix(nhat[i].tolist()) for i in range(r)]
    for c in range(1, 4 * r + 8):
        combo = tuple([0, 1] + [c ** (e - 1) for e in range(2, r)])[:r]
        A = sympy.zeros(r, r)
        for w, M in zip(combo, mats):
            A += w * M
        cp = A.charpoly(_x)
        P = sympy.Poly(cp.as_expr(), _x)
        if sympy.degree(sympy.gcd(P, P.diff(_x)), _x) > 0:
            continue
        powers = [sympy.eye(r)]
        for _ in range(1, r):
            powers.append(powers[-1] * A)
        basis = sympy.Matrix([[p[i, j] for p in powers] for i in range(r) for j in range(r)])
        polys = []
        for M in mats:
            rhs = sympy.Matrix([M[i, j] for i in range(r) for j in range(r)])
            sol, params = basis.gauss_jordan_solve(rhs)
            coeffs = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in sol]
            polys.append(tuple(reversed(coeffs)))  # highest degree first
        roots = real_roots([int(v) for v in P.all_coeffs()])
        if len(roots) != r:
            return None  # complex eigenvalues: not a self-dual ring
        return CharacterTable(tuple(int(v) for v in P.all_coeffs()), roots, polys, r - 1, combo)
    return None


def _poly_mul(a, b):
    return tuple(Fraction(v) for v in (sympy.Poly(list(a), _x) * sympy.Poly(list(b), _x)).all_coeffs())


def _poly_add(a, b, sa=1, sb=1):
    P = sa * sympy.Poly(list(a), _x, domain="QQ") + sb * sympy.Poly(list(b), _x, domain="QQ")
    return tuple(Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in P.all_coeffs()) or (Fraction(0),)


def _poly_scale(a, s):
    return tuple(Fraction(v) * s for v in a)


# candidate screening -----------------------------------------------------------------


@dataclass
class FSLabelCertificate:
    label: int
    lower_minus_dsq: int   # sign of L - Dhat^2
    upper_minus_dsq: int   # sign of U - Dhat^2
    lower_plus_dsq: int    # sign of L + Dhat^2
    upper_plus_dsq: int    # sign of U + Dhat^2

    @property
    def feasible(self) -> bool:
        plus = self.lower_minus_dsq <= 0 <= self.upper_minus_dsq
        minus = self.lower_plus_dsq <= 0 <= self.upper_plus_dsq
        return plus or minus

    def to_json(self) -> dict:
        return {"label": self.label, "sign(L-D^2/2)": self.lower_minus_dsq,
                "sign(U-D^2/2)": self.upper_minus_dsq, "sign(L+D^2/2)": self.lower_plus_dsq,
                "sign(U+D^2/2)": self.upper_plus_dsq, "feasible": self.feasible}


def fs_feasibility(nhat: np.ndarray, table: CharacterTable) -> list[FSLabelCertificate]:
    """Relaxed indicator test: can sum_ab nhat_ab^j d_a d_b Re(r_ab) equal +-Dhat^2 with |Re r_ab| <= 1?"""
    r = nhat.shape[0]
    g = table.polys
    dsq = (Fraction(0),)
    for a in range(r):
        dsq = _poly_add(dsq, _poly_mul(g[a], g[a]))
    certs = []
    for j in range(r):
        diag = (Fraction(0),)
        off = (Fraction(0),)
        for a in range(r):
            if nhat[a, a, j]:
                diag = _poly_add(diag, _poly_scale(_poly_mul(g[a], g[a]), int(nhat[a, a, j])))
            for b in range(a + 1, r):
                if nhat[a, b, j]:
                    off = _poly_add(off, _poly_scale(_poly_mul(g[a], g[b]), 2 * int(nhat[a, b, j])))
        lower = _poly_add(diag, off, 1, -1)
        upper = _poly_add(diag, off)
        s = [table.fp_expr(_poly_add(lower, dsq, 1, -1)).sign(),
             table.fp_expr(_poly_add(upper, dsq, 1, -1)).sign(),
             table.fp_expr(_poly_add(lower, dsq)).sign(),
             table.fp_expr(_poly_add(upper, dsq)).sign()]
        certs.append(FSLabelCertificate(j, *s))
    return certs


def _selfdual_mock_s(nhat: np.ndarray, table: CharacterTable):
    """(assignment, Shat) with Shat_ij = phi_{sigma j}(x_i) d_j symmetric and Shat^2 = Dhat^2 Id, or None.

    Columns are pairwise orthogonal automatically: they are eigenvectors of the
    symmetric matrix A for distinct eigenvalues.  What remains is symmetry and
    the common column norm.
    """
    r = nhat.shape[0]
    fp = table.fp
    d = [table.value(fp, i) for i in range(r)]
    g = table.polys
    h = (Fraction(0),)
    for a in range(r):
        h = _poly_add(h, _poly_mul(g[a], g[a]))
    dsq = table.fp_expr(h)
    others = [c for c in range(r) if c != fp]
    for perm in itertools.permutations(others):
        sigma = (fp,) + perm
        ok = True
        for i in range(r):
            for j in range(i + 1, r):
                if table.value(sigma[j], i) * d[j] != table.value(sigma[i], j) * d[i]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if not all(d[j] * d[j] * poly_eval(h, table.roots[sigma[j]]) == dsq for j in range(1, r)):
            continue
        shat = tuple(tuple(table.value(sigma[j], i) * d[j] if j else d[i] for j in range(r))
                     for i in range(r))
        return sigma, shat, dsq
    return None


def _pointed_mock_s(ring: FusionRing):
    """Character table of a pointed commutative ring, as a symmetric cyclotomic matrix, or None."""
    r = ring.rank
    n = r
    roots = [CyclotomicElement.zeta(n, k) for k in range(n)]
    chars = []
    for vals in itertools.product(range(n), repeat=r - 1):
        phi = (0,) + vals
        if all(roots[phi[a]] * roots[phi[b]] == roots[phi[ring.product(a, b) and next(iter(ring.product(a, b)))]]
               for a in range(r) for b in range(r)):
            chars.append(phi)
    if len(chars) != r:
        return None
    for order in itertools.permutations(range(1, r)):
        cols = [chars[0]] + [chars[o] for o in order]
        S = tuple(tuple(roots[cols[j][i]] for j in range(r)) for i in range(r))
        if all(S[i][j] == S[j][i] for i in range(r) for j in range(r)):
            return S
    return None


# candidates -----------------------------------------------------------------


@dataclass
class QuotientCandidate:
    params: tuple[int, ...]
    nhat: np.ndarray
    dual: tuple[int, ...]
    dims: DimensionVector
    shat: tuple
    family: str
    case: str
    members: tuple[tuple[int, ...], ...] = ()
    alpha: int | None = None
    fs: list[FSLabelCertificate] = field(default_factory=list)
    sigma: tuple[int, ...] | None = None

    @property
    def rank(self) -> int:
        return self.nhat.shape[0]

    @property
    def k(self):
        return self.params[0]

    def ring(self) -> FusionRing:
        return FusionRing(self.nhat, self.dual, tuple(["1"] + [f"x{i}" for i in range(1, self.rank)]),
                          f"quotient {self.family}")

    def to_json(self) -> dict:
        return {"params": list(self.params), "members": [list(m) for m in self.members],
                "family": self.family, "case": self.case, "alpha": self.alpha,
                "nhat": self.nhat.tolist(),
                "dims": [{"minpoly": list(d.minpoly), "interval": [str(v) for v in d.interval]}
                         for d in self.dims.entries],
                "dims_approx": {"values": [d.approx(12) for d in self.dims.entries],
                                "note": "approximation, interval width < 1e-12"},
                "fs": [c.to_json() for c in self.fs]}


def _dims_from(table: CharacterTable, r: int, dsq: AlgebraicReal) -> DimensionVector:
    return DimensionVector(tuple(table.value(table.fp, i) for i in range(r)), dsq)


def _alpha_of(params) -> int | None:
    for k, l, m, n in (params, _swap12(params)):
        if l == 1 and k == 2 * n and m == 2 * n * n:
            return n
    return None


@lru_cache(maxsize=None)
def _reference_quotients() -> list[tuple[str, str, FusionRing]]:
    return [
        ("Ising", "i", ising_rules()),
        ("PSU(2)_5", "ii", FusionRing(selfdual_rank3_rules(1, 1, 0, 1), (0, 1, 2), ("1", "X1", "X2"))),
    ]


def _name_rank3_family(nhat: np.ndarray, params) -> tuple[str, str, int | None]:
    ring = FusionRing(nhat, (0, 1, 2))
    alpha = _alpha_of(params)
    for name, case, ref in _reference_quotients():
        if find_isomorphisms(ring, ref):
            return name, case, alpha
    if alpha is not None:
        return f"alpha={alpha}", "iii", alpha
    return f"k,l,m,n={params}", "?", None


def screen_selfdual_rank3(params: tuple[int, int, int, int]) -> QuotientCandidate | None:
    """Run every filter on one parameter tuple; None if rejected."""
    nhat = selfdual_rank3_rules(*params)
    N1, N2 = nhat[1], nhat[2]
    if not np.array_equal(N1 @ N2, N2 @ N1):
        return None
    ring = FusionRing(nhat, (0, 1, 2))
    if not validate(ring).ok:
        return None
    table = character_table(nhat)
    if table is None:
        return None
    ms = _selfdual_mock_s(nhat, table)
    if ms is None:
        return None
    sigma, shat, dsq = ms
    fs = fs_feasibility(nhat, table)
    if not all(c.feasible for c in fs):
        return None
    family, case, alpha = _name_rank3_family(nhat, params)
    return QuotientCandidate(params, nhat, (0, 1, 2), _dims_from(table, 3, dsq), shat, family, case,
                             (params,), alpha, fs, sigma)


def _map(fn, items: list) -> list:
    w = _workers()
    if w > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=w) as ex:
            return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * w))))
    return [fn(x) for x in items]


def enumerate_selfdual_rank6_quotients(param_bound: int = DEFAULT_BOUND) -> list[QuotientCandidate]:
    """Families of self-dual rank-3 naive rules with 0 <= k, l, m, n <= bound surviving all filters."""
    if param_bound < 2:
        raise BoundTooSmall(f"bound {param_bound} excludes known solutions (k = 2 occurs); need >= 2")
    tuples = list(itertools.product(range(param_bound + 1), repeat=4))
    # commutation is a cheap integer test; run it before dispatching the exact work
    comm = [p for p in tuples if _commutes(p)]
    results = [c for c in _map(screen_selfdual_rank3, comm) if c is not None]
    return _group_families(results)


def _commutes(p) -> bool:
    t = selfdual_rank3_rules(*p)
    return bool(np.array_equal(t[1] @ t[2], t[2] @ t[1]))


def _group_families(results: list[QuotientCandidate]) -> list[QuotientCandidate]:
    by = {c.params: c for c in results}
    out = []
    seen = set()
    for p in sorted(by, key=_family_key):
        if p in seen:
            continue
        orbit = tuple(sorted({p, _swap12(p)} & set(by)))
        seen.update(orbit)
        rep = by[p]
        rep.members = orbit
        out.append(rep)
    order = {"i": 0, "ii": 1, "iii": 2}
    out.sort(key=lambda c: (order.get(c.case, 3), c.alpha or 0, c.params))
    return out


def enumerate_rank2_quotients(param_bound: int = DEFAULT_BOUND) -> list[QuotientCandidate]:
    """Naive rules [[0,1],[1,m]] for rank-4 super-modular categories."""
    if param_bound < 2:
        raise BoundTooSmall(f"bound {param_bound} excludes known solutions (m = 2 occurs); need >= 2")
    out = []
    for m in range(param_bound + 1):
        nhat = selfdual_rank2_rules(m)
        table = character_table(nhat)
        if table is None:
            continue
        ms = _selfdual_mock_s(nhat, table)
        if ms is None:
            continue
        sigma, shat, dsq = ms
        fs = fs_feasibility(nhat, table)
        if not all(c.feasible for c in fs):
            continue
        names = {0: "Z2", 1: "Fibonacci"}
        out.append(QuotientCandidate((m,), nhat, (0, 1), _dims_from(table, 2, dsq), shat,
                                     names.get(m, f"m={m}"), "rank2", ((m,),), None, fs, sigma))
    return out


def enumerate_nonselfdual_rank3_quotients(param_bound: int = DEFAULT_BOUND) -> list[QuotientCandidate]:
    out = []
    for u, v in itertools.product(range(param_bound + 1), repeat=2):
        nhat = nonselfdual_rank3_rules(u, v)
        ring = FusionRing(nhat, (0, 2, 1))
        if not validate(ring).ok:
            continue
        if len(ring.invertibles()) != ring.rank:
            # a non-pointed survivor would need complex characters; none exists at rank 3
            raise NotImplementedError(f"non-pointed non-self-dual quotient (u, v) = ({u}, {v})")
        S = _pointed_mock_s(ring)
        if S is None:
            continue
        one = AlgebraicReal.rational(1)
        dims = DimensionVector((one,) * 3, AlgebraicReal.rational(3))
        out.append(QuotientCandidate((u, v), nhat, (0, 2, 1), dims, S, "Z3", "non-self-dual", ((u, v),)))
    return out


# alpha feasibility -----------------------------------------------------------------


@dataclass
class AlphaVerdict:
    alpha: int
    feasible: bool
    certificate: list[tuple[str, int]]
    lower_bound_sign: int

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "feasible": self.feasible,
                "lower_bound_sign": self.lower_bound_sign,
                "certificate": [{"claim": c, "sign": s} for c, s in self.certificate]}


def alpha_feasibility(alpha: int) -> AlphaVerdict:
    """Exact test of the indicator relaxation for X2 in quotient case (iii) with parameter alpha.

    With d2 = alpha + sqrt(alpha^2 + 2) and d1 = 1 + alpha d2, the smallest value
    of 2a d1^2 + a d2^2 + 2 d1 d2 Re + 2 d2 Re -+ Dhat^2 over |Re| <= 1 is
    L1 = (2a-1) d1^2 + (a-1) d2^2 - 2 d1 d2 - 2 d2 - 1; the label is infeasible iff L1 > 0.
    All quantities are polynomials in d2, reduced by d2^2 = 2a d2 + 2.
    """
    minpoly = [1, -2 * alpha, -2]
    d2 = real_roots(minpoly)[-1]

    def lin(expr: sympy.Expr) -> AlgebraicReal:
        P = sympy.Poly(sympy.expand(expr), _x, domain="QQ").rem(sympy.Poly(minpoly, _x))
        coeffs = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in P.all_coeffs()]
        return poly_eval(coeffs or [Fraction(0)], d2)

    x = _x
    d1 = 1 + alpha * x
    L1 = (2 * alpha - 1) * d1 ** 2 + (alpha - 1) * x ** 2 - 2 * d1 * x - 2 * x - 1
    L2 = 3 * d1 ** 2 + x ** 2 - 2 * d1 * x - 2 * x - 1
    L3 = d1 ** 2 + (2 * alpha - 2) * x - 1
    s1 = lin(L1).sign()
    cert: list[tuple[str, int]] = [("L1 = (2a-1)d1^2 + (a-1)d2^2 - 2d1d2 - 2d2 - 1", s1)]
    if s1 > 0:
        cert += [
            ("d1 - d2", lin(d1 - x).sign()),
            ("d2 - 2a", lin(x - 2 * alpha).sign()),
            ("L1 - L2 (L2 = 3d1^2 + d2^2 - 2d1d2 - 2d2 - 1)", lin(L1 - L2).sign()),
            ("L2 - L3 (L3 = d1^2 + (2a-2)d2 - 1)", lin(L2 - L3).sign()),
            ("L3", lin(L3).sign()),
        ]
    return AlphaVerdict(alpha, s1 <= 0, cert, s1)


# lifting -----------------------------------------------------------------


@dataclass
class LiftSolution:
    ring: FusionRing
    split: bool
    witness: SplitWitness | None
    x_parts: dict
    coefficients: dict | None = None
    rejected: str | None = None
    external_facts: list[str] = field(default_factory=list)

    @property
    def a(self):
        return (self.coefficients or {}).get("a")

    @property
    def b(self):
        return (self.coefficients or {}).get("b")

    @property
    def c(self):
        return (self.coefficients or {}).get("c")

    @property
    def d(self):
        return (self.coefficients or {}).get("d")


def _multisets(r0: int):
    return [m for m in itertools.combinations_with_replacement(range(1, r0), 3)]


def _lift_tensor(nhat: np.ndarray, qdual: Sequence[int], xs: dict) -> np.ndarray:
    r0 = nhat.shape[0]
    r = 2 * r0
    t = np.zeros((r, r, r), dtype=np.int64)
    for s, a in itertools.product((0, 1), range(r0)):
        for u, b in itertools.product((0, 1), range(r0)):
            for w, c in itertools.product((0, 1), range(r0)):
                cd = qdual[c]
                total = int(nhat[a, b, c])
                key = tuple(sorted((a, b, cd)))
                if 0 in key:
                    x = total
                else:
                    x = xs[key]
                val = x if (s + u + w) % 2 == 0 else total - x
                t[s * r0 + a, u * r0 + b, w * r0 + c] = val
    return t


def _swap_orbits(r0: int, qdual: Sequence[int]) -> list[frozenset]:
    seen, out = set(), []
    for a in range(1, r0):
        if a in seen:
            continue
        orb = frozenset({a, qdual[a]})
        seen |= orb
        out.append(orb)
    return out


def _apply_swap(xs: dict, that: dict, swapped: frozenset) -> dict:
    return {m: (that[m] - x if sum(1 for v in m if v in swapped) % 2 else x) for m, x in xs.items()}


def _canonical_xs(xs: dict, that: dict, orbits) -> tuple:
    best = None
    for bits in itertools.product((0, 1), repeat=len(orbits)):
        sw = frozenset().union(*[o for o, b in zip(orbits, bits) if b]) if any(bits) else frozenset()
        ys = _apply_swap(xs, that, sw)
        key = tuple(sorted(ys.items()))
        if best is None or key < best:
            best = key
    return best


def enumerate_lifts(nhat: np.ndarray, qdual: Sequence[int]) -> list[dict]:
    """All associative splittings of the naive rules, one per orbit of the X <-> fX relabelings."""
    r0 = nhat.shape[0]
    ms = _multisets(r0)
    that = {m: int(nhat[m[0], m[1], qdual[m[2]]]) for m in ms}
    # reps of dual orbits of multisets
    reps = []
    for m in ms:
        md = tuple(sorted(qdual[v] for v in m))
        if md < m:
            continue
        reps.append((m, md))
    orbits = _swap_orbits(r0, qdual)
    found: dict[tuple, dict] = {}
    for choice in itertools.product(*[range(that[m] + 1) for m, _ in reps]):
        xs = {}
        for (m, md), x in zip(reps, choice):
            xs[m] = x
            xs[md] = x
        key = _canonical_xs(xs, that, orbits)
        if key in found:
            continue
        t = _lift_tensor(nhat, qdual, xs)
        dual = tuple(list(qdual) + [r0 + v for v in qdual])
        ring = FusionRing(t, dual)
        if validate(ring).ok:
            found[key] = dict(key)
    return [found[k] for k in sorted(found)]


def _lift_ring(nhat, qdual, xs, labels) -> FusionRing:
    r0 = nhat.shape[0]
    dual = tuple(list(qdual) + [r0 + v for v in qdual])
    full = list(labels) + ["f"] + ["f" + lb for lb in labels[1:]]
    return FusionRing(_lift_tensor(nhat, qdual, xs), dual, tuple(full))


def _identify_modular(ring: FusionRing) -> str | None:
    for e in rank_le3_modular_entries():
        if find_isomorphisms(ring, e.ring):
            return e.name
    if ring.rank == 1:
        return "Vec"
    return None


# coefficient normal forms -----------------------------------------------------------------

_COEFFICIENT_LAYOUTS = {
    # labels as in the lifting arguments: (reference rules, normalization multisets, coefficient reads)
    "ii": (selfdual_rank3_rules(1, 1, 0, 1), [(2, 2, 2), (1, 2, 2)],
           {"a": ("x", (1, 1, 2)), "b": ("y", (1, 1, 2))}),
    "iii": (selfdual_rank3_rules(1, 2, 1, 2), [(1, 1, 1), (1, 1, 2)],
            {"a": ("x", (1, 2, 2)), "b": ("y", (1, 2, 2)), "c": ("x", (2, 2, 2)), "d": ("y", (2, 2, 2))}),
}


def _coefficients(case: str, nhat: np.ndarray, xs: dict) -> dict | None:
    if case not in _COEFFICIENT_LAYOUTS:
        return None
    ref, norm, reads = _COEFFICIENT_LAYOUTS[case]
    isos = find_isomorphisms(FusionRing(ref, (0, 1, 2)), FusionRing(nhat, (0, 1, 2)))
    if not isos:
        return None
    sigma = isos[0]  # reference label i is candidate label sigma[i]
    that = {m: int(nhat[m[0], m[1], m[2]]) for m in _multisets(3)}
    orbits = _swap_orbits(3, (0, 1, 2))

    def key(m):
        return tuple(sorted(sigma[v] for v in m))

    for bits in itertools.product((0, 1), repeat=len(orbits)):
        sw = frozenset().union(*[o for o, b in zip(orbits, bits) if b]) if any(bits) else frozenset()
        ys = _apply_swap(xs, that, sw)
        if all(ys[key(m)] >= 1 for m in norm):
            out = {}
            for name, (part, m) in reads.items():
                x = ys[key(m)]
                out[name] = x if part == "x" else that[key(m)] - x
            return out
    return None


def lift_to_supermodular(candidate: QuotientCandidate, keep_rejected: bool = False) -> list[LiftSolution]:
    """Associative lifts of the candidate's naive rules, with split status and the sub-ring filter."""
    nhat, qdual = candidate.nhat, candidate.dual
    r0 = nhat.shape[0]
    labels = ["1"] + [f"X{i}" for i in range(1, r0)]
    out = []
    for xs in enumerate_lifts(nhat, qdual):
        ring = _lift_ring(nhat, qdual, xs, labels)
        f = r0
        witness = split_ring(ring, f)
        sol = LiftSolution(ring, witness is not None, witness, xs,
                           _coefficients(candidate.case, nhat, xs))
        if witness is not None:
            name = _identify_modular(witness.factor)
            if name is None:
                fact = EXTERNAL_O4 if candidate.case == "iii" else EXTERNAL_RANK3
                sol.rejected = ("the fermion-free labels close into a sub-ring that is not a modular "
                                "fusion ring of rank <= 3")
                sol.external_facts.append(fact)
            else:
                sol.witness.factor = witness.factor.with_name(name)
                sol.external_facts.append(EXTERNAL_RANK3)
        if sol.rejected is None or keep_rejected:
            out.append(sol)
    return out


# classification -----------------------------------------------------------------


@dataclass
class ClassificationRecord:
    rank: int
    name: str
    representative: FusionRing
    split: bool
    provenance: str
    witness: SplitWitness | None = None
    candidate: QuotientCandidate | None = None
    lift: LiftSolution | None = None
    external_facts: list[str] = field(default_factory=list)
    catalog_match: tuple[int, ...] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def shat(self):
        return None if self.candidate is None else self.candidate.shat

    def to_json(self) -> dict:
        return {
            "rank": self.rank, "name": self.name, "split": self.split, "provenance": self.provenance,
            "labels": list(self.representative.labels),
            "factor": None if self.witness is None else self.witness.factor.name,
            "candidate": None if self.candidate is None else self.candidate.to_json(),
            "lift_coefficients": None if self.lift is None else self.lift.coefficients,
            "external_facts": sorted(set(self.external_facts)),
            "catalog_isomorphism": None if self.catalog_match is None else list(self.catalog_match),
            "notes": list(self.notes),
        }


def _records_from(candidates: Iterable[QuotientCandidate], rank: int, path: str) -> list[ClassificationRecord]:
    recs = []
    for cand in candidates:
        lifts = lift_to_supermodular(cand, keep_rejected=True)
        # surviving lifts rely on whatever fact excluded their siblings
        excluded_by = [f for lift in lifts if lift.rejected for f in lift.external_facts]
        for lift in lifts:
            if lift.rejected:
                continue
            lift.external_facts.extend(f for f in excluded_by if f not in lift.external_facts)
            if lift.split:
                fname = lift.witness.factor.name
                name = "sVec" if fname == "Vec" else f"{fname} x sVec"
            else:
                name = f"non-split from quotient {cand.family}"
            recs.append(ClassificationRecord(rank, name, lift.ring.with_name(name), lift.split,
                                             f"{path}; quotient {cand.family} params {cand.params}",
                                             lift.witness, cand, lift, list(lift.external_facts)))
    return recs


def _dedupe_and_sort(recs: list[ClassificationRecord]) -> list[ClassificationRecord]:
    uniq: list[ClassificationRecord] = []
    for r in recs:
        if any(find_isomorphisms(r.representative, u.representative) for u in uniq):
            continue
        uniq.append(r)
    uniq.sort(key=lambda r: (r.rank, canonical_key(r.representative)))
    return uniq


def _match_catalog(rec: ClassificationRecord) -> None:
    if rec.split:
        return
    k = {4: 1, 6: 2}.get(rec.rank)
    if k is None:
        return
    target = psu2_adjoint(k)
    isos = find_isomorphisms(rec.representative, target.ring)
    if isos:
        rec.catalog_match = isos[0]
        rec.name = target.name
        rec.representative = rec.representative.with_name(target.name)


def classify_supermodular(rank: int, param_bound: int = DEFAULT_BOUND) -> list[ClassificationRecord]:
    """Fusion classes of super-modular categories of the given rank (2, 4 or 6)."""
    if rank == 2:
        rec = ClassificationRecord(2, "sVec", svec().ring, True, "rank-1 quotient",
                                   notes=["one Z2 fusion class; sVec is split, while PSU(2)_2 has the same "
                                          "fusion rules and its split status as a category is not decided here"])
        rec.witness = split_ring(rec.representative, 1)
        rec.external_facts = []
        return [rec]
    if rank == 4:
        recs = _records_from(enumerate_rank2_quotients(param_bound), 4, "rank-2 quotient [[0,1],[1,m]]")
        for r in recs:
            r.external_facts.append(EXTERNAL_B2)
    elif rank == 6:
        recs = _records_from(enumerate_selfdual_rank6_quotients(param_bound), 6, "self-dual rank-3 quotient")
        recs += _records_from(enumerate_nonselfdual_rank3_quotients(param_bound), 6,
                              "non-self-dual rank-3 quotient")
    else:
        raise UnsupportedRank(f"rank must be 2, 4 or 6, got {rank}")
    out = _dedupe_and_sort(recs)
    for r in out:
        _match_catalog(r)
    return out


# conjecture scan -----------------------------------------------------------------


@dataclass
class ScanEntry:
    record: str
    split: bool
    matches: list[str]

    def to_json(self) -> dict:
        return {"record": self.record, "split": self.split, "matches": list(self.matches)}


def conjecture_scan(records: Sequence[ClassificationRecord], modular_pool: Sequence) -> list[ScanEntry]:
    """For each record, the pool members whose S-matrix diagonalizes the same way as the quotient's.

    Pool members are catalog entries (or PremodularData); a match means that,
    after relabeling the rows, Shat = S D' P for a permutation P and an
    invertible diagonal D'.  Finding no
    match for a non-split record is consistent with the conjecture that
    quotients with a modular S-matrix come from split categories; it is
    empirical support only.
    """
    if not modular_pool:
        return []
    out = []
    for rec in records:
        if rec.shat is None:
            continue
        matches = []
        for entry in modular_pool:
            data = getattr(entry, "data", entry)
            if data.rank != len(rec.shat):
                continue
            if match_relabeled(data.stilde, rec.shat) is not None:
                matches.append(getattr(entry, "name", data.name))
        out.append(ScanEntry(rec.name, rec.split, matches))
    return out


def cumulative_split_classes(param_bound: int = DEFAULT_BOUND, up_to_rank: int = 6) -> list[tuple[int, str]]:
    """(rank, name) of every split class found at ranks 2..up_to_rank."""
    out = []
    for rank in (2, 4, 6):
        if rank > up_to_rank:
            break
        for rec in classify_supermodular(rank, param_bound):
            if rec.split:
                out.append((rank, rec.name))
    return out
