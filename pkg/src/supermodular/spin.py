"""Spin modular categories: sectors of the fermion action, rank profiles up to 11, structural table."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import rank_le3_modular_entries
from .errors import NotSpinModular, OutOfRange
from .premodular import PremodularData, fermion_action, transparent_labels

MAX_TOTAL = 11

FACT_KITAEV = "[kitaev]: spin modular categories of dimension 4 are SO(N)_1"
FACT_KLW = "[KLW]: a super-modular category with one minimal modular extension has precisely 16"
FACT_16FOLD = "[16fold, Section III.G]: the 16 minimal modular extensions of PSU(2)_{4k+2} are constructed explicitly"


@dataclass(frozen=True, order=True)
class SectorProfile:
    total: int
    c0: int
    cv: int
    csigma: int

    def violations(self) -> list[str]:
        out = []
        if self.c0 != self.cv + 2 * self.csigma:
            out.append(f"c0 = {self.c0} but cv + 2 csigma = {self.cv + 2 * self.csigma}")
        if self.total != 2 * self.c0 - self.csigma:
            out.append(f"total = {self.total} but 2 c0 - csigma = {2 * self.c0 - self.csigma}")
        if not (3 * self.c0 <= 2 * self.total <= 4 * self.c0):
            out.append(f"total {self.total} outside [3 c0/2, 2 c0] for c0 = {self.c0}")
        if self.cv % 2 or self.c0 % 2:
            out.append(f"cv = {self.cv} and c0 = {self.c0} must both be even")
        if min(self.c0, self.cv, self.csigma) < 0:
            out.append("negative sector size")
        return out

    @property
    def valid(self) -> bool:
        return not self.violations()

    def to_json(self) -> dict:
        return {"total": self.total, "c0": self.c0, "cv": self.cv, "csigma": self.csigma}


@dataclass
class Sectors:
    c0: tuple[int, ...]
    cv: tuple[int, ...]
    csigma: tuple[int, ...]
    profile: SectorProfile
    block_violations: list[tuple[int, int, str]] = field(default_factory=list)


def _check_range(total: int) -> None:
    if total == 12:
        raise OutOfRange("total rank 12 is beyond the classified range 2..11",
                         "note: at total rank 12, c0 = 6 or 8 with (cv, csigma) = (6, 0) or (0, 4)")
    if not 2 <= total <= MAX_TOTAL:
        raise OutOfRange(f"total rank must be in 2..{MAX_TOTAL}, got {total}")


def _profiles_unchecked(total: int) -> list[SectorProfile]:
    out = []
    for csigma in range(total + 1):
        if (total + csigma) % 2:
            continue
        c0 = (total + csigma) // 2
        p = SectorProfile(total, c0, c0 - 2 * csigma, csigma)
        if p.valid:
            out.append(p)
    return sorted(out, key=lambda p: (p.c0, p.cv))


def rank_profiles(total_rank: int) -> list[SectorProfile]:
    """Every (c0, cv, csigma) compatible with the sector identities at this total rank.

    Total 5 has none: its only arithmetic candidate (c0 3, cv 1, csigma 1) has odd
    sector sizes.  That rank is also excluded by the dimension-4 classification,
    see profile_notes.
    """
    _check_range(total_rank)
    return _profiles_unchecked(total_rank)


def profile_notes(total_rank: int) -> list[str]:
    notes = []
    if 3 <= total_rank <= 5:
        notes.append("c0 = 2; the category is SO(N)_1 (" + FACT_KITAEV + ")")
    if total_rank == 5:
        notes.append("rank 5 excluded: no SO(N)_1 has rank 5 and the parity conditions admit no profile")
    if total_rank == 2:
        notes.append("no spin modular category of rank 2: sVec is not modular")
    return notes


def _grading(data: PremodularData, f: int) -> tuple[list[int], list[tuple]]:
    S = data.stilde
    df = data.dim(f)
    even, bad = [], []
    for x in range(data.rank):
        dd = df * data.dim(x)
        if S[f][x] == dd:
            even.append(x)
        elif S[f][x] != -dd:
            bad.append((f, x, "S~_{f,X} is neither +d_f d_X nor -d_f d_X"))
    return even, bad


def sectorize(data: PremodularData, f: int) -> Sectors:
    """Split the labels of a spin modular category into C0, C_v and C_sigma."""
    ring = data.ring
    viol: list = []
    if ring.product(f, f) != {0: 1}:
        viol.append(("f x f != 1", f))
    if data.twists is None or data.twists[f] != Fraction(1, 2):
        viol.append(("theta_f != -1", f))
    if len(transparent_labels(data)) != 1:
        viol.append(("not modular: nontrivial transparent labels", transparent_labels(data)))
    if viol:
        raise NotSpinModular(f"{data.name} with f = {ring.labels[f]} is not spin modular", viol)
    c0, bad = _grading(data, f)
    if bad:
        raise NotSpinModular("fermion does not grade the labels", bad)
    odd = [x for x in range(data.rank) if x not in c0]
    cv = [x for x in odd if fermion_action(ring, f, x) != x]
    cs = [x for x in odd if fermion_action(ring, f, x) == x]
    prof = SectorProfile(data.rank, len(c0), len(cv), len(cs))
    if prof.violations():
        raise NotSpinModular(f"sector profile {prof} violates the sector identities", prof.violations())
    return Sectors(tuple(c0), tuple(cv), tuple(cs), prof, block_pattern_violations(data, f, c0, cv, cs))


def _orbit_reps(ring, f, labels: Sequence[int]) -> list[int]:
    reps, seen = [], set()
    for x in labels:
        if x in seen:
            continue
        seen |= {x, fermion_action(ring, f, x)}
        reps.append(x)
    return reps


def block_pattern_violations(data: PremodularData, f: int, c0, cv, cs) -> list[tuple[int, int, str]]:
    """Entries of S~ contradicting the sign/zero pattern forced by the fermion grading.

    With basis Pi0, f Pi0, Pi_v, f Pi_v, Pi_sigma the blocks are
    [[S/2, S/2, A, A, X], [S/2, S/2, -A, -A, -X], [A^T, -A^T, B, -B, 0],
    [A^T, -A^T, -B, B, 0], [X^T, -X^T, 0, 0, 0]].
    """
    S, ring = data.stilde, data.ring
    fa = lambda x: fermion_action(ring, f, x)  # noqa: E731
    p0, pv = _orbit_reps(ring, f, c0), _orbit_reps(ring, f, cv)
    out = []

    def want(i, j, k, l, sign, tag):
        if S[k][l] != (S[i][j] if sign > 0 else -S[i][j]):
            out.append((k, l, tag))

    for x in p0:
        for y in p0:
            for k, l in ((x, fa(y)), (fa(x), y), (fa(x), fa(y))):
                want(x, y, k, l, 1, "C0 x C0 block")
        for y in pv:
            want(x, y, x, fa(y), 1, "C0 x Cv block")
            want(x, y, fa(x), y, -1, "C0 x Cv block")
            want(x, y, fa(x), fa(y), -1, "C0 x Cv block")
        for z in cs:
            want(x, z, fa(x), z, -1, "C0 x Csigma block")
    for y in pv:
        for w in pv:
            want(y, w, y, fa(w), -1, "Cv x Cv block")
            want(y, w, fa(y), w, -1, "Cv x Cv block")
            want(y, w, fa(y), fa(w), 1, "Cv x Cv block")
    for y in list(cv) + list(cs):
        for z in cs:
            if S[y][z] != 0:
                out.append((y, z, "Cv/Csigma x Csigma block must vanish"))
    return out


# structural classification -----------------------------------------------------------------


def so_n_rank(N: int) -> int:
    """Rank of SO(N)_1: three simple objects for odd N, four for even N."""
    return 3 if N % 2 else 4


def so_n_profile(N: int, d_rank: int) -> SectorProfile:
    if N % 2:
        return SectorProfile(3 * d_rank, 2 * d_rank, 0, d_rank)
    return SectorProfile(4 * d_rank, 2 * d_rank, 2 * d_rank, 0)


@dataclass
class SpinDescriptor:
    kind: str  # "product" or "extension"
    total: int
    summary: str
    combinations: list[dict] = field(default_factory=list)
    external_facts: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"kind": self.kind, "total": self.total, "summary": self.summary,
                "combinations": self.combinations, "external_facts": list(self.external_facts),
                "notes": list(self.notes)}


def modular_pool_le3() -> list[tuple[str, int]]:
    """(name, rank) of the modular fusion classes of rank <= 3, Vec included."""
    return [("Vec", 1)] + [(e.name, e.data.rank) for e in rank_le3_modular_entries()]


def classify_spin(total_rank: int) -> list[SpinDescriptor]:
    """Structural descriptors of spin modular categories of the given rank."""
    _check_range(total_rank)
    profiles = set(_profiles_unchecked(total_rank))
    combos = []
    for dname, drank in modular_pool_le3():
        for N in range(1, 17):
            if drank * so_n_rank(N) != total_rank:
                continue
            prof = so_n_profile(N, drank)
            combos.append({"D": dname, "rank_D": drank, "N": N, "rank_SO(N)_1": so_n_rank(N),
                           "profile": prof.to_json(), "profile_allowed": prof in profiles})
    product = SpinDescriptor("product", total_rank, "D x SO(N)_1 with N <= 16 and |D| <= 3", combos,
                             [FACT_KLW], ["SO(N)_1 ranks (3 for odd N, 4 for even N) are derived metadata"])
    if not combos:
        product.notes.append(f"no (D, N) combination has total rank {total_rank}")
    if total_rank <= 5:
        product.external_facts.append(FACT_KITAEV)
    out = [product]
    if total_rank == 7:
        out.append(SpinDescriptor("extension", 7, "one of the 16 minimal modular extensions of PSU(2)_6",
                                  external_facts=[FACT_KLW, FACT_16FOLD],
                                  notes=["super-modular part C0 is PSU(2)_6 (rank 4)"]))
    if total_rank in (10, 11):
        out.append(SpinDescriptor("extension", total_rank,
                                  "one of the 16 minimal modular extensions of PSU(2)_10",
                                  external_facts=[FACT_KLW, FACT_16FOLD],
                                  notes=["super-modular part C0 is PSU(2)_10 (rank 6)"]))
    return out
