import itertools

import numpy as np
import pytest

from conftest import classified, selfdual_families
from supermodular.algebra import AlgebraicReal, CyclotomicElement
from supermodular.catalog import (ising, ising_rules, psu2_5, psu2_adjoint, rank_le3_modular_entries,
                                  rank_le3_modular_list)
from supermodular.classify import (EXTERNAL_O4, alpha_feasibility, character_table, classify_supermodular,
                                   conjecture_scan, enumerate_nonselfdual_rank3_quotients, enumerate_rank2_quotients,
                                   fs_feasibility, lift_to_supermodular, screen_selfdual_rank3, selfdual_rank3_rules)
from supermodular.errors import BoundTooSmall, UnsupportedRank
from supermodular.fusion_ring import FusionRing, are_isomorphic, deligne_product, find_isomorphisms, validate
from supermodular.premodular import split_ring, svec_ring
from supermodular.quotient import match_diagonalizers, naive_rules, partition_ring

SQRT3 = AlgebraicReal.sqrt(3)


def _family(name):
    return next(c for c in selfdual_families(4) if c.family == name)


def test_three_selfdual_families():
    fams = selfdual_families(4)
    assert [c.case for c in fams] == ["i", "ii", "iii"]
    assert [c.params for c in fams] == [(0, 1, 0, 0), (1, 1, 0, 1), (2, 1, 2, 1)]


def test_alpha_one_family():
    c = _family("alpha=1")
    k, l, m, n = c.params
    assert (k, l, m, n) == (2, 1, 2, 1) and c.alpha == 1
    assert c.dims[2] == 1 + SQRT3
    assert c.dims[1] == 2 + SQRT3


def test_alpha_zero_reproduces_ising():
    a = 0
    rules = selfdual_rank3_rules(2 * a, 1, 2 * a * a, a)
    ring = FusionRing(rules, (0, 1, 2))
    assert are_isomorphic(ring, ising_rules())
    assert are_isomorphic(_family("Ising").ring(), ising_rules())


def test_case_iii_shat_matches_displayed():
    c = _family("alpha=1")
    r3 = CyclotomicElement.zeta(12) + CyclotomicElement.zeta(12) ** 11
    one = CyclotomicElement.rational(1)
    displayed = [[one, 2 + r3, 1 + r3], [2 + r3, one, -1 - r3], [1 + r3, -1 - r3, 1 + r3]]
    assert match_diagonalizers(c.shat, displayed) is not None


def test_screen_rejects_noncommuting_and_infeasible():
    assert screen_selfdual_rank3((0, 0, 0, 0)) is None  # N1 N2 != N2 N1
    assert screen_selfdual_rank3((4, 1, 8, 2)) is None  # alpha = 2 is cut by the indicator test


def test_fs_feasibility_on_alpha2_has_infeasible_label():
    nhat = selfdual_rank3_rules(4, 1, 8, 2)
    table = character_table(nhat)
    assert table is not None
    certs = fs_feasibility(nhat, table)
    assert any(not c.feasible for c in certs)


def test_bound_too_small():
    with pytest.raises(BoundTooSmall):
        classify_supermodular(6, 1)


@pytest.mark.parametrize("alpha", [0, 1])
def test_alpha_feasible(alpha):
    assert alpha_feasibility(alpha).feasible


@pytest.mark.parametrize("alpha", range(2, 11))
def test_alpha_infeasible_with_certificate(alpha):
    v = alpha_feasibility(alpha)
    assert not v.feasible
    assert v.lower_bound_sign == 1
    signs = [s for _, s in v.certificate]
    # L1 > 0, and the chain L1 >= L2 >= L3 > 0 (L1 = L2 exactly at alpha = 2)
    assert len(signs) == 6 and signs[0] == 1 and signs[-1] == 1 and min(signs) >= 0


def test_lifts_ising_and_psu2_5():
    (lift,) = lift_to_supermodular(_family("Ising"))
    assert lift.split and are_isomorphic(lift.witness.factor, ising().ring)
    (lift,) = lift_to_supermodular(_family("PSU(2)_5"))
    assert lift.split and (lift.a, lift.b) == (1, 0)
    assert are_isomorphic(lift.witness.factor, psu2_5().ring)


def test_lifts_alpha_one():
    c = _family("alpha=1")
    everything = lift_to_supermodular(c, keep_rejected=True)
    assert len(everything) == 2
    rejected = [s for s in everything if s.rejected]
    assert len(rejected) == 1 and (rejected[0].b, rejected[0].d) == (0, 0)
    assert EXTERNAL_O4 in rejected[0].external_facts
    (lift,) = lift_to_supermodular(c)
    assert (lift.a, lift.b, lift.c, lift.d) == (1, 1, 1, 1)
    assert not lift.split
    assert are_isomorphic(lift.ring, psu2_adjoint(2).ring)


def test_lift_sums_match_naive_totals():
    c = _family("alpha=1")
    for lift in lift_to_supermodular(c, keep_rejected=True):
        assert lift.a + lift.b == 2 and lift.c + lift.d == 2


def test_rank2_and_nonselfdual_branches():
    assert [c.family for c in enumerate_rank2_quotients(8)] == ["Z2", "Fibonacci", "m=2"]
    (c,) = enumerate_nonselfdual_rank3_quotients(8)
    assert c.dual == (0, 2, 1)
    (lift,) = lift_to_supermodular(c)
    assert lift.split


def test_rank2():
    (rec,) = classify_supermodular(2)
    assert rec.representative.rank == 2 and rec.split
    assert rec.notes


def test_rank4(rank4_records):
    nonsplit = [r for r in rank4_records if not r.split]
    assert len(nonsplit) == 1
    rep = nonsplit[0].representative
    assert find_isomorphisms(rep, psu2_adjoint(1).ring)
    x1, fx1 = rep.labels.index("X1"), rep.labels.index("fX1")
    swap = [0, 1, 2, 3]
    swap[x1], swap[fx1] = fx1, x1
    assert tuple(swap) in find_isomorphisms(rep, rep)
    assert sorted(r.name for r in rank4_records if r.split) == ["Fibonacci x sVec", "Semion x sVec"]


def test_rank6(rank6_records):
    nonsplit = [r for r in rank6_records if not r.split]
    assert len(nonsplit) == 1
    assert find_isomorphisms(nonsplit[0].representative, psu2_adjoint(2).ring)
    assert EXTERNAL_O4 in nonsplit[0].external_facts
    names = {r.name for r in rank6_records if r.split}
    assert names == {"Ising x sVec", "PSU(2)_5 x sVec", "Z3 x sVec"}


def test_unsupported_rank():
    for rank in (3, 8):
        with pytest.raises(UnsupportedRank):
            classify_supermodular(rank)


@pytest.mark.parametrize("rank", [2, 4, 6])
def test_pipeline_closure(rank):
    recs = classified(rank)
    for r in recs:
        assert validate(r.representative).ok
        f = r.representative.rank // 2
        w = split_ring(r.representative, f)
        if r.split:
            assert w is not None
            assert are_isomorphic(deligne_product(r.witness.factor, svec_ring()), r.representative)
        else:
            assert w is None
    for a, b in itertools.combinations(recs, 2):
        assert not find_isomorphisms(a.representative, b.representative)


@pytest.mark.parametrize("rank", [4, 6])
def test_quotient_round_trip(rank):
    for r in classified(rank):
        ring = r.lift.ring
        f = ring.rank // 2
        p = partition_ring(ring, f)
        assert np.array_equal(naive_rules(ring, p), r.candidate.nhat)


def test_conjecture_scan():
    recs = classified(4) + classified(6)
    pool = rank_le3_modular_entries()
    scan = {e.record: e for e in conjecture_scan(recs, pool)}
    assert scan["PSU(2)_6"].matches == [] and scan["PSU(2)_10"].matches == []
    assert scan["Ising x sVec"].matches == ["Ising"] and scan["Ising x sVec"].split
    assert conjecture_scan(recs, []) == []


def test_rank_le3_pool_size():
    assert len(rank_le3_modular_list()) == 5
