"""Randomized invariance and round-trip properties."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import classified, selfdual_families
from supermodular.catalog import all_entries, psu2_adjoint, rank_le3_modular_entries, with_svec
from supermodular.classify import (enumerate_nonselfdual_rank3_quotients, enumerate_rank2_quotients,
                                   lift_to_supermodular)
from supermodular.cli import catalog_files
from supermodular.io import CategoryFile, parse, serialize
from supermodular.premodular import muger_center
from supermodular.quotient import build_quotient, fs_indicator, make_partition, naive_rules, partition_ring

from test_quotient import _full_category_indicator

SUPER = [e for e in all_entries() if muger_center(e.data).is_supermodular and e.data.rank > 2]
SUPER += [with_svec(e) for e in rank_le3_modular_entries()]


def _indicators(data, p):
    return {pos: fs_indicator(data, p, a) for pos, a in enumerate(p.pi0) if data.ring.dual[a] == a}


@settings(max_examples=200)
@given(st.data())
def test_partition_choice_invariance(draw):
    entry = draw.draw(st.sampled_from(SUPER), label="entry")
    data = entry.data
    p = make_partition(data)
    base_n, base_s = naive_rules(data, p), build_quotient(data, partition=p).shat
    base_nu = _indicators(data, p)
    steps = draw.draw(st.lists(st.integers(1, len(p.pi0) - 1), min_size=1, max_size=4), label="swaps")
    q = p
    for pos in steps:
        q = q.swapped(q.pi0[pos], data.ring.dual)
    assert np.array_equal(naive_rules(data, q), base_n)
    assert build_quotient(data, partition=q).shat == base_s
    nus = _indicators(data, q)
    assert nus == base_nu
    for pos, nu in nus.items():
        assert abs(complex(nu) - _full_category_indicator(data, q.pi0[pos])) < 1e-9


def _summary(cands):
    return [(c.family, c.params, c.nhat.tolist()) for c in cands]


def test_bound_stability():
    assert _summary(selfdual_families(4)) == _summary(selfdual_families(8))
    assert _summary(enumerate_rank2_quotients(4)) == _summary(enumerate_rank2_quotients(8))
    assert _summary(enumerate_nonselfdual_rank3_quotients(4)) == _summary(enumerate_nonselfdual_rank3_quotients(8))


@pytest.mark.parametrize("family", ["Ising", "PSU(2)_5", "alpha=1"])
def test_round_trip_lift_then_quotient(family):
    cand = next(c for c in selfdual_families(8) if c.family == family)
    lifts = lift_to_supermodular(cand, keep_rejected=True)
    assert lifts
    for lift in lifts:
        r0 = cand.nhat.shape[0]
        p = partition_ring(lift.ring, r0)
        assert np.array_equal(naive_rules(lift.ring, p), cand.nhat)


def test_round_trip_through_catalog_data():
    # the PSU(2)_10 catalog entry quotients to the alpha = 1 candidate after relabeling 1 <-> 2
    cand = next(c for c in selfdual_families(8) if c.family == "alpha=1")
    q = build_quotient(psu2_adjoint(2).data)
    assert np.array_equal(q.nhat[np.ix_([0, 2, 1], [0, 2, 1], [0, 2, 1])], cand.nhat)


def test_serialize_parse_identity_on_emitted_files():
    files = [cf for _, cf in catalog_files()]
    for rank in (2, 4, 6):
        files += [CategoryFile.from_ring(r.representative, {"class": r.name}) for r in classified(rank)]
    for cf in files:
        text = serialize(cf)
        back = parse(text)
        assert serialize(back) == text
        assert back.ring == cf.ring


@given(st.permutations(range(1, 6)))
def test_serialize_identity_under_relabeling(rest):
    data = psu2_adjoint(2).data.relabel((0,) + tuple(rest))
    text = serialize(CategoryFile.from_data(data))
    assert serialize(parse(text)) == text
