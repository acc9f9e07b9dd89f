import pytest

from supermodular.algebra import AlgebraicReal, CyclotomicElement, make_algebraic
from supermodular.catalog import (all_entries, ising_rules, pointed_z3, psu2_5, psu2_6_stated_rules,
                                  psu2_10_stated_rules, psu2_adjoint, rank_le3_modular_list, su2_level, svec)
from supermodular.errors import BadParameters
from supermodular.fusion_ring import find_isomorphisms, validate
from supermodular.premodular import muger_center, split_detect, verify_premodular


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.name)
def test_every_entry_verifies(entry):
    positive = entry.provenance.get("t", 1) == 1
    assert verify_premodular(entry.data, require_positive_dims=positive).ok


def test_psu2_6():
    e = psu2_adjoint(1)
    assert e.ring == psu2_6_stated_rules()
    assert e.data.dims[1] == 1 + AlgebraicReal.sqrt(2)


def test_psu2_10():
    e = psu2_adjoint(2)
    assert e.ring == psu2_10_stated_rules()
    assert e.data.dims[1] == 1 + AlgebraicReal.sqrt(3)
    assert e.data.dims[2] == 2 + AlgebraicReal.sqrt(3)


@pytest.mark.parametrize("t", [1, 3, 5, 7])
def test_psu2_6_galois_conjugates_are_supermodular(t):
    e = psu2_adjoint(1, t)
    c = muger_center(e.data)
    assert c.verdict == "super-modular"
    assert e.data.theta(c.fermion) == -1
    assert find_isomorphisms(e.ring, psu2_adjoint(1).ring)


@pytest.mark.parametrize("k,t", [(1, 2), (2, 3), (3, 1)])
def test_bad_parameters(k, t):
    with pytest.raises(BadParameters):
        psu2_adjoint(k, t)


def test_small_entries():
    assert [[int(x.as_fraction()) for x in row] for row in svec().data.stilde] == [[1, 1], [1, 1]]
    w = CyclotomicElement.zeta(3)
    assert [list(r) for r in pointed_z3().data.stilde] == [[1, 1, 1], [1, w, w * w], [1, w * w, w]]
    r = ising_rules()
    s, p = r.labels.index("sigma"), r.labels.index("psi")
    assert r.product(s, s) == {0: 1, p: 1} and validate(r).ok


def test_rank_le3_list():
    rings = rank_le3_modular_list()
    assert len(rings) == 5
    for ring in rings:
        assert validate(ring).ok
    d = psu2_5().data
    x1 = d.labels.index("X1")
    x2 = d.labels.index("X2")
    assert d.dims[x1] == make_algebraic([1, -1, -2, 1], (1, 2))  # 2 cos(pi/7)
    assert d.dims[x2] == d.dims[x1] ** 2 - 1
    assert d.dims[x2] == make_algebraic([1, -2, -1, 1], (2, 3))


def test_nonsplit_entries():
    for k in (1, 2):
        assert split_detect(psu2_adjoint(k).data) is None


def test_su2_levels_are_modular():
    for K in range(1, 7):
        assert muger_center(su2_level(K).data).verdict == "modular"
