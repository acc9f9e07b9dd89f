import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from supermodular.algebra import AlgebraicReal
from supermodular.catalog import (fibonacci, ising_rules, psu2_5, psu2_6_stated_rules, psu2_10_stated_rules,
                                  psu2_adjoint, semion, svec)
from supermodular.errors import NotValidated, ShapeMismatch
from supermodular.fusion_ring import (FusionRing, are_isomorphic, canonical_key, deligne_product, find_isomorphisms,
                                      fpdims, group_ring_cyclic, invertibles_and_z2_gradings, validate, vec_ring)

SQRT2 = AlgebraicReal.sqrt(2)
SQRT3 = AlgebraicReal.sqrt(3)


def _brute_isomorphisms(r1: FusionRing, r2: FusionRing):
    """All label permutations fixing 0 that carry r1's tensor to r2's, by exhaustive search."""
    n = r1.rank
    out = []
    for rest in itertools.permutations(range(1, n)):
        s = (0,) + rest
        if all(r1.tensor[i, j, k] == r2.tensor[s[i], s[j], s[k]]
               for i in range(n) for j in range(n) for k in range(n)):
            out.append(s)
    return sorted(out)


def _brute_gradings(ring: FusionRing):
    n = ring.rank
    out = []
    for bits in itertools.product((0, 1), repeat=n - 1):
        c = (0,) + bits
        if all(ring.tensor[i, j, k] == 0 or (c[i] + c[j] + c[k]) % 2 == 0
               for i in range(n) for j in range(n) for k in range(n)):
            out.append(c)
    return sorted(out)


def test_svec_validates_commutative():
    rep = validate(svec().ring)
    assert rep.ok and svec().ring.is_commutative()
    assert rep["commutative"].detail == "commutative"


def test_psu2_6_rules_validate():
    assert validate(psu2_6_stated_rules()).ok


def test_broken_associativity_is_located():
    t = np.array(psu2_6_stated_rules().tensor)
    t[1, 1, 1] = 2
    rep = validate(FusionRing(t, (0, 1, 2, 3)))
    assert rep["associativity"].status == "fail"
    assert len(rep["associativity"].witness) == 4


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        FusionRing(np.zeros((2, 2, 3), dtype=np.int64), (0, 1))


def test_fpdims_examples():
    d = fpdims(svec().ring)
    assert list(d.entries) == [1, 1] and d.total == 2
    d = fpdims(psu2_6_stated_rules())
    assert list(d.entries) == [1, 1 + SQRT2, 1 + SQRT2, 1]
    assert d.total == 8 + 4 * SQRT2
    d = fpdims(psu2_10_stated_rules())
    assert d[1] == 1 + SQRT3 and d[2] == 2 + SQRT3


def test_fpdims_requires_valid():
    t = np.array(psu2_6_stated_rules().tensor)
    t[1, 1, 1] = 2
    with pytest.raises(NotValidated):
        fpdims(FusionRing(t, (0, 1, 2, 3)))


def test_isomorphism_examples():
    r = psu2_6_stated_rules()
    isos = find_isomorphisms(r, r)
    assert (0, 1, 2, 3) in isos and (0, 2, 1, 3) in isos  # X1 <-> fX1
    assert isos == _brute_isomorphisms(r, r)
    assert find_isomorphisms(fibonacci().ring, semion().ring) == []


@given(st.permutations([1, 2, 3, 4, 5]))
def test_relabeled_ring_has_inverse_relabeling(rest):
    r = psu2_10_stated_rules()
    perm = (0,) + tuple(rest)
    r2 = r.relabel(perm)
    isos = find_isomorphisms(r2, r)
    inv = [0] * 6
    for i, p in enumerate(perm):
        inv[p] = i
    assert tuple(inv) in isos
    assert canonical_key(r2) == canonical_key(r)


def test_automorphisms_form_a_group():
    r = deligne_product(ising_rules(), svec().ring)
    auts = set(find_isomorphisms(r, r))
    assert tuple(range(r.rank)) in auts
    for a, b in itertools.product(auts, repeat=2):
        assert tuple(a[b[i]] for i in range(r.rank)) in auts


def test_gradings_examples():
    inv, grads = invertibles_and_z2_gradings(psu2_10_stated_rules())
    f = psu2_10_stated_rules().labels.index("f")
    assert inv == [0, f]
    assert not any(g[f] == 1 for g in grads)
    prod = deligne_product(ising_rules(), svec().ring)
    fpos = prod.labels.index("f")
    _, grads = invertibles_and_z2_gradings(prod)
    assert any(g[fpos] == 1 for g in grads)
    _, grads = invertibles_and_z2_gradings(group_ring_cyclic(2))
    assert grads == [(0, 0), (0, 1)]


@pytest.mark.parametrize("ring", [psu2_6_stated_rules(), psu2_10_stated_rules(), ising_rules(),
                                  deligne_product(psu2_5().ring, svec().ring), group_ring_cyclic(4)],
                         ids=lambda r: r.name)
def test_gradings_match_exhaustive_colorings(ring):
    assert invertibles_and_z2_gradings(ring)[1] == _brute_gradings(ring)


def test_deligne_examples():
    assert are_isomorphic(deligne_product(vec_ring(), svec().ring), svec().ring)
    r = deligne_product(ising_rules(), svec().ring)
    assert r.rank == 6 and validate(r).ok
    r = deligne_product(psu2_5().ring, svec().ring)
    assert r.rank == 6 and validate(r).ok


@pytest.mark.parametrize("a,b", [(ising_rules(), svec().ring), (fibonacci().ring, psu2_5().ring),
                                 (psu2_6_stated_rules(), group_ring_cyclic(3))])
def test_deligne_invariants(a, b):
    p = deligne_product(a, b)
    assert validate(p).ok
    assert fpdims(p).total == fpdims(a).total * fpdims(b).total


@pytest.mark.parametrize("ring", [psu2_10_stated_rules(), ising_rules(), psu2_adjoint(2).ring])
def test_commutative_rings_have_commuting_matrices(ring):
    mats = [ring.fusion_matrix(i) for i in range(ring.rank)]
    for A, B in itertools.combinations(mats, 2):
        assert np.array_equal(A @ B, B @ A)
