import cmath
import math
import random
from fractions import Fraction

import mpmath
import pytest

from supermodular.algebra import CyclotomicElement
from supermodular.catalog import (all_entries, fibonacci, ising, pointed_z3, psu2_adjoint, rank_le3_modular_entries,
                                  semion, su2_level, svec, with_svec)
from supermodular.errors import NotSelfDual, NotSuperModular
from supermodular.premodular import PremodularData, muger_center
from supermodular.quotient import (apply_match, build_quotient, fs_indicator, make_partition, match_diagonalizers,
                                   match_relabeled, naive_rules, verify_quotient)

SQRT3 = CyclotomicElement.zeta(12) + CyclotomicElement.zeta(12) ** 11


def _supermodular_entries():
    return [e for e in all_entries() if muger_center(e.data).is_supermodular]


def _labels(data, p):
    return tuple(data.labels[i] for i in p.pi0)


def test_partitions():
    d6 = psu2_adjoint(1).data
    assert _labels(d6, make_partition(d6)) == ("1", "X1")
    ds = svec().data
    assert _labels(ds, make_partition(ds)) == ("1",)
    d10 = psu2_adjoint(2).data
    assert _labels(d10, make_partition(d10)) == ("1", "X1", "X2")


def test_partition_requires_supermodular():
    with pytest.raises(NotSuperModular):
        make_partition(ising().data)


def test_naive_rules_examples():
    d6 = psu2_adjoint(1).data
    n = naive_rules(d6, make_partition(d6))
    assert n[1].tolist() == [[0, 1], [1, 2]]
    d10 = psu2_adjoint(2).data
    n = naive_rules(d10, make_partition(d10))
    assert n[1].tolist() == [[0, 1, 0], [1, 1, 1], [0, 1, 2]]
    assert n[2].tolist() == [[0, 0, 1], [0, 1, 2], [1, 2, 2]]


def test_psu2_10_shat_matches_displayed_matrix():
    d10 = psu2_adjoint(2).data
    q = build_quotient(d10)
    a, b = 2 + SQRT3, 1 + SQRT3
    one = CyclotomicElement.rational(1)
    displayed = [[one, a, b], [a, one, -b], [b, -b, b]]
    found = match_relabeled(q.shat, displayed)
    assert found is not None
    assert [q.shat[0][i] for i in range(3)] == [1, b, a]


def test_nonselfdual_shat_is_omega_table():
    q = build_quotient(with_svec(pointed_z3()).data)
    w = CyclotomicElement.zeta(3)
    assert [list(r) for r in q.shat] == [[1, 1, 1], [1, w, w * w], [1, w * w, w]]
    assert q.dual == (0, 2, 1)


@pytest.mark.parametrize("entry", _supermodular_entries() + [with_svec(e) for e in rank_le3_modular_entries()],
                         ids=lambda e: e.name)
def test_verify_quotient_on_catalog(entry):
    q = build_quotient(entry.data)
    rep = verify_quotient(q)
    assert rep.ok, rep.first_failure()
    assert q.dsq * Fraction(1, 2) == sum((x * x for x in q.shat[0]), CyclotomicElement.rational(0))


def test_sign_flip_breaks_verlinde():
    q = build_quotient(psu2_adjoint(2).data)
    S = [list(r) for r in q.shat]
    S[1][2] = -S[1][2]
    S[2][1] = -S[2][1]
    bad = type(q)(q.partition, q.nhat, tuple(tuple(r) for r in S), q.dsq, q.labels, q.dual)
    rep = verify_quotient(bad)
    assert rep["(d) Verlinde reconstruction"].status == "fail"


# --- Frobenius-Schur indicator oracles ----------------------------------------------------------


def _full_category_indicator(data: PremodularData, j: int) -> complex:
    """(1/D^2) sum over every pair of simples, evaluated in floating point."""
    n = data.rank
    d = [complex(data.dim(i)) for i in range(n)]
    th = [cmath.exp(2j * math.pi * float(data.twists[i])) for i in range(n)]
    tot = sum(int(data.ring.tensor[a, b, j]) * d[a] * d[b] * (th[a] / th[b]) ** 2
              for a in range(n) for b in range(n))
    return tot / complex(data.dsq)


@mpmath.workdps(30)
def _su2_closed_form_indicator(K: int, j: int) -> complex:
    """Modular-category indicator in SU(2)_K from textbook closed forms (weights 0..K)."""
    h = K + 2
    d = [mpmath.sin((a + 1) * mpmath.pi / h) / mpmath.sin(mpmath.pi / h) for a in range(K + 1)]
    th = [mpmath.expjpi(mpmath.mpf(a * (a + 2)) / (2 * h)) for a in range(K + 1)]

    def N(a, b, c):
        return int(abs(a - b) <= c <= min(a + b, 2 * K - a - b) and (a + b + c) % 2 == 0)

    D2 = sum(x * x for x in d)
    tot = sum(N(a, b, j) * d[a] * d[b] * (th[a] / th[b]) ** 2 for a in range(K + 1) for b in range(K + 1))
    return complex(tot / D2)


@pytest.mark.parametrize("entry", _supermodular_entries() + [with_svec(semion()), with_svec(fibonacci())],
                         ids=lambda e: e.name)
def test_fs_indicator_matches_full_category_sum(entry):
    data = entry.data
    p = make_partition(data)
    for j in p.pi0:
        if data.ring.dual[j] != j:
            with pytest.raises(NotSelfDual):
                fs_indicator(data, p, j)
            continue
        nu = fs_indicator(data, p, j)
        assert abs(complex(nu) - _full_category_indicator(data, j)) < 1e-9


@pytest.mark.parametrize("k", [0, 1, 2])
def test_fs_indicator_matches_modular_parent(k):
    K = 4 * k + 2
    data = psu2_adjoint(k).data
    p = make_partition(data)
    weights = [2 * i for i in range(K // 2 + 1)]  # adjoint labels are the even weights in order
    for j in p.pi0:
        w = weights[j]
        assert abs(complex(fs_indicator(data, p, j)) - _su2_closed_form_indicator(K, w)) < 1e-9


def test_semion_gives_minus_one():
    data = with_svec(semion()).data
    p = make_partition(data)
    s = next(i for i in p.pi0 if i != 0)
    assert fs_indicator(data, p, s) == -1


# --- diagonalizer matching ---------------------------------------------------------------------


def test_match_identity():
    S = build_quotient(psu2_adjoint(2).data).shat
    perm, diag = match_diagonalizers(S, S)
    assert perm == (0, 1, 2) and all(x == 1 for x in diag)


def test_match_recovers_random_rescaling():
    S = build_quotient(psu2_adjoint(2).data).shat
    rng = random.Random(7)
    for _ in range(5):
        perm = list(range(3))
        rng.shuffle(perm)
        diag = [CyclotomicElement.rational(Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.choice([1, 2, 7])))
                for _ in range(3)]
        Sp = apply_match(S, perm, diag)
        found = match_diagonalizers(S, Sp)
        assert found is not None
        assert apply_match(S, *found) == Sp


def test_match_galois_conjugate_fibonacci():
    a = su2_level(3, 1, even_only=True).data.stilde
    b = su2_level(3, 3, even_only=True).data.stilde
    found = match_diagonalizers(a, b)
    assert found is not None
    assert apply_match(a, *found) == [list(r) for r in b]


def test_match_rejects_unrelated():
    a = fibonacci().data.stilde
    b = semion().data.stilde
    assert match_diagonalizers(a, b) is None
