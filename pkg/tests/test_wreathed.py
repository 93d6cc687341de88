import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from conftest import wreathed
from wreathbrauer.errors import DomainError
from wreathbrauer.permgroup import Subgroup, conjugates, subgroups_up_to_conjugacy
from wreathbrauer.wreathed import (
    abelian_invariants, build_wreathed, canonical_homocyclic, canonical_q8_central_product,
    check_centralizers_outside_base, check_classification, check_homocyclic_subgroups,
    check_nonabelian_centers, check_order_and_center, check_q8_subgroups, classify_subgroup,
    q8_subgroups, recognize_wreathed, wreathed_from_marking,
)


@pytest.mark.parametrize("n, P, Z, P0, P1", [(2, 32, 4, 16, 16), (3, 128, 8, 64, 32)])
def test_named_subgroup_orders(n, P, Z, P0, P1):
    W = wreathed(n)
    assert (W.P.order, W.Z.order, W.P0.order, W.P1.order) == (P, Z, P0, P1)
    assert W.P.degree == 2 ** (n + 1)
    assert W.a * W.b == W.b * W.a
    assert W.a.conj(W.t) == W.b


def test_n_below_two_is_rejected():
    with pytest.raises(DomainError):
        build_wreathed(1)


def test_center_is_the_diagonal_cycle():
    W = wreathed(2)
    Pel = O.closure(W.P.generators, W.P.degree)
    assert O.centralizer(Pel, Pel) == W.Z.elements


def test_bad_markings_are_rejected():
    W = wreathed(2)
    with pytest.raises(DomainError):
        wreathed_from_marking(W.ambient, W.a, W.a, W.t)
    with pytest.raises(DomainError):
        wreathed_from_marking(W.ambient, W.a * W.b, W.b, W.t)


@settings(max_examples=30, deadline=None)
@given(i=st.integers(0, 7), j=st.integers(0, 7), s=st.integers(0, 1))
def test_coordinates_round_trip(i, j, s):
    W = wreathed(3)
    g = W.elem(i, j, s)
    assert W.coords(g) == (i, j, s)
    assert W.in_base(g) == (s == 0)


def test_canonical_homocyclic():
    W = wreathed(3)
    assert canonical_homocyclic(W, 0).key == W.P0.key
    assert canonical_homocyclic(W, 2).order == 4
    for m in range(3):
        assert canonical_homocyclic(W, m).order == 2 ** (2 * (3 - m))
    with pytest.raises(DomainError):
        canonical_homocyclic(W, 3)
    assert canonical_q8_central_product(W, 3).key == W.P1.key
    assert canonical_q8_central_product(W, 1).key == W.Y0.key


@pytest.mark.parametrize("n, count", [(2, 1), (3, 2)])
def test_q8_count_matches_oracle(n, count):
    W = wreathed(n)
    Pel = O.closure(W.P.generators, W.P.degree)
    subs = O.all_subgroups(Pel, W.P.degree)
    q8 = [S for S in subs if len(S) == 8 and not O.is_abelian(S)
          and sum(1 for x in S if O.order_of(x) == 2) == 1]
    assert len(q8) == count
    infos = q8_subgroups(W)
    assert {i.subgroup.elements for i in infos} == set(q8)
    for info in infos:
        assert W.Y0.conjugate(info.witness).key == info.subgroup.key


def test_classification_examples():
    W = wreathed(2)
    a, b, t = W.a, W.b, W.t
    c = classify_subgroup(W, Subgroup(W.P, [a ** 2, b ** 2]))
    assert (c.tag, c.m) == ("HomocyclicInBase", 1)
    c = classify_subgroup(W, Subgroup(W.P, [(a * b) ** 2, t]))
    assert c.tag == "KleinOutsideBase" and c.witness is not None
    assert classify_subgroup(W, W.P).tag == "FullP"
    assert classify_subgroup(W, W.P0).tag == "Base"
    assert classify_subgroup(W, W.P1).tag == "P1Class"
    assert classify_subgroup(W, Subgroup(W.P, [])).tag == "Trivial"
    assert classify_subgroup(W, Subgroup(W.P, [a])).tag == "CyclicInBase"
    assert classify_subgroup(W, Subgroup(W.P, [t])).tag == "CyclicOutsideBase"
    assert classify_subgroup(W, Subgroup(W.P, [a, b ** 2])).tag == "NonHomocyclicAbelian"


def test_classify_rejects_outside_subgroups():
    W = wreathed(2)
    from wreathbrauer.permgroup import Perm, PermGroup
    with pytest.raises(DomainError):
        classify_subgroup(W, PermGroup([Perm.from_cycles([[0, 1]], 8)]))


@pytest.mark.parametrize("n", [2, 3])
def test_abelian_invariants_match_oracle(n):
    W = wreathed(n)
    for Q in subgroups_up_to_conjugacy(W.P):
        if Q.is_abelian() and Q.order > 1:
            assert abelian_invariants(Q) == O.abelian_invariants(Q.elements)


@pytest.mark.parametrize("n", [2, 3])
def test_structural_checks_exhaustive(n):
    W = wreathed(n)
    reps = subgroups_up_to_conjugacy(W.P)
    for res in (check_order_and_center(W), check_centralizers_outside_base(W), check_q8_subgroups(W),
                check_homocyclic_subgroups(W, reps), check_nonabelian_centers(W, reps),
                check_classification(W, reps)):
        assert res.passed, (res.name, res.counterexamples[:3])
        assert res.checked > 0
    assert check_centralizers_outside_base(W).checked == W.P.order // 2


def test_classification_counts_every_subgroup():
    W = wreathed(2)
    reps = subgroups_up_to_conjugacy(W.P)
    assert sum(len(conjugates(W.P, R)) for R in reps) == check_classification(W, reps).checked == 34


def test_recognition_finds_a_marking():
    W = wreathed(2)
    R = recognize_wreathed(W.ambient, W.P)
    assert R is not None and R.P.key == W.P.key and R.n == 2
    assert recognize_wreathed(W.ambient, W.P0) is None
