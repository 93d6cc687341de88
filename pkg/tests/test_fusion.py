import pytest

import oracles as O
from conftest import marked, wreathed
from wreathbrauer.errors import DomainError
from wreathbrauer.fusion import (
    automizer, build_fusion, check_base_essential, check_non_two_automizers, check_p1_essential,
    check_sylow_automizers, conj_map, essential_subgroups, fusion_difference, fusion_equal,
    is_centric, is_fully_normalized, is_saturated, marking_iso, realized_essential_families,
)
from wreathbrauer.permgroup import Perm, PermGroup, Subgroup
from wreathbrauer.wreathed import canonical_homocyclic


def fusion_of(ident):
    mg = marked(ident)
    return build_fusion(mg.group, mg.wreathed.P), mg.wreathed


def test_inner_fusion_is_p_conjugation():
    W = wreathed(2)
    F = build_fusion(W.P, W.P)
    for Q in F.class_reps:
        assert F.aut(Q) == F.aut_p(Q)
        assert F.hom(Q, F.P) == frozenset(conj_map(g, Q) for g in W.P.elements)
    assert is_saturated(F)
    assert essential_subgroups(F) == []


def test_homs_match_brute_force_conjugation():
    F, W = fusion_of("c4c4-s3")
    G = F.G
    Gel = O.closure(G.generators, G.degree)
    for Q in F.class_reps:
        qel = Q.elements_list()
        brute = set()
        for g in Gel:
            img = tuple(O.mul(O.mul(g, x), O.inv(g)) for x in qel)
            if all(y in W.P.elements for y in img):
                brute.add(img)
        assert {tuple(tuple(y) for y in phi) for phi in F.hom(Q, F.P)} == brute


def test_a_and_b_are_fused_in_the_affine_group(affine):
    F, W = fusion_of("c4c4-s3")
    A, B = Subgroup(W.P, [W.a]), Subgroup(W.P, [W.b])
    assert F.class_of(A) is F.class_of(B)
    assert any(m.order == 4 and m.elements == Subgroup(W.P, [W.a * W.b]).elements
               for m in F.class_of(A).members)


def test_hom_sets_contain_inner_automorphisms():
    F, _ = fusion_of("gl2-5")
    for Q in F.class_reps:
        inner = {conj_map(g, Q) for g in Q.elements}
        assert inner <= F.aut(Q)
        assert F.aut_p(Q) <= F.aut(Q)


def test_fully_normalized_examples():
    F, W = fusion_of("c4c4-s3")
    for Q in (W.P, W.Z, W.P0):
        assert is_fully_normalized(F, Q)
    for c in F.classes:
        assert is_fully_normalized(F, c.rep)


@pytest.mark.parametrize("ident, classes", [("c4c4-s3", 18), ("gl2-5", 17), ("c8c8-s3", 39)])
def test_f_class_counts(ident, classes):
    F, _ = fusion_of(ident)
    assert len(F.classes) == classes
    assert sum(len(c.members) for c in F.classes) == len({M.key for Q in F.p_class_reps
                                                           for M in F.f_conjugates(Q)})


def test_automizer_shapes():
    F, W = fusion_of("c4c4-s3")
    assert automizer(F, W.P0).out_f_shape == "S3"
    assert automizer(F, canonical_homocyclic(W, 1)).aut_f.order == 6
    assert automizer(F, Subgroup(W.P, [])).out_f_shape == "trivial"
    A = automizer(F, W.klein_outside)
    assert A.out_f_shape in ("trivial", "C2")
    # the automizer acts faithfully: its order is |N_G(Q)/C_G(Q)|
    from wreathbrauer.permgroup import centralizer, normalizer
    for Q in F.class_reps:
        assert automizer(F, Q).order == normalizer(F.G, Q).order // centralizer(F.G, Q).order


@pytest.mark.parametrize("ident", ["c4c4-s3", "gl2-5"])
def test_saturated_for_sylow(ident):
    F, _ = fusion_of(ident)
    assert is_saturated(F)


def test_truncated_fusion_is_not_saturated():
    """Drop the odd-order automorphisms of P_0 only; the Klein subgroup below it can no longer extend."""
    F, W = fusion_of("c4c4-s3")
    p_maps = {}

    def keep(Q, R, phi):
        if Q.key != W.P0.key:
            return True
        if Q.key not in p_maps:
            p_maps[Q.key] = {conj_map(g, Q) for g in W.P.elements}
        return phi in p_maps[Q.key]

    T = build_fusion(F.G, W.P, hom_filter=keep)
    assert not is_saturated(T)


def test_essentials():
    F, W = fusion_of("c4c4-s3")
    ess = essential_subgroups(F)
    assert [Q.key for Q in ess] == [W.P0.key]
    assert all(is_centric(F, Q) for Q in ess)
    F2, W2 = fusion_of("gl2-5")
    ess2 = essential_subgroups(F2)
    assert len(ess2) == 1 and ess2[0].order == W2.P1.order


@pytest.mark.parametrize("ident, families", [
    ("c4c4-s3", ["P0"]), ("gl2-5", ["P1"]), ("wreathP-n2", []), ("c8c8-s3", ["P0"])])
def test_lemma_checks(ident, families):
    F, W = fusion_of(ident)
    assert realized_essential_families(F, W) == families
    assert check_sylow_automizers(F).passed
    res = check_non_two_automizers(F, W)
    assert res.passed, res.counterexamples
    if "P0" in families:
        assert check_base_essential(F, W).passed
    if "P1" in families:
        assert check_p1_essential(F, W).passed


def test_fusion_equality():
    F, W = fusion_of("c4c4-s3")
    assert fusion_equal(F, F)
    inner = build_fusion(W.P, W.P)
    FP = build_fusion(F.G, W.P)
    # same P inside different ambient groups, identified through the markings
    Wp = wreathed(2)
    assert list(Wp.P.generators) == [Wp.a, Wp.b, Wp.t]
    iso = marking_iso(Wp.P, W.P, [W.a, W.b, W.t])
    inverse = marking_iso(W.P, Wp.P, [Wp.a, Wp.b, Wp.t])
    assert not fusion_equal(build_fusion(Wp.ambient, Wp.P), FP, iso)
    assert not fusion_equal(FP, build_fusion(Wp.ambient, Wp.P), inverse)
    assert fusion_difference(inner, inner) == []


def test_fusion_equality_needs_an_identification():
    F, _ = fusion_of("c4c4-s3")
    G2, _ = fusion_of("gl2-5")
    with pytest.raises(DomainError):
        fusion_equal(F, G2)


def test_build_fusion_rejects_non_2_groups():
    S3 = PermGroup([Perm((1, 0, 2)), Perm((1, 2, 0))])
    with pytest.raises(DomainError):
        build_fusion(S3, S3)
