import pytest

from conftest import marked, verify_report, wreathed
from wreathbrauer.errors import DomainError, InternalError, PreconditionError, ResourceError
from wreathbrauer.fusion import build_fusion
from wreathbrauer.permgroup import Perm, PermGroup, Subgroup, normalizer, sylow_2
from wreathbrauer.verify import (
    ROUTES, SubgroupVerdict, check_lemma_4_3, dispatch_route, find_h_q, find_s3_through_involution,
    is_2_nilpotent, verify_marked, verify_scott_brauer_indecomposable, verify_via_ik,
)
from wreathbrauer.wreathed import WreathedClass, canonical_homocyclic

S3 = PermGroup([Perm((1, 0, 2)), Perm((1, 2, 0))])
S4 = PermGroup([Perm((1, 0, 2, 3)), Perm((1, 2, 3, 0))])


def test_two_nilpotency_examples():
    assert is_2_nilpotent(wreathed(2).P)
    assert is_2_nilpotent(S3)
    assert not is_2_nilpotent(S4)
    assert not is_2_nilpotent(marked("c4c4-s3").group)


def test_s3_through_involution():
    t = Perm((1, 0, 2))
    assert find_s3_through_involution(S3, Subgroup(S3, []), t).order == 6
    z = Perm((0, 1, 2, 4, 3))
    G = PermGroup([Perm((1, 0, 2, 3, 4)), Perm((1, 2, 0, 3, 4)), z])
    tz = Perm((1, 0, 2, 4, 3))
    H = find_s3_through_involution(G, Subgroup(G, [z]), tz)
    assert H.order == 6 and tz in H and not H.is_abelian()
    with pytest.raises(DomainError):
        find_s3_through_involution(G, Subgroup(G, [z]), z)
    with pytest.raises(DomainError):
        find_s3_through_involution(S4, Subgroup(S4, []), Perm((1, 0, 2, 3)))


def test_nilpotency_case_numbers():
    """Case labels for Y0, the base, the outer Klein group, a homocyclic group and <t>."""
    mg = marked("c4c4-s3")
    W, G = mg.wreathed, mg.group
    assert check_lemma_4_3(W, G, W.Y0) == (1, True)
    assert check_lemma_4_3(W, G, W.P0)[0] == 4
    assert check_lemma_4_3(W, G, W.klein_outside)[0] == 5
    assert check_lemma_4_3(W, G, canonical_homocyclic(W, 1))[0] is None
    assert check_lemma_4_3(W, G, Subgroup(W.P, [W.t]))[0] == 3


def test_h_q_in_a_2_group_is_the_normalizer():
    W = wreathed(2)
    for Q in build_fusion(W.P, W.P).class_reps:
        res = find_h_q(W.P, W.P, Q)
        assert res.path == "lemma41" and res.H.key == normalizer(W.P, Q).key


@pytest.mark.parametrize("ident, which, path", [
    ("c4c4-s3", "P0", "s3-construction"), ("c4c4-s3", "homo0", "s3-construction"),
    ("c4c4-s3", "homo1", "extension"), ("c4c4-s3", "P1", "lemma41"),
    ("gl2-5", "P1", "s3-construction"), ("gl2-5", "q8c1", "extension"), ("gl2-5", "P0", "lemma41"),
    ("c8c8-s3", "homo2", "extension")])
def test_h_q_paths(ident, which, path):
    from wreathbrauer.wreathed import canonical_q8_central_product
    mg = marked(ident)
    W = mg.wreathed
    Q = {"P0": W.P0, "P1": W.P1}.get(which)
    if Q is None:
        k = int(which[-1])
        Q = canonical_homocyclic(W, k) if which.startswith("homo") else canonical_q8_central_product(W, k)
    res = find_h_q(mg.group, W.P, Q)
    assert res is not None and res.path == path
    N, NP = normalizer(mg.group, Q), normalizer(W.P, Q)
    assert NP.is_subgroup_of(res.H) and sylow_2(res.H).order == NP.order
    assert res.index & (res.index - 1) == 0 and N.order == res.index * res.H.order


def test_h_q_absent_at_trivial_subgroup():
    mg = marked("c4c4-s3")
    assert find_h_q(mg.group, mg.wreathed.P, Subgroup(mg.group, [])) is None


def test_dispatch_routes():
    W = wreathed(2)
    P, a, b, t = W.P, W.a, W.b, W.t
    assert dispatch_route(W, Subgroup(P, []), 1) == ("DirectModuleComputation", "trivial")
    assert dispatch_route(W, P, 1) == ("DirectModuleComputation", "base-case")
    assert dispatch_route(W, W.Y0, 2) == ("TwoNilpotentLemma41", "non-abelian")
    assert dispatch_route(W, W.Z, 1)[1] == "C1"
    assert dispatch_route(W, Subgroup(P, [a]), 2) == ("HomocyclicCaseI", "C2")
    assert dispatch_route(W, Subgroup(P, [t]), 2) == ("TwoNilpotentLemma41", "C3")
    assert dispatch_route(W, Subgroup(P, [a, b ** 2]), 1)[1] == "NH2(a)"
    assert dispatch_route(W, Subgroup(P, [a, b ** 2]), 2)[1] == "NH2(b)"
    assert dispatch_route(W, W.P0, 6) == ("HomocyclicCaseII", "H2(b)")
    assert dispatch_route(W, W.P0, 2) == ("HomocyclicCaseI", "H2(a)")
    assert dispatch_route(W, W.klein_outside, 2)[1] == "H1"
    assert set(ROUTES) == {"TwoNilpotentLemma41", "HomocyclicCaseI", "HomocyclicCaseII", "DirectModuleComputation"}


def test_verdict_invariants():
    W = wreathed(2)
    with pytest.raises(InternalError):
        SubgroupVerdict(W.P, WreathedClass("FullP"), True, "Direct", True, False, 1, True)
    with pytest.raises(InternalError):
        SubgroupVerdict(W.P, WreathedClass("FullP"), True, ROUTES[0], True, True, 1, True)


@pytest.mark.parametrize("pair, classes, dim", [
    (("wreathP-n2", "wreathP-n2"), 22, 32), (("c4c4-s3", "c4c4-s3"), 18, 288)])
def test_main_verification(pair, classes, dim):
    rep = verify_report(*pair)
    assert rep.overall and rep.consistent
    assert rep.inputs["classes"] == classes and rep.inputs["module_dim"] == dim
    assert rep.checks["vertex"]["passed"] and rep.checks["vertex"]["order"] == 32
    assert all(v.route in ROUTES for v in rep.verdicts)
    base = [v for v in rep.verdicts if v.Q.order == 32]
    assert len(base) == 1 and base[0].indecomposable
    for v in rep.verdicts:
        if v.details["ik"]["found"]:
            assert v.indecomposable
    d = rep.to_dict()
    assert d["overall"] and len(d["verdicts"]) == classes


def test_affine_homocyclic_dichotomy():
    rep = verify_report("c4c4-s3", "c4c4-s3")
    assert rep.checks["homocyclic_dichotomy"]["automizer_orders"] == [6, 6]
    routes = {v.details["case"]: v.route for v in rep.verdicts}
    assert routes["H2(b)"] == "HomocyclicCaseII"


def test_threads_do_not_change_the_report():
    one = verify_report("wreathP-n2", "wreathP-n2").to_dict()
    many = verify_marked(marked("wreathP-n2"), marked("wreathP-n2"), threads=4).to_dict()
    one.pop("timings"), many.pop("timings")
    assert one == many


def test_preconditions():
    with pytest.raises(PreconditionError):
        verify_marked(marked("c4c4-s3"), marked("wreathP-n2"))
    with pytest.raises(PreconditionError):
        verify_marked(marked("c4c4-s3"), marked("c8c8-s3"))
    with pytest.raises(ResourceError):
        verify_marked(marked("c4c4-s3"), marked("c4c4-s3"), dim_cap=100)
    mg = marked("c4c4-s3")
    with pytest.raises(PreconditionError):
        verify_scott_brauer_indecomposable(mg.group, mg.group, mg.wreathed.P0)


def test_ik_route():
    W = wreathed(2)
    rep = verify_via_ik(W.P, W.P, W)
    assert rep.conclusive and all(v.indecomposable for v in rep.verdicts)
    mg = marked("c4c4-s3")
    rep = verify_via_ik(mg.group, mg.wreathed.P, mg.wreathed)
    missing = [v.Q.order for v in rep.verdicts if not v.indecomposable]
    assert missing == [1] and not rep.conclusive
    p0 = [v for v in rep.verdicts if v.Q.key == mg.wreathed.P0.key]
    assert p0 and p0[0].details["ik"]["path"] == "s3-construction"
