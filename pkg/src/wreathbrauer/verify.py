"""Brauer indecomposability of ``Sc(G x G', Delta P)`` for a wreathed Sylow 2-subgroup ``P``.

Two independent lines of evidence are assembled per fully normalized ``Q``:

* the direct computation: ``M(Delta Q)`` via the fixed-point model, restricted to
  ``Delta Q C(Delta Q)`` and tested for a local endomorphism ring;
* the constructive criterion: a subgroup ``H_Q`` of ``N(Q)`` that contains
  ``N_P(Q)`` as a Sylow 2-subgroup with 2-power index, which forces the same
  restriction to be indecomposable.

The direct computation is the verdict; the criterion is a cross-check.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InternalError, PreconditionError, ResourceError
from .fusion import FusionSystem, build_fusion, fusion_difference, is_saturated, two_part
from .permgroup import (
    GroupHom, Perm, PermGroup, Subgroup, are_conjugate, centralizer, direct_product,
    normalizer, odd_core, quotient, sylow_2,
)
from .modrep import (
    ModuleSummand, brauer_model, is_indecomposable, is_subconjugate, max_dim, perm_module,
    permutation_module, restrict, scott_summand, are_isomorphic, vertex,
)
from .wreathed import (
    WreathedClass, WreathedData, abelian_invariants, classify_subgroup, recognize_wreathed,
    subgroup_to_json,
)

ROUTES = ("TwoNilpotentLemma41", "HomocyclicCaseI", "HomocyclicCaseII", "DirectModuleComputation")


# -- group-theoretic tests -----------------------------------------------------------

def is_2_nilpotent(G: PermGroup) -> bool:
    """Whether ``G`` has a normal 2-complement."""
    if G.order & (G.order - 1) == 0:
        return True
    return odd_core(G).order * two_part(G.order) == G.order


def _is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def _in_base(W: WreathedData, Q: PermGroup) -> bool:
    return all(W.in_base(g) for g in Q.generators)


def check_lemma_4_3(W: WreathedData, G: PermGroup, Q: PermGroup) -> tuple[int | None, bool]:
    """Which of the five sufficient conditions for 2-nilpotent ``C_G(Q)`` applies to ``Q``.

    The two named subgroups of conditions 4 and 5 are matched up to
    ``P``-conjugacy, since class representatives need not be the literal ones.
    ``holds`` always reports the actual 2-nilpotency of ``C_G(Q)``.
    """
    case = None
    P = W.P
    if not Q.is_abelian():
        case = 1
    else:
        zt = Subgroup(P, list(W.Z.generators) + [W.t], check=False)
        if Q.order == W.P0.order and Q.key == W.P0.key:
            case = 4
        elif Q.order == zt.order and are_conjugate(P, Q, zt) is not None:
            case = 4
        elif Q.order == 4 and are_conjugate(P, Q, W.klein_outside) is not None:
            case = 5
        else:
            inv = abelian_invariants(Q)
            outside = not _in_base(W, Q)
            if len(inv) == 2 and inv[0] != inv[1] and outside:
                case = 2
            elif len(inv) == 1 and outside:
                case = 3
    return case, is_2_nilpotent(centralizer(G, Q))


def find_s3_through_involution(G: PermGroup, Q: PermGroup, t: Perm) -> Subgroup:
    """A subgroup ``H`` of ``G`` isomorphic to ``S_3`` with ``t`` in ``H``."""
    t = Perm(t)
    if not Q.is_p_group(2) or not Q.is_subgroup_of(G) or not Q.is_normal_in(G):
        raise DomainError("Q must be a normal 2-subgroup of G")
    if G.order != 6 * Q.order:
        raise DomainError("G/Q does not have order 6")
    if all((x * y * x.inverse() * y.inverse()) in Q for x in G.generators for y in G.generators):
        raise DomainError("G/Q is abelian, not S_3")
    if t not in G or t.order() != 2 or t in Q:
        raise DomainError("t must be an involution of G outside Q")
    for s in G.elements_list():
        if s.order() != 3 or s * t == t * s:
            continue
        H = Subgroup(G, [s, t], check=False)
        if H.order == 6:
            return H
    raise InternalError("no S_3 through the involution although G/Q is S_3")


@dataclass
class HQResult:
    """A subgroup ``H_Q`` of ``N_G(Q)`` and how it was built."""

    H: Subgroup
    path: str                  # "lemma41", "s3-construction" or "extension"
    odd_core_order: int
    index: int                 # [N_G(Q) : H_Q]

    def to_dict(self) -> dict:
        return {"path": self.path, "order": self.H.order, "odd_core_order": self.odd_core_order,
                "index": self.index, "generators": [str(g) for g in self.H.generators]}


def _check_h_q(N: PermGroup, NP: PermGroup, H: PermGroup) -> None:
    if not NP.is_subgroup_of(H) or not H.is_subgroup_of(N):
        raise InternalError("H_Q does not sit between N_P(Q) and N_G(Q)")
    if (H.order // NP.order) % 2 == 0 or H.order % NP.order:
        raise InternalError("N_P(Q) is not a Sylow 2-subgroup of H_Q")
    if N.order % H.order or not _is_power_of_two(N.order // H.order):
        raise InternalError("[N_G(Q) : H_Q] is not a power of 2")


def find_h_q(G: PermGroup, P: PermGroup, Q: PermGroup, _depth: int = 0) -> HQResult | None:
    """Construct ``H_Q`` or return None when no construction path applies."""
    N = normalizer(G, Q)
    C = centralizer(G, Q)
    if not is_2_nilpotent(C):
        return None
    NP = normalizer(P, Q)
    QC = Subgroup(G, list(Q.generators) + list(C.generators), check=False)
    K = odd_core(QC)
    auto = N.order // QC.order
    if _is_power_of_two(auto):
        # N is 2-nilpotent here, so O_{2'}(N) has a Sylow complement N_P(Q)
        core = odd_core(N)
        H = Subgroup(N, list(core.generators) + list(NP.generators), check=False)
        _check_h_q(N, NP, H)
        return HQResult(H, "lemma41", core.order, N.order // H.order)
    CP = centralizer(P, Q)
    QCP = Subgroup(P, list(Q.generators) + list(CP.generators), check=False)
    if QCP.order == Q.order:
        if auto != 6 or NP.order != 2 * Q.order:
            return None
        L = Subgroup(N, list(K.generators) + list(Q.generators), check=False)
        Nbar, pi = quotient(N, L)
        QCbar = pi.image(QC)
        xbar = None
        for x in NP.elements_list():
            if x in QC:
                continue
            y = pi(x)
            if y.order() == 2:
                xbar = y
                break
        if xbar is None:
            return None
        Hbar = find_s3_through_involution(Nbar, QCbar, xbar)
        H = pi.preimage(Hbar)
        _check_h_q(N, NP, H)
        return HQResult(H, "s3-construction", K.order, N.order // H.order)
    if _depth:
        return None
    # Q sits strictly below the centric subgroup Q C_P(Q); extend from there
    NPi = normalizer(G, QCP)
    if not all(q.conj(g) in Q for g in NPi.generators for q in Q.generators):
        return None
    inner = find_h_q(G, P, QCP, _depth + 1)
    if inner is None:
        return None
    H = Subgroup(N, list(inner.H.generators) + list(K.generators), check=False)
    _check_h_q(N, NP, H)
    return HQResult(H, "extension", K.order, N.order // H.order)


# -- reports ---------------------------------------------------------------------------

@dataclass
class SubgroupVerdict:
    Q: Subgroup
    cls: WreathedClass
    fully_normalized: bool
    route: str
    indecomposable: bool
    zero: bool
    split_dim: int
    cross_checked: bool
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.route not in ROUTES:
            raise InternalError(f"unknown route {self.route}")
        if self.indecomposable and self.zero:
            raise InternalError("a verdict cannot be both indecomposable and zero")

    @property
    def passed(self) -> bool:
        return self.indecomposable or self.zero

    def to_dict(self) -> dict:
        return {"Q": subgroup_to_json(self.Q), "class": self.cls.to_dict(), "label": self.cls.label,
                "fully_normalized": self.fully_normalized, "route": self.route,
                "indecomposable": self.indecomposable, "zero": self.zero,
                "split_dim": self.split_dim, "cross_checked": self.cross_checked,
                "details": self.details}


@dataclass
class VerificationReport:
    inputs: dict
    fusion_equal: bool
    saturated: bool
    verdicts: list[SubgroupVerdict]
    timings: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    conclusive: bool = True

    @property
    def overall(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def consistent(self) -> bool:
        """All auxiliary checks (cross-checks, vertex, case dichotomy) passed."""
        return all(v.cross_checked for v in self.verdicts) and all(
            bool(c.get("passed", True)) for c in self.checks.values() if isinstance(c, dict))

    @property
    def flagged(self) -> list[int]:
        """Indices of zero verdicts, which deserve a manual look."""
        return [k for k, v in enumerate(self.verdicts) if v.zero]

    def to_dict(self) -> dict:
        return {"inputs": self.inputs, "fusion_equal": self.fusion_equal, "saturated": self.saturated,
                "overall": self.overall, "consistent": self.consistent, "conclusive": self.conclusive,
                "flagged_zero": self.flagged, "checks": self.checks,
                "verdicts": [v.to_dict() for v in self.verdicts],
                "timings": {k: round(v, 4) for k, v in self.timings.items()}}


# -- case dispatch -----------------------------------------------------------------------

def dispatch_route(W: WreathedData, Q: PermGroup, automizer_order: int) -> tuple[str, str]:
    """The route and case label for ``Q`` given ``|N(Delta Q)/C(Delta Q)|``."""
    if Q.order == 1:
        return "DirectModuleComputation", "trivial"
    if Q.order == W.P.order:
        return "DirectModuleComputation", "base-case"
    if not Q.is_abelian():
        return "TwoNilpotentLemma41", "non-abelian"
    inv = abelian_invariants(Q)
    inside = _in_base(W, Q)
    if len(inv) == 1:
        if all(g in W.center_elements for g in Q.generators):
            return "DirectModuleComputation", "C1"
        if inside:
            return "HomocyclicCaseI", "C2"
        return "TwoNilpotentLemma41", "C3"
    if inv[0] != inv[1]:
        if not inside:
            return "TwoNilpotentLemma41", "NH1"
        if automizer_order == 1:
            return "DirectModuleComputation", "NH2(a)"
        return "HomocyclicCaseI", "NH2(b)"
    if not inside:
        return "TwoNilpotentLemma41", "H1"
    if automizer_order == 6:
        return "HomocyclicCaseII", "H2(b)"
    return "HomocyclicCaseI", "H2(a)"


# -- the main pipeline -------------------------------------------------------------------

def _subgroup(G: PermGroup, gens) -> Subgroup:
    return Subgroup(G, list(gens), check=False)


def _scott_on_orbit(kY, y0: int) -> ModuleSummand:
    """``Sc(N, N_x)`` inside ``k[Y]``: the Scott summand of the orbit through ``y0``, padded by zero."""
    orbit = [y0]
    seen = {y0}
    for y in orbit:
        for p in kY.points:
            z = int(p[y])
            if z not in seen:
                seen.add(z)
                orbit.append(z)
    orbit.sort()
    where = {y: i for i, y in enumerate(orbit)}
    pts = [np.array([where[int(p[y])] for y in orbit], dtype=np.int64) for p in kY.points]
    kO = permutation_module(kY.group, pts, check=False)
    S = scott_summand(kO)
    E = np.zeros((kY.dim, kY.dim), dtype=np.uint8)
    E[np.ix_(orbit, orbit)] = S.E
    return ModuleSummand(kY, E, check=False)


def _resolve_iso(P: PermGroup, P2: PermGroup, iso) -> GroupHom:
    if iso is None:
        if P.degree != P2.degree or P.key != P2.key:
            raise PreconditionError("distinct Sylow subgroups need an explicit identification")
        return GroupHom(P, P2, list(P.generators))
    if isinstance(iso, GroupHom):
        return iso
    return GroupHom(P, P2, [iso(g) for g in P.generators])


def verify_scott_brauer_indecomposable(
        G: PermGroup, G2: PermGroup, P: PermGroup, P2: PermGroup | None = None, iso=None,
        wreathed: WreathedData | None = None, ids: tuple[str, str] | None = None,
        threads: int = 1, dim_cap: int | None = None) -> VerificationReport:
    """Check every fully normalized ``Delta Q`` for ``Sc(G x G2, Delta P)``.

    ``P2`` is the Sylow subgroup of ``G2`` identified with ``P`` through
    ``iso`` (defaults: ``P2 = P`` and the identity map).
    """
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    P2 = P if P2 is None else P2
    if not P.is_subgroup_of(G) or P.order != two_part(G.order):
        raise PreconditionError(f"P (order {P.order}) is not a Sylow 2-subgroup of G (order {G.order})")
    if not P2.is_subgroup_of(G2) or P2.order != two_part(G2.order):
        raise PreconditionError("the identified P is not a Sylow 2-subgroup of G'")
    phi = _resolve_iso(P, P2, iso)
    if not phi.is_injective() or phi.image().order != P2.order:
        raise PreconditionError("the identification of P with the Sylow of G' is not an isomorphism")
    W = wreathed if wreathed is not None else recognize_wreathed(G, P)
    if W is None or W.P.key != Subgroup(G, P.generators, check=False).key:
        raise PreconditionError("P is not a wreathed 2-group (no marking (a, b, t) found)")
    dim = G.order * G2.order // P.order
    cap = max_dim() if dim_cap is None else dim_cap
    if dim > cap:
        raise ResourceError(f"dim k[GxG'/Delta P] = {dim} exceeds the cap {cap}")
    timings["preconditions"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    F = build_fusion(G, P)
    F2 = build_fusion(G2, P2)
    diff = fusion_difference(F, F2, phi)
    if diff:
        raise PreconditionError(f"fusion systems differ on {len(diff)} subgroup class(es); first: {diff[0]}")
    saturated = is_saturated(F) and is_saturated(F2)
    reps = F.class_reps
    timings["fusion"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    D = direct_product(G, G2)
    GG = D.group
    DP = D.diagonal(P, P2, phi)
    X = perm_module(GG, DP)
    GG.elements_list()
    X.hecke.algebra
    timings["permutation_module"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    Sc = scott_summand(X)
    x0 = X.cosets.index_of(GG.identity)
    timings["scott"] = time.perf_counter() - t0

    def one(Q: Subgroup) -> SubgroupVerdict:
        return _verdict(W, F, D, phi, DP, X, Sc, x0, Q)

    t0 = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(one, reps))
    else:
        verdicts = [one(Q) for Q in reps]
    timings["subgroups"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    Vx = vertex(Sc, start=sylow_2(GG))
    vertex_ok = Vx.order == DP.order and is_subconjugate(GG, Vx, DP) is not None
    timings["vertex"] = time.perf_counter() - t0

    h2 = [v.details["automizer_order"] for v in verdicts if v.details["case"].startswith("H2")]
    checks = {
        "vertex": {"passed": vertex_ok, "order": Vx.order,
                   "generators": [str(g) for g in Vx.generators]},
        "homocyclic_dichotomy": {"passed": all(a in (2, 6) for a in h2), "automizer_orders": h2},
        "ik_agreement": {"passed": all(v.details["ik"]["agrees"] for v in verdicts),
                         "applied": sum(v.details["ik"]["found"] for v in verdicts)},
    }
    inputs = {"groups": list(ids) if ids else [f"order {G.order}", f"order {G2.order}"],
              "n": W.n, "orders": [G.order, G2.order], "sylow_order": P.order,
              "module_dim": X.dim, "scott_dim": Sc.dim, "classes": len(reps)}
    return VerificationReport(inputs, True, saturated, verdicts, timings, checks)


def _verdict(W, F: FusionSystem, D, phi: GroupHom, DP, X, Sc: ModuleSummand, x0: int,
             Q: Subgroup) -> SubgroupVerdict:
    GG = D.group
    G, G2 = D.first, D.second
    Q2 = _subgroup(G2, [phi(g) for g in Q.generators])
    DQ = D.diagonal(Q, Q2, phi)
    N = normalizer(GG, DQ)
    C = _subgroup(GG, list(D.image1(centralizer(G, Q)).generators)
                  + list(D.image2(centralizer(G2, Q2)).generators))
    auto = N.order // C.order
    route, case = dispatch_route(W, Q, auto)
    details: dict = {"case": case, "automizer_order": auto, "normalizer_order": N.order,
                     "centralizer_order": C.order}
    if route == "TwoNilpotentLemma41":
        details["centralizer_2_nilpotent"] = is_2_nilpotent(centralizer(G, Q)) and \
            is_2_nilpotent(centralizer(G2, Q2))
        details["lemma_4_3_case"] = check_lemma_4_3(W, G, Q)[0]
    model = brauer_model(Sc, DQ, N)
    details["fixed_points"] = len(model.points)
    details["brauer_dim"] = model.dim
    zero = model.is_zero
    indec, q = False, 0
    iso_ok = False
    if not zero:
        H = _subgroup(GG, list(DQ.generators) + list(C.generators))
        indec, q = is_indecomposable(restrict(model.summand, H))
        y0 = model.points.index(x0)
        scN = _scott_on_orbit(model.module, y0)
        details["scott_normalizer_dim"] = scN.dim
        iso_ok = are_isomorphic(scN, model.summand)
        details["scott_isomorphic"] = iso_ok
    hq = find_h_q(GG, DP, DQ)
    agrees = hq is None or indec
    details["ik"] = {"found": hq is not None, "agrees": agrees,
                     **({} if hq is None else hq.to_dict())}
    if route == "TwoNilpotentLemma41":
        agrees = agrees and details["centralizer_2_nilpotent"]
    cross = (iso_ok or zero) and agrees
    cls = classify_subgroup(W, Q)
    return SubgroupVerdict(Q, cls, True, route, bool(indec), zero, int(q), bool(cross), details)


def verify_via_ik(G: PermGroup, P: PermGroup, wreathed: WreathedData | None = None,
                  ident: str | None = None, threads: int = 1) -> VerificationReport:
    """Attempt ``H_Q`` at every fully normalized ``Q``; a miss is inconclusive, never a failure."""
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    F = build_fusion(G, P)
    saturated = is_saturated(F)
    if not saturated:
        raise PreconditionError("F_P(G) is not saturated")
    W = wreathed if wreathed is not None else recognize_wreathed(G, P)
    reps = F.class_reps
    timings["fusion"] = time.perf_counter() - t0

    def one(Q: Subgroup) -> SubgroupVerdict:
        hq = find_h_q(G, F.P, Q)
        N = normalizer(G, Q)
        auto = N.order // centralizer(G, Q).order
        details = {"automizer_order": auto, "ik": {"found": hq is not None,
                                                  **({} if hq is None else hq.to_dict())}}
        if W is not None:
            route, case = dispatch_route(W, Q, auto)
            cls = classify_subgroup(W, Q)
        else:
            route, case, cls = "DirectModuleComputation", "unclassified", WreathedClass("Unclassified")
        details["case"] = case
        return SubgroupVerdict(Q, cls, True, route, hq is not None, False, 1 if hq else 0,
                               False, details)

    t0 = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(one, reps))
    else:
        verdicts = [one(Q) for Q in reps]
    timings["subgroups"] = time.perf_counter() - t0
    inputs = {"groups": [ident or f"order {G.order}"], "n": None if W is None else W.n,
              "orders": [G.order], "sylow_order": P.order, "classes": len(reps)}
    rep = VerificationReport(inputs, True, saturated, verdicts, timings, {})
    rep.conclusive = all(v.indecomposable for v in verdicts)
    return rep


def verify_marked(mg, mg2, threads: int = 1, dim_cap: int | None = None) -> VerificationReport:
    """``verify_scott_brauer_indecomposable`` for two catalog groups, identified through their markings."""
    W, W2 = mg.wreathed, mg2.wreathed
    if W is None or W2 is None:
        raise PreconditionError("both groups need a wreathed Sylow 2-subgroup")
    if W.n != W2.n:
        raise PreconditionError(f"Sylow subgroups differ: n = {W.n} versus n = {W2.n}")
    phi = GroupHom(W.P, W2.P, [W2.a, W2.b, W2.t]) if list(W.P.generators) == [W.a, W.b, W.t] else \
        GroupHom(W.P, W2.P, [W2.elem(*W.coords(g)) for g in W.P.generators])
    return verify_scott_brauer_indecomposable(mg.group, mg2.group, W.P, W2.P, phi, W,
                                              (mg.id, mg2.id), threads, dim_cap)


__all__ = [
    "ROUTES", "SubgroupVerdict", "VerificationReport", "HQResult", "is_2_nilpotent",
    "check_lemma_4_3", "find_s3_through_involution", "find_h_q", "dispatch_route",
    "verify_scott_brauer_indecomposable", "verify_via_ik", "verify_marked",
]
