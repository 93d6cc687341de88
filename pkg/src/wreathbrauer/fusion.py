"""Fusion systems ``F_P(G)`` materialized from conjugation in ``G``.

A morphism ``Q -> R`` is stored as the tuple of images of ``Q``'s elements in
sorted order.  Hom-sets are computed from the transporter on demand and
memoized; cache writes are idempotent so concurrent readers are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .errors import DomainError, InternalError, ResourceError
from .permgroup import (
    GroupHom, Perm, PermGroup, Subgroup, centralizer, normalizer, quotient,
    subgroup_from_elements, subgroups_up_to_conjugacy,
)
from .wreathed import (
    WreathedData, canonical_homocyclic, canonical_q8_central_product, classify_subgroup,
    on_lemma_list,
)

SATURATION_BOUND = 2 ** 8

Map = tuple  # images of the sorted elements of the source subgroup


def conj_map(g: Perm, Q: PermGroup) -> Map:
    return tuple(x.conj(g) for x in Q.elements_list())


def compose(phi: Map, psi: Map, psi_source: PermGroup, phi_source: PermGroup) -> Map:
    """``phi o psi`` where ``psi: psi_source -> phi_source``."""
    pos = {x: k for k, x in enumerate(phi_source.elements_list())}
    return tuple(phi[pos[y]] for y in psi)


def two_part(n: int) -> int:
    return n & -n


@dataclass
class FClass:
    members: list[Subgroup]          # every subgroup of P in the class, sorted by key
    rep: Subgroup                    # fully normalized representative

    @property
    def order(self) -> int:
        return self.rep.order


@dataclass
class AutomizerData:
    Q: Subgroup
    aut_f: PermGroup                 # permutations of the sorted elements of Q
    inn: Subgroup
    aut_p: Subgroup
    out_f_order: int
    out_f_shape: str

    @property
    def order(self) -> int:
        return self.aut_f.order

    def to_dict(self) -> dict:
        return {"aut_f_order": self.aut_f.order, "inn_order": self.inn.order,
                "aut_p_order": self.aut_p.order, "out_f_order": self.out_f_order,
                "out_f_shape": self.out_f_shape}


class FusionSystem:
    """``F_P(G)`` for a 2-subgroup ``P`` of ``G``."""

    def __init__(self, G: PermGroup, P: PermGroup,
                 hom_filter: Callable[[PermGroup, PermGroup, Map], bool] | None = None):
        if not P.is_p_group(2):
            raise DomainError("fusion systems here are over 2-groups")
        if not P.is_subgroup_of(G):
            raise DomainError("P is not inside G")
        self.G = G
        self.P = P if isinstance(P, Subgroup) and P.parent is G else Subgroup(G, list(P.generators), check=False)
        self.hom_filter = hom_filter
        self._homs: dict[tuple[frozenset, frozenset], frozenset] = {}
        self._subs: dict[frozenset, Subgroup] = {}

    # -- subgroup bookkeeping ----------------------------------------------------
    def sub(self, Q: PermGroup) -> Subgroup:
        """Canonical Subgroup object of ``P`` for the element set of ``Q``."""
        key = Q.elements
        S = self._subs.get(key)
        if S is None:
            S = Q if isinstance(Q, Subgroup) and Q.parent is self.P else subgroup_from_elements(self.P, key)
            self._subs[key] = S
        return S

    @cached_property
    def p_class_reps(self) -> list[Subgroup]:
        return [self.sub(Q) for Q in subgroups_up_to_conjugacy(self.P)]

    def f_conjugates(self, Q: PermGroup) -> list[Subgroup]:
        """All subgroups of ``P`` of the form ``gQg^-1`` with ``g`` in ``G``."""
        seen: set[frozenset] = set()
        P = self.P
        for g in self.G.elements_list():
            if all(x.conj(g) in P for x in Q.generators):
                seen.add(frozenset(x.conj(g) for x in Q.elements))
        return [self.sub(subgroup_from_elements(P, s)) for s in sorted(seen, key=lambda s: tuple(sorted(s)))]

    @cached_property
    def classes(self) -> list[FClass]:
        out: list[FClass] = []
        done: set[frozenset] = set()
        for R in self.p_class_reps:
            if R.elements in done:
                continue
            members = self.f_conjugates(R)
            done.update(M.elements for M in members)
            out.append(FClass(members, self._fully_normalized_choice(members)))
        out.sort(key=lambda c: (c.rep.order, c.rep.key))
        return out

    @property
    def class_reps(self) -> list[Subgroup]:
        return [c.rep for c in self.classes]

    def class_of(self, Q: PermGroup) -> FClass:
        key = Q.elements
        for c in self.classes:
            if c.order == Q.order and any(M.elements == key for M in c.members):
                return c
        raise DomainError("subgroup is not inside P")

    def _fully_normalized_choice(self, members: list[Subgroup]) -> Subgroup:
        best = max(normalizer(self.P, M).order for M in members)
        cands = [M for M in members if normalizer(self.P, M).order == best]
        return min(cands, key=lambda M: M.key)

    def n_p(self, Q: PermGroup) -> Subgroup:
        return normalizer(self.P, self.sub(Q))

    def c_p(self, Q: PermGroup) -> Subgroup:
        return centralizer(self.P, self.sub(Q))

    # -- hom sets ------------------------------------------------------------------
    def hom(self, Q: PermGroup, R: PermGroup) -> frozenset:
        """``Hom_F(Q, R)`` as a set of image tuples."""
        key = (Q.elements, R.elements)
        cached = self._homs.get(key)
        if cached is not None:
            return cached
        Qs = self.sub(Q)
        maps = set()
        for g in self.G.elements_list():
            if all(x.conj(g) in R for x in Qs.generators):
                maps.add(conj_map(g, Qs))
        if self.hom_filter is not None:
            maps = {m for m in maps if self.hom_filter(Qs, R, m)}
        result = frozenset(maps)
        self._homs[key] = result
        return result

    def aut(self, Q: PermGroup) -> frozenset:
        return self.hom(Q, Q)

    def aut_p(self, Q: PermGroup) -> frozenset:
        Qs = self.sub(Q)
        return frozenset(conj_map(g, Qs) for g in self.n_p(Qs).elements_list())


def build_fusion(G: PermGroup, P: PermGroup, hom_filter=None) -> FusionSystem:
    return FusionSystem(G, P, hom_filter)


def is_fully_normalized(F: FusionSystem, Q: PermGroup) -> bool:
    cls = F.class_of(Q)
    mine = F.n_p(Q).order
    return all(mine >= F.n_p(M).order for M in cls.members)


def is_fully_centralized(F: FusionSystem, Q: PermGroup) -> bool:
    cls = F.class_of(Q)
    mine = F.c_p(Q).order
    return all(mine >= F.c_p(M).order for M in cls.members)


def is_centric(F: FusionSystem, Q: PermGroup) -> bool:
    return all(F.c_p(M).elements <= M.elements for M in F.class_of(Q).members)


def _is_fully_automized(F: FusionSystem, Q: Subgroup) -> bool:
    return len(F.aut_p(Q)) == two_part(len(F.aut(Q)))


def _is_receptive(F: FusionSystem, Q: Subgroup, members: list[Subgroup]) -> bool:
    """Every ``phi: Q' -> Q`` in ``F`` extends to ``N_phi``."""
    autp_q = F.aut_p(Q)
    qel = Q.elements_list()
    qpos = {x: k for k, x in enumerate(qel)}
    for R in members:
        rel = R.elements_list()
        rpos = {x: k for k, x in enumerate(rel)}
        npr = F.n_p(R)
        cg = {g: conj_map(g, R) for g in npr.elements_list()}
        for phi in F.hom(R, Q):
            inv = [None] * len(qel)
            for k, y in enumerate(phi):
                inv[qpos[y]] = rel[k]
            # phi c_g phi^-1 as a map on Q
            nphi = []
            for g, c in cg.items():
                m = tuple(phi[rpos[c[rpos[inv[k]]]]] for k in range(len(qel)))
                if m in autp_q:
                    nphi.append(g)
            N = subgroup_from_elements(F.P, nphi)
            n_el = N.elements_list()
            idx = [n_el.index(x) for x in rel]
            if not any(all(psi[i] == phi[k] for k, i in enumerate(idx)) for psi in F.hom(N, F.P)):
                return False
    return True


def saturation_report(F: FusionSystem, bound: int = SATURATION_BOUND) -> dict:
    """Per-class fully-automized and receptive verdicts for the fully normalized representative."""
    if F.P.order > bound:
        raise ResourceError(f"|P| = {F.P.order} exceeds saturation bound {bound}")
    rows = []
    for c in F.classes:
        Q = c.rep
        rows.append({"order": Q.order, "fully_automized": _is_fully_automized(F, Q),
                     "receptive": _is_receptive(F, Q, c.members)})
    return {"classes": len(rows), "failures": [r for r in rows if not (r["fully_automized"] and r["receptive"])],
            "saturated": all(r["fully_automized"] and r["receptive"] for r in rows)}


def is_saturated(F: FusionSystem, bound: int = SATURATION_BOUND) -> bool:
    return saturation_report(F, bound)["saturated"]


# -- automizers -------------------------------------------------------------------

def _maps_to_perms(Q: PermGroup, maps) -> list[Perm]:
    el = Q.elements_list()
    pos = {x: k for k, x in enumerate(el)}
    return [Perm(pos[y] for y in m) for m in maps]


def classify_shape(order: int, group: PermGroup | None) -> str:
    if order == 1:
        return "trivial"
    if order == 2:
        return "C2"
    if order & (order - 1) == 0:
        return "other-2-group"
    if order == 6 and group is not None and not group.is_abelian():
        return "S3"
    return "other"


def automizer(F: FusionSystem, Q: PermGroup) -> AutomizerData:
    Qs = F.sub(Q)
    deg = max(Qs.order, 1)
    aut_gens = _maps_to_perms(Qs, sorted(F.aut(Qs)))
    aut_f = PermGroup(aut_gens, deg)
    inn_maps = {conj_map(g, Qs) for g in Qs.generators}
    inn = Subgroup(aut_f, _maps_to_perms(Qs, sorted(inn_maps)), check=False)
    autp_maps = sorted(F.aut_p(Qs))
    aut_p = Subgroup(aut_f, _maps_to_perms(Qs, autp_maps), check=False)
    out_order = aut_f.order // inn.order
    out_group = quotient(aut_f, inn)[0] if out_order > 1 else None
    return AutomizerData(Qs, aut_f, inn, aut_p, out_order, classify_shape(out_order, out_group))


def out_shape_mod_centralizer(F: FusionSystem, Q: PermGroup) -> tuple[int, str]:
    """Order and shape of ``N_G(Q) / Q C_G(Q)``."""
    return automizer(F, Q).out_f_order, automizer(F, Q).out_f_shape


def essential_subgroups(F: FusionSystem) -> list[Subgroup]:
    """Proper centric fully normalized subgroups whose outer automizer is ``S_3``."""
    if not is_saturated(F):
        raise DomainError("essential subgroups are only defined here for saturated fusion systems")
    out = []
    for c in F.classes:
        Q = c.rep
        if Q.order == F.P.order or not is_centric(F, Q):
            continue
        A = automizer(F, Q)
        shape = A.out_f_shape
        if shape == "S3":
            out.append(Q)
        elif shape in ("trivial", "C2", "other-2-group"):
            continue
        elif A.out_f_order % 2:
            continue
        else:
            raise InternalError(f"unexpected outer automizer of order {A.out_f_order} on an order-{Q.order} subgroup")
    return out


def non_two_automizer_reps(F: FusionSystem) -> list[Subgroup]:
    """Fully normalized class representatives whose ``F``-automizer is not a 2-group."""
    out = []
    for c in F.classes:
        n = len(F.aut(c.rep))
        if n & (n - 1):
            out.append(c.rep)
    return out


# -- the essential-subgroup lemmas on a wreathed P ------------------------------------

BASE_FAMILY = ("Base", "HomocyclicInBase")
P1_FAMILY = ("P1Class", "Q8CentralProduct")


def _s3_like(A: AutomizerData, outer: bool) -> bool:
    if outer:
        return A.out_f_shape == "S3"
    return A.aut_f.order == 6 and not A.aut_f.is_abelian()


def _family_check(F: FusionSystem, W: WreathedData, name: str, top: Subgroup,
                  members: list[Subgroup], outer: bool) -> FusionCheck:
    res = FusionCheck(name)
    NT = normalizer(F.G, top)
    for Q in members:
        res.checked += 1
        NQ = normalizer(F.G, Q)
        CQ = centralizer(F.G, Q)
        A = automizer(F, Q)
        row = {"order": Q.order, "aut_f": A.aut_f.order, "out_f": A.out_f_order}
        if not product_set_equals(F.G, NT, CQ, NQ):
            res.counterexamples.append({**row, "failure": "N_G(Q) != N_G(top) C_G(Q)"})
        if not _s3_like(A, outer):
            res.counterexamples.append({**row, "failure": "automizer is not S_3"})
    res.details = {"members": res.checked}
    return res


def check_base_essential(F: FusionSystem, W: WreathedData) -> FusionCheck:
    """With ``P_0`` essential: each ``<a^(2^m)> x <b^(2^m)>`` has ``N_G(Q) = N_G(P_0) C_G(Q)`` and ``Aut_F(Q) = S_3``."""
    members = [F.sub(canonical_homocyclic(W, m)) for m in range(W.n)]
    return _family_check(F, W, "base-essential-family", F.sub(W.P0), members, outer=False)


def check_p1_essential(F: FusionSystem, W: WreathedData) -> FusionCheck:
    """With ``P_1`` essential: each ``Q_8 * C_{2^m}`` has ``N_G(Q) = N_G(P_1) C_G(Q)`` and ``Out_F(Q) = S_3``."""
    members = [F.sub(canonical_q8_central_product(W, m)) for m in range(1, W.n + 1)]
    return _family_check(F, W, "p1-essential-family", F.sub(W.P1), members, outer=True)


def realized_essential_families(F: FusionSystem, W: WreathedData) -> list[str]:
    """Which of ``P_0`` and the ``P_1`` class are essential in ``F``."""
    out = []
    ess = essential_subgroups(F)
    tags = {classify_subgroup(W, E).tag for E in ess}
    if "Base" in tags:
        out.append("P0")
    if "P1Class" in tags:
        out.append("P1")
    if tags - {"Base", "P1Class"}:
        raise InternalError(f"essential subgroup outside the expected families: {sorted(tags)}")
    return out


def check_non_two_automizers(F: FusionSystem, W: WreathedData) -> FusionCheck:
    """Fully normalized ``Q`` with ``N_G(Q)/Q C_G(Q)`` not a 2-group are exactly the families of the realized essentials.

    Each such ``Q`` must also have ``N_P(Q)/Q C_P(Q) = C_2`` and ``N_G(Q)/Q C_G(Q) = S_3``.
    """
    res = FusionCheck("non-two-automizers")
    fams = realized_essential_families(F, W)
    allowed = (BASE_FAMILY if "P0" in fams else ()) + (P1_FAMILY if "P1" in fams else ())
    found = []
    for c in F.classes:
        Q = c.rep
        res.checked += 1
        A = automizer(F, Q)
        cls = classify_subgroup(W, Q)
        expected = cls.tag in allowed
        if A.out_f_order & (A.out_f_order - 1) == 0:
            if expected:
                res.counterexamples.append({"class": cls.label, "failure": "expected a non-2 automizer"})
            continue
        found.append(cls.label)
        if not (expected and on_lemma_list(W, cls)):
            res.counterexamples.append({"class": cls.label, "failure": "not on the list of the realized essentials"})
        qcp = Subgroup(F.P, list(Q.generators) + list(F.c_p(Q).generators), check=False)
        if F.n_p(Q).order != 2 * qcp.order:
            res.counterexamples.append({"class": cls.label, "failure": "N_P(Q)/Q C_P(Q) is not C_2"})
        if A.out_f_shape != "S3":
            res.counterexamples.append({"class": cls.label, "failure": f"outer automizer {A.out_f_shape}"})
    res.details = {"essential_families": fams, "non_two_classes": found}
    return res


# -- equality of fusion systems across realizations --------------------------------

def marking_iso(P1: PermGroup, P2: PermGroup, images: list[Perm]) -> GroupHom:
    return GroupHom(P1, P2, images)


def fusion_equal(F1: FusionSystem, F2: FusionSystem,
                 iso: GroupHom | Callable[[Perm], Perm] | None = None) -> bool:
    """Whether ``Hom_F1(Q, P) = Hom_F2(Q, P)`` for every subgroup ``Q``, after transport by ``iso``."""
    return not fusion_difference(F1, F2, iso)


def fusion_difference(F1: FusionSystem, F2: FusionSystem, iso=None) -> list[dict]:
    """Subgroups (of ``F1.P``) where the hom sets into ``P`` differ; empty iff equal."""
    if iso is None:
        if F1.P.degree != F2.P.degree or F1.P.key != F2.P.key:
            raise DomainError("fusion systems over different P need an explicit isomorphism")
        iso = lambda x: x  # noqa: E731
    if F1.P.order != F2.P.order:
        raise DomainError("P orders differ")
    if isinstance(iso, GroupHom) and not iso.is_injective():
        raise DomainError("supplied identification of P is not injective")
    diffs = []
    for Q in F1.p_class_reps:
        Q2 = F2.sub(subgroup_from_elements(F2.P, [iso(x) for x in Q.elements]))
        moved = {tuple(iso(y) for y in phi) for phi in F1.hom(Q, F1.P)}
        # reorder to Q2's sorted-element convention
        q_el = Q.elements_list()
        pos2 = {iso(x): k for k, x in enumerate(q_el)}
        order = [pos2[y] for y in Q2.elements_list()]
        moved = {tuple(m[k] for k in order) for m in moved}
        other = set(F2.hom(Q2, F2.P))
        if moved != other:
            diffs.append({"order": Q.order, "generators": [str(g) for g in Q.generators],
                          "only_first": len(moved - other), "only_second": len(other - moved)})
    return diffs


# -- structural checks -------------------------------------------------------------

@dataclass
class FusionCheck:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "counterexamples": self.counterexamples[:20], "details": self.details}


def check_sylow_automizers(F: FusionSystem) -> FusionCheck:
    """For fully normalized ``Q``: ``N_P(Q)/C_P(Q)`` is Sylow in ``N_G(Q)/C_G(Q)``."""
    res = FusionCheck("sylow-automizers")
    for c in F.classes:
        for M in c.members:
            if not is_fully_normalized(F, M):
                continue
            res.checked += 1
            a_p, a_f = len(F.aut_p(M)), len(F.aut(M))
            if a_p != two_part(a_f):
                res.counterexamples.append({"order": M.order, "aut_p": a_p, "aut_f": a_f})
    return res


def product_set_equals(G: PermGroup, A: PermGroup, B: PermGroup, target: PermGroup) -> bool:
    prod = {x * y for x in A.elements for y in B.elements}
    return prod == set(target.elements)


__all__ = [
    "FusionSystem", "FClass", "AutomizerData", "FusionCheck", "build_fusion",
    "is_fully_normalized", "is_fully_centralized", "is_centric", "is_saturated",
    "saturation_report", "automizer", "essential_subgroups", "non_two_automizer_reps",
    "fusion_equal", "fusion_difference", "marking_iso", "conj_map", "compose",
    "check_sylow_automizers", "product_set_equals", "check_base_essential", "check_p1_essential",
    "check_non_two_automizers", "realized_essential_families", "BASE_FAMILY", "P1_FAMILY", "classify_shape", "two_part",
    "SATURATION_BOUND",
]
