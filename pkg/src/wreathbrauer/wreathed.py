"""The wreathed 2-group ``C_{2^n} wr C_2`` with named generators and subgroup classification.

``build_wreathed(n)`` realizes ``P`` on ``2^{n+1}`` points: ``a`` cycles the
first block, ``b`` the second, and ``t`` swaps them.  ``wreathed_from_marking``
accepts any triple ``(a, b, t)`` inside a larger group satisfying the defining
relations, which is how the catalog groups expose their Sylow 2-subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import DomainError, InternalError
from .permgroup import (
    Perm, PermGroup, Subgroup, are_conjugate, centralizer, subgroup_from_elements,
    subgroups_up_to_conjugacy,
)

TAGS = (
    "Trivial", "FullP", "Base", "P1Class", "Q8CentralProduct", "NonAbelianOther",
    "CyclicInBase", "CyclicOutsideBase", "HomocyclicInBase", "KleinOutsideBase",
    "NonHomocyclicAbelian",
)


@dataclass(frozen=True)
class WreathedClass:
    tag: str
    m: int | None = None
    witness: Perm | None = None
    canonical: Subgroup | None = field(default=None, compare=False, repr=False)

    @property
    def label(self) -> str:
        return self.tag if self.m is None else f"{self.tag}(m={self.m})"

    def to_dict(self) -> dict:
        return {"tag": self.tag, "m": self.m,
                "witness": None if self.witness is None else str(self.witness)}


class WreathedData:
    """``P = <a, b, t>`` with ``P_0``, ``Z(P)`` and the fixed ``P_1`` representative."""

    def __init__(self, n: int, ambient: PermGroup, a: Perm, b: Perm, t: Perm):
        if n < 2:
            raise DomainError("wreathed 2-groups need n >= 2")
        self.n = n
        self.N = 2 ** n
        self.ambient = ambient
        self.a, self.b, self.t = Perm(a), Perm(b), Perm(t)
        one = ambient.identity
        a, b, t = self.a, self.b, self.t
        if not ((a ** self.N) == one and (b ** self.N) == one and t * t == one):
            raise DomainError("marking violates a^(2^n) = b^(2^n) = t^2 = 1")
        if a.order() != self.N or b.order() != self.N or t.is_identity():
            raise DomainError("marking has generators of the wrong order")
        if a.conj(t) != b or a * b != b * a:
            raise DomainError("marking violates a^t = b or ab = ba")
        self.P = Subgroup(ambient, [a, b, t])
        if self.P.order != 2 ** (2 * n + 1):
            raise DomainError(f"<a,b,t> has order {self.P.order}, expected {2 ** (2 * n + 1)}")
        coords: dict[Perm, tuple[int, int, int]] = {}
        ai = [a ** i for i in range(self.N)]
        bj = [b ** j for j in range(self.N)]
        for i in range(self.N):
            for j in range(self.N):
                x = ai[i] * bj[j]
                coords[x] = (i, j, 0)
                coords[x * t] = (i, j, 1)
        self._coords = coords
        self._ai, self._bj = ai, bj
        self.P0 = Subgroup(self.P, [a, b], check=False)
        self.Z = Subgroup(self.P, [a * b], check=False)
        h = self.N // 4
        self.Y0 = Subgroup(self.P, [(a * b.inverse()) ** h, ((a * b) ** h) * t], check=False)
        self.P1 = Subgroup(self.P, list(self.Y0.generators) + [a * b], check=False)
        self.klein_outside = Subgroup(self.P, [(a * b) ** (self.N // 2), t], check=False)
        self._check_invariants()

    def _check_invariants(self) -> None:
        if self.Z.order != self.N or self.P0.order * 2 != self.P.order:
            raise InternalError("named subgroups have wrong orders")
        if self.P1.order != 4 * self.N or not self.P1.is_subgroup_of(self.P):
            raise InternalError("P_1 representative has the wrong order")
        if self.Y0.order != 8 or self.Y0.is_abelian():
            raise InternalError("canonical Q_8 is not quaternion")

    def elem(self, i: int, j: int, s: int = 0) -> Perm:
        x = self._ai[i % self.N] * self._bj[j % self.N]
        return x * self.t if s % 2 else x

    def coords(self, g: Perm) -> tuple[int, int, int]:
        """``(i, j, s)`` with ``g = a^i b^j t^s``."""
        try:
            return self._coords[Perm(g)]
        except KeyError:
            raise DomainError(f"{g} is not in P") from None

    def in_base(self, g: Perm) -> bool:
        return self.coords(g)[2] == 0

    def subgroup(self, gens) -> Subgroup:
        return Subgroup(self.P, list(gens))

    @cached_property
    def center_elements(self) -> frozenset[Perm]:
        return self.Z.elements

    def __repr__(self) -> str:
        return f"WreathedData(n={self.n}, |P|={self.P.order})"


def build_wreathed(n: int) -> WreathedData:
    """``C_{2^n} wr C_2`` on ``2^{n+1}`` points (two regular blocks swapped by ``t``)."""
    if n < 2:
        raise DomainError("wreathed 2-groups need n >= 2")
    N = 2 ** n
    a = Perm([(x + 1) % N for x in range(N)] + list(range(N, 2 * N)))
    b = Perm(list(range(N)) + [N + (y + 1) % N for y in range(N)])
    t = Perm([x + N for x in range(N)] + list(range(N)))
    ambient = PermGroup([a, b, t], 2 * N)
    return WreathedData(n, ambient, a, b, t)


def wreathed_from_marking(ambient: PermGroup, a: Perm, b: Perm, t: Perm) -> WreathedData:
    """Wrap a marked wreathed subgroup ``<a, b, t>`` of ``ambient``; ``n`` is read off ``|a|``."""
    order = Perm(a).order()
    n = order.bit_length() - 1
    if 2 ** n != order:
        raise DomainError(f"|a| = {order} is not a power of 2")
    return WreathedData(n, ambient, a, b, t)


def canonical_homocyclic(W: WreathedData, m: int) -> Subgroup:
    """``<a^(2^m)> x <b^(2^m)>`` for ``0 <= m <= n-1``."""
    if not 0 <= m <= W.n - 1:
        raise DomainError(f"m must lie in 0..{W.n - 1}")
    k = 2 ** m
    return Subgroup(W.P, [W.a ** k, W.b ** k], check=False)


def canonical_q8_central_product(W: WreathedData, m: int) -> Subgroup:
    """``Y_0 * <(ab)^(2^(n-m))>``, isomorphic to ``Q_8 * C_{2^m}`` (``1 <= m <= n``)."""
    if not 1 <= m <= W.n:
        raise DomainError(f"m must lie in 1..{W.n}")
    return Subgroup(W.P, list(W.Y0.generators) + [(W.a * W.b) ** (2 ** (W.n - m))], check=False)


# -- small-group invariants ---------------------------------------------------

def abelian_invariants(Q: PermGroup) -> tuple[int, ...]:
    """Exponents ``e_i`` with ``Q = prod C_{2^{e_i}}`` (abelian 2-groups), decreasing."""
    if not Q.is_abelian() or not Q.is_p_group(2):
        raise DomainError("abelian 2-group required")
    logs = []
    k = 0
    while True:
        cnt = sum(1 for x in Q.elements if (x ** (2 ** k)).is_identity())
        logs.append(cnt.bit_length() - 1)
        if cnt == Q.order:
            break
        k += 1
    # logs[k] = sum_i min(e_i, k); rank at level k is logs[k] - logs[k-1]
    ranks = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
    inv = []
    for k in range(len(ranks)):
        nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
        inv += [k + 1] * (ranks[k] - nxt)
    return tuple(sorted(inv, reverse=True))


def is_quaternion_pair(x: Perm, y: Perm) -> bool:
    """``<x, y>`` is ``Q_8`` iff ``|x| = |y| = 4``, ``x^2 = y^2`` and ``y x y^-1 = x^-1``."""
    return (x.order() == 4 and y.order() == 4 and x * x == y * y
            and x.conj(y) == x.inverse())


@dataclass(frozen=True)
class Q8Info:
    subgroup: Subgroup
    i: int
    j: int
    witness: Perm          # conjugates the canonical Y_0 onto ``subgroup``
    closed_form_witness: bool


def q8_form(W: WreathedData, Q: PermGroup) -> tuple[int, int] | None:
    """``(i, j)`` with ``Q = <(ab^-1)^(2^(n-2)), a^i b^j t>`` and ``i + j = 2^(n-1) mod 2^n``."""
    c = (W.a * W.b.inverse()) ** (W.N // 4)
    if Q.order != 8 or c not in Q:
        return None
    for x in Q.elements_list():
        i, j, s = W.coords(x)
        if s == 1 and (i + j) % W.N == W.N // 2:
            if Subgroup(W.P, [c, x], check=False).key == Q.key:
                return i, j
    return None


def q8_witness(W: WreathedData, form1: tuple[int, int], form2: tuple[int, int]) -> Perm:
    """The closed-form conjugator ``a^{j2} b^{j1} t`` between two quaternion forms."""
    return W.elem(form2[1], form1[1], 1)


def q8_subgroups(W: WreathedData) -> list[Q8Info]:
    """All ``Q_8`` subgroups of ``P``, each with a conjugator from ``Y_0``."""
    fours = [x for x in W.P.elements_list() if x.order() == 4]
    found: dict[frozenset, Subgroup] = {}
    for x, y in combinations(fours, 2):
        if is_quaternion_pair(x, y):
            Q = Subgroup(W.P, [x, y], check=False)
            found.setdefault(Q.elements, Q)
    base_form = q8_form(W, W.Y0)
    if base_form is None:
        raise InternalError("canonical Q_8 lacks the expected generator form")
    out = []
    for elems in sorted(found, key=lambda e: tuple(sorted(e))):
        Q = found[elems]
        form = q8_form(W, Q)
        if form is None:
            raise InternalError(f"Q_8 subgroup {[str(g) for g in Q.generators]} lacks the generator form")
        x = q8_witness(W, base_form, form)
        ok = W.Y0.conjugate(x).key == Q.key
        if not ok:
            x = are_conjugate(W.P, W.Y0, Q)
            if x is None:
                raise InternalError("Q_8 subgroups not P-conjugate")
        out.append(Q8Info(Q, form[0], form[1], x, ok))
    return out


# -- classification -------------------------------------------------------------

def _conjugate_into(W: WreathedData, Q: PermGroup, target: PermGroup, equal: bool) -> Perm | None:
    for g in W.P.elements_list():
        if all(h.conj(g) in target for h in Q.generators):
            if not equal or Q.order == target.order:
                return g
    return None


def _q8_central_product_m(W: WreathedData, Q: PermGroup) -> int | None:
    """``m`` when ``Q = Y K`` with ``Y = Q_8`` and ``K = Q cap Z(P)`` cyclic of order ``2^m``."""
    zq = Q.elements & W.center_elements
    k = len(zq)
    if Q.order != 4 * k or k < 2:
        return None
    fours = [x for x in Q.elements_list() if x.order() == 4 and x not in W.center_elements]
    for x, y in combinations(fours, 2):
        if is_quaternion_pair(x, y):
            m = k.bit_length() - 1
            return m
    return None


def classify_subgroup(W: WreathedData, Q: PermGroup) -> WreathedClass:
    """Assign exactly one tag; witnesses conjugate ``Q`` into the canonical representative."""
    if not Q.is_subgroup_of(W.P):
        raise DomainError("subgroup is not inside P")
    n = W.n
    if Q.order == 1:
        return WreathedClass("Trivial")
    if Q.order == W.P.order:
        return WreathedClass("FullP")
    if Q.key == W.P0.key:
        return WreathedClass("Base", canonical=W.P0)
    if not Q.is_abelian():
        m = _q8_central_product_m(W, Q)
        if m is not None:
            target = canonical_q8_central_product(W, m)
            g = _conjugate_into(W, Q, target, True)
            if g is None:
                raise InternalError("quaternion central product not conjugate to its canonical form")
            if m == n:
                return WreathedClass("P1Class", m, g, W.P1)
            return WreathedClass("Q8CentralProduct", m, g, target)
        return WreathedClass("NonAbelianOther")
    inv = abelian_invariants(Q)
    inside = all(W.in_base(g) for g in Q.generators)
    if len(inv) == 1:
        return WreathedClass("CyclicInBase" if inside else "CyclicOutsideBase", inv[0])
    if len(inv) == 2 and inv[0] == inv[1]:
        m = inv[0]
        if inside:
            canon = canonical_homocyclic(W, n - m)
            if canon.key != Q.key:
                raise InternalError("homocyclic base subgroup differs from its canonical form")
            return WreathedClass("HomocyclicInBase", m, None, canon)
        if m != 1:
            raise InternalError("homocyclic subgroup of rank >= 2 outside the base")
        g = _conjugate_into(W, Q, W.klein_outside, True)
        if g is None:
            raise InternalError("Klein subgroup outside the base is not conjugate to the canonical one")
        return WreathedClass("KleinOutsideBase", 1, g, W.klein_outside)
    return WreathedClass("NonHomocyclicAbelian")


def on_lemma_list(W: WreathedData, cls: WreathedClass) -> bool:
    """Whether a class is one of the two families whose automizers may be non-2-groups."""
    return cls.tag in ("Base", "HomocyclicInBase", "P1Class", "Q8CentralProduct")


# -- exhaustive structural checks ------------------------------------------------

@dataclass
class CheckResult:
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


def check_order_and_center(W: WreathedData) -> CheckResult:
    res = CheckResult("order-and-center")
    res.checked = 1
    expect = 2 ** (2 * W.n + 1)
    zc = [g for g in W.P.elements_list() if all(g * x == x * g for x in W.P.generators)]
    res.details = {"order": W.P.order, "center_order": len(zc), "base_index": W.P.order // W.P0.order}
    if W.P.order != expect:
        res.counterexamples.append(f"|P| = {W.P.order}, expected {expect}")
    if frozenset(zc) != W.Z.elements or W.Z.order != W.N:
        res.counterexamples.append("Z(P) differs from <ab>")
    if W.P.order // W.P0.order != 2:
        res.counterexamples.append("[P:P_0] != 2")
    return res


def check_centralizers_outside_base(W: WreathedData) -> CheckResult:
    """For every ``x`` outside ``P_0``: ``|C_P(x)| = 2^(n+1)`` and ``C_P(x) cap P_0 = Z(P)``."""
    res = CheckResult("centralizers-outside-base")
    for x in W.P.elements_list():
        if W.in_base(x):
            continue
        res.checked += 1
        C = centralizer(W.P, x)
        if C.order != 2 ** (W.n + 1) or (C.elements & W.P0.elements) != W.Z.elements:
            res.counterexamples.append(str(x))
    return res


def check_q8_subgroups(W: WreathedData) -> CheckResult:
    """Generator form, centralizer ``Z(P)``, containment of ``(ab)^(2^(n-1))`` and pairwise witnesses."""
    res = CheckResult("q8-subgroups")
    infos = q8_subgroups(W)
    z2 = (W.a * W.b) ** (W.N // 2)
    for info in infos:
        res.checked += 1
        Q = info.subgroup
        if (info.i + info.j) % W.N != W.N // 2:
            res.counterexamples.append(f"bad form {info.i},{info.j}")
        if z2 not in Q:
            res.counterexamples.append(f"missing central involution in form {info.i},{info.j}")
        if centralizer(W.P, Q).key != W.Z.key:
            res.counterexamples.append(f"C_P(Q) != Z(P) for form {info.i},{info.j}")
    closed = 0
    for A in infos:
        for B in infos:
            x = q8_witness(W, (A.i, A.j), (B.i, B.j))
            if A.subgroup.conjugate(x).key == B.subgroup.key:
                closed += 1
            elif are_conjugate(W.P, A.subgroup, B.subgroup) is None:
                res.counterexamples.append(f"forms {A.i},{A.j} and {B.i},{B.j} not conjugate")
    res.details = {"count": len(infos), "closed_form_witness_pairs": closed,
                   "pairs": len(infos) ** 2}
    return res


def check_homocyclic_subgroups(W: WreathedData, reps: list[Subgroup] | None = None) -> CheckResult:
    """Homocyclic subgroups: rank-2 ones with ``m >= 2`` are canonical, Klein ones split by the base."""
    res = CheckResult("homocyclic-subgroups")
    from .permgroup import conjugates
    reps = reps if reps is not None else subgroups_up_to_conjugacy(W.P)
    for R in reps:
        if not R.is_abelian() or R.order == 1:
            continue
        inv = abelian_invariants(R)
        if len(inv) != 2 or inv[0] != inv[1]:
            continue
        m = inv[0]
        for Q in conjugates(W.P, R):
            res.checked += 1
            inside = all(W.in_base(g) for g in Q.generators)
            if m >= 2 or inside:
                if not inside or Q.key != canonical_homocyclic(W, W.n - m).key:
                    res.counterexamples.append([str(g) for g in Q.generators])
            else:
                g = _conjugate_into(W, Q, W.klein_outside, True)
                if g is None:
                    res.counterexamples.append([str(h) for h in Q.generators])
                elif _conjugate_into(W, Q, W.P1, False) is None:
                    res.counterexamples.append(["not in a conjugate of P_1"] + [str(h) for h in Q.generators])
    return res


def check_nonabelian_centers(W: WreathedData, reps: list[Subgroup] | None = None) -> CheckResult:
    """Every non-abelian subgroup has its center inside ``Z(P)``."""
    res = CheckResult("nonabelian-centers")
    reps = reps if reps is not None else subgroups_up_to_conjugacy(W.P)
    from .permgroup import conjugates
    for R in reps:
        if R.is_abelian():
            continue
        for Q in conjugates(W.P, R):
            res.checked += 1
            zq = [g for g in Q.elements if all(g * h == h * g for h in Q.generators)]
            if not set(zq) <= W.center_elements:
                res.counterexamples.append([str(g) for g in Q.generators])
    return res


def check_classification(W: WreathedData, reps: list[Subgroup] | None = None) -> CheckResult:
    """Totality and conjugation invariance of ``classify_subgroup`` over all subgroups."""
    res = CheckResult("classification")
    from .permgroup import conjugates
    reps = reps if reps is not None else subgroups_up_to_conjugacy(W.P)
    counts: dict[str, int] = {}
    for R in reps:
        base = classify_subgroup(W, R)
        counts[base.label] = counts.get(base.label, 0) + 1
        for Q in conjugates(W.P, R):
            res.checked += 1
            c = classify_subgroup(W, Q)
            if (c.tag, c.m) != (base.tag, base.m):
                res.counterexamples.append({"rep": base.label, "conjugate": c.label})
            if c.witness is not None and c.canonical is not None:
                Qc = Q.conjugate(c.witness)
                if not Qc.is_subgroup_of(c.canonical):
                    res.counterexamples.append({"bad_witness": c.label})
    res.details = {"classes": len(reps), "tags": dict(sorted(counts.items()))}
    return res


def subgroup_to_json(Q: PermGroup) -> dict:
    return {"order": Q.order, "generators": [str(g) for g in Q.generators]}


__all__ = [
    "WreathedData", "WreathedClass", "Q8Info", "CheckResult", "TAGS", "build_wreathed",
    "wreathed_from_marking", "canonical_homocyclic", "canonical_q8_central_product",
    "classify_subgroup", "q8_subgroups", "q8_form", "q8_witness", "abelian_invariants",
    "is_quaternion_pair", "on_lemma_list", "check_order_and_center",
    "check_centralizers_outside_base", "check_q8_subgroups", "check_homocyclic_subgroups",
    "check_nonabelian_centers", "check_classification", "subgroup_to_json",
    "subgroup_from_elements",
]


def recognize_wreathed(ambient: PermGroup, S: PermGroup) -> WreathedData | None:
    """Search ``S`` for a marking ``(a, b, t)`` exhibiting it as ``C_{2^n} wr C_2``."""
    o = S.order
    k = o.bit_length() - 1
    if 2 ** k != o or k < 5 or k % 2 == 0:
        return None
    n = (k - 1) // 2
    N = 2 ** n
    elems = S.elements_list()
    invols = [x for x in elems if x.order() == 2]
    for a in elems:
        if a.order() != N:
            continue
        for t in invols:
            b = a.conj(t)
            if b == a or a * b != b * a:
                continue
            if (Subgroup(ambient, [a, b], check=False).order == N * N
                    and Subgroup(ambient, [a, b, t], check=False).order == o):
                return WreathedData(n, ambient, a, b, t)
    return None


__all__ += ["recognize_wreathed"]
