"""Exact permutation groups: elements, stabilizer chains and subgroup queries.

Permutations act on the left: ``(p * q)(x) == p(q(x))``.  Every group keeps a
deterministic Schreier-Sims chain whose transversal elements are recorded as
nodes of a straight-line program over the generators, so that any element can
be re-evaluated in another representation (matrices, images under a
homomorphism) without a word-length blowup.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import DomainError, ParseError, ResourceError

SUBGROUP_ENUMERATION_BOUND = 2 ** 14


class Perm(tuple):
    """A permutation of ``{0..degree-1}`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def checked(cls, images: Iterable[int]) -> "Perm":
        p = cls(images)
        if sorted(p) != list(range(len(p))):
            raise DomainError(f"not a bijection on 0..{len(p) - 1}: {tuple(p)}")
        return p

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Perm":
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if not 0 <= x < degree:
                    raise DomainError(f"point {x} outside 0..{degree - 1}")
                if x in seen:
                    raise DomainError(f"point {x} repeated in cycle notation")
                seen.add(x)
                img[x] = cyc[(k + 1) % len(cyc)]
        return cls(img)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Perm":
        """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"`` or ``"()"``."""
        cycles = parse_cycles(text)
        top = max((x for c in cycles for x in c), default=-1) + 1
        if degree is None:
            degree = max(top, 1)
        elif top > degree:
            raise DomainError(f"point {top - 1} outside degree {degree}")
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":  # type: ignore[override]
        return Perm([self[i] for i in other])

    def __rmul__(self, other):  # pragma: no cover - tuple repetition guard
        return NotImplemented

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, g: "Perm") -> "Perm":
        """Return ``g * self * g^-1``."""
        out = [0] * len(self)
        for i, j in enumerate(self):
            out[g[i]] = g[j]
        return Perm(out)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // gcd(result, len(c))
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            x = self[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self[x]
            out.append(tuple(cyc))
        return out

    def first_moved(self) -> int | None:
        for i, j in enumerate(self):
            if i != j:
                return i
        return None

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm('{self}', degree={len(self)})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Split cycle notation into integer cycles; raises ParseError with a column."""
    s = text.strip()
    if not s:
        raise ParseError("empty permutation", column=1)
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        gap = s[pos:m.start()]
        if gap.strip():
            raise ParseError(f"unexpected text {gap.strip()!r}", column=pos + 1)
        body = m.group(1).replace(",", " ").split()
        cyc = []
        for tok in body:
            if not tok.isdigit():
                raise ParseError(f"bad point {tok!r}", column=m.start() + 2)
            cyc.append(int(tok))
        if len(set(cyc)) != len(cyc):
            raise ParseError("repeated point in a cycle", column=m.start() + 1)
        if cyc:
            cycles.append(cyc)
        pos = m.end()
    if s[pos:].strip():
        raise ParseError(f"unexpected text {s[pos:].strip()!r}", column=pos + 1)
    if pos == 0:
        raise ParseError("expected cycle notation", column=1)
    return cycles


class SLP:
    """Straight-line program: nodes are ``('g', i)``, ``('m', a, b)`` or ``('i', a)``."""

    def __init__(self, ngens: int):
        self.nodes: list[tuple] = [("g", i) for i in range(ngens)]

    def mul(self, a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        self.nodes.append(("m", a, b))
        return len(self.nodes) - 1

    def inv(self, a: int | None) -> int | None:
        if a is None:
            return None
        self.nodes.append(("i", a))
        return len(self.nodes) - 1

    def evaluator(self, images: Sequence, mul: Callable, inv: Callable) -> Callable[[int], object]:
        """Memoized evaluation of nodes given images of the generators."""
        memo: dict[int, object] = {}
        nodes = self.nodes

        def ev(k: int):
            stack = [k]
            while stack:
                top = stack[-1]
                if top in memo:
                    stack.pop()
                    continue
                node = nodes[top]
                if node[0] == "g":
                    memo[top] = images[node[1]]
                    stack.pop()
                elif node[0] == "i":
                    if node[1] in memo:
                        memo[top] = inv(memo[node[1]])
                        stack.pop()
                    else:
                        stack.append(node[1])
                else:
                    missing = [c for c in node[1:] if c not in memo]
                    if missing:
                        stack.extend(missing)
                    else:
                        memo[top] = mul(memo[node[1]], memo[node[2]])
                        stack.pop()
            return memo[k]

        return ev


class PermGroup:
    """A permutation group given by generators, with a stabilizer chain."""

    def __init__(self, generators: Sequence[Perm], degree: int | None = None):
        gens = [Perm(g) for g in generators]
        if degree is None:
            if not gens:
                raise DomainError("degree required")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DomainError(f"generator {g} has degree {len(g)}, expected {degree}")
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._build_chain()

    # -- stabilizer chain ---------------------------------------------------
    def _build_chain(self) -> None:
        n = self.degree
        ident = Perm.identity(n)
        self._id = ident
        slp = SLP(len(self.generators))
        self._slp = slp
        strong: list[tuple[Perm, int]] = []
        base: list[int] = []
        for i, g in enumerate(self.generators):
            if g.is_identity():
                continue
            strong.append((g, i))
            if not any(g[b] != b for b in base):
                base.append(g.first_moved())
        self._base = base
        self._strong = strong
        self._trans: list[dict[int, tuple[Perm, int | None]]] = []
        for i in range(len(base)):
            self._trans.append(self._orbit(i))

        i = len(base) - 1
        while i >= 0:
            added = self._check_level(i)
            if added is None:
                i -= 1
            else:
                i = added

    def _level_gens(self, i: int) -> list[tuple[Perm, int]]:
        pts = self._base[:i]
        return [(s, k) for s, k in self._strong if all(s[b] == b for b in pts)]

    def _orbit(self, i: int) -> dict[int, tuple[Perm, int | None]]:
        beta = self._base[i]
        gens = self._level_gens(i)
        trans: dict[int, tuple[Perm, int | None]] = {beta: (self._id, None)}
        queue = deque([beta])
        while queue:
            x = queue.popleft()
            ux, nx = trans[x]
            for s, ks in gens:
                y = s[x]
                if y not in trans:
                    trans[y] = (s * ux, self._slp.mul(ks, nx))
                    queue.append(y)
        return trans

    def _check_level(self, i: int) -> int | None:
        """Test Schreier generators at level i; on a new strong generator return the level to resume."""
        trans = self._trans[i]
        slp = self._slp
        for beta in sorted(trans):
            ub, nb = trans[beta]
            for s, ks in self._level_gens(i):
                y = s[beta]
                uy, ny = trans[y]
                sg = uy.inverse() * s * ub
                if sg.is_identity():
                    continue
                h, j, factors = self._sift(sg, i + 1)
                if j == len(self._base) and h.is_identity():
                    continue
                node = slp.mul(slp.inv(ny), slp.mul(ks, nb))
                for f in factors:
                    node = slp.mul(slp.inv(f), node)
                self._strong.append((h, node))
                if j == len(self._base):
                    self._base.append(h.first_moved())
                    self._trans.append({})
                for lvl in range(i + 1, j + 1):
                    self._trans[lvl] = self._orbit(lvl)
                return j
        return None

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int, list[int | None]]:
        factors: list[int | None] = []
        for i in range(start, len(self._base)):
            b = g[self._base[i]]
            t = self._trans[i].get(b)
            if t is None:
                return g, i, factors
            u, nu = t
            if nu is not None:
                g = u.inverse() * g
                factors.append(nu)
        return g, len(self._base), factors

    # -- basic queries --------------------------------------------------------
    @cached_property
    def order(self) -> int:
        o = 1
        for t in self._trans:
            o *= len(t)
        return o

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._base)

    @property
    def identity(self) -> Perm:
        return self._id

    def __contains__(self, g) -> bool:
        g = Perm(g)
        if len(g) != self.degree:
            return False
        h, j, _ = self._sift(g)
        return j == len(self._base) and h.is_identity()

    def contains(self, g) -> bool:
        return g in self

    def factor_nodes(self, g: Perm) -> list[int]:
        """SLP nodes ``n_1..n_k`` with ``g = u_1 * ... * u_k``."""
        h, j, factors = self._sift(Perm(g))
        if j != len(self._base) or not h.is_identity():
            raise DomainError(f"{g} is not in the group")
        return [f for f in factors if f is not None]

    def evaluator(self, images: Sequence, mul: Callable, inv: Callable, one) -> Callable[[Perm], object]:
        """Return ``g -> image of g`` for the homomorphism sending generators to ``images``."""
        ev = self._slp.evaluator(images, mul, inv)

        def image(g: Perm):
            acc = one
            for node in self.factor_nodes(g):
                acc = mul(acc, ev(node))
            return acc

        return image

    def elements_list(self) -> list[Perm]:
        return self._sorted_elements

    @cached_property
    def _sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    @cached_property
    def elements(self) -> frozenset[Perm]:
        if self.order > 4 * 10 ** 6:
            raise ResourceError(f"refusing to enumerate {self.order} elements")
        elems = [self._id]
        for trans in reversed(self._trans):
            reps = [u for u, _ in trans.values()]
            elems = [u * e for u in reps for e in elems]
        return frozenset(elems)

    def __iter__(self):
        return iter(self._sorted_elements)

    def __len__(self) -> int:
        return self.order

    @cached_property
    def key(self) -> tuple:
        """Canonical key: the sorted element tuple."""
        return tuple(self._sorted_elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order == other.order
                and all(g in self for g in other.generators))

    def __hash__(self) -> int:
        return hash((self.degree, self.order, self.key))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(x * y == y * x for i, x in enumerate(gs) for y in gs[i + 1:])

    def is_normal_in(self, G: "PermGroup") -> bool:
        return all(h.conj(g) in self for g in G.generators for h in self.generators)

    def exponent(self) -> int:
        e = 1
        for g in self.elements:
            o = g.order()
            e = e * o // gcd(e, o)
        return e

    def order_profile(self) -> tuple[tuple[int, int], ...]:
        counts: dict[int, int] = {}
        for g in self.elements:
            o = g.order()
            counts[o] = counts.get(o, 0) + 1
        return tuple(sorted(counts.items()))

    def is_p_group(self, p: int = 2) -> bool:
        o = self.order
        while o % p == 0:
            o //= p
        return o == 1

    def orbit(self, x: int) -> list[int]:
        seen = {x}
        queue = [x]
        for y in queue:
            for g in self.generators:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return sorted(seen)

    def subgroup(self, gens: Iterable[Perm]) -> "Subgroup":
        return Subgroup(self, list(gens))

    def conjugate(self, g: Perm) -> "PermGroup":
        return type(self)._like(self, [h.conj(g) for h in self.generators])

    @staticmethod
    def _like(src: "PermGroup", gens: list[Perm]) -> "PermGroup":
        if isinstance(src, Subgroup):
            return Subgroup(src.parent, gens)
        return PermGroup(gens, src.degree)

    def __repr__(self) -> str:
        return f"PermGroup(order={self.order}, degree={self.degree}, ngens={len(self.generators)})"


class Subgroup(PermGroup):
    """A subgroup of a fixed parent group."""

    def __init__(self, parent: PermGroup, generators: Sequence[Perm], check: bool = True):
        self.parent = parent
        super().__init__(generators, parent.degree)
        if check:
            for g in self.generators:
                if g not in parent:
                    raise DomainError(f"generator {g} not in parent group")

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, index={self.parent.order // self.order})"


def from_generators(gens: Sequence[Perm], degree: int | None = None) -> PermGroup:
    """Build a permutation group from generators (``degree`` needed when empty)."""
    return PermGroup(gens, degree)


def as_subgroup(G: PermGroup, S) -> Subgroup:
    if isinstance(S, Perm) or (isinstance(S, tuple) and not isinstance(S, PermGroup)):
        S = [Perm(S)]
        return Subgroup(G, S)
    if isinstance(S, Subgroup) and S.parent is G:
        return S
    if S.degree != G.degree or not S.is_subgroup_of(G):
        raise DomainError("subgroup not inside the group")
    sub = Subgroup(G, list(S.generators), check=False)
    return sub


def subgroup_from_elements(G: PermGroup, elems: Iterable[Perm]) -> Subgroup:
    """Subgroup with a given element set (assumed closed), generated greedily in sorted order."""
    target = sorted(set(elems))
    gens: list[Perm] = []
    cur = {G.identity}
    for g in target:
        if g in cur:
            continue
        gens.append(g)
        cur = _closure(cur, gens, g)
    if len(cur) != len(target):
        raise DomainError("element set is not a subgroup")
    return Subgroup(G, gens, check=False)


def _closure(cur: set[Perm], gens: list[Perm], new: Perm) -> set[Perm]:
    out = set(cur)
    queue = list(cur)
    for x in queue:
        for s in gens:
            y = s * x
            if y not in out:
                out.add(y)
                queue.append(y)
    return out


def closure_elements(gens: Sequence[Perm], degree: int) -> frozenset[Perm]:
    """Brute-force closure by breadth-first products (an oracle for small groups)."""
    ident = Perm.identity(degree)
    seen = {ident}
    queue = [ident]
    for x in queue:
        for s in gens:
            y = s * x
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


# -- centralizers and normalizers ---------------------------------------------

def centralizer(G: PermGroup, S) -> Subgroup:
    """``C_G(S)`` for a subgroup or a single element ``S`` of ``G``."""
    if isinstance(S, PermGroup):
        if not S.is_subgroup_of(G):
            raise DomainError("centralized subgroup not inside G")
        gens = S.generators
    else:
        s = Perm(S)
        if s not in G:
            raise DomainError("centralized element not inside G")
        gens = (s,)
    return subgroup_from_elements(G, [g for g in G.elements if all(g * s == s * g for s in gens)])


def normalizer(G: PermGroup, S: PermGroup) -> Subgroup:
    """``N_G(S) = {g : g S g^-1 = S}``."""
    if not isinstance(S, PermGroup) or not S.is_subgroup_of(G):
        raise DomainError("normalized subgroup not inside G")
    cache = G.__dict__.setdefault("_normalizers", {})
    N = cache.get(S.key)
    if N is None:
        gens = S.generators
        N = subgroup_from_elements(G, [g for g in G.elements if all(s.conj(g) in S for s in gens)])
        cache[S.key] = N
    return N


def transporter(G: PermGroup, Q: PermGroup, R: PermGroup) -> list[Perm]:
    """All ``g`` in ``G`` with ``g Q g^-1 <= R``, in sorted order."""
    gens = Q.generators
    return [g for g in G.elements_list() if all(s.conj(g) in R for s in gens)]


def are_conjugate(G: PermGroup, H: PermGroup, K: PermGroup) -> Perm | None:
    """An element ``g`` with ``g H g^-1 = K``, or None."""
    if H.order != K.order:
        return None
    if H.order_profile() != K.order_profile():
        return None
    for g in G.elements_list():
        if all(h.conj(g) in K for h in H.generators):
            return g
    return None


def conjugacy_classes(G: PermGroup) -> list[list[Perm]]:
    """Element conjugacy classes, each sorted, ordered by their least element."""
    remaining = set(G.elements)
    classes = []
    for x in G.elements_list():
        if x not in remaining:
            continue
        cls = {x}
        queue = [x]
        for y in queue:
            for g in G.generators:
                z = y.conj(g)
                if z not in cls:
                    cls.add(z)
                    queue.append(z)
        remaining -= cls
        classes.append(sorted(cls))
    return classes


def normal_closure(G: PermGroup, gens: Iterable[Perm]) -> Subgroup:
    gens = list(gens)
    cur = Subgroup(G, gens, check=False)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for h in list(cur.generators):
                c = h.conj(g)
                if c not in cur:
                    cur = Subgroup(G, list(cur.generators) + [c], check=False)
                    changed = True
    return cur


def subgroup_conjugacy_key(G: PermGroup, H: PermGroup) -> tuple:
    """Least sorted-element tuple over the G-conjugacy class of H."""
    start = H.elements
    seen = {start}
    queue = [start]
    for S in queue:
        for g in G.generators:
            T = frozenset(x.conj(g) for x in S)
            if T not in seen:
                seen.add(T)
                queue.append(T)
    return min(tuple(sorted(S)) for S in seen)


def subgroups_up_to_conjugacy(G: PermGroup, bound: int = SUBGROUP_ENUMERATION_BOUND) -> list[Subgroup]:
    """One subgroup per conjugacy class, sorted by (order, canonical key).

    Uses cyclic extension: each subgroup is grown from a class representative
    ``K`` by an element of ``N_G(K)`` whose prime power lands in ``K``.  This
    reaches every subgroup of a solvable group.
    """
    if G.order > bound:
        raise ResourceError(f"group order {G.order} exceeds subgroup enumeration bound {bound}")
    if not is_solvable(G):
        raise DomainError("cyclic extension enumeration needs a solvable group")
    primes = _prime_divisors(G.order)
    trivial = Subgroup(G, [], check=False)
    reps: dict[tuple, Subgroup] = {subgroup_conjugacy_key(G, trivial): trivial}
    layer = [trivial]
    while layer:
        nxt = []
        for K in layer:
            N = normalizer(G, K)
            seen_cosets: set[frozenset] = set()
            kel = K.elements
            for g in N.elements_list():
                if g in kel:
                    continue
                if not any((g ** p) in kel for p in primes):
                    continue
                coset = frozenset(g * k for k in kel)
                if coset in seen_cosets:
                    continue
                seen_cosets.add(coset)
                H = Subgroup(G, list(K.generators) + [g], check=False)
                key = subgroup_conjugacy_key(G, H)
                if key not in reps:
                    rep = subgroup_from_elements(G, key)
                    reps[key] = rep
                    nxt.append(rep)
        layer = nxt
    return [reps[k] for k in sorted(reps, key=lambda k: (len(k), k))]


def all_subgroups(G: PermGroup, bound: int = SUBGROUP_ENUMERATION_BOUND) -> list[Subgroup]:
    """Every subgroup, as the conjugates of each class representative."""
    out = []
    for H in subgroups_up_to_conjugacy(G, bound):
        out.extend(conjugates(G, H))
    return out


def conjugates(G: PermGroup, H: PermGroup) -> list[Subgroup]:
    seen = {H.elements: H}
    queue = [H.elements]
    for S in queue:
        for g in G.generators:
            T = frozenset(x.conj(g) for x in S)
            if T not in seen:
                seen[T] = None
                queue.append(T)
    out = []
    for S in sorted(seen, key=lambda s: tuple(sorted(s))):
        out.append(subgroup_from_elements(G, S))
    return out


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def derived_subgroup(G: PermGroup) -> Subgroup:
    gs = G.generators
    comms = [x.inverse() * y.inverse() * x * y for x in gs for y in gs]
    return normal_closure(G, [c for c in comms if not c.is_identity()])


def is_solvable(G: PermGroup) -> bool:
    H: PermGroup = G
    while H.order > 1:
        D = derived_subgroup(H)
        if D.order == H.order:
            return False
        H = D
    return True


# -- Sylow subgroups and cores ------------------------------------------------

def sylow_2(G: PermGroup) -> Subgroup:
    """A Sylow 2-subgroup, grown through normalizers (deterministic)."""
    S = Subgroup(G, [], check=False)
    while True:
        if (G.order // S.order) % 2:
            return S
        N = normalizer(G, S)
        sel = S.elements
        for x in N.elements_list():
            if x not in sel and (x * x) in sel:
                S = Subgroup(G, list(S.generators) + [x], check=False)
                break
        else:  # pragma: no cover - impossible by Sylow theory
            raise DomainError("failed to extend a non-Sylow 2-subgroup")


def odd_core(G: PermGroup) -> Subgroup:
    """``O_{2'}(G)``: generated by the odd-order classes with odd normal closure."""
    gens: list[Perm] = []
    cur = Subgroup(G, [], check=False)
    for cls in conjugacy_classes(G):
        x = cls[0]
        if x.order() % 2 == 0 or x.is_identity() or x in cur:
            continue
        N = normal_closure(G, [x])
        if N.order % 2:
            gens.append(x)
            cur = normal_closure(G, gens)
    return cur


def subgroup_product(G: PermGroup, A: PermGroup, B: PermGroup) -> Subgroup:
    """The subgroup generated by A and B."""
    return Subgroup(G, list(A.generators) + list(B.generators), check=False)


def intersection(G: PermGroup, A: PermGroup, B: PermGroup) -> Subgroup:
    return subgroup_from_elements(G, A.elements & B.elements)


# -- homomorphisms, products, quotients ----------------------------------------

class GroupHom:
    """Homomorphism given by images of the domain generators (checked on construction)."""

    def __init__(self, domain: PermGroup, codomain: PermGroup, generator_images: Sequence[Perm]):
        if len(generator_images) != len(domain.generators):
            raise DomainError("one image per domain generator required")
        self.domain = domain
        self.codomain = codomain
        self.generator_images = tuple(Perm(x) for x in generator_images)
        for x in self.generator_images:
            if x not in codomain:
                raise DomainError(f"image {x} not in codomain")
        self._table = self._build_table()

    def _build_table(self) -> dict[Perm, Perm]:
        table = {self.domain.identity: self.codomain.identity}
        queue = [self.domain.identity]
        pairs = list(zip(self.domain.generators, self.generator_images))
        for x in queue:
            fx = table[x]
            for s, fs in pairs:
                y = s * x
                fy = fs * fx
                old = table.get(y)
                if old is None:
                    table[y] = fy
                    queue.append(y)
                elif old != fy:
                    raise DomainError("generator images do not define a homomorphism")
        return table

    def __call__(self, g: Perm) -> Perm:
        try:
            return self._table[Perm(g)]
        except KeyError:
            raise DomainError(f"{g} not in the domain") from None

    def image(self, H: PermGroup | None = None) -> Subgroup:
        gens = self.generator_images if H is None else [self(h) for h in H.generators]
        return Subgroup(self.codomain, list(gens), check=False)

    def kernel(self) -> Subgroup:
        one = self.codomain.identity
        return subgroup_from_elements(self.domain, [g for g, v in self._table.items() if v == one])

    def is_injective(self) -> bool:
        return len(set(self._table.values())) == len(self._table)

    def preimage(self, K: PermGroup) -> Subgroup:
        kel = K.elements
        return subgroup_from_elements(self.domain, [g for g, v in self._table.items() if v in kel])


@dataclass(frozen=True)
class DirectProduct:
    """``G x G'`` acting on disjoint point sets, with embeddings and diagonals."""

    group: PermGroup
    first: PermGroup
    second: PermGroup

    @property
    def shift(self) -> int:
        return self.first.degree

    def embed1(self, g: Perm) -> Perm:
        return Perm(tuple(g) + tuple(range(self.shift, self.group.degree)))

    def embed2(self, h: Perm) -> Perm:
        s = self.shift
        return Perm(tuple(range(s)) + tuple(x + s for x in h))

    def pair(self, g: Perm, h: Perm) -> Perm:
        s = self.shift
        return Perm(tuple(g) + tuple(x + s for x in h))

    def project1(self, x: Perm) -> Perm:
        return Perm(x[: self.shift])

    def project2(self, x: Perm) -> Perm:
        s = self.shift
        return Perm(y - s for y in x[s:])

    def image1(self, H: PermGroup) -> Subgroup:
        return Subgroup(self.group, [self.embed1(g) for g in H.generators], check=False)

    def image2(self, H: PermGroup) -> Subgroup:
        return Subgroup(self.group, [self.embed2(g) for g in H.generators], check=False)

    def diagonal(self, H: PermGroup, H2: PermGroup | None = None,
                 iso: Callable[[Perm], Perm] | GroupHom | None = None) -> Subgroup:
        """``{(u, iso(u)) : u in H}``; the identity map is used when ``H2`` equals ``H``."""
        if H2 is None:
            H2 = H
        if iso is None:
            if H2.key != H.key:
                raise DomainError("diagonal of distinct subgroups needs an explicit isomorphism")
            iso = lambda u: u  # noqa: E731
        gens = [self.pair(u, iso(u)) for u in H.generators]
        D = Subgroup(self.group, gens, check=False)
        if D.order != H.order or D.order != H2.order:
            raise DomainError("supplied map is not an isomorphism onto the second subgroup")
        if any(self.project2(x) not in H2 for x in D.generators):
            raise DomainError("supplied map does not land in the second subgroup")
        return D


def direct_product(G: PermGroup, G2: PermGroup) -> DirectProduct:
    s = G.degree
    deg = s + G2.degree
    gens = [Perm(tuple(g) + tuple(range(s, deg))) for g in G.generators]
    gens += [Perm(tuple(range(s)) + tuple(x + s for x in h)) for h in G2.generators]
    return DirectProduct(PermGroup(gens, deg), G, G2)


def quotient(G: PermGroup, N: PermGroup) -> tuple[PermGroup, GroupHom]:
    """``G/N`` acting on the cosets ``gN`` (keyed by their least element)."""
    if not N.is_subgroup_of(G) or not N.is_normal_in(G):
        raise DomainError("quotient by a non-normal subgroup")
    nel = sorted(N.elements)
    index: dict[Perm, int] = {}
    reps: list[Perm] = []
    for g in G.elements_list():
        if g in index:
            continue
        k = len(reps)
        reps.append(g)
        for n in nel:
            index[g * n] = k
    deg = max(len(reps), 1)

    def act(x: Perm) -> Perm:
        return Perm(index[x * r] for r in reps)

    images = [act(x) for x in G.generators]
    Q = PermGroup(images, deg)
    return Q, GroupHom(G, Q, images)


__all__ = [
    "Perm", "PermGroup", "Subgroup", "GroupHom", "DirectProduct", "SLP",
    "from_generators", "parse_cycles", "centralizer", "normalizer", "transporter",
    "subgroups_up_to_conjugacy", "all_subgroups", "conjugates", "sylow_2", "odd_core",
    "direct_product", "quotient", "are_conjugate", "conjugacy_classes", "normal_closure",
    "subgroup_from_elements", "closure_elements", "subgroup_conjugacy_key", "is_solvable",
    "derived_subgroup", "subgroup_product", "intersection", "as_subgroup",
    "SUBGROUP_ENUMERATION_BOUND",
]
