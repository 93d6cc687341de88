"""Modular representation theory over GF(2) for permutation modules and their summands.

Permutation modules carry their point action, and everything that depends on
the group action goes through orbital (Hecke) algebras: ``End_G(k[Y])`` has the
orbital matrices ``B_O`` as a basis, a summand ``E k[Y]`` has endomorphisms
``E B_O E``, its Brauer construction at ``Q`` is modelled by ``E[Y^Q, Y^Q]`` on
``k[Y^Q]``, and relative projectivity reduces to a support condition on the
orbitals (via the relative trace of orbital matrices).  A generic quotient
``M^Q / sum Tr_R^Q M^R`` is provided for arbitrary matrix modules and used to
cross-check the model.

Conventions: matrices act on column vectors, ``g e_x = e_{g x}``, and the
matrix of an element of ``End`` in the basis of points is ``E[x, y]``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .algebra import GF2Algebra, DEFAULT_SEED, is_local as _is_local_algebra, primitive_idempotents
from .errors import DomainError, InternalError, ResourceError
from .gf2 import (Echelon, GF2Matrix, SpanSolver, array_to_vec, independent_rows, matmul_mod2,
                  pack_rows, rank_np, vec_to_array, bits)
from .permgroup import Perm, PermGroup, Subgroup, normalizer, subgroup_from_elements, sylow_2

DEFAULT_MAX_DIM = 4096
MAX_DIM_ENV = "WREATH_BRAUER_MAX_DIM"
HECKE_STRUCTURE_MAX = 400      # orbital count above which the structure-constant table is skipped
SYLVESTER_MAX_DIM = 64


def max_dim() -> int:
    env = os.environ.get(MAX_DIM_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise DomainError(f"{MAX_DIM_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise DomainError(f"{MAX_DIM_ENV} must be positive")
        return value
    return DEFAULT_MAX_DIM


def _mod2(x: np.ndarray) -> np.ndarray:
    return (np.asarray(x).astype(np.int64) & 1).astype(np.uint8)


def _mm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    return matmul_mod2(a, b)


# -- cosets ----------------------------------------------------------------------

class CosetSpace:
    """Left cosets ``gH`` of ``H`` in ``G``; each coset is keyed by its least element."""

    def __init__(self, G: PermGroup, H: PermGroup, bound: int | None = None):
        if not H.is_subgroup_of(G):
            raise DomainError("H is not a subgroup of G")
        index = G.order // H.order
        cap = max_dim() if bound is None else bound
        if index > cap:
            raise ResourceError(f"index [G:H] = {index} exceeds the dimension cap {cap}")
        self.G, self.H, self.index = G, H, index
        self._hel = H.elements_list()
        seen: dict[Perm, Perm] = {}
        start = self.key(G.identity)
        seen[start] = start
        queue = [start]
        for rep in queue:
            for g in G.generators:
                k = self.key(g * rep)
                if k not in seen:
                    seen[k] = k
                    queue.append(k)
        if len(queue) != index:  # pragma: no cover - Lagrange
            raise InternalError("coset enumeration miscounted")
        self.reps: list[Perm] = sorted(queue)
        self.position = {r: i for i, r in enumerate(self.reps)}

    def key(self, g: Perm) -> Perm:
        return min(g * h for h in self._hel)

    def index_of(self, g: Perm) -> int:
        return self.position[self.key(g)]

    def act(self, g: Perm) -> np.ndarray:
        """Images of the cosets under left multiplication by ``g``."""
        return np.array([self.index_of(g * r) for r in self.reps], dtype=np.int64)

    def fixed_points(self, S: PermGroup) -> list[int]:
        gens = S.generators
        return [i for i, r in enumerate(self.reps)
                if all(self.key(s * r) == r for s in gens)]


def is_subconjugate(G: PermGroup, S: PermGroup, V: PermGroup) -> Perm | None:
    """Some ``g`` in ``G`` with ``g^-1 S g <= V`` (a coset ``gV`` fixed by ``S``), or None."""
    if V.order % S.order:
        return None
    cs = CosetSpace(G, V, bound=G.order)
    fixed = cs.fixed_points(S)
    return cs.reps[fixed[0]] if fixed else None


# -- modules ---------------------------------------------------------------------

def _perm_matrix(img: np.ndarray) -> np.ndarray:
    n = len(img)
    M = np.zeros((n, n), dtype=np.uint8)
    M[img, np.arange(n)] = 1
    return M


class GModule:
    """A finite-dimensional GF(2)-representation of a permutation group.

    Permutation modules keep ``points``: one integer array per group generator
    giving the image of each basis point.  Other modules keep only matrices.
    """

    def __init__(self, group: PermGroup, dim: int, matrices: Sequence[np.ndarray] | None = None,
                 points: Sequence[np.ndarray] | None = None, basis_labels: Sequence | None = None,
                 check: bool = True):
        self.group = group
        self.dim = dim
        ngens = len(group.generators)
        if points is not None:
            pts = tuple(np.asarray(p, dtype=np.int64) for p in points)
            if len(pts) != ngens or any(p.shape != (dim,) for p in pts):
                raise DomainError("need one point permutation of length dim per generator")
            if any(len(set(p.tolist())) != dim for p in pts):
                raise DomainError("point images are not permutations")
            self.points: tuple[np.ndarray, ...] | None = pts
            mats = tuple(_perm_matrix(p) for p in pts)
        else:
            if matrices is None or len(matrices) != ngens:
                raise DomainError("need one matrix per generator")
            mats = tuple(np.asarray(m, dtype=np.uint8) & 1 for m in matrices)
            if any(m.shape != (dim, dim) for m in mats):
                raise DomainError("action matrices must be dim x dim")
            self.points = None
        self._mats = mats
        self.basis_labels = tuple(basis_labels) if basis_labels is not None else None
        if check:
            self._check_action()

    # -- construction checks ------------------------------------------------------------
    def _check_action(self) -> None:
        G = self.group
        if self.dim == 0:
            return
        if self.points is not None:
            deg = G.degree
            gens = [Perm(tuple(g) + tuple(int(x) + deg for x in p)) for g, p in zip(G.generators, self.points)]
            if PermGroup(gens, deg + self.dim).order != G.order:
                raise DomainError("point action does not respect the group's relations")
            return
        for m in self._mats:
            if rank_np(m) != self.dim:
                raise DomainError("action matrix is singular")
        if G.order * self.dim <= 2 ** 16:
            table = {G.identity: np.eye(self.dim, dtype=np.uint8)}
            queue = [G.identity]
            for x in queue:
                for g, m in zip(G.generators, self._mats):
                    y = g * x
                    my = _mm(m, table[x])
                    old = table.get(y)
                    if old is None:
                        table[y] = my
                        queue.append(y)
                    elif not np.array_equal(old, my):
                        raise DomainError("action matrices do not respect the group's relations")

    # -- access ----------------------------------------------------------------------
    @property
    def action(self) -> tuple[GF2Matrix, ...]:
        return tuple(GF2Matrix.from_numpy(m) for m in self._mats)

    @property
    def matrices(self) -> tuple[np.ndarray, ...]:
        return self._mats

    @property
    def is_permutation_module(self) -> bool:
        return self.points is not None

    @cached_property
    def _point_eval(self):
        one = np.arange(self.dim, dtype=np.int64)
        inv = lambda p: np.argsort(p)  # noqa: E731
        return self.group.evaluator(list(self.points), lambda p, q: p[q], inv, one)

    @cached_property
    def _matrix_eval(self):
        one = np.eye(self.dim, dtype=np.uint8)
        inv = lambda m: GF2Matrix.from_numpy(m).inverse().to_numpy()  # noqa: E731
        return self.group.evaluator(list(self._mats), _mm, inv, one)

    def point_perm(self, g: Perm) -> np.ndarray:
        if self.points is None:
            raise DomainError("not a permutation module")
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        return self._point_eval(Perm(g))

    def matrix(self, g: Perm) -> np.ndarray:
        if self.points is not None:
            return _perm_matrix(self.point_perm(g))
        return self._matrix_eval(Perm(g))

    @cached_property
    def hecke(self) -> "Hecke":
        if self.points is None:
            raise DomainError("orbital algebra needs a permutation module")
        return Hecke(self.dim, self.points)

    def fixed_points(self, Q: PermGroup) -> list[int]:
        pts = np.ones(self.dim, dtype=bool)
        for q in Q.generators:
            img = self.point_perm(q)
            pts &= img == np.arange(self.dim)
        return np.flatnonzero(pts).tolist()

    def __repr__(self) -> str:
        kind = "perm" if self.points is not None else "matrix"
        return f"GModule({kind}, dim={self.dim}, |G|={self.group.order})"


class Hecke:
    """Orbital algebra of a permutation action on ``n`` points.

    ``labels[x, y]`` is the orbital of the pair ``(x, y)``; orbitals are
    numbered by their least flat index ``x*n + y``.
    """

    def __init__(self, n: int, perms: Sequence[np.ndarray]):
        self.n = n
        if n == 0:
            self.labels = np.zeros((0, 0), dtype=np.int64)
            self.r = 0
            self.reps = np.zeros((0, 2), dtype=np.int64)
            return
        N = n * n
        idx = np.arange(N, dtype=np.int64)
        x, y = idx // n, idx % n
        rows, cols = [], []
        for p in perms:
            rows.append(idx)
            cols.append(p[x] * n + p[y])
        if rows:
            r = np.concatenate(rows)
            c = np.concatenate(cols)
            graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
            _, comp = connected_components(graph, directed=True, connection="weak")
        else:
            comp = idx
        first = np.full(comp.max() + 1, N, dtype=np.int64)
        np.minimum.at(first, comp, idx)
        order = np.argsort(first)
        relabel = np.empty_like(order)
        relabel[order] = np.arange(len(order))
        self.labels = relabel[comp].reshape(n, n)
        self.r = len(order)
        reps = first[order]
        self.reps = np.stack([reps // n, reps % n], axis=1)

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels.ravel(), minlength=self.r)

    @cached_property
    def out_degrees(self) -> np.ndarray:
        """Number of ``y`` with ``(x_O, y)`` in ``O`` (for the representative ``x_O``)."""
        return np.array([int((self.labels[x] == k).sum()) for k, (x, _) in enumerate(self.reps)], dtype=np.int64)

    @cached_property
    def one(self) -> np.ndarray:
        v = np.zeros(self.r, dtype=np.uint8)
        v[np.unique(np.diag(self.labels))] = 1
        return v

    def matrix(self, vec: np.ndarray) -> np.ndarray:
        vec = np.asarray(vec, dtype=np.uint8)
        return vec[self.labels] if self.n else np.zeros((0, 0), dtype=np.uint8)

    def coords(self, E: np.ndarray) -> np.ndarray:
        """Orbital coordinates of a matrix commuting with the action."""
        E = np.asarray(E, dtype=np.uint8)
        vec = E[self.reps[:, 0], self.reps[:, 1]].astype(np.uint8) if self.r else np.zeros(0, np.uint8)
        if not np.array_equal(vec[self.labels], E):
            raise DomainError("matrix is not constant on orbitals (does not commute with the action)")
        return vec

    @cached_property
    def algebra(self) -> GF2Algebra:
        r = self.r
        if r == 0:
            raise DomainError("orbital algebra of the empty set")
        if r > HECKE_STRUCTURE_MAX:
            stack = np.stack([(self.labels == k).astype(np.uint8) for k in range(r)])
            return GF2Algebra.from_matrix_stack(stack)
        c = np.zeros((r, r, r), dtype=np.uint8)
        L = self.labels
        for k, (x, y) in enumerate(self.reps):
            counts = np.bincount(L[x, :] * r + L[:, y], minlength=r * r)
            c[:, :, k] = (counts & 1).reshape(r, r)
        return GF2Algebra(c, self.one)

    def sandwich(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """``left @ B_O @ right`` for every orbital ``O`` (shape (r, s1, s2))."""
        s1, s2 = left.shape[0], right.shape[1]
        out = np.zeros((self.r, s1, s2), dtype=np.uint8)
        if self.r == 0 or s1 == 0 or s2 == 0:
            return out
        flat = self.labels.ravel()
        order = np.argsort(flat, kind="stable")
        bounds = np.searchsorted(flat[order], np.arange(self.r + 1))
        lf = left.astype(np.float32)
        rf = right.astype(np.float32)
        n = self.n
        for k in range(self.r):
            sel = order[bounds[k]:bounds[k + 1]]
            xs, ys = sel // n, sel % n
            out[k] = _mod2(lf[:, xs] @ rf[ys, :])
        return out


def _column_basis(E: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``U`` (n x s, independent columns of E) and ``V`` (s x n) with ``E = U V``."""
    n = E.shape[0]
    if n == 0:
        return np.zeros((0, 0), np.uint8), np.zeros((0, 0), np.uint8)
    cols = independent_rows(E.T)
    U = E[:, cols] if len(cols) else np.zeros((n, 0), dtype=np.uint8)
    if len(cols) == 0:
        return U, np.zeros((0, n), dtype=np.uint8)
    V = SpanSolver(U.T).solve(E.T).T
    return U, V


class ModuleSummand:
    """The direct summand ``E M`` of a module ``M`` cut out by an idempotent ``E`` in ``End_G(M)``."""

    def __init__(self, parent: GModule, idempotent: np.ndarray | GF2Matrix, check: bool = True):
        E = idempotent.to_numpy() if isinstance(idempotent, GF2Matrix) else np.asarray(idempotent, dtype=np.uint8)
        E = E & 1
        if E.shape != (parent.dim, parent.dim):
            raise DomainError("idempotent has the wrong shape")
        if check:
            if not np.array_equal(_mm(E, E), E):
                raise DomainError("matrix is not idempotent")
            for m in parent.matrices:
                if not np.array_equal(_mm(m, E), _mm(E, m)):
                    raise DomainError("idempotent does not commute with the group action")
        self.parent = parent
        self.E = E
        self.U, self.V = _column_basis(E)
        self.dim = self.U.shape[1]

    @property
    def group(self) -> PermGroup:
        return self.parent.group

    @property
    def idempotent(self) -> GF2Matrix:
        return GF2Matrix.from_numpy(self.E)

    @property
    def image_basis(self) -> GF2Matrix:
        return GF2Matrix.from_numpy(self.U)

    @cached_property
    def hecke_vector(self) -> np.ndarray:
        return self.parent.hecke.coords(self.E)

    def as_module(self) -> GModule:
        """The summand as a matrix module on its own basis ``U``."""
        mats = [_mm(_mm(self.V, m), self.U) for m in self.parent.matrices]
        return GModule(self.group, self.dim, mats, check=False)

    @cached_property
    def endomorphism_algebra(self) -> GF2Algebra:
        """``E End(M) E`` realized faithfully as ``s x s`` matrices ``V phi U``."""
        if self.dim == 0:
            raise DomainError("zero module")
        if self.parent.is_permutation_module:
            stack = self.parent.hecke.sandwich(self.V, self.U)
        else:
            stack = np.stack([_mm(_mm(self.V, X), self.U) for X in _sylvester_basis(self.parent)])
        keep = independent_rows(stack.reshape(len(stack), -1))
        return GF2Algebra.from_matrix_stack(stack[keep])

    def contains_all_ones(self) -> bool:
        ones = np.ones((self.parent.dim, 1), dtype=np.uint8)
        return bool(np.array_equal(_mm(self.E, ones), ones))

    def __repr__(self) -> str:
        return f"ModuleSummand(dim={self.dim} of {self.parent!r})"


# -- constructions ---------------------------------------------------------------

def permutation_module(group: PermGroup, perms: Sequence[np.ndarray], labels: Sequence | None = None,
                       check: bool = True) -> GModule:
    n = len(perms[0]) if perms else len(labels or [])
    return GModule(group, n, points=perms, basis_labels=labels, check=check)


def perm_module(G: PermGroup, H: PermGroup) -> GModule:
    """``k[G/H]`` with the canonical coset representatives as basis labels."""
    cs = CosetSpace(G, H)
    pts = [cs.act(g) for g in G.generators]
    M = GModule(G, cs.index, points=pts, basis_labels=cs.reps, check=False)
    M.cosets = cs
    return M


def restrict(M: GModule | ModuleSummand, H: PermGroup) -> GModule | ModuleSummand:
    """Restriction to a subgroup; generator actions are evaluated through the stabilizer chain."""
    if isinstance(M, ModuleSummand):
        return ModuleSummand(restrict(M.parent, H), M.E, check=False)
    if not H.is_subgroup_of(M.group):
        raise DomainError("restriction to a non-subgroup")
    if M.is_permutation_module:
        pts = [M.point_perm(h) for h in H.generators]
        return GModule(H, M.dim, points=pts, basis_labels=M.basis_labels, check=False)
    mats = [M.matrix(h) for h in H.generators]
    return GModule(H, M.dim, mats, basis_labels=M.basis_labels, check=False)


def _sylvester_basis(M: GModule) -> list[np.ndarray]:
    """Basis of ``{X : X A = A X for every generator matrix A}`` by a direct linear solve."""
    d = M.dim
    if d > SYLVESTER_MAX_DIM:
        raise ResourceError(f"commutant of a dimension-{d} matrix module exceeds the direct-solve cap "
                            f"{SYLVESTER_MAX_DIM}")
    if d == 0:
        return []
    # unknown X flattened row-major: X[i, j] -> bit i*d + j; equation rows index (A X + X A)[i, j]
    eqs = Echelon()
    for A in M.matrices:
        for i in range(d):
            for j in range(d):
                row = 0
                for k in np.flatnonzero(A[i]):            # (A X)[i, j] = sum_k A[i, k] X[k, j]
                    row ^= 1 << (int(k) * d + j)
                for k in np.flatnonzero(A[:, j]):         # (X A)[i, j] = sum_k X[i, k] A[k, j]
                    row ^= 1 << (i * d + int(k))
                eqs.add(row)
    # nullspace of the equation rows: unknowns not pivots are free
    basis_rows = eqs.basis()
    mat = GF2Matrix(basis_rows, d * d)
    sols = mat.nullspace()
    return [vec_to_array(v, d * d).reshape(d, d).astype(np.uint8) for v in sols]


def endomorphism_algebra(M: GModule | ModuleSummand) -> GF2Algebra:
    """``End_{kG}(M)``; orbital basis for permutation modules, a direct solve otherwise."""
    if isinstance(M, ModuleSummand):
        return M.endomorphism_algebra
    if M.dim == 0:
        raise DomainError("zero module")
    if M.is_permutation_module:
        return M.hecke.algebra
    stack = np.stack(_sylvester_basis(M))
    return GF2Algebra.from_matrix_stack(stack)


def radical(A: GF2Algebra) -> np.ndarray:
    return A.radical_basis


def is_local(A: GF2Algebra) -> tuple[bool, int]:
    return _is_local_algebra(A)


def _summand_key(S: ModuleSummand) -> tuple:
    return (S.dim, tuple(pack_rows(S.E)))


def decompose(M: GModule | ModuleSummand, seed: int = DEFAULT_SEED) -> list[ModuleSummand]:
    """Indecomposable summands from primitive idempotents of ``End(M)``; sorted by (dim, idempotent)."""
    if isinstance(M, ModuleSummand):
        parent, U, V = M.parent, M.U, M.V
        if M.dim == 0:
            return []
        A = M.endomorphism_algebra
        to_full = lambda x: _mm(_mm(U, A.to_array(x)), V)  # noqa: E731
    else:
        parent = M
        if M.dim == 0:
            return []
        if M.dim > max_dim():
            raise ResourceError(f"module dimension {M.dim} exceeds the cap {max_dim()}")
        if M.is_permutation_module:
            A = M.hecke.algebra
            to_full = lambda x: M.hecke.matrix(x)  # noqa: E731
        else:
            A = endomorphism_algebra(M)
            to_full = A.to_array
    out = []
    for p in primitive_idempotents(A, seed=seed):
        S = ModuleSummand(parent, to_full(p.vector), check=False)
        S.split_dim = p.split_dim
        out.append(S)
    if sum(S.dim for S in out) != (M.dim):
        raise InternalError("summand dimensions do not add up")
    out.sort(key=_summand_key)
    return out


def scott_summand(M: GModule, seed: int = DEFAULT_SEED) -> ModuleSummand:
    """The summand of a transitive permutation module that contains the all-ones vector."""
    parts = decompose(M, seed=seed)
    hits = [S for S in parts if S.contains_all_ones()]
    if len(hits) != 1:
        raise InternalError(f"{len(hits)} summands contain the all-ones vector; expected exactly one")
    S = hits[0]
    ones = np.ones((1, M.dim), dtype=np.uint8)
    if not _mm(ones, S.E).any():
        raise InternalError("Scott summand does not map onto the trivial module")
    return S


def scott_module(G: PermGroup, H: PermGroup, seed: int = DEFAULT_SEED) -> ModuleSummand:
    """``Sc(G, H)``: the summand of ``k[G/H]`` containing the all-ones vector."""
    return scott_summand(perm_module(G, H), seed=seed)


# -- Brauer construction -----------------------------------------------------------

def _fixed_space(mats: Iterable[np.ndarray], d: int) -> list[int]:
    rows: list[int] = []
    for m in mats:
        rows.extend(pack_rows(m ^ np.eye(d, dtype=np.uint8)))
    if not rows:
        return [(1 << i) for i in range(d)]
    return GF2Matrix(rows, d).nullspace()


def maximal_subgroups(V: PermGroup) -> list[Subgroup]:
    """Index-2 subgroups of a 2-group, as kernels of the nonzero maps ``V -> C_2``."""
    if not V.is_p_group(2):
        raise DomainError("maximal_subgroups expects a 2-group")
    if V.order == 1:
        return []
    phi = Subgroup(V, [], check=False)         # Frattini subgroup: generated by the squares
    for g in V.elements_list():
        sq = g * g
        if sq not in phi:
            phi = Subgroup(V, list(phi.generators) + [sq], check=False)
    gens: list[Perm] = []
    cur = phi
    for g in V.elements_list():
        if g not in cur:
            gens.append(g)
            cur = Subgroup(V, list(phi.generators) + gens, check=False)
            if cur.order == V.order:
                break
    r = len(gens)
    out = []
    for f in range(1, 2 ** r):
        ones = [i for i in range(r) if (f >> i) & 1]
        i0 = ones[0]
        new = [g for i, g in enumerate(gens) if not (f >> i) & 1]
        new += [gens[i] * gens[i0] for i in ones[1:]]
        R = Subgroup(V, list(phi.generators) + new, check=False)
        if R.order * 2 != V.order:  # pragma: no cover - Burnside basis theorem
            raise InternalError("maximal subgroup has the wrong order")
        out.append(R)
    return out


@dataclass
class BrauerQuotient:
    """``M(Q) = M^Q / sum_R Tr_R^Q(M^R)`` computed by linear algebra."""

    Q: PermGroup
    normalizer: Subgroup
    fixed: list[int]           # basis of M^Q (vectors of M as ints)
    traces: list[int]          # basis of the trace subspace
    complement: list[int]      # vectors of M^Q whose classes form the quotient basis
    module: GModule

    @property
    def dim(self) -> int:
        return len(self.complement)

    def class_of(self, v: int) -> np.ndarray:
        """Coordinates of the class of a ``Q``-fixed vector ``v`` in the quotient basis."""
        ech, positions = self._ech
        combo = ech.coords(v)
        if combo is None:
            raise DomainError("vector is not fixed by Q")
        out = np.zeros(self.dim, dtype=np.uint8)
        for i in bits(combo):
            j = positions.get(i)
            if j is not None:
                out[j] = 1
        return out

    @cached_property
    def _ech(self):
        ech = Echelon()
        for t in self.traces:
            ech.add(t)
        base = ech.count
        positions = {}
        for j, c in enumerate(self.complement):
            if not ech.add(c):  # pragma: no cover - complement is independent by construction
                raise InternalError("complement vector dependent on traces")
            positions[base + j] = j
        return ech, positions


def brauer_construction(M: GModule | ModuleSummand, Q: PermGroup) -> BrauerQuotient:
    """Brauer quotient at a 2-subgroup ``Q``, as a module for ``N_G(Q)``."""
    if isinstance(M, ModuleSummand):
        M = M.as_module()
    G = M.group
    if not Q.is_subgroup_of(G):
        raise DomainError("Q is not a subgroup of the module's group")
    if not Q.is_p_group(2):
        raise DomainError("Brauer construction needs a 2-subgroup")
    d = M.dim
    if d > max_dim():
        raise ResourceError(f"module dimension {d} exceeds the cap {max_dim()}")
    N = normalizer(G, Q)
    qmats = [M.matrix(q) for q in Q.generators]
    fixed = _fixed_space(qmats, d)
    ech = Echelon()
    for R in maximal_subgroups(Q):
        fixed_R = _fixed_space([M.matrix(r) for r in R.generators], d)
        q = next(x for x in Q.generators if x not in R)
        op = GF2Matrix.from_numpy(M.matrix(q) ^ np.eye(d, dtype=np.uint8))
        for v in fixed_R:
            ech.add(op.apply(v))
    traces = ech.basis()
    complement = []
    for v in fixed:
        if ech.add(v):
            complement.append(v)
    partial = BrauerQuotient(Q, N, fixed, traces, complement, None)  # type: ignore[arg-type]
    mats = []
    for n in N.generators:
        A = GF2Matrix.from_numpy(M.matrix(n))
        cols = [partial.class_of(A.apply(c)) for c in complement]
        mats.append(np.array(cols, dtype=np.uint8).reshape(len(complement), len(complement)).T)
    partial.module = GModule(N, len(complement), mats, check=False)
    return partial


@dataclass
class BrauerModel:
    """``M(Q)`` modelled on the fixed points: ``E[Y, Y]`` acting on ``k[Y]``, ``Y = X^Q``."""

    Q: PermGroup
    normalizer: Subgroup
    points: list[int]          # Y as indices into the parent's points
    module: GModule            # k[Y] over N_G(Q)
    summand: ModuleSummand | None   # None when the result is zero

    @property
    def dim(self) -> int:
        return 0 if self.summand is None else self.summand.dim

    @property
    def is_zero(self) -> bool:
        return self.summand is None


def fixed_point_module(M: GModule, Q: PermGroup, N: PermGroup | None = None) -> tuple[list[int], GModule]:
    """``k[X^Q]`` as a module for ``N`` (default ``N_G(Q)``)."""
    if not M.is_permutation_module:
        raise DomainError("fixed_point_module needs a permutation module")
    if N is None:
        N = normalizer(M.group, Q)
    Y = M.fixed_points(Q)
    where = {y: i for i, y in enumerate(Y)}
    pts = []
    for g in N.generators:
        img = M.point_perm(g)
        try:
            pts.append(np.array([where[int(img[y])] for y in Y], dtype=np.int64))
        except KeyError:
            raise DomainError("N does not normalize Q on the points") from None
    labels = [M.basis_labels[y] for y in Y] if M.basis_labels is not None else Y
    if not Y:
        pts = [np.zeros(0, dtype=np.int64) for _ in N.generators]
    return Y, GModule(N, len(Y), points=pts, basis_labels=labels, check=False)


def brauer_model(M: GModule | ModuleSummand, Q: PermGroup, N: PermGroup | None = None) -> BrauerModel:
    """Brauer construction of a permutation module or one of its summands via the fixed points."""
    parent = M.parent if isinstance(M, ModuleSummand) else M
    if not parent.is_permutation_module:
        raise DomainError("brauer_model needs a permutation module or a summand of one")
    if not Q.is_p_group(2):
        raise DomainError("Brauer construction needs a 2-subgroup")
    if not Q.is_subgroup_of(parent.group):
        raise DomainError("Q is not a subgroup of the module's group")
    if N is None:
        N = normalizer(parent.group, Q)
    Y, kY = fixed_point_module(parent, Q, N)
    if not Y:
        return BrauerModel(Q, N, Y, kY, None)
    if isinstance(M, ModuleSummand):
        e = M.E[np.ix_(Y, Y)]
    else:
        e = np.eye(len(Y), dtype=np.uint8)
    if not e.any():
        return BrauerModel(Q, N, Y, kY, None)
    return BrauerModel(Q, N, Y, kY, ModuleSummand(kY, e, check=True))


def brauer_model_isomorphism(M: GModule | ModuleSummand, Q: PermGroup) -> dict:
    """Check ``e_y -> [E e_y]`` is an ``N_G(Q)``-isomorphism from the model onto the quotient."""
    parent = M.parent if isinstance(M, ModuleSummand) else M
    model = brauer_model(M, Q)
    quot = brauer_construction(M, Q)
    if isinstance(M, ModuleSummand):
        coords_of_point = lambda y: M.V[:, y]  # noqa: E731  (E e_y in the summand basis)
    else:
        coords_of_point = lambda y: np.eye(parent.dim, dtype=np.uint8)[:, y]  # noqa: E731
    Y = model.points
    if model.is_zero:
        return {"dim_model": 0, "dim_quotient": quot.dim, "bijective": quot.dim == 0, "equivariant": True}
    # phi on the basis points of k[Y]
    phi = np.array([quot.class_of(array_to_vec(coords_of_point(y))) for y in Y], dtype=np.uint8).T
    img = _mm(phi, model.summand.U)
    bijective = rank_np(img.T) == model.dim == quot.dim
    equivariant = True
    for k, g in enumerate(quot.normalizer.generators):
        lhs = _mm(quot.module.matrices[k], phi)
        rhs = _mm(phi, model.module.matrices[k])
        if not np.array_equal(lhs, rhs):
            equivariant = False
            break
    return {"dim_model": model.dim, "dim_quotient": quot.dim, "bijective": bool(bijective),
            "equivariant": equivariant}


def iterated_brauer_check(M: GModule | ModuleSummand, Q: PermGroup, V: PermGroup) -> dict:
    """Compare ``M(V)`` with ``(M(Q))(V)`` for ``Q`` normal in ``V`` through ``[v] -> [[v]_Q]_V``.

    The map is checked to kill the ``V``-traces, to be bijective, and to
    commute with every generator of ``N_G(Q) cap N_G(V)``.
    """
    G = M.group
    if not (Q.is_subgroup_of(V) and V.is_subgroup_of(G) and Q.is_normal_in(V)):
        raise DomainError("need Q normal in V inside G")
    MQ = brauer_construction(M, Q)
    V_in_NQ = Subgroup(MQ.normalizer, list(V.generators), check=False)
    MQV = brauer_construction(MQ.module, V_in_NQ)
    MV = brauer_construction(M, V)

    def through(v: int) -> np.ndarray:
        return MQV.class_of(array_to_vec(MQ.class_of(v)))

    kills_traces = all(not through(t).any() for t in MV.traces)
    phi = np.array([through(c) for c in MV.complement], dtype=np.uint8).reshape(MV.dim, MQV.dim).T
    bijective = MV.dim == MQV.dim and rank_np(phi) == MV.dim
    equivariant = True
    for k in MQV.normalizer.generators:
        if not np.array_equal(_mm(phi, MV.module.matrix(k)), _mm(MQV.module.matrix(k), phi)):
            equivariant = False
            break
    return {"dim_V": MV.dim, "dim_QV": MQV.dim, "dim_Q": MQ.dim, "kills_traces": kills_traces,
            "bijective": bool(bijective), "equivariant": equivariant,
            "isomorphic": kills_traces and bool(bijective) and equivariant}


# -- homomorphisms between summands ---------------------------------------------------

def _unit_in_local_corner(S: ModuleSummand, products: np.ndarray) -> bool:
    """Whether some ``s x s`` matrix in ``products`` is invertible modulo ``J(End S)``."""
    A = S.endomorphism_algebra
    J = A.radical_basis
    solver = SpanSolver(A.matrices.reshape(A.dim, -1))
    flat = products.reshape(len(products), -1)
    coords = solver.solve(flat)
    if len(J) == 0:
        return bool(coords.any())
    ech = Echelon()
    for v in J:
        ech.add(array_to_vec(v))
    return any(not ech.contains(array_to_vec(c)) for c in coords)


def _span_stack(stack: np.ndarray) -> np.ndarray:
    if len(stack) == 0:
        return stack
    keep = independent_rows(stack.reshape(len(stack), -1))
    return stack[keep]


def is_summand_of(L: ModuleSummand, M: ModuleSummand) -> bool:
    """``L | M`` for summands of the same permutation module with ``L`` indecomposable."""
    if L.parent is not M.parent:
        raise DomainError("summands must share their parent module")
    if L.dim == 0:
        return True
    if M.dim == 0:
        return False
    H = L.parent.hecke
    X = _span_stack(H.sandwich(M.V, L.U))     # Hom(L, M) composed into coordinates
    Y = _span_stack(H.sandwich(L.V, M.U))     # Hom(M, L)
    if len(X) == 0 or len(Y) == 0:
        return False
    prods = _mod2(np.einsum("aij,bjk->abik", Y.astype(np.int64), X.astype(np.int64)))
    return _unit_in_local_corner(L, prods.reshape(-1, L.dim, L.dim))


def are_isomorphic(L: ModuleSummand, M: ModuleSummand) -> bool:
    """Isomorphism of two summands of one permutation module, ``L`` indecomposable."""
    return L.dim == M.dim and is_summand_of(L, M)


# -- relative projectivity and vertices ------------------------------------------------

class _OrbitalSylows:
    """Sylow 2-subgroups of the two-point stabilizers ``G_{x,y}`` for each orbital."""

    def __init__(self, M: GModule):
        self.M = M
        self._cache: dict[int, Subgroup] = {}

    def __call__(self, k: int) -> Subgroup:
        if k not in self._cache:
            G = self.M.group
            x, y = (int(v) for v in self.M.hecke.reps[k])
            stab = [g for g in G.elements_list()
                    if (lambda p: p[x] == x and p[y] == y)(self.M.point_perm(g))]
            S = subgroup_from_elements(G, stab)
            self._cache[k] = sylow_2(S) if S.order > 1 else S
        return self._cache[k]


def _orbital_sylows(M: GModule) -> _OrbitalSylows:
    cache = getattr(M, "_orbital_sylow_cache", None)
    if cache is None:
        cache = _OrbitalSylows(M)
        M._orbital_sylow_cache = cache
    return cache


def is_relatively_projective(S: ModuleSummand, V: PermGroup) -> bool:
    """Higman's criterion for a summand of a permutation module.

    ``Tr_V^G`` maps the ``V``-orbital matrices onto multiples ``[G_xy : V_xy] B_O``
    of ``G``-orbital matrices, so its image is spanned by the ``B_O`` whose
    two-point stabilizer has a Sylow 2-subgroup ``G``-conjugate into ``V``; the
    summand is ``V``-projective iff its idempotent lies in that span.
    """
    M = S.parent
    if not M.is_permutation_module:
        raise DomainError("Higman test implemented for summands of permutation modules")
    if not V.is_subgroup_of(M.group):
        raise DomainError("V is not a subgroup of the module's group")
    sylows = _orbital_sylows(M)
    G = M.group
    cs = CosetSpace(G, V, bound=G.order)
    for k in np.flatnonzero(S.hecke_vector):
        Sk = sylows(int(k))
        if V.order % Sk.order or not cs.fixed_points(Sk):
            return False
    return True


def vertex(S: ModuleSummand, start: PermGroup | None = None) -> Subgroup:
    """A vertex of an indecomposable summand: descend through maximal subgroups while projective."""
    if not is_indecomposable(S)[0]:
        raise DomainError("vertex() needs an indecomposable module")
    G = S.group
    V = start if start is not None else sylow_2(G)
    if not is_relatively_projective(S, V):
        raise DomainError("module is not projective relative to the starting 2-subgroup")
    while True:
        for R in maximal_subgroups(V):
            if is_relatively_projective(S, R):
                V = R
                break
        else:
            return V if isinstance(V, Subgroup) else Subgroup(G, V.generators, check=False)


def _local_division(A: GF2Algebra) -> bool:
    """``A/J`` is a field (so ``A`` is local, possibly with ``split_dim > 1``)."""
    q = A.dim - len(A.radical_basis)
    if q == 1:
        return True
    return len(primitive_idempotents(A)) == 1


def is_indecomposable(S: ModuleSummand | GModule) -> tuple[bool, int]:
    """``(indecomposable, dim End/J)``; indecomposable means ``End`` is local."""
    if isinstance(S, ModuleSummand) and S.dim == 0:
        return False, 0
    A = endomorphism_algebra(S)
    q = A.dim - len(A.radical_basis)
    return _local_division(A), q


__all__ = [
    "GModule", "ModuleSummand", "Hecke", "CosetSpace", "BrauerQuotient", "BrauerModel",
    "perm_module", "permutation_module", "restrict", "endomorphism_algebra", "radical", "is_local",
    "decompose", "scott_module", "scott_summand", "brauer_construction", "brauer_model",
    "brauer_model_isomorphism", "iterated_brauer_check", "fixed_point_module", "is_summand_of", "are_isomorphic",
    "is_relatively_projective", "vertex", "maximal_subgroups", "is_subconjugate", "is_indecomposable",
    "max_dim", "DEFAULT_MAX_DIM", "MAX_DIM_ENV", "GF2Matrix", "GF2Algebra",
]
