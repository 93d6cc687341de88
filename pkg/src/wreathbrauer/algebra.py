"""Finite-dimensional GF(2)-algebras given by structure constants.

The Jacobson radical comes from the characteristic-p trace-form method on the
left regular representation: starting from ``I = A``, level ``i`` keeps the
``x`` in ``I`` with ``g_i(xy) = 0`` for all ``y``, where ``g_i(z)`` is
``Tr(z^(2^i)) mod 2^(i+1)`` divided by ``2^i`` for the integer lift of ``z``.
Primitive idempotents are found by splitting ``eAe / eJe`` (centre first, then
a random element's minimal polynomial) and lifting along ``J`` by repeated
squaring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
import sympy

from .errors import DomainError, InternalError
from .gf2 import (Echelon, GF2Matrix, SpanSolver, array_to_vec, bits, independent_rows, left_nullspace,
                  vec_to_array)

DEFAULT_SEED = 20240607


def _arr(v: int, m: int) -> np.ndarray:
    return vec_to_array(v, m).astype(np.uint8)


class GF2Algebra:
    """Associative unital algebra with basis ``b_0..b_{m-1}`` and ``b_i b_j = sum_k c[i,j,k] b_k``."""

    def __init__(self, structure: np.ndarray, one: Sequence[int] | np.ndarray,
                 basis: list[GF2Matrix] | None = None):
        c = np.asarray(structure, dtype=np.uint8) & 1
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise DomainError("structure constants must have shape (m, m, m)")
        self.dim = c.shape[0]
        self.structure = c
        self.one = np.asarray(one, dtype=np.uint8) & 1
        self.basis = basis
        self.matrices: np.ndarray | None = None
        self._flat = c.reshape(self.dim, self.dim * self.dim).astype(np.float32)

    # -- arithmetic ---------------------------------------------------------------------
    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        m = self.dim
        if m == 0:
            return np.zeros(0, dtype=np.uint8)
        t = (np.asarray(x, dtype=np.float32) @ self._flat).reshape(m, m)
        return ((np.asarray(y, dtype=np.float32) @ t).astype(np.int64) & 1).astype(np.uint8)

    def mul_many(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """All products ``X[a] * Y[b]`` as an array of shape (len(X), len(Y), m)."""
        m = self.dim
        t = (np.asarray(X, dtype=np.float32) @ self._flat).reshape(len(X), m, m)
        out = np.einsum("bj,ajk->abk", np.asarray(Y, dtype=np.float32), t)
        return (out.astype(np.int64) & 1).astype(np.uint8)

    def power(self, x: np.ndarray, k: int) -> np.ndarray:
        result = self.one.copy()
        base = np.asarray(x, dtype=np.uint8)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def regular(self, x: np.ndarray) -> np.ndarray:
        """Matrix ``L`` with ``(x y) = y @ L`` (so ``L[j, k] = sum_i x_i c[i, j, k]``)."""
        m = self.dim
        return ((np.asarray(x, dtype=np.float32) @ self._flat).reshape(m, m).astype(np.int64) & 1)

    def to_array(self, x: np.ndarray) -> np.ndarray:
        """The matrix of ``x`` when the algebra was built from matrices."""
        if self.matrices is None:
            raise DomainError("algebra has no matrix basis")
        return (np.tensordot(np.asarray(x, dtype=np.int64), self.matrices.astype(np.int64), axes=1) & 1).astype(np.uint8)

    def to_matrix(self, x: np.ndarray) -> GF2Matrix:
        return GF2Matrix.from_numpy(self.to_array(x))

    def is_idempotent(self, x: np.ndarray) -> bool:
        return bool(np.array_equal(self.mul(x, x), np.asarray(x) & 1))

    def check_associative(self) -> bool:
        m = self.dim
        c = self.structure.astype(np.int64)
        left = np.einsum("ijl,lkm->ijkm", c, c) & 1
        right = np.einsum("jkl,ilm->ijkm", c, c) & 1
        return bool(np.array_equal(left, right))

    def check_identity(self) -> bool:
        e = np.eye(self.dim, dtype=np.uint8)
        return bool(np.array_equal(self.mul_many(self.one[None, :], e)[0], e)
                    and np.array_equal(self.mul_many(e, self.one[None, :])[:, 0, :], e))

    # -- constructors ------------------------------------------------------------------
    @classmethod
    def from_matrices(cls, mats: Sequence[GF2Matrix]) -> "GF2Algebra":
        """Algebra spanned by the given (linearly independent, closed) matrices."""
        mats = list(mats)
        if not mats:
            raise DomainError("empty basis")
        A = cls.from_matrix_stack(np.stack([M.to_numpy() for M in mats]))
        A.basis = mats
        return A

    @classmethod
    def from_matrix_stack(cls, stack: np.ndarray, spanning: bool = False) -> "GF2Algebra":
        """Algebra with basis the square 0/1 matrices ``stack[i]``.

        With ``spanning=True`` the stack only needs to span the algebra; a
        greedy independent subset is used as the basis (kept in ``matrices``).
        """
        S = np.asarray(stack, dtype=np.uint8) & 1
        if S.ndim != 3 or S.shape[1] != S.shape[2]:
            raise DomainError("expected a stack of square matrices")
        d0, s, _ = S.shape
        flat = S.reshape(d0, s * s)
        if spanning:
            keep = independent_rows(flat)
            S, flat = S[keep], flat[keep]
        m = len(S)
        if m == 0:
            raise DomainError("empty basis")
        solver = SpanSolver(flat)
        c = np.zeros((m, m, m), dtype=np.uint8)
        Sf = S.astype(np.float32)
        for i in range(m):
            prods = (np.matmul(Sf[i][None, :, :], Sf).astype(np.int64) & 1).astype(np.uint8)
            try:
                c[i] = solver.solve(prods.reshape(m, s * s))
            except DomainError:
                raise DomainError("span of the basis is not closed under products") from None
        try:
            one = solver.solve(np.eye(s, dtype=np.uint8).reshape(1, -1))[0]
        except DomainError:
            raise DomainError("identity matrix is not in the span") from None
        A = cls(c, one)
        A.matrices = S
        return A

    @classmethod
    def upper_triangular(cls, n: int) -> "GF2Algebra":
        mats = []
        for i in range(n):
            for j in range(i, n):
                rows = [0] * n
                rows[i] = 1 << j
                mats.append(GF2Matrix(rows, n))
        return cls.from_matrices(mats)

    @classmethod
    def polynomial_quotient(cls, coeffs: Sequence[int]) -> "GF2Algebra":
        """``GF(2)[x] / (f)`` for a monic ``f`` given by ascending coefficients."""
        d = len(coeffs) - 1
        if d < 1 or coeffs[-1] % 2 != 1:
            raise DomainError("need a monic polynomial of degree >= 1")
        c = np.zeros((d, d, d), dtype=np.uint8)
        for i in range(d):
            for j in range(d):
                v = [0] * (2 * d)
                v[i + j] = 1
                for k in range(2 * d - 1, d - 1, -1):
                    if v[k]:
                        for s in range(d + 1):
                            v[k - d + s] ^= coeffs[s] & 1
                c[i, j, :] = v[:d]
        one = np.zeros(d, dtype=np.uint8)
        one[0] = 1
        return cls(c, one)

    @classmethod
    def direct_sum(cls, A: "GF2Algebra", B: "GF2Algebra") -> "GF2Algebra":
        m = A.dim + B.dim
        c = np.zeros((m, m, m), dtype=np.uint8)
        c[:A.dim, :A.dim, :A.dim] = A.structure
        c[A.dim:, A.dim:, A.dim:] = B.structure
        return cls(c, np.concatenate([A.one, B.one]))

    def subalgebra(self, vectors: np.ndarray) -> "GF2Algebra":
        """Structure constants of the subalgebra with the given basis (rows, independent)."""
        V = np.asarray(vectors, dtype=np.uint8)
        k = len(V)
        ech = Echelon()
        for v in V:
            if not ech.add(array_to_vec(v)):
                raise DomainError("subalgebra basis is dependent")
        prods = self.mul_many(V, V)
        c = np.zeros((k, k, k), dtype=np.uint8)
        for i in range(k):
            for j in range(k):
                co = ech.coords(array_to_vec(prods[i, j]))
                if co is None:
                    raise DomainError("span is not closed")
                for s in bits(co):
                    c[i, j, s] = 1
        return c

    def __repr__(self) -> str:
        return f"GF2Algebra(dim={self.dim})"

    @cached_property
    def radical_basis(self) -> np.ndarray:
        return radical(self)


def _representation(A: GF2Algebra) -> np.ndarray:
    """Basis matrices of the smaller of the stored faithful matrix representation and the regular one."""
    if A.matrices is not None and A.matrices.shape[1] < A.dim:
        return A.matrices
    return A.structure           # R_i[j, k] = c[i, j, k]: matrix of left multiplication by b_i


def _trace_form_values(rep: np.ndarray, vecs: np.ndarray, level: int) -> np.ndarray:
    """``g_level`` of each coordinate vector in ``vecs`` (shape (..., m))."""
    m = rep.shape[0]
    n = rep.shape[1]
    mod = 2 ** (level + 1)
    shape = vecs.shape[:-1]
    flat = vecs.reshape(-1, m).astype(np.float64)
    if level == 0:
        traces = np.trace(rep.astype(np.float64), axis1=1, axis2=2)
        return ((flat @ traces).astype(np.int64) & 1).reshape(shape)
    out = np.zeros(len(flat), dtype=np.int64)
    rflat = rep.reshape(m, n * n).astype(np.float64)
    chunk = max(1, 2 ** 23 // max(1, n * n))
    for s in range(0, len(flat), chunk):
        block = flat[s:s + chunk]
        mats = np.mod(block @ rflat, 2).reshape(len(block), n, n)
        for _ in range(level):
            mats = np.mod(np.matmul(mats, mats), mod)
        tr = np.trace(mats, axis1=1, axis2=2).astype(np.int64) % mod
        out[s:s + chunk] = tr >> level
    return (out & 1).reshape(shape)


def _span(vectors: np.ndarray, m: int) -> np.ndarray:
    ech = Echelon()
    for v in vectors.reshape(-1, m):
        ech.add(array_to_vec(v))
    return np.array([_arr(b, m) for b in ech.basis()], dtype=np.uint8).reshape(-1, m)


def _is_nilpotent_ideal(A: GF2Algebra, I: np.ndarray) -> bool:
    if len(I) == 0:
        return True
    m = A.dim
    E = np.eye(m, dtype=np.uint8)
    ech = Echelon()
    for v in I:
        ech.add(array_to_vec(v))
    two_sided = np.concatenate([A.mul_many(I, E).reshape(-1, m), A.mul_many(E, I).reshape(-1, m)])
    if any(not ech.contains(array_to_vec(v)) for v in two_sided):
        return False
    cur = I
    for _ in range(m + 1):
        cur = _span(A.mul_many(cur, I), m)
        if len(cur) == 0:
            return True
    return False


def radical(A: GF2Algebra) -> np.ndarray:
    """Basis (rows of coordinate vectors) of the Jacobson radical ``J(A)``."""
    m = A.dim
    if m == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    rep = _representation(A)
    I = np.eye(m, dtype=np.uint8)
    E = np.eye(m, dtype=np.uint8)
    n = rep.shape[1]
    top = int(np.floor(np.log2(n))) if n > 1 else 0
    for level in range(top + 1):
        G = _trace_form_values(rep, A.mul_many(I, E), level)     # (k, m)
        combos = left_nullspace([array_to_vec(row) for row in G])
        if not combos:
            return np.zeros((0, m), dtype=np.uint8)
        I = np.array([np.bitwise_xor.reduce(I[list(bits(c))], axis=0) for c in combos], dtype=np.uint8)
        if _is_nilpotent_ideal(A, I):
            return I
    raise InternalError("trace-form iteration did not reach a nilpotent ideal")


def is_local(A: GF2Algebra) -> tuple[bool, int]:
    """``(dim A/J == 1, dim A/J)``."""
    q = A.dim - len(A.radical_basis)
    return q == 1, q


# -- idempotents ----------------------------------------------------------------------

class _Quot:
    """Arithmetic in ``A`` modulo a subspace (given by an echelon basis)."""

    def __init__(self, A: GF2Algebra, sub: Sequence[np.ndarray]):
        self.A = A
        self.ech = Echelon()
        for v in sub:
            self.ech.add(array_to_vec(v))

    def res(self, v: np.ndarray) -> int:
        return self.ech.residual(array_to_vec(v))


def _span_rows(vectors) -> np.ndarray:
    ech = Echelon()
    m = None
    for v in vectors:
        m = len(v)
        ech.add(array_to_vec(v))
    if m is None:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.array([_arr(b, m) for b in ech.basis()], dtype=np.uint8).reshape(-1, m)


def corner(A: GF2Algebra, e: np.ndarray) -> np.ndarray:
    """Basis of ``eAe``."""
    E = np.eye(A.dim, dtype=np.uint8)
    left = A.mul_many(e[None, :], E)[0]            # e * b_j
    both = A.mul_many(left, e[None, :])[:, 0, :]   # e b_j e
    return _span_rows(list(both))


def corner_radical(A: GF2Algebra, e: np.ndarray) -> np.ndarray:
    J = A.radical_basis
    if len(J) == 0:
        return np.zeros((0, A.dim), dtype=np.uint8)
    left = A.mul_many(e[None, :], J)[0]
    both = A.mul_many(left, e[None, :])[:, 0, :]
    out = _span_rows(list(both))
    return out if len(out) else np.zeros((0, A.dim), dtype=np.uint8)


def lift_idempotent(A: GF2Algebra, u: np.ndarray) -> np.ndarray:
    """Repeated squaring of ``u`` (idempotent modulo ``J``) until it stabilizes."""
    u = np.asarray(u, dtype=np.uint8)
    for _ in range(2 * max(A.dim, 1).bit_length() + 4):
        v = A.mul(u, u)
        if np.array_equal(v, u):
            return u
        u = v
    raise InternalError("idempotent lifting did not converge")


def _linear_kernel(images: list[int]) -> list[int]:
    """Combos ``c`` of indices with XOR of images zero."""
    return left_nullspace(images)


def _combine(basis: np.ndarray, combo: int) -> np.ndarray:
    idx = list(bits(combo))
    if not idx:
        return np.zeros(basis.shape[1], dtype=np.uint8)
    return np.bitwise_xor.reduce(basis[idx], axis=0)


def _center_mod(A: GF2Algebra, B: np.ndarray, Q: _Quot) -> np.ndarray:
    """Basis of ``{x in span(B) : [x, y] in sub for all y in B}``."""
    prods_xy = A.mul_many(B, B)
    images = []
    k = len(B)
    for i in range(k):
        acc = 0
        for j in range(k):
            comm = prods_xy[i, j] ^ prods_xy[j, i]
            acc |= Q.res(comm) << (j * A.dim)
        images.append(acc)
    combos = _linear_kernel(images)
    return np.array([_combine(B, c) for c in combos], dtype=np.uint8).reshape(-1, A.dim)


def _frobenius_kernel(A: GF2Algebra, Z: np.ndarray, Q: _Quot) -> np.ndarray:
    """``{x in span(Z) : x^2 + x in sub}``."""
    images = []
    for z in Z:
        images.append(Q.res(A.mul(z, z) ^ z))
    combos = _linear_kernel(images)
    return np.array([_combine(Z, c) for c in combos], dtype=np.uint8).reshape(-1, A.dim)


def _min_poly_mod(A: GF2Algebra, x: np.ndarray, e: np.ndarray, sub: np.ndarray) -> list[int]:
    """Minimal polynomial (ascending coefficients) of ``x`` in ``eAe / sub`` (``e`` is the unit)."""
    ech = Echelon()
    for v in sub:
        ech.add(array_to_vec(v))
    base = ech.count
    p = e.copy()
    for d in range(A.dim + 2):
        rel = ech.add_relation(array_to_vec(p))
        if rel is not None:
            coeffs = [(rel >> (base + k)) & 1 for k in range(d + 1)]
            return coeffs
        p = A.mul(p, x)
    raise InternalError("minimal polynomial search overran")


def _poly_eval(A: GF2Algebra, coeffs: Sequence[int], x: np.ndarray, e: np.ndarray) -> np.ndarray:
    acc = np.zeros(A.dim, dtype=np.uint8)
    for c in reversed(list(coeffs)):
        acc = A.mul(acc, x)
        if c & 1:
            acc = acc ^ e
    return acc


def _crt_idempotent_poly(coeffs: Sequence[int]) -> list[int] | None:
    """A polynomial ``h`` with ``h = 1`` mod one primary factor and ``0`` mod the rest."""
    X = sympy.Symbol("X")
    f = sympy.Poly(list(reversed(list(coeffs))), X, modulus=2)
    _, factors = f.factor_list()
    if len(factors) < 2:
        return None
    p1, k1 = factors[0]
    a = p1 ** k1
    rest = sympy.Poly(1, X, modulus=2)
    for p, k in factors[1:]:
        rest = rest * p ** k
    s, _t, g = rest.gcdex(a)
    if g.degree() != 0:
        raise InternalError("coprime factors have a common divisor")
    h = (s * rest).rem(f)
    return [int(c) % 2 for c in reversed(h.all_coeffs())]


@dataclass
class PrimitiveIdempotent:
    vector: np.ndarray
    split_dim: int          # dim of eAe/eJe; 1 means absolutely indecomposable


def primitive_idempotents(A: GF2Algebra, seed: int = DEFAULT_SEED, max_tries: int = 400) -> list[PrimitiveIdempotent]:
    """Pairwise orthogonal primitive idempotents summing to ``1``."""
    rng = np.random.default_rng(seed)
    queue = [A.one.copy()]
    done: list[PrimitiveIdempotent] = []
    while queue:
        e = queue.pop(0)
        if not e.any():
            continue
        B = corner(A, e)
        Je = corner_radical(A, e)
        q = len(B) - len(Je)
        if q == 1:
            done.append(PrimitiveIdempotent(e, 1))
            continue
        Q = _Quot(A, Je)
        Z = _center_mod(A, B, Q)
        K = _frobenius_kernel(A, Z, Q)
        Kq = Echelon()
        for v in Je:
            Kq.add(array_to_vec(v))
        Kq.add(array_to_vec(e))
        split = None
        for v in K:
            if Kq.add(array_to_vec(v)):
                split = v
                break
        if split is None:
            zdim = _quotient_dim(Z, Je)
            if q == zdim:
                done.append(PrimitiveIdempotent(e, q))
                continue
            for _ in range(max_tries):
                coeffs = rng.integers(0, 2, size=len(B)).astype(np.uint8)
                x = np.bitwise_xor.reduce(B[coeffs.astype(bool)], axis=0) if coeffs.any() else np.zeros(A.dim, np.uint8)
                mp = _min_poly_mod(A, x, e, Je)
                h = _crt_idempotent_poly(mp)
                if h is not None:
                    split = _poly_eval(A, h, x, e)
                    break
            else:
                raise InternalError("failed to split a non-division semisimple corner")
        f = lift_idempotent(A, split)
        g = e ^ f
        g = lift_idempotent(A, g)
        if not (f.any() and g.any()):
            raise InternalError("idempotent split degenerated")
        if np.any(A.mul(f, g)) or np.any(A.mul(g, f)):
            # re-orthogonalize inside eAe: g := e - f is automatically orthogonal to f
            g = e ^ f
        queue.extend([f, g])
    total = np.zeros(A.dim, dtype=np.uint8)
    for p in done:
        total ^= p.vector
    if not np.array_equal(total, A.one):
        raise InternalError("primitive idempotents do not sum to 1")
    return done


def _quotient_dim(V: np.ndarray, W: np.ndarray) -> int:
    ech = Echelon()
    for w in W:
        ech.add(array_to_vec(w))
    base = ech.dim
    for v in V:
        ech.add(array_to_vec(v))
    return ech.dim - base


__all__ = [
    "GF2Algebra", "PrimitiveIdempotent", "radical", "is_local", "primitive_idempotents",
    "lift_idempotent", "corner", "corner_radical", "DEFAULT_SEED",
]
