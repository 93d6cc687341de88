"""Dense bit-packed linear algebra over GF(2).

Rows are Python ints (bit ``j`` of row ``i`` is entry ``(i, j)``), so row
operations are single XORs on machine-word arrays.  Products of larger
matrices go through numpy's float32 BLAS (exact while the inner dimension
stays below 2^24) and are reduced mod 2.  Vectors are ints with bit ``j`` the
``j``-th coordinate; matrices act on column vectors.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError


def pack_rows(arr: np.ndarray) -> list[int]:
    """0/1 array of shape (r, c) -> list of row ints."""
    arr = np.ascontiguousarray(np.asarray(arr, dtype=np.uint8) & 1)
    if arr.ndim != 2:
        raise DomainError("pack_rows expects a 2-d array")
    r, c = arr.shape
    if c == 0:
        return [0] * r
    packed = np.packbits(arr, axis=1, bitorder="little")
    stride = packed.shape[1]
    buf = packed.tobytes()
    return [int.from_bytes(buf[i * stride:(i + 1) * stride], "little") for i in range(r)]


def unpack_rows(rows: Sequence[int], ncols: int) -> np.ndarray:
    """List of row ints -> 0/1 uint8 array of shape (len(rows), ncols)."""
    r = len(rows)
    if r == 0 or ncols == 0:
        return np.zeros((r, ncols), dtype=np.uint8)
    stride = (ncols + 7) // 8
    buf = b"".join(x.to_bytes(stride, "little") for x in rows)
    packed = np.frombuffer(buf, dtype=np.uint8).reshape(r, stride)
    return np.unpackbits(packed, axis=1, count=ncols, bitorder="little")


def matmul_mod2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of 0/1 arrays reduced mod 2."""
    if a.shape[1] >= 2 ** 24:
        raise DomainError("inner dimension too large for exact float32 products")
    prod = a.astype(np.float32) @ b.astype(np.float32)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class GF2Matrix:
    """An immutable ``nrows x ncols`` matrix over GF(2)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[int], ncols: int):
        self.rows = tuple(int(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = ncols

    # -- constructors --------------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def from_numpy(cls, arr) -> "GF2Matrix":
        arr = np.asarray(arr)
        return cls(pack_rows(arr), arr.shape[1])

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "GF2Matrix":
        ncols = len(rows[0]) if rows else 0
        return cls.from_numpy(np.array(rows, dtype=np.uint8).reshape(len(rows), ncols))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "GF2Matrix":
        """Matrix sending basis vector ``e_x`` to ``e_{perm[x]}``."""
        n = len(perm)
        rows = [0] * n
        for x, y in enumerate(perm):
            rows[y] |= 1 << x
        return cls(rows, n)

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> "GF2Matrix":
        return cls(list(cols), nrows).T

    # -- conversions ----------------------------------------------------------------
    def to_numpy(self) -> np.ndarray:
        return unpack_rows(self.rows, self.ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def T(self) -> "GF2Matrix":
        return GF2Matrix.from_numpy(self.to_numpy().T)

    def columns(self) -> list[int]:
        return list(self.T.rows)

    def flat(self) -> int:
        """Row-major flattening into one int (bit ``i*ncols + j``)."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= r << (i * self.ncols)
        return out

    @classmethod
    def from_flat(cls, v: int, nrows: int, ncols: int) -> "GF2Matrix":
        mask = (1 << ncols) - 1
        return cls([(v >> (i * ncols)) & mask for i in range(nrows)], ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    # -- arithmetic -----------------------------------------------------------------
    def __add__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")
        return GF2Matrix([x ^ y for x, y in zip(self.rows, other.rows)], self.ncols)

    __sub__ = __add__

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.ncols != other.nrows:
            raise DomainError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.nrows * self.ncols * other.ncols <= 4096:
            out = []
            orows = other.rows
            for r in self.rows:
                acc = 0
                for j in bits(r):
                    acc ^= orows[j]
                out.append(acc)
            return GF2Matrix(out, other.ncols)
        return GF2Matrix.from_numpy(matmul_mod2(self.to_numpy(), other.to_numpy()))

    def apply(self, v: int) -> int:
        """Matrix times column vector ``v``."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ncols, self.rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(r == 1 << i for i, r in enumerate(self.rows))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "GF2Matrix":
        arr = self.to_numpy()[np.ix_(list(row_idx), list(col_idx))]
        return GF2Matrix.from_numpy(arr.reshape(len(row_idx), len(col_idx)))

    # -- elimination ------------------------------------------------------------------
    def rank(self) -> int:
        return rank_of(self.rows)

    def row_space(self) -> list[int]:
        ech = Echelon()
        for r in self.rows:
            ech.add(r)
        return ech.basis()

    def nullspace(self) -> list[int]:
        """Basis of ``{v : self @ v = 0}`` as column-vector ints."""
        return left_nullspace(self.T.rows)

    def column_space(self) -> list[int]:
        return self.T.row_space()

    def inverse(self) -> "GF2Matrix":
        n = self.nrows
        if n != self.ncols:
            raise DomainError("inverse of a non-square matrix")
        aug = [r | (1 << (n + i)) for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((k for k in range(col, n) if (aug[k] >> col) & 1), None)
            if piv is None:
                raise DomainError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            pr = aug[col]
            for k in range(n):
                if k != col and (aug[k] >> col) & 1:
                    aug[k] ^= pr
        return GF2Matrix([r >> n for r in aug], n)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def __repr__(self) -> str:
        return f"GF2Matrix({self.nrows}x{self.ncols}, rank={self.rank()})"


class Echelon:
    """Incremental echelon basis keyed by leading (highest) bit, with optional coordinates.

    ``add(v)`` records which inserted vectors combine to each stored row, so
    ``coords(w)`` expresses ``w`` in terms of the inserted vectors.
    """

    def __init__(self):
        self.piv: dict[int, tuple[int, int]] = {}
        self.count = 0

    def reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        scan = v
        piv = self.piv
        while scan:
            p = scan.bit_length() - 1
            hit = piv.get(p)
            if hit is not None:
                v ^= hit[0]
                combo ^= hit[1]
            scan = v & ((1 << p) - 1)
        return v, combo

    def add(self, v: int) -> bool:
        """Insert ``v``; returns True if it enlarged the span."""
        r, combo = self.reduce(v)
        idx = self.count
        self.count += 1
        if r:
            self.piv[r.bit_length() - 1] = (r, combo ^ (1 << idx))
            return True
        return False

    def add_relation(self, v: int) -> int | None:
        """Insert ``v``; on dependence return the combination of inserted vectors summing to zero."""
        r, combo = self.reduce(v)
        idx = self.count
        self.count += 1
        if r:
            self.piv[r.bit_length() - 1] = (r, combo ^ (1 << idx))
            return None
        return combo ^ (1 << idx)

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def coords(self, v: int) -> int | None:
        r, combo = self.reduce(v)
        return combo if r == 0 else None

    def residual(self, v: int) -> int:
        return self.reduce(v)[0]

    @property
    def dim(self) -> int:
        return len(self.piv)

    def basis(self) -> list[int]:
        return [self.piv[p][0] for p in sorted(self.piv)]

    def pivots(self) -> list[int]:
        return sorted(self.piv)


def rank_of(vectors: Iterable[int]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.dim


def left_nullspace(rows: Sequence[int]) -> list[int]:
    """Basis of ``{c : XOR_{i in c} rows[i] = 0}`` as ints over the row indices."""
    ech = Echelon()
    out = []
    for r in rows:
        rel = ech.add_relation(r)
        if rel is not None:
            out.append(rel)
    return out


def span_basis(vectors: Iterable[int]) -> list[int]:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.basis()


def independent_subset(vectors: Sequence[int]) -> list[int]:
    """Indices of a maximal independent subset, greedily in order."""
    ech = Echelon()
    return [i for i, v in enumerate(vectors) if ech.add(v)]


def intersect_spaces(A: Sequence[int], B: Sequence[int]) -> list[int]:
    """Basis of ``span(A) cap span(B)``."""
    A = span_basis(A)
    B = span_basis(B)
    combos = left_nullspace(list(A) + list(B))
    out = []
    for c in combos:
        v = 0
        for i in bits(c & ((1 << len(A)) - 1)):
            v ^= A[i]
        out.append(v)
    return span_basis(out)


def complement_basis(sub: Sequence[int], whole: Sequence[int]) -> list[int]:
    """Vectors of ``whole`` extending a basis of ``span(sub)`` to ``span(sub + whole)``."""
    ech = Echelon()
    for v in sub:
        ech.add(v)
    return [v for v in whole if ech.add(v)]


class SpanSolver:
    """Coordinates with respect to a fixed list of independent row vectors (numpy 0/1 arrays).

    Pivot columns come from an echelon pass; ``basis[:, pivots]`` is then
    invertible and ``solve`` is one matrix product plus a membership check.
    """

    def __init__(self, basis: np.ndarray):
        B = np.asarray(basis, dtype=np.uint8) & 1
        if B.ndim != 2:
            raise DomainError("SpanSolver expects a 2-d basis array")
        self.basis = B
        d, m = B.shape
        ech = Echelon()
        for row in pack_rows(B) if d else []:
            if not ech.add(row):
                raise DomainError("SpanSolver basis is linearly dependent")
        self.pivots = np.array(ech.pivots(), dtype=np.int64)
        sub = GF2Matrix.from_numpy(B[:, self.pivots]) if d else GF2Matrix.zeros(0, 0)
        self._inv = sub.inverse().to_numpy().astype(np.float32) if d else np.zeros((0, 0), np.float32)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def solve(self, vecs: np.ndarray, check: bool = True) -> np.ndarray:
        """Rows ``c`` with ``c @ basis == vecs`` (mod 2); raises DomainError if some row is outside the span."""
        V = np.asarray(vecs, dtype=np.uint8).reshape(-1, self.basis.shape[1])
        if self.dim == 0:
            if check and V.any():
                raise DomainError("vector outside the span")
            return np.zeros((len(V), 0), dtype=np.uint8)
        coords = matmul_mod2(V[:, self.pivots], self._inv)
        if check and not np.array_equal(matmul_mod2(coords, self.basis), V):
            raise DomainError("vector outside the span")
        return coords

    def contains(self, vecs: np.ndarray) -> np.ndarray:
        """Boolean mask of which rows lie in the span."""
        V = np.asarray(vecs, dtype=np.uint8).reshape(-1, self.basis.shape[1])
        if self.dim == 0:
            return ~V.any(axis=1)
        coords = matmul_mod2(V[:, self.pivots], self._inv)
        return (matmul_mod2(coords, self.basis) == V).all(axis=1)


def independent_rows(arr: np.ndarray) -> np.ndarray:
    """Indices of a greedy maximal independent subset of the rows of a 0/1 array."""
    return np.array(independent_subset(pack_rows(arr)) if len(arr) else [], dtype=np.int64)


def rank_np(arr: np.ndarray) -> int:
    arr = np.asarray(arr)
    return rank_of(pack_rows(arr)) if arr.size else 0


def vec_to_array(v: int, n: int) -> np.ndarray:
    return unpack_rows([v], n)[0]


def array_to_vec(a) -> int:
    return pack_rows(np.asarray(a, dtype=np.uint8).reshape(1, -1))[0]


__all__ = [
    "GF2Matrix", "Echelon", "SpanSolver", "independent_rows", "rank_np", "pack_rows", "unpack_rows", "matmul_mod2", "rank_of",
    "left_nullspace", "span_basis", "independent_subset", "intersect_spaces",
    "complement_basis", "vec_to_array", "array_to_vec", "parity", "bits",
]
