"""Brute-force reference computations, deliberately independent of the library's algorithms.

Permutations here are plain tuples composed right to left; linear algebra is
a textbook row reduction over GF(2) on numpy arrays.
"""

from __future__ import annotations

import random
from itertools import product

import numpy as np


# -- groups ---------------------------------------------------------------------

def mul(p, q):
    return tuple(p[i] for i in q)


def inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def closure(gens, degree):
    one = tuple(range(degree))
    seen = {one}
    frontier = [one]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def order_of(p):
    one = tuple(range(len(p)))
    k, x = 1, tuple(p)
    while x != one:
        x = mul(p, x)
        k += 1
    return k


def subgroup_generated(elems, degree):
    return closure(list(elems), degree)


def all_subgroups(group, degree):
    """Every subgroup, found by joining cyclic subgroups until nothing new appears."""
    cyclic = {subgroup_generated([g], degree) for g in group}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if C <= A:
                    continue
                J = subgroup_generated(list(A) + list(C), degree)
                if J not in subs:
                    new.add(J)
        subs |= new
        frontier = new
    return subs


def conjugate_set(S, g):
    gi = inv(g)
    return frozenset(mul(mul(g, s), gi) for s in S)


def conjugacy_classes_of_subgroups(group, subs):
    remaining = set(subs)
    classes = []
    elems = sorted(group)
    while remaining:
        S = min(remaining, key=lambda s: (len(s), sorted(s)))
        cls = {conjugate_set(S, g) for g in elems}
        classes.append(cls)
        remaining -= cls
    return classes


def centralizer(group, S):
    return frozenset(g for g in group if all(mul(g, s) == mul(s, g) for s in S))


def normalizer(group, S):
    return frozenset(g for g in group if conjugate_set(S, g) == S)


def is_abelian(S):
    return all(mul(x, y) == mul(y, x) for x in S for y in S)


def abelian_invariants(S):
    """Exponents of an abelian 2-group from the sizes of its Omega_k layers."""
    orders = [order_of(x) for x in S]
    layers = []
    k = 0
    while True:
        size = sum(1 for o in orders if (2 ** k) % o == 0)
        layers.append(size)
        if size == len(S):
            break
        k += 1
    # |Omega_k| = prod 2^min(k, e_i); the number of e_i >= k is log2(|Omega_k|/|Omega_{k-1}|)
    ge = [(layers[i].bit_length() - layers[i - 1].bit_length()) for i in range(1, len(layers))]
    inv_ = []
    for k in range(1, len(ge) + 1):
        count_ge_k = ge[k - 1]
        count_ge_next = ge[k] if k < len(ge) else 0
        inv_ += [k] * (count_ge_k - count_ge_next)
    return tuple(sorted(inv_, reverse=True))


# -- cosets and permutation actions ---------------------------------------------------

def coset_action(group, H, gens):
    """Left cosets of ``H`` and the permutation each generator induces on them."""
    cosets = []
    index = {}
    for g in sorted(group):
        if g in index:
            continue
        C = frozenset(mul(g, h) for h in H)
        for x in C:
            index[x] = len(cosets)
        cosets.append(C)
    reps = [min(C) for C in cosets]
    perms = [tuple(index[mul(s, r)] for r in reps) for s in gens]
    return cosets, reps, perms


def fixed_cosets(cosets, Q):
    return [k for k, C in enumerate(cosets)
            if all(frozenset(mul(q, x) for x in C) == C for q in Q)]


def orbits(points, perms):
    points = set(points)
    out = []
    while points:
        x = min(points)
        orb = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for p in perms:
                z = p[y]
                if z not in orb:
                    orb.add(z)
                    stack.append(z)
        out.append(orb)
        points -= orb
    return out


# -- GF(2) linear algebra ---------------------------------------------------------------

def rref(A):
    A = (np.array(A, dtype=np.uint8) & 1).copy()
    rows, cols = A.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(A[r:, c])
        if len(hits) == 0:
            continue
        k = r + hits[0]
        A[[r, k]] = A[[k, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        piv.append(c)
        r += 1
    return A[:r], piv


def rank(A):
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A)[1])


def nullspace(A):
    """Basis of ``{x : A x = 0}`` as columns."""
    A = np.asarray(A, dtype=np.uint8)
    n = A.shape[1]
    R, piv = rref(A) if A.shape[0] else (np.zeros((0, n), dtype=np.uint8), [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = np.zeros(n, dtype=np.uint8)
        x[f] = 1
        for i, p in enumerate(piv):
            x[p] = R[i, f]
        basis.append(x)
    return np.array(basis, dtype=np.uint8).T.reshape(n, len(basis))


def column_space(A):
    A = np.asarray(A, dtype=np.uint8)
    R, piv = rref(A.T)
    return R.T.reshape(A.shape[0], len(piv))


def inverse(A):
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.uint8)]))
    if piv[:n] != list(range(n)):
        raise ValueError("singular")
    return R[:, n:]


def mm(A, B):
    return (A.astype(np.int64) @ B.astype(np.int64) & 1).astype(np.uint8)


# -- endomorphisms and decomposition of permutation modules ---------------------------------

def orbital_matrices(n, perms):
    """Basis of ``End_G(k[X])``: indicator matrices of the orbits on ``X x X``."""
    label = {}
    mats = []
    for x, y in product(range(n), repeat=2):
        if (x, y) in label:
            continue
        k = len(mats)
        orb = {(x, y)}
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            for p in perms:
                c = (p[a], p[b])
                if c not in orb:
                    orb.add(c)
                    stack.append(c)
        B = np.zeros((n, n), dtype=np.uint8)
        for a, b in orb:
            label[(a, b)] = k
            B[a, b] = 1
        mats.append(B)
    return mats


def _fitting_split(e, phi):
    """Split ``im e`` by the Fitting decomposition of ``phi`` restricted to it, or None."""
    U = column_space(e)
    s = U.shape[1]
    # a left inverse of U that vanishes on ker e
    R, piv = rref(U.T)
    V = mm(inverse(U[piv, :]), np.eye(U.shape[0], dtype=np.uint8)[piv, :])
    V = mm(V, e)
    A = mm(mm(V, phi), U)
    P = A.copy()
    for _ in range(max(1, s).bit_length() + 1):
        P = mm(P, P)
    img = column_space(P)
    ker = nullspace(P)
    if img.shape[1] in (0, s):
        return None
    B = np.hstack([img, ker])
    D = np.zeros((s, s), dtype=np.uint8)
    D[: img.shape[1], : img.shape[1]] = np.eye(img.shape[1], dtype=np.uint8)
    proj = mm(mm(B, D), inverse(B))
    f = mm(mm(U, proj), V)
    return f, e ^ f


def fitting_decompose(n, perms, seed=0, patience=40):
    """Summand dimensions of ``k[X]`` by random Fitting splitting iterated to a fixpoint."""
    rng = random.Random(seed)
    basis = orbital_matrices(n, perms)
    todo = [np.eye(n, dtype=np.uint8)]
    done = []
    while todo:
        e = todo.pop()
        for _ in range(patience):
            phi = np.zeros((n, n), dtype=np.uint8)
            for B in basis:
                if rng.getrandbits(1):
                    phi ^= B
            phi = mm(mm(e, phi), e)
            parts = _fitting_split(e, phi)
            if parts is not None:
                todo.extend(parts)
                break
        else:
            done.append(rank(e))
    return sorted(done)


__all__ = [
    "mul", "inv", "closure", "order_of", "all_subgroups", "conjugacy_classes_of_subgroups",
    "centralizer", "normalizer", "is_abelian", "abelian_invariants", "coset_action",
    "fixed_cosets", "orbits", "rank", "nullspace", "inverse", "mm", "orbital_matrices",
    "fitting_decompose", "conjugate_set",
]
