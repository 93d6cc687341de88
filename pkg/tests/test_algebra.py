import numpy as np
import pytest

from wreathbrauer.algebra import GF2Algebra, is_local, primitive_idempotents, radical
from wreathbrauer.errors import DomainError
from wreathbrauer.gf2 import GF2Matrix


def check_idempotents(A, ids):
    total = np.zeros(A.dim, dtype=np.uint8)
    for p in ids:
        e = p.vector
        assert A.is_idempotent(e)
        total ^= e
    for p in ids:
        for q in ids:
            if p is not q:
                assert not A.mul(p.vector, q.vector).any()
    assert np.array_equal(total, A.one)


def test_field_is_local():
    A = GF2Algebra.polynomial_quotient([1, 1])
    assert A.dim == 1
    assert len(radical(A)) == 0
    assert is_local(A) == (True, 1)


def test_dual_numbers_are_local():
    A = GF2Algebra.polynomial_quotient([0, 0, 1])
    assert len(radical(A)) == 1
    assert is_local(A) == (True, 1)


def test_gf4_reports_split_dim_two():
    # a field, but not split over GF(2): flagged rather than called local
    A = GF2Algebra.polynomial_quotient([1, 1, 1])
    assert len(radical(A)) == 0
    assert is_local(A) == (False, 2)
    ids = primitive_idempotents(A)
    assert [p.split_dim for p in ids] == [2]


@pytest.mark.parametrize("coeffs, radical_dim, blocks", [
    ([0, 1, 1], 0, 2),            # x(x+1)
    ([1, 0, 0, 1], 0, 2),         # (x+1)(x^2+x+1)
    ([0, 0, 1, 1], 1, 2),         # x^2 (x+1)
    ([1, 0, 0, 0, 1], 3, 1),      # (x+1)^4
    ([0, 1, 1, 1, 1, 1, 1, 1], 0, 3),  # x(x^3+x+1)(x^3+x^2+1)
    ([0, 1, 0, 0, 0, 0, 0, 1], 3, 3),  # x(x+1)^2(x^2+x+1)^2
])
def test_polynomial_quotients(coeffs, radical_dim, blocks):
    A = GF2Algebra.polynomial_quotient(coeffs)
    assert A.check_associative() and A.check_identity()
    assert len(radical(A)) == radical_dim
    ids = primitive_idempotents(A)
    check_idempotents(A, ids)
    assert len(ids) == blocks


@pytest.mark.parametrize("n", [2, 3, 4])
def test_upper_triangular(n):
    A = GF2Algebra.upper_triangular(n)
    assert A.dim == n * (n + 1) // 2
    assert len(radical(A)) == n * (n - 1) // 2
    assert is_local(A) == (n == 1, n)
    ids = primitive_idempotents(A)
    check_idempotents(A, ids)
    assert len(ids) == n and all(p.split_dim == 1 for p in ids)


def test_full_matrix_algebra_splits_into_two_idempotents():
    mats = []
    for i in range(2):
        for j in range(2):
            rows = [0, 0]
            rows[i] = 1 << j
            mats.append(GF2Matrix(rows, 2))
    A = GF2Algebra.from_matrices(mats)
    assert A.dim == 4 and len(radical(A)) == 0
    assert is_local(A) == (False, 4)
    ids = primitive_idempotents(A)
    check_idempotents(A, ids)
    assert len(ids) == 2


def test_group_algebra_of_s3():
    # GF(2)S3 is k[C2] x M2(k): one-dimensional radical, three primitive idempotents
    from wreathbrauer.permgroup import Perm, PermGroup
    G = PermGroup([Perm((1, 0, 2)), Perm((1, 2, 0))])
    els = G.elements_list()
    idx = {g: i for i, g in enumerate(els)}
    mats = [GF2Matrix.permutation([idx[g * h] for h in els]) for g in els]
    A = GF2Algebra.from_matrices(mats)
    assert A.dim == 6
    assert len(radical(A)) == 1
    ids = primitive_idempotents(A)
    check_idempotents(A, ids)
    assert sorted(p.split_dim for p in ids) == [1, 1, 1]


def test_direct_sum_and_errors():
    A = GF2Algebra.direct_sum(GF2Algebra.polynomial_quotient([0, 0, 1]),
                              GF2Algebra.polynomial_quotient([1, 1]))
    assert A.dim == 3 and len(radical(A)) == 1
    assert is_local(A) == (False, 2)
    with pytest.raises(DomainError):
        GF2Algebra.polynomial_quotient([1, 1, 0])
    with pytest.raises(DomainError):
        GF2Algebra(np.zeros((2, 3, 2)), [1, 0])
