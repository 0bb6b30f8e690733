"""Exact linear algebra: frozen small cases plus randomized structural sweeps."""

import random
from fractions import Fraction

import pytest

from nakayama.linalg import (
    ExactMatrix,
    kernel_basis,
    kernel_basis_with_frees,
    rank,
    solve,
    sparse_kernel_basis,
    sparse_rref,
)


def test_rank_identity():
    assert rank(ExactMatrix.identity(2)) == 2


def test_rank_zero_matrix():
    assert rank(ExactMatrix.zeros(3, 4)) == 0


def test_rank_dependent_rows():
    m = ExactMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1


def test_rank_frozen_3col():
    # reduced by hand: second row is twice the first
    m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    assert rank(m) == 1
    assert kernel_basis(m) == [
        (Fraction(-2), Fraction(1), Fraction(0)),
        (Fraction(-3), Fraction(0), Fraction(1)),
    ]


def test_kernel_identity_empty():
    assert kernel_basis(ExactMatrix.identity(2)) == []


def test_kernel_zero_full():
    vecs = kernel_basis(ExactMatrix.zeros(2, 2))
    assert len(vecs) == 2


def test_kernel_one_one():
    (v,) = kernel_basis(ExactMatrix.from_rows([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_solve_identity():
    m = ExactMatrix.identity(3)
    assert solve(m, [1, 2, 3]) == (1, 2, 3)


def test_solve_inconsistent():
    assert solve(ExactMatrix.zeros(2, 2), [1, 0]) is None


def test_solve_scalar_half():
    assert solve(ExactMatrix.from_rows([[2]]), [1]) == (Fraction(1, 2),)


def test_solve_underdetermined_is_exact():
    m = ExactMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    x = solve(m, [2, 3])
    assert x is not None
    assert m.apply(x) == (2, 3)


def test_rank_plus_nullity():
    rng = random.Random(7)
    for _ in range(25):
        r = rng.randrange(1, 6)
        c = rng.randrange(1, 6)
        m = ExactMatrix(r, c, [rng.randrange(-2, 3) for _ in range(r * c)])
        vecs = kernel_basis(m)
        assert rank(m) + len(vecs) == c
        for v in vecs:
            assert all(x == 0 for x in m.apply(v))


def test_solve_satisfies_system():
    rng = random.Random(13)
    for _ in range(25):
        r = rng.randrange(1, 5)
        c = rng.randrange(1, 5)
        m = ExactMatrix(r, c, [rng.randrange(-3, 4) for _ in range(r * c)])
        xs = [Fraction(rng.randrange(-3, 4), rng.randrange(1, 3))
              for _ in range(c)]
        b = m.apply(xs)
        x = solve(m, b)
        assert x is not None
        assert m.apply(x) == b


def test_matrix_shape_validation():
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [3]])


def test_mul_and_inverse():
    m = ExactMatrix.from_rows([[2, 1], [1, 1]])
    inv = m.inverse()
    assert m.mul(inv).is_identity()
    assert inv.mul(m).is_identity()


def test_inverse_singular_raises():
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_transpose_involution():
    m = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert m.transpose().transpose() == m


def test_sparse_rref_pivots_sorted_and_cleared():
    rows = [{0: Fraction(2), 2: Fraction(4)},
            {0: Fraction(1), 1: Fraction(1)},
            {1: Fraction(1), 2: Fraction(-2)}]
    rref, pivots = sparse_rref(rows, 3)
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        assert rref[i][p] == 1
        for k, other in enumerate(rref):
            if k != i:
                assert p not in other


def test_kernel_frees_identity_pattern():
    m = ExactMatrix.from_rows([[1, 0, 2, 0], [0, 1, 1, 0]])
    vecs, frees = kernel_basis_with_frees(m)
    assert frees == [2, 3]
    for i, f in enumerate(frees):
        for k, v in enumerate(vecs):
            assert v[f] == (1 if k == i else 0)


def test_sparse_kernel_matches_dense():
    rng = random.Random(3)
    for _ in range(10):
        r, c = rng.randrange(1, 5), rng.randrange(1, 6)
        flat = [rng.randrange(-2, 3) for _ in range(r * c)]
        m = ExactMatrix(r, c, flat)
        sparse_rows = [
            {j: Fraction(flat[i * c + j]) for j in range(c)
             if flat[i * c + j]}
            for i in range(r)]
        dense = kernel_basis(m)
        sparse = sparse_kernel_basis(sparse_rows, c)
        assert len(dense) == len(sparse)
        for dv, sv in zip(dense, sparse):
            assert dv == tuple(sv.get(j, Fraction(0)) for j in range(c))
