import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logcardy.linalg import (Matrix, NoSolution, Singular, Tensor3, coordinates, invert, kernel, kronecker,
                             matmul, rank, rref, solve, span_basis)
from logcardy.scalar import QQ, Field


def mat(rows, f=QQ):
    return Matrix([[f(x) for x in r] for r in rows], f)


small = st.integers(min_value=-3, max_value=3)
sq3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


def test_solve_zero_matrix():
    sol = solve(mat([[0, 0], [0, 0]]), (0, 0))
    assert sol.particular == (0, 0)
    assert sorted(sol.kernel_basis) == [(0, 1), (1, 0)]


def test_solve_rank_one():
    sol = solve(mat([[1, 1], [0, 0]]), (1, 0))
    assert sol.particular == (1, 0)
    assert len(sol.kernel_basis) == 1
    k = sol.kernel_basis[0]
    assert k[0] == -k[1] != 0


def test_solve_identity():
    sol = solve(Matrix.identity(3), (1, 2, 3))
    assert sol.particular == (1, 2, 3) and sol.kernel_basis == []


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve(mat([[1, 1], [0, 0]]), (0, 1))


def test_kernel_examples():
    assert len(kernel(mat([[0, 0], [0, 0]]))) == 2
    assert len(kernel(mat([[1, 1], [0, 0]]))) == 1
    assert kernel(Matrix.identity(3)) == []


def test_kronecker_examples():
    assert kronecker(Matrix.identity(2), Matrix.identity(3)) == Matrix.identity(6)
    swap = kronecker(mat([[0, 1], [1, 0]]), Matrix.identity(2))
    assert swap == mat([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])


@given(sq3, sq3)
def test_rank_is_multiplicative_under_kronecker(a, b):
    A, B = mat(a), mat(b)
    assert rank(kronecker(A, B)) == rank(A) * rank(B)


@given(sq3, sq3)
def test_kronecker_mixed_product(a, b):
    A, B = mat(a), mat(b)
    assert kronecker(A, B) @ kronecker(B, A) == kronecker(A @ B, B @ A)


def test_invert_examples():
    assert invert(Matrix.identity(4)) == Matrix.identity(4)
    assert invert(mat([[1, 1], [0, 1]])) == mat([[1, -1], [0, 1]])
    with pytest.raises(Singular):
        invert(mat([[1, 2], [2, 4]]))


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_invert_random_by_construction(seed):
    rng = random.Random(seed)
    f = Field(3)
    n = 4
    # unipotent upper times lower, scaled by nonzero diagonal: invertible by construction
    U = Matrix([[f(rng.randint(-2, 2)) if j > i else (f.one if i == j else f.zero) for j in range(n)]
                for i in range(n)], f)
    L = Matrix([[f.zeta ** rng.randint(0, 2) * rng.randint(-2, 2) if j < i else
                 (f(rng.choice([1, 2, -3])) if i == j else f.zero) for j in range(n)] for i in range(n)], f)
    A = U @ L
    assert matmul(A, invert(A)) == Matrix.identity(n, f)
    assert invert(A) @ A == Matrix.identity(n, f)


@given(sq3)
def test_rank_nullity(a):
    A = mat(a)
    assert rank(A) + len(kernel(A)) == 3
    for v in kernel(A):
        assert not any(A.apply(v))


@given(sq3)
def test_rref_is_idempotent(a):
    R, piv = rref(mat(a))
    assert rref(R)[0] == R
    assert len(piv) == rank(mat(a))


def test_span_and_coordinates():
    basis = span_basis([(1, 1, 0), (2, 2, 0), (0, 1, 1)], 3, QQ)
    assert len(basis) == 2
    assert coordinates([(1, 0, 0), (0, 1, 0)], (3, 4, 0), QQ) == (3, 4)
    assert coordinates([(1, 0, 0)], (0, 1, 0), QQ) is None


def test_tensor3_dense_round_trip():
    dense = [[[1, 0], [0, 2]], [[0, Fraction(1, 2)], [3, 0]]]
    T = Tensor3.from_dense(dense, QQ)
    assert T.to_dense() == dense
    assert T[1, 0, 1] == Fraction(1, 2)
    assert dict(T.nonzero())[(0, 1, 1)] == 2
