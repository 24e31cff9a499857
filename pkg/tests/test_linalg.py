from itertools import combinations
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from knapsack_lll.errors import NotPrimitive, RankDeficient
from knapsack_lll.linalg import (
    bareiss_det,
    check_primitivity,
    gram_det_sq,
    hnf,
    identity,
    integer_solution,
    is_unimodular,
    kernel_basis,
    mat_mul,
    mat_vec,
    rank,
    xgcd,
)


def minors_gcd(A):
    """Oracle: gcd of all maximal minors by direct enumeration."""
    m, n = len(A), len(A[0])
    g = 0
    for cols in combinations(range(n), m):
        g = gcd(g, bareiss_det([[row[c] for c in cols] for row in A]))
    return g


def cofactor_det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def is_canonical_hnf(H):
    col = 0
    for row in H:
        if col < len(row) and row[col] != 0:
            piv = row[col]
            if piv <= 0 or any(row[j] for j in range(col + 1, len(row))):
                return False
            if any(not 0 <= row[j] < piv for j in range(col)):
                return False
            col += 1
        elif any(row[j] for j in range(col, len(row))):
            return False
    return True


matrices = st.integers(1, 3).flatmap(
    lambda m: st.integers(m + 1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def test_xgcd():
    for a, b in [(3, 5), (-4, 6), (0, 7), (12, 0), (-3, -9)]:
        g, x, y = xgcd(a, b)
        assert g == gcd(a, b) and a * x + b * y == g


def test_hnf_identity_unchanged():
    H, U = hnf([[1, 0], [0, 1]])
    assert H == ((1, 0), (0, 1)) and U == identity(2)


def test_hnf_coprime_row():
    H, U = hnf([[3, 5]])
    assert H == ((1, 0),)
    assert mat_mul([[3, 5]], U) == H
    assert abs(bareiss_det(U)) == 1
    assert (U[0][0], U[1][0]) == (2, -1)


def test_hnf_non_coprime_row():
    H, _ = hnf([[2, 4]])
    assert H == ((2, 0),)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_hnf_contract(M):
    H, U = hnf(M)
    assert mat_mul(M, U) == H
    assert is_unimodular(U)
    assert is_canonical_hnf(H)
    assert hnf(H)[0] == H


def test_bareiss_matches_cofactor():
    M = [[2, -1, 3, 0], [4, 5, -2, 1], [0, 3, 3, 7], [-1, 2, 0, 6]]
    assert bareiss_det(M) == cofactor_det(M)
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0


@pytest.mark.parametrize("A,expected", [([[1, 2]], True), ([[2, 4]], False), ([[1, 0, 0], [0, 1, 0]], True)])
def test_check_primitivity_examples(A, expected):
    assert check_primitivity(A) is expected


def test_rank_deficient():
    with pytest.raises(RankDeficient):
        check_primitivity([[1, 2, 3], [2, 4, 6]])
    with pytest.raises(RankDeficient):
        kernel_basis([[0, 0, 0]])


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_primitivity_matches_minors_gcd(A):
    assume(rank(A) == len(A))
    assert check_primitivity(A) == (minors_gcd(A) == 1)


def test_kernel_examples():
    k = kernel_basis([[3, 5]])
    assert k.rank == 1 and k.basis[0] in ((5, -3), (-5, 3))
    assert k.gram_det_sq == 34 == gram_det_sq([[3, 5]])
    k = kernel_basis([[1, 0, 0], [0, 1, 0]])
    assert k.basis in (((0, 0, 1),), ((0, 0, -1),)) and k.gram_det_sq == 1
    k = kernel_basis([[1, 1, 1]])
    assert k.rank == 2 and k.gram_det_sq == 3


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_kernel_basis_properties(A):
    assume(rank(A) == len(A))
    k = kernel_basis(A)
    assert k.rank == len(A[0]) - len(A)
    assert all(mat_vec(A, x) == (0,) * len(A) for x in k.basis)
    assert rank(k.basis) == k.rank
    # the kernel of a full-rank matrix has det^2 = det(AA^T) / g^2 with g the minors gcd
    g = minors_gcd(A)
    assert k.gram_det_sq * g * g == gram_det_sq(A)
    if check_primitivity(A):
        assert k.gram_det_sq == gram_det_sq(A)


def test_integer_solution_examples():
    u = integer_solution([[3, 5]], [1])
    assert 3 * u[0] + 5 * u[1] == 1
    assert integer_solution([[3, 5]], [0]) == (0, 0)
    assert integer_solution([[1, 0, 0], [0, 1, 0]], [4, 7]) == (4, 7, 0)


def test_integer_solution_not_primitive():
    with pytest.raises(NotPrimitive):
        integer_solution([[2, 4]], [3])


@settings(max_examples=200, deadline=None)
@given(matrices, st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=3))
def test_integer_solution_residual(A, b):
    assume(rank(A) == len(A) and check_primitivity(A))
    b = b[: len(A)]
    assert mat_vec(A, integer_solution(A, b)) == tuple(b)


@pytest.mark.parametrize("A,expected", [([[3, 5, 7]], 83), ([[1, 0, 0], [0, 1, 0]], 1), ([[3, 5]], 34)])
def test_gram_det_sq_examples(A, expected):
    assert gram_det_sq(A) == expected


def test_big_entries():
    A = [[10**30 + 1, 10**30, 7]]
    k = kernel_basis(A)
    assert all(mat_vec(A, x) == (0,) for x in k.basis)
    assert k.gram_det_sq == gram_det_sq(A)
