from itertools import product

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from math import gcd

from knapsack_lll.errors import GcdNotOne
from knapsack_lll.oracles import (
    check_point,
    enumerate_points,
    feasibility_scan,
    frobenius,
    is_feasible,
    residue_table,
    residue_table_dijkstra,
)


def representable_upto(a, limit):
    """Oracle: dynamic programme over 0..limit."""
    ok = [False] * (limit + 1)
    ok[0] = True
    for v in range(1, limit + 1):
        ok[v] = any(v >= x and ok[v - x] for x in a)
    return ok


coins = st.lists(st.integers(1, 40), min_size=1, max_size=4).filter(
    lambda a: gcd(*a) == 1 if len(a) > 1 else a == [1]
)


def test_frobenius_examples():
    assert frobenius([6, 9, 20]).value == 43
    assert frobenius([3, 5]).value == 7
    assert frobenius([2, 3]).value == 1
    assert frobenius([1, 7]).value == -1
    assert frobenius([3, 5], method="closed-form").value == 7


def test_frobenius_errors():
    with pytest.raises(GcdNotOne):
        frobenius([4, 6])
    with pytest.raises(ValueError):
        frobenius([0, 3])
    with pytest.raises(ValueError):
        frobenius([3, 5, 7], method="closed-form")


def test_scan_example():
    assert feasibility_scan([3, 5], range(0, 11)) == [
        True, False, False, True, False, True, True, False, True, True, True
    ]
    assert not is_feasible([3, 5], -3)


@settings(max_examples=200, deadline=None)
@given(coins)
def test_tables_agree_with_dp(a):
    assert residue_table(a) == residue_table_dijkstra(a)
    f = frobenius(a).value
    limit = f + min(a) + 5
    ok = representable_upto(a, limit)
    assert feasibility_scan(a, range(limit + 1)) == ok
    if f >= 0:
        assert not ok[f]
    assert all(ok[f + 1:])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 200), st.integers(1, 200))
def test_two_coin_formula(p, q):
    assume(gcd(p, q) == 1)
    assert frobenius([p, q]).value == p * q - p - q


def brute_points(A, b):
    """Oracle: scan the box 0 <= x_j <= b_0 // a_j given by the positive first row."""
    ranges = [range(b[0] // a + 1) for a in A[0]] if b[0] >= 0 else [range(0)]
    return sorted(x for x in product(*ranges)
                  if all(sum(r * v for r, v in zip(row, x)) == bi for row, bi in zip(A, b)))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(1, 5), min_size=n, max_size=n),
    st.lists(st.integers(-3, 3), min_size=n, max_size=n),
    st.integers(0, 25), st.integers(-10, 10), st.booleans())))
def test_enumeration_matches_box_scan(data):
    first, second, b0, b1, two_rows = data
    A = [first, second] if two_rows else [first]
    b = [b0, b1] if two_rows else [b0]
    res = enumerate_points(A, b)
    assert res.exhaustive
    assert list(res.points) == brute_points(A, b)


def test_enumeration_examples():
    assert enumerate_points([[3, 5]], [7]).empty
    assert enumerate_points([[3, 5]], [15]).points == ((0, 3), (5, 0))
    assert enumerate_points([[1, 1, 1], [0, 1, -1]], [4, 0]).points == ((0, 2, 2), (2, 1, 1), (4, 0, 0))
    assert enumerate_points([[3, 5]], [-2]).empty
    assert all(check_point([[3, 5]], [15], p) for p in enumerate_points([[3, 5]], [15]).points)


def test_enumeration_budget():
    res = enumerate_points([[1, 1, 1, 1]], [40], budget=100)
    assert not res.exhaustive and not res.empty and res.budget_used <= 100
