from fractions import Fraction
from itertools import product
from math import isqrt, pi

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from knapsack_lll.errors import DependentBasis, EnumerationBudgetExceeded, TargetOutsideSpan
from knapsack_lll.generate import SplitMix64, random_kernel_lattice
from knapsack_lll.lattice import (
    HERMITE_POW,
    babai_nearest,
    blichfeldt_pow_bound,
    bound_parameters,
    check_lemma3_bound,
    check_minima_inequalities,
    check_theorem4_bound,
    enumerate_short_vectors,
    gamma_bound,
    gram_schmidt,
    is_lll_reduced,
    lll_conditions,
    lll_reduce,
    round_half_up,
    successive_minima,
)
from knapsack_lll.linalg import gram_det_sq, is_unimodular, mat_mul, mat_vec, norm_sq, rank


def bases(max_k=4, max_n=5, lo=-12, hi=12):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=1, max_size=min(n, max_k)
        )
    )


def brute_minima_of_kernel(A, radius_sq):
    """Oracle: scan the integer box in ambient space, keep kernel vectors, greedily pick minima."""
    n = len(A[0])
    r = isqrt(radius_sq)
    pts = [x for x in product(range(-r, r + 1), repeat=n)
           if any(x) and norm_sq(x) <= radius_sq and all(v == 0 for v in mat_vec(A, x))]
    pts.sort(key=norm_sq)
    chosen = []
    for x in pts:
        if rank(chosen + [x]) > len(chosen):
            chosen.append(x)
    return [norm_sq(x) for x in chosen]


def test_gram_schmidt_examples():
    gs = gram_schmidt([[1, 0], [0, 1]])
    assert gs.mu[1][0] == 0 and gs.hat_norm_sq == (1, 1)
    gs = gram_schmidt([[1, 1], [0, 1]])
    assert gs.mu[1][0] == Fraction(1, 2)
    assert gs.hat_norm_sq == (2, Fraction(1, 2))
    assert gs.det_sq() == 1
    gs = gram_schmidt([[2, 0], [1, 3]])
    assert gs.mu[1][0] == Fraction(1, 2) and gs.hat_norm_sq[1] == 9 and gs.det_sq() == 36


def test_gram_schmidt_dependent():
    with pytest.raises(DependentBasis):
        gram_schmidt([[1, 2], [2, 4]])
    with pytest.raises(DependentBasis):
        lll_reduce([[1, 2, 3], [2, 4, 6]])


def test_lll_examples():
    red, _, U = lll_reduce([[1, 0], [0, 1]])
    assert red.vectors == ((1, 0), (0, 1))
    red, _, _ = lll_reduce([[4, 6]])
    assert red.vectors == ((4, 6),)
    B = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
    red, gs, U = lll_reduce(B)
    assert all(lll_conditions(gs))
    assert is_unimodular(U) and mat_mul(U, B) == red.vectors
    assert gram_det_sq(red.vectors) == gram_det_sq(B)


@settings(max_examples=200, deadline=None)
@given(bases())
def test_lll_properties(B):
    assume(rank(B) == len(B))
    red, gs, U = lll_reduce(B)
    size, lovasz = lll_conditions(gs)
    assert size and lovasz
    assert is_unimodular(U) and mat_mul(U, B) == red.vectors
    assert gs.det_sq() == gram_det_sq(B) == gram_det_sq(red.vectors)
    assert gram_schmidt(B).det_sq() == gs.det_sq()
    assert lll_reduce(red)[0] == red  # reduced input is a fixed point


def test_lll_big_entries():
    B = [[10**20 + 3, 7, 10**19], [10**20, 5, 10**19 + 11], [1, 1, 1]]
    red, gs, U = lll_reduce(B)
    assert is_lll_reduced(red) and mat_mul(U, B) == red.vectors


def test_round_half_up():
    assert round_half_up(Fraction(1, 2)) == 1
    assert round_half_up(Fraction(-1, 2)) == 0
    assert round_half_up(Fraction(3, 2)) == 2
    assert round_half_up(Fraction(-7, 5)) == -1


def test_babai_examples():
    res = babai_nearest([[1, 0], [0, 1]], [Fraction(3, 5), Fraction(13, 10)])
    assert res.point == (1, 1)
    res = babai_nearest([[2, 0], [1, 3]], [5, 9])
    assert res.point == (5, 9) and res.error_sq == 0


def test_babai_outside_span():
    with pytest.raises(TargetOutsideSpan):
        babai_nearest([[1, 0, 0], [0, 1, 0]], [0, 0, Fraction(1, 3)])


@settings(max_examples=200, deadline=None)
@given(bases(max_k=3, max_n=3), st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=30),
                                          min_size=3, max_size=3))
def test_babai_error_bound(B, coeffs):
    assume(rank(B) == len(B))
    red, gs, _ = lll_reduce(B)
    n = len(B[0])
    target = [sum(c * r[j] for c, r in zip(coeffs, red.vectors)) for j in range(n)]
    res = babai_nearest(red, target, gs)
    assert res.error_sq <= Fraction(sum(norm_sq(r) for r in red.vectors), 4)
    # the returned point is a lattice vector with the returned coefficients
    assert list(res.point) == [sum(c * r[j] for c, r in zip(res.coefficients, red.vectors)) for j in range(n)]


def test_successive_minima_examples():
    assert successive_minima([[1, 0], [0, 1]]).lambda_sq == (1, 1)
    assert successive_minima([[2, 0], [0, 3]]).lambda_sq == (4, 9)
    assert successive_minima([[5, -3]]).lambda_sq == (34,)


def test_successive_minima_vs_ambient_scan():
    rng = SplitMix64(11)
    checked = 0
    while checked < 25:
        n = rng.randint(3, 5)
        k = rng.randint(1, n - 1)
        A, ker = random_kernel_lattice(rng, n, k, 3)
        sm = successive_minima(ker.basis)
        radius = sm.lambda_sq[-1]
        if (2 * isqrt(radius) + 1) ** n > 300_000:
            continue
        assert list(sm.lambda_sq) == brute_minima_of_kernel(A, radius)
        for w, l2 in zip(sm.witnesses, sm.lambda_sq):
            assert norm_sq(w) == l2 and mat_vec(A, w) == (0,) * len(A)
        assert rank(sm.witnesses) == k
        checked += 1


@settings(max_examples=100, deadline=None)
@given(bases(max_k=3, max_n=3, lo=-6, hi=6))
def test_first_minimum_is_shortest_vector(B):
    assume(rank(B) == len(B))
    sm = successive_minima(B)
    # coefficient-box scan: any vector of norm^2 <= lambda_1^2 has small coefficients w.r.t. LLL basis
    red, gs, _ = lll_reduce(B)
    shortest = min(norm_sq(x) for x in enumerate_short_vectors(red, norm_sq(red.vectors[0])))
    assert sm.lambda_sq[0] == shortest
    assert sm.lambda_sq == tuple(sorted(sm.lambda_sq))


def test_enumeration_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_short_vectors([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 400, budget=50)


def test_gamma_bound_values():
    assert gamma_bound(1).gamma_pow_k == 1
    assert gamma_bound(2).gamma_pow_k == Fraction(4, 3)
    assert all(gamma_bound(k).gamma_exact_known for k in range(1, 9))
    g9 = gamma_bound(9)
    assert not g9.gamma_exact_known and g9.gamma_pow_k > 1
    # Blichfeldt at k = 2: gamma_2 <= 8/pi, so gamma_2^2 <= 64/pi^2
    assert blichfeldt_pow_bound(2) >= HERMITE_POW[2]
    assert float(blichfeldt_pow_bound(2)) == pytest.approx(64 / pi**2, rel=1e-9)
    for k in range(1, 9):
        assert blichfeldt_pow_bound(k) >= HERMITE_POW[k]
    # gamma_9 is about 2.13 (cf. 2.1327 from known bounds); the certified bound must exceed 2.13^9
    assert g9.gamma_pow_k > Fraction(213, 100) ** 9
    assert blichfeldt_pow_bound(10) > 0


def test_rho_values():
    assert bound_parameters(2, 1).rho_k == Fraction(1, 16)
    assert bound_parameters(4, 2).rho_k == 2 * Fraction(4, 3) / 16


def test_lemma3_examples():
    assert check_lemma3_bound([[1, 0], [0, 1]], 1)
    assert check_lemma3_bound([[5, -3]], 34)
    assert not check_lemma3_bound([[5, -3]], 8)


def test_theorem4_examples():
    t = check_theorem4_bound([[1, 0, 0], [0, 1, 0]], 1)
    assert t.holds
    t = check_theorem4_bound([[5, -3]], 34)
    assert t.rho_k == Fraction(1, 16) and t.applies and t.holds
    assert t.bound_sq == (1 + Fraction(1, 16 * 34)) * 2 * 34


def test_minima_inequalities_examples():
    B = [[1, 0], [0, 1]]
    checks = check_minima_inequalities(B, gram_schmidt(B), successive_minima(B), 1)
    assert all(c.holds for c in checks)
    assert {c.name: c.margin for c in checks}["minkowski_lower"] == 0
    B = [[2, 0], [0, 3]]
    sm = successive_minima(B)
    checks = {c.name: c for c in check_minima_inequalities(B, gram_schmidt(B), sm, 36)}
    assert all(c.holds for c in checks.values())
    assert checks["minkowski_lower"].margin == 0
    assert checks["minkowski_upper"].rhs == Fraction(4, 3) * 36


def test_minima_inequalities_random_lattices():
    rng = SplitMix64(5)
    for _ in range(20):
        n = rng.randint(2, 6)
        k = rng.randint(1, min(4, n - 1))
        A, ker = random_kernel_lattice(rng, n, k, 10)
        red, gs, _ = lll_reduce(ker.basis)
        sm = successive_minima(red)
        assert all(c.holds for c in check_minima_inequalities(red, gs, sm, ker.gram_det_sq))
        assert check_lemma3_bound(red, ker.gram_det_sq)
        t4 = check_theorem4_bound(red, ker.gram_det_sq)
        assert t4.holds or not t4.applies
