from decimal import Decimal, getcontext
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from knapsack_lll.radicals import compare_root_sum, sign_of_root_sum, sqrt_bounds, sqrt_upper

getcontext().prec = 120


def dec_sign(terms):
    s = sum(Decimal(c.numerator) / Decimal(c.denominator) * Decimal(n).sqrt() for c, n in terms)
    if abs(s) < Decimal(10) ** -80:
        return 0
    return 1 if s > 0 else -1


def test_exact_cancellations():
    # sqrt(8) = 2 sqrt(2); sqrt(18) = 3 sqrt(2)
    assert sign_of_root_sum([(1, 8), (1, 18), (-5, 2)]) == 0
    assert sign_of_root_sum([(1, 8), (1, 18), (-5, 2), (Fraction(1, 10**40), 3)]) == 1
    assert compare_root_sum([3, 5], [25, 9], 900) == 0  # 3*5 + 5*3 = 30
    assert compare_root_sum([5, 3], [25, 9], 900) == 1  # 34 > 30


def test_near_ties():
    # (sqrt(2) + sqrt(3))^2 = 5 + 2 sqrt(6), bracketed to 60 digits
    sq = 5 + 2 * Decimal(6).sqrt()
    lo = Fraction(int(sq * 10**60), 10**60)
    assert compare_root_sum([1, 1], [2, 3], lo) == 1
    assert compare_root_sum([1, 1], [2, 3], lo + Fraction(1, 10**60)) == -1


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(st.fractions(min_value=-20, max_value=20, max_denominator=50), st.integers(0, 500)),
                min_size=1, max_size=5))
def test_sign_matches_high_precision(terms):
    terms = [(Fraction(c), n) for c, n in terms]
    assert sign_of_root_sum(terms) == dec_sign(terms)


@given(st.integers(0, 10**12), st.integers(1, 200))
def test_sqrt_bounds(n, bits):
    lo, hi = sqrt_bounds(n, bits)
    assert lo * lo <= n <= hi * hi and hi - lo <= Fraction(1, 2**bits)


@given(st.fractions(min_value=0, max_value=10**6), st.integers(1, 10**6))
def test_sqrt_upper(q, den):
    x = sqrt_upper(q, den)
    assert x * x >= q
    assert (x - Fraction(1, den)) ** 2 <= q or x <= Fraction(1, den)
