"""Exact sign decisions for sums of square roots.

Thresholds such as ``b >= K * sum(a_i * sqrt(N_i))`` are irrational. They
are decided here without floating point: square roots that differ by a
rational factor are merged first (then the sum vanishes iff every merged
coefficient does), and otherwise dyadic interval refinement is run until
the sign separates from zero, which must happen for a nonzero sum.
"""

from fractions import Fraction
from math import isqrt
from typing import Sequence


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def sqrt_bounds(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic bounds ``lo <= sqrt(n) <= hi`` with ``hi - lo <= 2**-bits``."""
    s = isqrt(n << (2 * bits))
    lo = Fraction(s, 1 << bits)
    if s * s == n << (2 * bits):
        return lo, lo
    return lo, Fraction(s + 1, 1 << bits)


def sqrt_upper(q: Fraction, den: int) -> Fraction:
    """Rational ``x >= sqrt(q)`` with ``x - sqrt(q) <= 1/den``."""
    q = Fraction(q)
    # sqrt(p/r) = sqrt(p*r)/r
    t = q.numerator * q.denominator
    scale = den * q.denominator
    s = isqrt(t * den * den)
    if s * s != t * den * den:
        s += 1
    return Fraction(s, scale)


def _merge(terms):
    """Group ``c*sqrt(N)`` terms by the square class of ``N``.

    ``N`` and ``M`` share a class iff ``N*M`` is a perfect square; then
    ``sqrt(M) = sqrt(N) * sqrt(N*M) / N``.
    """
    classes: list[list] = []  # [representative N, rational coefficient]
    for c, n in terms:
        if c == 0 or n == 0:
            continue
        for cls in classes:
            rep = cls[0]
            if is_square(rep * n):
                cls[1] += c * Fraction(isqrt(rep * n), rep)
                break
        else:
            classes.append([n, Fraction(c)])
    return [(c, n) for n, c in classes if c != 0]


def sign_of_root_sum(terms: Sequence[tuple[Fraction, int]]) -> int:
    """Sign of ``sum(c * sqrt(N) for c, N in terms)`` for rational ``c``, int ``N >= 0``."""
    merged = _merge(terms)
    if not merged:
        return 0
    if len(merged) == 1:
        c = merged[0][0]
        return (c > 0) - (c < 0)
    bits = 64
    while True:
        lo = hi = Fraction(0)
        for c, n in merged:
            s_lo, s_hi = sqrt_bounds(n, bits)
            if c > 0:
                lo += c * s_lo
                hi += c * s_hi
            else:
                lo += c * s_hi
                hi += c * s_lo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def compare_root_sum(weights, radicands, rhs_sq) -> int:
    """Sign of ``sum(w_i * sqrt(N_i)) - sqrt(rhs_sq)``.

    ``rhs_sq`` is a nonnegative rational.
    """
    rhs_sq = Fraction(rhs_sq)
    if rhs_sq < 0:
        raise ValueError("rhs_sq must be nonnegative")
    terms = [(Fraction(w), int(n)) for w, n in zip(weights, radicands)]
    # sqrt(p/q) = sqrt(p*q) / q
    terms.append((Fraction(-1, rhs_sq.denominator), rhs_sq.numerator * rhs_sq.denominator))
    return sign_of_root_sum(terms)


def root_sum_float(weights, radicands) -> float:
    """Floating approximation, for display only."""
    return float(sum(Fraction(w) * sqrt_bounds(int(n), 60)[0] for w, n in zip(weights, radicands)))
