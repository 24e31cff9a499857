"""Brute-force ground truth for small instances.

These routines share no code path with the lattice pipeline: integer
points come from bounded depth-first search and one-row feasibility from
residue tables.
"""

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, Optional, Sequence

from . import lp
from .errors import GcdNotOne

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class EnumerationResult:
    points: tuple[tuple[int, ...], ...]
    exhaustive: bool
    budget_used: int

    @property
    def empty(self) -> bool:
        """True only when the search was exhaustive and found nothing."""
        return self.exhaustive and not self.points


def enumerate_points(A, b, budget: int = DEFAULT_BUDGET) -> EnumerationResult:
    """All integer points of ``P(A, b)``, in lexicographic order.

    Coordinates are capped by their LP maxima over ``P(A, b)``. A strictly
    positive combination ``w = y^T A`` of the rows (it exists because the
    column cone is pointed) gives ``w.x = y.b`` on ``P``, which bounds each
    remaining coordinate by the weight left over. When more than ``budget``
    search nodes would be needed the partial list is returned with
    ``exhaustive=False``.
    """
    A = [list(map(int, r)) for r in A]
    b = [int(x) for x in b]
    m, n = len(A), len(A[0])
    caps = lp.coordinate_upper_bounds(A, b)
    if caps is None:
        return EnumerationResult((), True, 0)
    y = lp.positive_row_combination(A)
    if y is None:
        raise ValueError("column cone is not pointed; P(A, b) may be unbounded")
    w = [sum(y[i] * A[i][j] for i in range(m)) for j in range(n)]
    caps = [floor(c) for c in caps]
    last_row = next(i for i in range(m) if A[i][n - 1] != 0)
    points = []
    x = [0] * n
    used = 0

    def rec(j, resid, weight):
        nonlocal used
        used += 1
        if used > budget:
            raise _Budget
        if j == n - 1:
            q, r = divmod(resid[last_row], A[last_row][n - 1])
            if r or q < 0 or q > caps[j]:
                return
            if all(resid[i] == q * A[i][n - 1] for i in range(m)):
                x[j] = q
                points.append(tuple(x))
            return
        top = min(caps[j], floor(weight / w[j]))
        for v in range(top + 1):
            x[j] = v
            rec(j + 1, [resid[i] - v * A[i][j] for i in range(m)], weight - v * w[j])
        x[j] = 0

    try:
        rec(0, b, sum(yi * bi for yi, bi in zip(y, b)))
    except _Budget:
        return EnumerationResult(tuple(points), False, used - 1)
    return EnumerationResult(tuple(points), True, used)


class _Budget(Exception):
    pass


@dataclass(frozen=True)
class FrobeniusResult:
    value: int
    method: str  # "round-robin" | "closed-form"
    residues: Optional[tuple[int, ...]] = None  # least representable value per class mod min(a)


def _check_coins(a) -> list[int]:
    a = [int(x) for x in a]
    if not a or any(x < 1 for x in a):
        raise ValueError("coin values must be positive integers")
    g = 0
    for x in a:
        g = gcd(g, x)
    if g != 1:
        raise GcdNotOne(f"gcd{tuple(a)} = {g}")
    return a


def residue_table(a: Sequence[int]) -> tuple[int, ...]:
    """Least representable value in each residue class modulo ``min(a)``.

    Round-robin relaxation (Boecker-Liptak): coins are added one at a time
    and, within each class of ``gcd(a1, a_i)``, the table is swept in a
    cycle starting from its current minimum.
    """
    a = sorted(_check_coins(a))
    a1 = a[0]
    inf = None
    N = [inf] * a1
    N[0] = 0
    for ai in a[1:]:
        d = gcd(a1, ai)
        for p in range(d):
            vals = [N[q] for q in range(p, a1, d) if N[q] is not None]
            if not vals:
                continue
            cur = min(vals)
            for _ in range(a1 // d - 1):
                cur += ai
                r = cur % a1
                if N[r] is not None and N[r] < cur:
                    cur = N[r]
                N[r] = cur
    return tuple(N)


def residue_table_dijkstra(a: Sequence[int]) -> tuple[int, ...]:
    """Same table as ``residue_table`` by shortest paths over residues."""
    a = sorted(_check_coins(a))
    a1 = a[0]
    dist = [None] * a1
    heap = [(0, 0)]
    while heap:
        dv, r = heapq.heappop(heap)
        if dist[r] is not None:
            continue
        dist[r] = dv
        for c in a[1:]:
            s = (r + c) % a1
            if dist[s] is None:
                heapq.heappush(heap, (dv + c, s))
    return tuple(dist)


def frobenius(a: Sequence[int], method: str = "round-robin") -> FrobeniusResult:
    """Largest integer not representable as a nonnegative combination of ``a``.

    Returns -1 when every nonnegative integer is representable.
    """
    a = _check_coins(a)
    if method == "closed-form":
        if len(a) != 2:
            raise ValueError("closed form needs exactly two coins")
        return FrobeniusResult(a[0] * a[1] - a[0] - a[1], method)
    if method != "round-robin":
        raise ValueError(f"unknown method {method!r}")
    table = residue_table(a)
    value = max(table) - min(a)
    if len(a) == 2 and value != a[0] * a[1] - a[0] - a[1]:
        raise AssertionError("round-robin disagrees with the two-coin formula")
    return FrobeniusResult(value, method, table)


def feasibility_scan(a: Sequence[int], b_range: Iterable[int], table=None) -> list[bool]:
    """Representability of each ``b`` in ``b_range`` by table lookup."""
    table = table or residue_table(a)
    a1 = min(int(x) for x in a)
    return [b >= 0 and b >= table[b % a1] for b in b_range]


def is_feasible(a: Sequence[int], b: int, table=None) -> bool:
    return feasibility_scan(a, [b], table)[0]


def check_point(A, b, x) -> bool:
    return all(v >= 0 for v in x) and all(
        sum(Fraction(r[j]) * x[j] for j in range(len(x))) == bi for r, bi in zip(A, b)
    )
