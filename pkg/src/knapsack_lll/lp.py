"""Exact rational linear programming.

A two-phase tableau simplex over ``Fraction`` with Bland's rule. Problems
are stated over variables with finite lower bounds (or free variables);
optimal answers are basic solutions, i.e. vertices of the feasible region.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import EmptyPolytope
from .linalg import dot


@dataclass
class LPProblem:
    """``sense`` of ``objective`` subject to equality and <= rows.

    ``lower[j]`` is the lower bound of variable ``j`` (``None`` = free);
    it defaults to 0 for every variable.
    """

    objective: Sequence
    A_eq: Sequence[Sequence] = ()
    b_eq: Sequence = ()
    A_ub: Sequence[Sequence] = ()
    b_ub: Sequence = ()
    lower: Optional[Sequence] = None
    sense: str = "min"  # "min" | "max" | "feasibility"

    @property
    def nvars(self) -> int:
        return len(self.objective)


@dataclass
class RationalLPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None
    pivots: int = field(default=0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _pivot(T, r, c):
    piv = T[r][c]
    row = [x / piv for x in T[r]]
    T[r] = row
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [x - f * y for x, y in zip(other, row)]


def _run(T, basis, cost, ncols):
    """Minimize ``cost`` from a feasible basis; Bland's rule on both choices."""
    pivots = 0
    while True:
        cb = [cost[j] for j in basis]
        enter = None
        for j in range(ncols):
            if j in basis:
                continue
            red = cost[j] - sum(c * row[j] for c, row in zip(cb, T) if c)
            if red < 0:
                enter = j
                break
        if enter is None:
            return "optimal", pivots
        best = None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded", pivots
        leave = best[1]
        _pivot(T, leave, enter)
        basis[leave] = enter
        pivots += 1


def _standard_form(p: LPProblem):
    nv = p.nvars
    lower = list(p.lower) if p.lower is not None else [0] * nv
    # each original variable maps to a list of (column, sign)
    cols = []
    ncol = 0
    for lb in lower:
        if lb is None:
            cols.append(((ncol, 1), (ncol + 1, -1)))
            ncol += 2
        else:
            cols.append(((ncol, 1),))
            ncol += 1
    shift = [Fraction(0) if lb is None else Fraction(lb) for lb in lower]
    nslack = len(p.A_ub)
    rows, rhs = [], []

    def expand(coeffs):
        out = [Fraction(0)] * (ncol + nslack)
        for j, a in enumerate(coeffs):
            for col, s in cols[j]:
                out[col] += s * Fraction(a)
        return out

    for a, b in zip(p.A_eq, p.b_eq):
        rows.append(expand(a))
        rhs.append(Fraction(b) - dot(a, shift))
    for i, (a, b) in enumerate(zip(p.A_ub, p.b_ub)):
        r = expand(a)
        r[ncol + i] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(b) - dot(a, shift))
    sign = -1 if p.sense == "max" else 1
    obj = [Fraction(0)] * nv if p.sense == "feasibility" else [sign * Fraction(c) for c in p.objective]
    cost = expand(obj)
    return rows, rhs, cost, cols, shift, ncol + nslack


def lp_solve(p: LPProblem) -> RationalLPResult:
    if p.sense not in ("min", "max", "feasibility"):
        raise ValueError(f"unknown sense {p.sense!r}")
    rows, rhs, cost, cols, shift, N = _standard_form(p)
    m = len(rows)
    T = []
    for i, (r, b) in enumerate(zip(rows, rhs)):
        if b < 0:
            r, b = [-x for x in r], -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(r + art + [b])
    basis = [N + i for i in range(m)]
    status, piv1 = _run(T, basis, [Fraction(0)] * N + [Fraction(1)] * m, N + m)
    if sum(T[i][-1] for i, j in enumerate(basis) if j >= N) > 0:
        return RationalLPResult("infeasible", pivots=piv1)
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= N:
            j = next((j for j in range(N) if T[i][j] != 0), None)
            if j is None:
                del T[i], basis[i]
                continue
            _pivot(T, i, j)
            basis[i] = j
        i += 1
    T = [row[:N] + [row[-1]] for row in T]
    status, piv2 = _run(T, basis, cost, N)
    if status == "unbounded":
        return RationalLPResult("unbounded", pivots=piv1 + piv2)
    y = [Fraction(0)] * N
    for i, j in enumerate(basis):
        y[j] = T[i][-1]
    x = tuple(sum(s * y[col] for col, s in cmap) + sh for cmap, sh in zip(cols, shift))
    value = None if p.sense == "feasibility" else dot(p.objective, x)
    return RationalLPResult("optimal", x, value, piv1 + piv2)


def check_pointed(A) -> bool:
    """True iff ``{x >= 0 : A x = 0} == {0}``."""
    n = len(A[0])
    p = LPProblem(
        objective=[0] * n,
        A_eq=[list(r) for r in A] + [[1] * n],
        b_eq=[0] * len(A) + [1],
        sense="feasibility",
    )
    return lp_solve(p).status == "infeasible"


def column_sum(A) -> tuple[int, ...]:
    return tuple(sum(r) for r in A)


@dataclass(frozen=True)
class ConeMembership:
    inside: bool
    multipliers: Optional[tuple[Fraction, ...]] = None


def cone_membership(A, b, t) -> ConeMembership:
    """Is ``b`` in ``t*v + C`` (``v`` the column sum, ``C`` the column cone)?"""
    t = Fraction(t)
    n = len(A[0])
    shifted = [Fraction(bi) - t * vi for bi, vi in zip(b, column_sum(A))]
    res = lp_solve(LPProblem([0] * n, A_eq=A, b_eq=shifted, sense="feasibility"))
    if not res.optimal:
        return ConeMembership(False)
    return ConeMembership(True, res.x)


def max_cone_offset(A, b) -> Optional[Fraction]:
    """Largest ``t >= 0`` with ``b`` in ``t*v + C``; None when ``b`` is not in ``C``.

    Equivalently the largest minimum coordinate over points of ``P(A, b)``.
    """
    n = len(A[0])
    # variables (t, mu_1..mu_n) >= 0 with A (t*1 + mu) = b
    rows = [[sum(r)] + list(r) for r in A]
    res = lp_solve(LPProblem([1] + [0] * n, A_eq=rows, b_eq=b, sense="max"))
    if res.status == "infeasible":
        return None
    if res.status == "unbounded":
        raise ValueError("cone offset unbounded; the column cone is not pointed")
    return res.x[0]


def interior_point(A, b, t) -> tuple[Fraction, ...]:
    """A vertex of ``{x in P(A, b) : x_i >= t}`` maximizing the coordinate sum."""
    t = Fraction(t)
    n = len(A[0])
    res = lp_solve(LPProblem([1] * n, A_eq=A, b_eq=b, lower=[t] * n, sense="max"))
    if res.status == "infeasible":
        raise EmptyPolytope(f"no point of P(A, b) has all coordinates >= {t}")
    if res.status == "unbounded":
        raise ValueError("P(A, b) is unbounded; the column cone is not pointed")
    return res.x


def coordinate_upper_bounds(A, b) -> Optional[tuple[Fraction, ...]]:
    """Per-coordinate maxima over ``P(A, b)``; None when ``P(A, b)`` is empty."""
    n = len(A[0])
    out = []
    for i in range(n):
        c = [0] * n
        c[i] = 1
        res = lp_solve(LPProblem(c, A_eq=A, b_eq=b, sense="max"))
        if res.status == "infeasible":
            return None
        if res.status == "unbounded":
            raise ValueError("P(A, b) is unbounded; the column cone is not pointed")
        out.append(res.value)
    return tuple(out)


def positive_row_combination(A) -> Optional[tuple[Fraction, ...]]:
    """Some ``y`` with ``y^T A >= 1`` componentwise, or None if none exists."""
    m, n = len(A), len(A[0])
    neg_cols = [[-A[i][j] for i in range(m)] for j in range(n)]
    res = lp_solve(
        LPProblem([0] * m, A_ub=neg_cols, b_ub=[-1] * n, lower=[None] * m, sense="feasibility")
    )
    return res.x if res.optimal else None
