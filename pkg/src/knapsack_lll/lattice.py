"""Lattice reduction and geometry-of-numbers bounds, all in exact arithmetic.

Bases are sequences of integer row vectors. Every norm comparison is made
on squared quantities so that no square root is ever taken.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, factorial, floor
from typing import Optional, Sequence

from .checks import Check, le
from .errors import DependentBasis, EnumerationBudgetExceeded, TargetOutsideSpan
from .linalg import IntMatrix, as_int_matrix, dot, gram_det_sq, norm_sq, rank
from .radicals import sqrt_upper

LOVASZ = Fraction(3, 4)


@dataclass(frozen=True)
class LatticeBasis:
    vectors: IntMatrix

    @classmethod
    def of(cls, rows) -> "LatticeBasis":
        return cls(as_int_matrix(rows))

    @property
    def ambient_dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def det_sq(self) -> int:
        return gram_det_sq(self.vectors)


@dataclass(frozen=True)
class GramSchmidtData:
    hat: tuple[tuple[Fraction, ...], ...]
    hat_norm_sq: tuple[Fraction, ...]
    mu: tuple[tuple[Fraction, ...], ...]  # mu[i][j] defined for j < i

    def det_sq(self) -> Fraction:
        p = Fraction(1)
        for x in self.hat_norm_sq:
            p *= x
        return p


def _basis_rows(B):
    return B.vectors if isinstance(B, LatticeBasis) else as_int_matrix(B)


def gram_schmidt(B) -> GramSchmidtData:
    rows = _basis_rows(B)
    hat, hns, mu = [], [], []
    for i, b in enumerate(rows):
        v = [Fraction(x) for x in b]
        mu_i = []
        for j in range(i):
            m = dot(b, hat[j]) / hns[j]
            mu_i.append(m)
            v = [x - m * y for x, y in zip(v, hat[j])]
        n2 = norm_sq(v)
        if n2 == 0:
            raise DependentBasis(f"vector {i} lies in the span of the previous ones")
        hat.append(tuple(v))
        hns.append(n2)
        mu.append(tuple(mu_i))
    return GramSchmidtData(tuple(hat), tuple(hns), tuple(mu))


def lll_conditions(gs: GramSchmidtData) -> tuple[bool, bool]:
    """(size condition, Lovasz condition with factor 3/4), checked exactly."""
    size = all(abs(m) <= Fraction(1, 2) for row in gs.mu for m in row)
    lovasz = all(
        LOVASZ * gs.hat_norm_sq[i - 1]
        <= gs.hat_norm_sq[i] + gs.mu[i][i - 1] ** 2 * gs.hat_norm_sq[i - 1]
        for i in range(1, len(gs.hat_norm_sq))
    )
    return size, lovasz


def is_lll_reduced(B) -> bool:
    return all(lll_conditions(gram_schmidt(B)))


def lll_reduce(B) -> tuple[LatticeBasis, GramSchmidtData, IntMatrix]:
    """LLL-reduce with delta = 3/4 using the integral variant (Cohen, Alg. 2.6.7).

    Returns ``(reduced, gs, U)`` where the reduced rows equal ``U @ rows``
    and ``U`` is unimodular.
    """
    rows = _basis_rows(B)
    k_dim = len(rows)
    # 1-indexed working arrays; d[0] = 1
    b = [None] + [list(r) for r in rows]
    H = [None] + [[int(i == j) for j in range(k_dim)] for i in range(k_dim)]
    if k_dim == 0:
        return LatticeBasis(()), GramSchmidtData((), (), ()), ()
    d = [1] * (k_dim + 1)
    lam = [[0] * (k_dim + 1) for _ in range(k_dim + 1)]
    d[1] = norm_sq(b[1])
    if d[1] == 0:
        raise DependentBasis("zero vector in basis")

    def red(k, l):
        if 2 * abs(lam[k][l]) <= d[l]:
            return
        q = (2 * lam[k][l] + d[l]) // (2 * d[l])
        b[k] = [x - q * y for x, y in zip(b[k], b[l])]
        H[k] = [x - q * y for x, y in zip(H[k], H[l])]
        lam[k][l] -= q * d[l]
        for i in range(1, l):
            lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        new_d = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (new_d * t + lm * lam[i][k]) // d[k]
        d[k - 1] = new_d

    k, kmax = 2, 1
    while k <= k_dim:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = dot(b[k], b[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k] = u
            if d[k] == 0:
                raise DependentBasis(f"vector {k - 1} lies in the span of the previous ones")
        red(k, k - 1)
        if 4 * d[k] * d[k - 2] < 3 * d[k - 1] ** 2 - 4 * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                red(k, l)
            k += 1

    reduced = LatticeBasis(tuple(tuple(r) for r in b[1:]))
    gs = gram_schmidt(reduced)
    if not all(lll_conditions(gs)):
        raise RuntimeError("LLL post-condition violated")
    return reduced, gs, tuple(tuple(r) for r in H[1:])


def round_half_up(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


@dataclass(frozen=True)
class BabaiResult:
    coefficients: tuple[int, ...]
    point: tuple[int, ...]
    error_sq: Fraction
    bound: Fraction  # sum of squared basis lengths / 4

    @property
    def within_bound(self) -> bool:
        return self.error_sq <= self.bound


def babai_nearest(B, target: Sequence, gs: Optional[GramSchmidtData] = None) -> BabaiResult:
    """Nearest-plane rounding of ``target`` against an LLL-reduced basis."""
    rows = _basis_rows(B)
    gs = gs or gram_schmidt(rows)
    target = tuple(Fraction(x) for x in target)
    if len(target) != (len(rows[0]) if rows else len(target)):
        raise ValueError("target dimension mismatch")
    resid = list(target)
    for h, hn in zip(gs.hat, gs.hat_norm_sq):
        f = dot(target, h) / hn
        resid = [x - f * y for x, y in zip(resid, h)]
    if any(resid):
        raise TargetOutsideSpan("target has a component orthogonal to the lattice span")

    w = list(target)
    coeffs = [0] * len(rows)
    for i in range(len(rows) - 1, -1, -1):
        c = round_half_up(dot(w, gs.hat[i]) / gs.hat_norm_sq[i])
        coeffs[i] = c
        if c:
            w = [x - c * y for x, y in zip(w, rows[i])]
    point = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(len(target)))
    err = norm_sq([t - p for t, p in zip(target, point)])
    bound = Fraction(sum(norm_sq(r) for r in rows), 4)
    if err > bound:
        raise RuntimeError("nearest-plane error bound violated")
    return BabaiResult(tuple(coeffs), point, err, bound)


@dataclass(frozen=True)
class SuccessiveMinima:
    lambda_sq: tuple[int, ...]
    witnesses: IntMatrix
    enumerated: int  # lattice points visited


def enumerate_short_vectors(B, radius_sq, budget: int = 10**6, gs=None) -> list[tuple[int, ...]]:
    """All nonzero lattice vectors with squared norm <= ``radius_sq``.

    Fincke-Pohst style depth-first search over coefficient vectors, using
    the Gram-Schmidt data of ``B``. Raises ``EnumerationBudgetExceeded``
    after ``budget`` search nodes.
    """
    rows = _basis_rows(B)
    gs = gs or gram_schmidt(rows)
    k = len(rows)
    n = len(rows[0]) if rows else 0
    radius_sq = Fraction(radius_sq)
    out = []
    coeffs = [0] * k
    visited = 0

    def rec(level, partial):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise EnumerationBudgetExceeded(f"more than {budget} nodes")
        if level < 0:
            if any(coeffs):
                out.append(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(n)))
            return
        center = -sum(gs.mu[i][level] * coeffs[i] for i in range(level + 1, k))
        rem = (radius_sq - partial) / gs.hat_norm_sq[level]
        r = sqrt_upper(rem, 1 << 16)
        lo = floor(center - r)
        hi = ceil(center + r)
        for c in range(lo, hi + 1):
            t = (c - center) ** 2
            if t <= rem:
                coeffs[level] = c
                rec(level - 1, partial + t * gs.hat_norm_sq[level])
        coeffs[level] = 0

    rec(k - 1, Fraction(0))
    return out


def successive_minima(B, budget: int = 10**6) -> SuccessiveMinima:
    """Exact Euclidean successive minima by exhaustive enumeration.

    The search radius is the longest vector of an LLL-reduced basis, which
    already supplies rank-many independent lattice vectors, so the radius
    is certified without appealing to any of the bounds tested elsewhere.
    """
    reduced, gs, _ = lll_reduce(B)
    radius_sq = max(norm_sq(r) for r in reduced.vectors)
    pts = enumerate_short_vectors(reduced, radius_sq, budget, gs)
    pts.sort(key=lambda x: (norm_sq(x), x))
    chosen: list[tuple[int, ...]] = []
    for x in pts:
        if rank(chosen + [x]) > len(chosen):
            chosen.append(x)
            if len(chosen) == reduced.rank:
                break
    if len(chosen) < reduced.rank:
        raise RuntimeError("enumeration radius did not capture a full set of minima")
    return SuccessiveMinima(tuple(norm_sq(x) for x in chosen), tuple(chosen), len(pts))


# gamma_k ** k for k <= 8
HERMITE_POW = {
    1: Fraction(1),
    2: Fraction(4, 3),
    3: Fraction(2),
    4: Fraction(4),
    5: Fraction(8),
    6: Fraction(64, 3),
    7: Fraction(64),
    8: Fraction(256),
}

# truncated decimal expansion, strictly below pi
PI_LOWER = Fraction(314159265358979, 10**14)


def unit_ball_volume_sq_lower(k: int) -> Fraction:
    """Rational lower bound on the squared volume of the unit k-ball."""
    h = k // 2
    if k % 2 == 0:
        return PI_LOWER ** (2 * h) / factorial(h) ** 2
    # Gamma(h + 3/2) = (2h+1)!! sqrt(pi) / 2^(h+1)
    dfact = 1
    for j in range(1, 2 * h + 2, 2):
        dfact *= j
    return PI_LOWER ** (2 * h) * 4 ** (h + 1) / dfact**2


def blichfeldt_pow_bound(k: int) -> Fraction:
    """Certified upper bound on gamma_k ** k from gamma_k <= 2((k+2)/sigma_k)^(2/k)."""
    return Fraction(2**k * (k + 2) ** 2) / unit_ball_volume_sq_lower(k)


@dataclass(frozen=True)
class BoundParameters:
    k: int
    gamma_pow_k: Fraction  # gamma_k ** k, exact when gamma_exact_known
    gamma_exact_known: bool
    sigma_sq_lower: Optional[Fraction] = None
    n: Optional[int] = None
    rho_k: Optional[Fraction] = None


def gamma_bound(k: int) -> BoundParameters:
    if k < 1:
        raise ValueError("k must be positive")
    if k in HERMITE_POW:
        return BoundParameters(k, HERMITE_POW[k], True)
    return BoundParameters(k, blichfeldt_pow_bound(k), False, unit_ball_volume_sq_lower(k))


def rho(k: int, n: int, gamma_pow_k: Fraction) -> Fraction:
    return k * Fraction(2) ** (2 * (k - 2)) * gamma_pow_k / n**2


def bound_parameters(n: int, k: int) -> BoundParameters:
    g = gamma_bound(k)
    return BoundParameters(k, g.gamma_pow_k, g.gamma_exact_known, g.sigma_sq_lower, n, rho(k, n, g.gamma_pow_k))


def _rows_and_n(B):
    rows = _basis_rows(B)
    return rows, len(rows), len(rows[0])


def check_lemma3_bound(B, det_sq: int) -> bool:
    """Every ``|b_i|^2 <= 2^(k-1) n det(L)^2``."""
    rows, k, n = _rows_and_n(B)
    rhs = 2 ** (k - 1) * n * det_sq
    return all(norm_sq(r) <= rhs for r in rows)


@dataclass(frozen=True)
class Theorem4Check:
    applies: bool
    holds: bool
    rho_k: Fraction
    bound_sq: Fraction
    max_norm_sq: int


def check_theorem4_bound(B, det_sq: int, params: Optional[BoundParameters] = None) -> Theorem4Check:
    """Large-determinant bound ``|b_i|^2 <= (1 + rho_k/det^2) n det^2``.

    ``applies`` is the gate ``det^2 > rho_k``; with an upper bound on
    ``gamma_k^k`` it is conservative.
    """
    rows, k, n = _rows_and_n(B)
    params = params or bound_parameters(n, k)
    r = params.rho_k if params.rho_k is not None else rho(k, n, params.gamma_pow_k)
    bound = (1 + r / det_sq) * n * det_sq
    longest = max(norm_sq(x) for x in rows)
    return Theorem4Check(det_sq > r, longest <= bound, r, bound, longest)


def check_minima_inequalities(B, gs: GramSchmidtData, sm: SuccessiveMinima, det_sq: int) -> list[Check]:
    rows, k, n = _rows_and_n(B)
    lam = sm.lambda_sq
    hns = gs.hat_norm_sq
    out = []
    for i in range(k):
        out.append(le(f"lambda_via_min[{i + 1}]", min(hns[i:]), lam[i]))
    for i in range(k):
        b2 = norm_sq(rows[i])
        out.append(le(f"gs_via_lambda[{i + 1}]", b2, 2**i * hns[i]))
        out.append(le(f"basis_via_lambda[{i + 1}]", b2, 2 ** (k - 1) * lam[i]))
    out.append(le("lambda_det", lam[-1], n * det_sq))
    prod = 1
    for x in lam:
        prod *= x
    out.append(le("minkowski_lower", det_sq, prod))
    g = gamma_bound(k)
    out.append(
        Check("minkowski_upper", prod <= g.gamma_pow_k * det_sq, Fraction(prod), g.gamma_pow_k * det_sq)
    )
    return out
