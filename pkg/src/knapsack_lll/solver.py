"""Integer points in knapsack polytopes ``P(A, b) = {x >= 0 : A x = b}``.

Pipeline: an integer solution ``u`` of ``A x = b`` and a kernel basis come
from one Hermite normal form; a rational point ``c`` deep inside
``P(A, b)`` comes from an LP vertex (or, for one-row instances, from an
approximate inball centre of the simplex); nearest-plane rounding of
``u - c`` against an LLL-reduced kernel basis gives ``v``; the answer is
``z = u - v``. Whenever ``b`` lies in one of the guaranteed cones the
distance ``|z - c|`` is provably smaller than the room around ``c``, so
``z >= 0``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lattice, linalg, lp
from .checks import Check, le
from .errors import BadShape, EmptyPolytope, NotPointed, NotPrimitive
from .radicals import compare_root_sum, root_sum_float, sqrt_upper

log = logging.getLogger(__name__)

DEFAULT_DELTA = Fraction(1, 100)

THM1 = "THM1"
THM2 = "THM2"
THM3_M1 = "THM3_M1"
THM4_M1 = "THM4_M1"
OUT = "OUT_OF_GUARANTEE"
REGIMES = (THM1, THM2, THM3_M1, THM4_M1, OUT)
IN_GUARANTEE = (THM1, THM2, THM3_M1, THM4_M1)


@dataclass(frozen=True)
class KnapsackInstance:
    A: linalg.IntMatrix
    b: linalg.IntVector

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def k(self) -> int:
        return self.n - self.m


def validate(A, b) -> KnapsackInstance:
    """Build an instance, raising on the first violated assumption.

    A one-row instance with all entries negative is negated (together
    with ``b``), which leaves the polytope unchanged.
    """
    try:
        A = linalg.as_int_matrix(A)
    except ValueError as e:
        raise BadShape(str(e)) from None
    b = tuple(int(x) for x in b)
    if not A or not A[0]:
        raise BadShape("empty matrix")
    m, n = len(A), len(A[0])
    if not 1 <= m < n:
        raise BadShape(f"need 1 <= m < n, got m={m}, n={n}")
    if len(b) != m:
        raise BadShape(f"b has length {len(b)}, expected {m}")
    if m == 1 and all(x < 0 for x in A[0]):
        A, b = ((tuple(-x for x in A[0])),), (-b[0],)
    if not linalg.check_primitivity(A):
        raise NotPrimitive("gcd of the maximal minors of A is not 1")
    if not lp.check_pointed(A):
        raise NotPointed("{x >= 0 : A x = 0} contains a nonzero point")
    return KnapsackInstance(A, b)


def column_sum(inst: KnapsackInstance) -> tuple[int, ...]:
    """The diagonal direction ``v = v_1 + ... + v_n``."""
    return lp.column_sum(inst.A)


@dataclass(frozen=True)
class Thresholds:
    """Squared cone offsets and one-row thresholds for an instance.

    The one-row thresholds read ``b >= sqrt(factor_sq) * S`` with
    ``S = sum_i a_i |a[i]|`` (``a[i]`` = ``a`` without entry ``i``); ``S`` is a
    sum of square roots, stored via ``m1_radicands`` and decided exactly.
    """

    k: int
    det_sq: int
    delta: Fraction
    p_sq: Fraction
    mu_sq: Fraction
    rho_k: Fraction
    gamma_exact_known: bool
    thm1_rhs_sq: Fraction
    thm2_rhs_sq: Fraction
    det_gate: bool
    m1_radicands: Optional[tuple[int, ...]] = None
    m1_thm3_factor_sq: Optional[Fraction] = None
    m1_thm4_factor_sq: Optional[Fraction] = None

    def m1_threshold_float(self, which: str, a) -> float:
        f = self.m1_thm3_factor_sq if which == THM3_M1 else self.m1_thm4_factor_sq
        return float(f) ** 0.5 * root_sum_float(a, self.m1_radicands)


def thresholds(inst: KnapsackInstance, delta=DEFAULT_DELTA) -> Thresholds:
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    k, n = inst.k, inst.n
    det_sq = linalg.gram_det_sq(inst.A)
    p_sq = Fraction(k * n, 2)
    mu_sq = Fraction(2) ** (k - 2) * p_sq
    params = lattice.bound_parameters(n, k)
    extra = {}
    if inst.m == 1:
        a = inst.A[0]
        total = linalg.norm_sq(a)
        extra = dict(
            m1_radicands=tuple(total - x * x for x in a),
            m1_thm3_factor_sq=(1 + delta) ** 2 * mu_sq,
            m1_thm4_factor_sq=(1 + delta) ** 2 * p_sq,
        )
    return Thresholds(
        k=k,
        det_sq=det_sq,
        delta=delta,
        p_sq=p_sq,
        mu_sq=mu_sq,
        rho_k=params.rho_k,
        gamma_exact_known=params.gamma_exact_known,
        thm1_rhs_sq=mu_sq * det_sq,
        thm2_rhs_sq=p_sq * det_sq,
        det_gate=det_sq > params.rho_k,
        **extra,
    )


def m1_meets(a, b: int, factor_sq: Fraction, radicands) -> bool:
    """Exact test of ``b >= sqrt(factor_sq) * sum_i a_i sqrt(radicands_i)``."""
    if b <= 0:
        return False
    return compare_root_sum(a, radicands, Fraction(b * b) / factor_sq) <= 0


def m1_threshold_ceiling(a, factor_sq: Fraction, radicands) -> int:
    """Smallest integer ``b`` meeting the one-row threshold."""
    est = int(float(factor_sq) ** 0.5 * root_sum_float(a, radicands))
    b = max(est - 2, 1)
    while not m1_meets(a, b, factor_sq, radicands):
        b += 1
    while b > 1 and m1_meets(a, b - 1, factor_sq, radicands):
        b -= 1
    return b


@dataclass(frozen=True)
class Classification:
    regime: str
    applicable: tuple[str, ...]
    thresholds: Thresholds
    cone_offset: Optional[Fraction]  # max t with b in t*v + C; None if P(A, b) is empty


def classify_regime(inst: KnapsackInstance, delta=DEFAULT_DELTA) -> Classification:
    """Every guarantee that applies to ``b``, strongest first.

    The cone tests use the exact maximal offset ``t*`` (an LP optimum), so
    ``b in s*v + C`` is decided as ``t*^2 >= s^2`` with no rounding slack.
    """
    th = thresholds(inst, delta)
    t = lp.max_cone_offset(inst.A, inst.b)
    applicable = []
    if inst.m == 1:
        a, b = inst.A[0], inst.b[0]
        if th.det_gate and m1_meets(a, b, th.m1_thm4_factor_sq, th.m1_radicands):
            applicable.append(THM4_M1)
    if t is not None and th.det_gate and t * t >= th.thm2_rhs_sq:
        applicable.append(THM2)
    if inst.m == 1 and m1_meets(inst.A[0], inst.b[0], th.m1_thm3_factor_sq, th.m1_radicands):
        applicable.append(THM3_M1)
    if t is not None and t * t >= th.thm1_rhs_sq:
        applicable.append(THM1)
    regime = applicable[0] if applicable else OUT
    return Classification(regime, tuple(applicable), th, t)


def simplex_center(a: Sequence[int], b: int, delta=DEFAULT_DELTA) -> tuple[tuple[Fraction, ...], Fraction]:
    """Rational point deep inside the simplex ``{x >= 0 : a.x = b}``.

    The exact inball centre has coordinates ``b |a[j]| / S`` (irrational in
    general). Each ``|a[j]|`` is replaced by a rational over-approximation
    with relative error at most ``delta / (4n)`` and the result is rescaled
    onto the hyperplane; the inball radius at ``c`` is then verified to
    exceed ``b |a| / ((1 + delta) S)``, tightening the approximation on
    failure. Returns ``(c, r_sq)`` with ``r_sq`` the exact squared inball
    radius at ``c`` within the hyperplane.
    """
    a = tuple(int(x) for x in a)
    delta = Fraction(delta)
    if b <= 0 or any(x <= 0 for x in a):
        raise ValueError("need positive a and b")
    n = len(a)
    total = linalg.norm_sq(a)
    rad = tuple(total - x * x for x in a)
    den = -(-4 * n * delta.denominator // delta.numerator)
    while True:
        q = [sqrt_upper(r, den) for r in rad]
        s = linalg.dot(a, q)
        c = tuple(b * qj / s for qj in q)
        # squared distance to facet j: c_j^2 |a|^2 / |a[j]|^2
        if all(
            compare_root_sum(a, rad, Fraction(b * b * rj) / (cj * cj * (1 + delta) ** 2)) > 0
            for cj, rj in zip(c, rad)
        ):
            r_sq = min(cj * cj * total / rj for cj, rj in zip(c, rad))
            return c, r_sq
        den *= 4


def inball_radius_sq(a, c) -> Fraction:
    """Squared radius of the largest ball (in the hyperplane) centred at ``c``."""
    total = linalg.norm_sq(a)
    return min(Fraction(cj) ** 2 * total / (total - x * x) for cj, x in zip(c, a))


def dfrob_upper_bound_sq(inst: KnapsackInstance) -> Fraction:
    """Square of the known upper bound ``(n-m)/2 * sqrt(n det(A A^T))``."""
    return Fraction(inst.k, 2) ** 2 * inst.n * linalg.gram_det_sq(inst.A)


@dataclass
class SolveCertificate:
    regime: str
    status: str  # "found" | "not_found"
    z: Optional[tuple[int, ...]]
    u: tuple[int, ...]
    c: tuple[Fraction, ...]
    v: tuple[int, ...]
    reduced_basis: linalg.IntMatrix
    babai_error_sq: Fraction
    babai_bound: Fraction
    applicable: tuple[str, ...] = ()
    delta: Fraction = DEFAULT_DELTA
    cone_offset: Optional[Fraction] = None
    checks: list[Check] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.z is not None

    @property
    def in_guarantee(self) -> bool:
        return self.regime in IN_GUARANTEE


def solve(inst: KnapsackInstance, delta=DEFAULT_DELTA, m1_use_lp: bool = False) -> SolveCertificate:
    """Run the four-step pipeline and return a checked certificate.

    ``m1_use_lp`` makes one-row instances take the LP vertex for ``c``
    instead of the simplex centre (for cross-testing).
    """
    delta = Fraction(delta)
    cls = classify_regime(inst, delta)
    regime = cls.regime
    if m1_use_lp and regime in (THM3_M1, THM4_M1):
        regime = next((r for r in cls.applicable if r in (THM1, THM2)), OUT)
    if cls.cone_offset is None:
        raise EmptyPolytope("P(A, b) is empty")

    kernel = linalg.kernel_basis(inst.A)
    u = linalg.integer_solution(inst.A, inst.b)
    if regime in (THM3_M1, THM4_M1):
        c, _ = simplex_center(inst.A[0], inst.b[0], delta)
    else:
        c = lp.interior_point(inst.A, inst.b, cls.cone_offset)
    reduced, gs, _ = lattice.lll_reduce(kernel.basis)
    target = tuple(ui - ci for ui, ci in zip(u, c))
    babai = lattice.babai_nearest(reduced, target, gs)
    v = babai.point
    z = linalg.sub(u, v)

    cert = SolveCertificate(
        regime=regime,
        status="found",
        z=z,
        u=u,
        c=c,
        v=v,
        reduced_basis=reduced.vectors,
        babai_error_sq=babai.error_sq,
        babai_bound=babai.bound,
        applicable=cls.applicable,
        delta=delta,
        cone_offset=cls.cone_offset,
    )
    cert.checks = verify_certificate(inst, cert, cls.thresholds)
    if any(x < 0 for x in z):
        cert.z = None
        cert.status = "not_found"
        if regime in IN_GUARANTEE:
            log.error("regime %s but z has negative entries: %s", regime, z)
    return cert


def _closeness_bound_sq(regime: str, th: Thresholds) -> Optional[Fraction]:
    if regime in (THM1, THM3_M1):
        return th.thm1_rhs_sq
    if regime in (THM2, THM4_M1):
        return th.thm2_rhs_sq
    return None


def verify_certificate(inst: KnapsackInstance, cert: SolveCertificate, th: Optional[Thresholds] = None) -> list[Check]:
    """Recompute every certificate claim from scratch in exact arithmetic."""
    th = th or thresholds(inst, cert.delta)
    A, b = inst.A, inst.b
    z = cert.z
    out = []
    zero = (0,) * inst.m
    out.append(Check("A_u_eq_b", linalg.mat_vec(A, cert.u) == b))
    out.append(Check("A_c_eq_b", linalg.mat_vec(A, cert.c) == b))
    out.append(Check("A_v_eq_0", linalg.mat_vec(A, cert.v) == zero))
    basis = cert.reduced_basis
    out.append(Check("basis_in_kernel", all(linalg.mat_vec(A, x) == zero for x in basis)))
    out.append(Check("basis_det_sq", linalg.gram_det_sq(basis) == th.det_sq))
    target = linalg.sub(cert.u, cert.c)
    err = linalg.norm_sq(linalg.sub(target, cert.v))
    norms = [linalg.norm_sq(x) for x in basis]
    out.append(le("babai_error", err, Fraction(sum(norms), 4)))
    longest = max(norms)
    out.append(le("lemma3_bound", longest, 2 ** (th.k - 1) * inst.n * th.det_sq))
    if z is not None:
        out.append(Check("A_z_eq_b", linalg.mat_vec(A, z) == b))
        out.append(Check("z_eq_u_minus_v", tuple(z) == linalg.sub(cert.u, cert.v)))
        dist = linalg.norm_sq(linalg.sub(z, cert.c))
        out.append(le("z_c_distance", dist, Fraction(th.k, 4) * longest))
        bound = _closeness_bound_sq(cert.regime, th)
        if bound is not None:
            out.append(le("close_enough", dist, bound))
        if cert.in_guarantee:
            out.append(Check("z_nonnegative", all(x >= 0 for x in z)))
    elif cert.in_guarantee:
        out.append(Check("found_in_guarantee", False))
    if th.det_gate:
        t4 = lattice.check_theorem4_bound(basis, th.det_sq)
        out.append(Check("theorem4_bound", t4.holds, Fraction(t4.max_norm_sq), t4.bound_sq))
    return out


def certificate_ok(inst: KnapsackInstance, cert: SolveCertificate) -> bool:
    return all(c.holds for c in verify_certificate(inst, cert))
