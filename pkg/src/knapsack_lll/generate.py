"""Reproducible random instances and lattices."""

from fractions import Fraction
from math import isqrt

from . import linalg, solver
from .errors import RankDeficient

MASK64 = (1 << 64) - 1


class SplitMix64:
    """64-bit splitmix generator; identical streams on every platform."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` (rejection sampling, no modulo bias)."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - (1 << 64) % span
        while True:
            x = self.next()
            if x < limit:
                return lo + x % span

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]


def random_primitive_matrix(rng: SplitMix64, m: int, n: int, max_entry: int, pointed: bool = True, tries: int = 10000):
    """Rejection-sample a full-rank primitive ``m x n`` matrix.

    With ``pointed`` the first row is drawn from ``[1, max_entry]``, which
    makes the column cone pointed; one-row matrices are always positive.
    """
    for _ in range(tries):
        rows = []
        for i in range(m):
            lo = 1 if (pointed and i == 0) else -max_entry
            rows.append(tuple(rng.randint(lo, max_entry) for _ in range(n)))
        try:
            if linalg.check_primitivity(rows):
                return tuple(rows)
        except RankDeficient:
            continue
    raise RuntimeError("could not sample a primitive matrix")


def random_kernel_lattice(rng: SplitMix64, n: int, k: int, max_entry: int):
    """A random primitive lattice of rank ``k`` in ``Z^n``: the kernel of a primitive matrix."""
    A = random_primitive_matrix(rng, n - k, n, max_entry, pointed=False)
    return A, linalg.kernel_basis(A)


def _ceil_sqrt(q: Fraction) -> int:
    """Smallest integer ``t >= 0`` with ``t*t >= q``."""
    q = Fraction(q)
    t = isqrt(q.numerator // q.denominator)
    while t * t < q:
        t += 1
    return t


GEN_REGIMES = ("THM1", "THM2", "THM3_M1", "THM4_M1", "OUT")


def generate_instance(m: int, n: int, max_entry: int, seed: int, regime: str = "THM1",
                      delta=solver.DEFAULT_DELTA, tries: int = 200):
    """Random valid instance whose ``b`` lies in the requested regime.

    In-cone right-hand sides are built as ``b = A (t*1 + mu)`` with an
    integer ``t`` at or above the cone offset and random ``mu >= 0``; the
    one-row regimes take ``b`` just above their threshold. ``OUT`` draws
    ``b = A x`` for small random ``x >= 0`` until no guarantee applies.
    Every result is re-classified before it is returned.
    """
    if regime not in GEN_REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    if regime in ("THM3_M1", "THM4_M1") and m != 1:
        raise ValueError(f"{regime} needs m = 1")
    rng = SplitMix64(seed)
    delta = Fraction(delta)
    for _ in range(tries):
        A = random_primitive_matrix(rng, m, n, max_entry)
        probe = solver.validate(A, (0,) * m)
        th = solver.thresholds(probe, delta)
        if regime in ("THM2", "THM4_M1") and not th.det_gate:
            continue
        if regime in ("THM1", "THM2"):
            t = _ceil_sqrt(th.thm1_rhs_sq if regime == "THM1" else th.thm2_rhs_sq)
            x = [t + rng.randint(0, max_entry) for _ in range(n)]
            b = linalg.mat_vec(A, x)
        elif regime in ("THM3_M1", "THM4_M1"):
            f = th.m1_thm3_factor_sq if regime == "THM3_M1" else th.m1_thm4_factor_sq
            b0 = solver.m1_threshold_ceiling(A[0], f, th.m1_radicands)
            b = (b0 + rng.randint(0, int(delta * b0)),)
        else:
            x = [rng.randint(0, 2) for _ in range(n)]
            b = linalg.mat_vec(A, x)
        inst = solver.validate(A, b)
        cls = solver.classify_regime(inst, delta)
        if regime == "OUT":
            if cls.regime == solver.OUT:
                return inst
        elif regime in cls.applicable:
            return inst
    raise RuntimeError(f"no {regime} instance found for m={m}, n={n}, seed={seed}")
