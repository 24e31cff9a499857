"""Randomized verification of the lattice inequalities on kernel lattices."""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import lattice, linalg
from .checks import Check, le
from .generate import SplitMix64, random_kernel_lattice

MINIMA_MAX_RANK = 4


def random_target(rng: SplitMix64, basis, den: int = 97):
    """Random rational point in the real span of ``basis``."""
    n = len(basis[0])
    coeffs = [Fraction(rng.randint(-10 * den, 10 * den), den) for _ in basis]
    return tuple(sum(c * row[j] for c, row in zip(coeffs, basis)) for j in range(n))


def lattice_checks(A, kernel, rng: SplitMix64, minima: bool = True, inject_bug: bool = False) -> list[Check]:
    """Every proved inequality for one kernel lattice, as exact checks."""
    basis = kernel.basis
    n, k = kernel.ambient_dim, kernel.rank
    det_sq = linalg.gram_det_sq(A)
    out = [Check("det_identity", kernel.gram_det_sq == det_sq, Fraction(kernel.gram_det_sq), Fraction(det_sq))]

    reduced, gs, U = lattice.lll_reduce(basis)
    size, lovasz = lattice.lll_conditions(gs)
    out.append(Check("lll_size", size))
    out.append(Check("lll_lovasz", lovasz))
    out.append(Check("lll_same_lattice", linalg.is_unimodular(U) and linalg.mat_mul(U, basis) == reduced.vectors))
    out.append(Check("det_preserved", linalg.gram_det_sq(reduced.vectors) == det_sq))
    out.append(Check("gs_product", gs.det_sq() == det_sq))

    rows = reduced.vectors
    longest = max(linalg.norm_sq(r) for r in rows)
    rhs = 2 ** (k - 1) * n * det_sq
    if inject_bug:
        out.append(Check("lemma3_bound", longest > rhs, Fraction(longest), Fraction(rhs)))
    else:
        out.append(le("lemma3_bound", longest, rhs))

    t4 = lattice.check_theorem4_bound(reduced, det_sq)
    if t4.applies:
        out.append(Check("theorem4_bound", t4.holds, Fraction(t4.max_norm_sq), t4.bound_sq))

    target = random_target(rng, rows)
    res = lattice.babai_nearest(reduced, target, gs)
    out.append(le("babai_error", res.error_sq, res.bound))

    if minima and k <= MINIMA_MAX_RANK:
        sm = lattice.successive_minima(reduced)
        out.extend(lattice.check_minima_inequalities(reduced, gs, sm, det_sq))
    return out


@dataclass
class BoundsSummary:
    trials: int = 0
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed

    def add(self, trial: int, checks):
        for c in checks:
            key = c.name.split("[")[0]
            if c.holds:
                self.passed[key] += 1
            else:
                self.failed[key] += 1
                self.failures.append((trial, c))

    def table(self) -> str:
        names = sorted(set(self.passed) | set(self.failed))
        lines = [f"{'check':<22}{'passed':>8}{'failed':>8}"]
        lines += [f"{name:<22}{self.passed[name]:>8}{self.failed[name]:>8}" for name in names]
        lines.append(f"trials: {self.trials}  status: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def verify_bounds(trials: int, seed: int = 1, max_n: int = 6, max_k: int = 4, max_entry: int = 20,
                  minima: bool = True, inject_bug: bool = False) -> BoundsSummary:
    """Run ``lattice_checks`` on ``trials`` random kernel lattices (deterministic in ``seed``)."""
    if max_n < 2 or max_k < 1:
        raise ValueError("need max_n >= 2 and max_k >= 1")
    rng = SplitMix64(seed)
    summary = BoundsSummary()
    for t in range(trials):
        n = rng.randint(2, max_n)
        k = rng.randint(1, min(max_k, n - 1))
        A, kernel = random_kernel_lattice(rng, n, k, max_entry)
        summary.add(t, lattice_checks(A, kernel, rng, minima=minima, inject_bug=inject_bug))
        summary.trials += 1
    return summary
