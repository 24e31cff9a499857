from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class Check:
    """Outcome of one exact inequality or identity check.

    ``lhs``/``rhs`` are the compared quantities (squared where the original
    statement involves norms); ``margin`` is ``rhs - lhs`` when both are
    rational, otherwise None.
    """

    name: str
    holds: bool
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None

    @property
    def margin(self) -> Optional[Fraction]:
        if self.lhs is None or self.rhs is None:
            return None
        return Fraction(self.rhs) - Fraction(self.lhs)


def le(name, lhs, rhs) -> Check:
    return Check(name, lhs <= rhs, Fraction(lhs), Fraction(rhs))


def all_hold(checks) -> bool:
    return all(c.holds for c in checks)
