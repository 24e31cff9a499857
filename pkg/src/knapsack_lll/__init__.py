"""Exact LLL-based integer points for knapsack polytopes."""

from .errors import (
    BadShape,
    DependentBasis,
    EmptyPolytope,
    EnumerationBudgetExceeded,
    GcdNotOne,
    KnapsackError,
    NotPointed,
    NotPrimitive,
    RankDeficient,
    TargetOutsideSpan,
)
from .solver import KnapsackInstance, SolveCertificate, classify_regime, solve, validate, verify_certificate

__version__ = "0.1.0"
