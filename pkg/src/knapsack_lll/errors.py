"""Exception types raised by the library."""


class KnapsackError(Exception):
    """Base class for all library errors."""


class RankDeficient(KnapsackError):
    pass


class NotPrimitive(KnapsackError):
    pass


class NotPointed(KnapsackError):
    pass


class BadShape(KnapsackError):
    pass


class DependentBasis(KnapsackError):
    pass


class TargetOutsideSpan(KnapsackError):
    pass


class EnumerationBudgetExceeded(KnapsackError):
    pass


class EmptyPolytope(KnapsackError):
    pass


class GcdNotOne(KnapsackError):
    pass
