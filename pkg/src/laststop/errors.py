"""Exception types raised across the package."""


class ParamError(ValueError):
    """Model or strategy parameters outside the accepted domain."""


class EqualCaseRequired(ParamError):
    """An equal-probability (p == p') formula was called on an unequal model."""


class InvalidArgs(ValueError):
    """Malformed call: missing known parameter, degenerate pair, bad ordering."""


class DomainError(ValueError):
    """Argument outside the domain of a special function or asymptotic map."""


class WBranchError(DomainError):
    """Lambert W_{-1} argument below -1/e."""


class NumericalError(ArithmeticError):
    """A numerical procedure failed to produce a result."""


class NoSignChange(NumericalError):
    """Bracket endpoints do not straddle a root."""


class MaxIterations(NumericalError):
    """Iteration budget exhausted before reaching the tolerance."""
