"""Exception hierarchy shared by all modules."""
from __future__ import annotations



class HypertoricError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(HypertoricError, ValueError):
    """The input violates a documented precondition."""


class DimensionMismatch(InvalidInput):
    pass


class RankDeficient(InvalidInput):
    pass


class NotSurjective(InvalidInput):
    """The integer matrix does not map onto Z^d."""


class NotUnimodular(InvalidInput):
    pass


class CokernelNotFree(InvalidInput):
    pass


class SelfLoopPresent(InvalidInput):
    pass


class Disconnected(InvalidInput):
    pass


class GroundSizeMismatch(InvalidInput):
    pass


class UnsupportedGeneratorForm(InvalidInput):
    pass


class UnsupportedL3(InvalidInput):
    pass


class NotDimensionFour(InvalidInput):
    pass


class NotDimensionSix(InvalidInput):
    pass


class PrimeTooSmall(InvalidInput):
    pass


class BudgetExceeded(HypertoricError):
    """An enumeration or search would exceed its configured budget."""


class InvariantViolation(HypertoricError):
    """A theorem-level invariant failed; indicates a bug or corrupt input."""


class NotDivisible(InvariantViolation):
    pass


class VerificationFailed(InvariantViolation):
    pass


class UnimodularityViolation(InvariantViolation):
    pass


class BoundTooSmall(UserWarning):
    """No non-quadratic generator fits under the requested degree bound."""


class IncompleteGenerators(UserWarning):
    """An irreducible element sits on the degree bound; more may exist above it."""


class SmallPrimeWarning(UserWarning):
    """Finite-field count taken at a prime not above the subdeterminant bound."""


class ParseError(InvalidInput):
    """Malformed input file; carries the 1-based line and column of the problem."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str | None = None):
        self.line, self.column, self.source = line, column, source
        where = ":".join(str(x) for x in (source, line, column) if x is not None)
        super().__init__(f"{where}: {message}" if where else message)
