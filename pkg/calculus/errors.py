"""
ChainCensus — Error Types
Every named failure derives from ChainCensusError and from the closest
builtin, so callers may catch either.
"""


class ChainCensusError(Exception):
    """Base class for all domain errors."""


# ── exactmath ────────────────────────────────────────────────────────────────

class NonPositiveDenominatorError(ChainCensusError, ArithmeticError):
    pass


class QuotientOutOfRangeError(ChainCensusError, ArithmeticError):
    pass


# ── dynamics / chains ────────────────────────────────────────────────────────

class NotOddError(ChainCensusError, ValueError):
    pass


class NotEvenError(ChainCensusError, ValueError):
    pass


class ValueOverflowError(ChainCensusError, OverflowError):
    pass


class InvalidShapeError(ChainCensusError, ValueError):
    pass


class ShapeUnrealizableError(ChainCensusError):
    pass


# ── classify / counting ──────────────────────────────────────────────────────

class InvalidUError(ChainCensusError, ValueError):
    pass


class IntervalRangeError(ChainCensusError, ValueError):
    pass


class PreconditionViolatedError(ChainCensusError, ValueError):
    pass


class TooSmallNError(ChainCensusError, ValueError):
    pass


# ── census ───────────────────────────────────────────────────────────────────

class GuardExceededError(ChainCensusError, ValueError):
    pass


class ChainInvariantError(ChainCensusError):
    """A postcondition that the mathematics guarantees did not hold."""


# ── output ───────────────────────────────────────────────────────────────────

class MalformedTableError(ChainCensusError, ValueError):
    """A CSV handed to the plotter lacks the n column or a requested series."""
