"""
ChainCensus — Collatz Maps
The elementary maps A(v) = 3v + 1 (odd v) and B(v) = v / 2 (even v), and a
capped trajectory runner used by the scalar predicates and the oracles.
Values are Python ints checked against 2^VALUE_BITS: overflow raises.
"""

from __future__ import annotations

from dataclasses import dataclass

from config import settings
from calculus.errors import NotEvenError, NotOddError, ValueOverflowError

VALUE_LIMIT = 1 << settings.VALUE_BITS


def _checked(v: int) -> int:
    if v >= VALUE_LIMIT:
        raise ValueOverflowError(f"value {v} exceeds the {settings.VALUE_BITS}-bit limit")
    return v


def a_step(v: int) -> int:
    if v % 2 == 0:
        raise NotOddError(f"A is applied to odd values only, got {v}")
    return _checked(3 * v + 1)


def b_step(v: int) -> int:
    if v % 2 != 0:
        raise NotEvenError(f"B is applied to even values only, got {v}")
    return v // 2


def ba_step(v: int) -> int:
    """One BA cell: (3v + 1) / 2 for odd v."""
    return b_step(a_step(v))


@dataclass(frozen=True)
class TrajectoryOutcome:
    resolved: bool
    value: int          # first value below threshold, or the last value reached
    steps: int          # operations applied (A and B both count)
    b_steps: int
    minimum: int        # running minimum over the visited values, start included

    def to_dict(self) -> dict:
        return {
            "resolved": self.resolved,
            "value": self.value,
            "steps": self.steps,
            "b_steps": self.b_steps,
            "minimum": self.minimum,
        }


def run_until_below(v: int, threshold: int, max_b_steps: int) -> TrajectoryOutcome:
    """
    Iterate A (on odd) and B (on even) until a value drops below threshold,
    or until max_b_steps halvings have been applied.
    """
    if v < 1 or threshold < 1 or max_b_steps < 0:
        raise ValueError("run_until_below needs v >= 1, threshold >= 1, max_b_steps >= 0")
    _checked(v)

    steps = b_steps = 0
    minimum = v
    while v >= threshold:
        if b_steps >= max_b_steps:
            return TrajectoryOutcome(False, v, steps, b_steps, minimum)
        if v % 2:
            v = a_step(v)
        else:
            v = b_step(v)
            b_steps += 1
        steps += 1
        minimum = min(minimum, v)
    return TrajectoryOutcome(True, v, steps, b_steps, minimum)
