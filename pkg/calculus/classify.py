"""
ChainCensus — Chain and Integer Taxonomy
Inequality 2^(beta-1) > 3^alpha and everything built on it: official and
non-official shapes, u-comprehensive parameters, incidental integers under
a selectable predicate, generative seeds with their proper successors, and
the concerned intervals I_K.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from cachetools import cached, LRUCache

from calculus.chains import Cell, ChainShape, ChainTrace, extract_chain
from calculus.errors import (
    ChainInvariantError,
    IntervalRangeError,
    InvalidUError,
    NotOddError,
    PreconditionViolatedError,
)
from calculus.exactmath import LAMBDA_MINUS_ONE, LinForm, Ordering, Rounding, cmp_pow23, floor_linfrac


class ShapeClass(Enum):
    OFFICIAL = "official"
    NON_OFFICIAL = "non_official"
    UNSATISFYING = "unsatisfying"


class IntegerOutcome(Enum):
    OFFICIAL_SHAPE = "official"
    NON_OFFICIAL_SHAPE = "non_official"
    INCIDENTAL = "incidental"
    UNRESOLVED = "unresolved"


# ── Inequality ───────────────────────────────────────────────────────────────

def eq_holds(alpha: int, beta: int) -> bool:
    """2^(beta-1) > 3^alpha."""
    if alpha < 0 or beta < 1:
        raise ValueError("need alpha >= 0 and beta >= 1")
    return cmp_pow23(beta - 1, alpha) is Ordering.GREATER


def max_satisfying_alpha(m: int) -> int:
    """Largest alpha with eq_holds(alpha, m), or -1 when none does."""
    alpha = -1
    while eq_holds(alpha + 1, m):
        alpha += 1
    return alpha


def classify_shape(shape: ChainShape) -> ShapeClass:
    alphas = shape.alpha_prefixes()
    if eq_holds(alphas[-1], shape.beta):
        return ShapeClass.OFFICIAL
    # whole-cell prefixes are chains C_m in their own right
    if any(eq_holds(alphas[m - 1], m) for m in range(1, shape.beta)):
        return ShapeClass.NON_OFFICIAL
    return ShapeClass.UNSATISFYING


@cached(cache=LRUCache(maxsize=512))
def ucc_params(u: int) -> tuple[int, int]:
    """(beta, alpha) of a u-comprehensive chain."""
    if u < 2:
        raise InvalidUError(f"u-comprehensive chains need u >= 2, got {u}")
    beta = floor_linfrac(LinForm(-1, u), LAMBDA_MINUS_ONE, Rounding.FLOOR)
    alpha = floor_linfrac(LinForm(u - 1, 0), LAMBDA_MINUS_ONE, Rounding.FLOOR)
    # 1 < 2^(beta-1) / 3^alpha < 3/2
    if beta - alpha != u or not eq_holds(alpha, beta) or cmp_pow23(beta, alpha + 1) is not Ordering.LESS:
        raise ChainInvariantError(f"u={u}: (beta, alpha)=({beta}, {alpha}) violates the comprehensive sandwich")
    return beta, alpha


# ── Incidence predicates ─────────────────────────────────────────────────────

class Window(Enum):
    FINAL = "final-below"
    BOUNDARY = "boundary-below"
    POSTB = "postb-below"


@dataclass(frozen=True)
class IncidencePredicate:
    """
    Which values of an unsatisfying chain are compared against 2^n.

    FINAL: the final value only. BOUNDARY: every cell-boundary value.
    POSTB: every boundary value plus the odd part of the final value
    (the trailing halvings after the last cell).
    """
    window: Window = Window.FINAL
    strict: bool = True

    @property
    def token(self) -> str:
        return f"{self.window.value}-{'strict' if self.strict else 'nonstrict'}"

    @classmethod
    def parse(cls, token: str) -> IncidencePredicate:
        text = token.strip().lower().replace("/", "-").replace("_", "-")
        strict = True
        if text.endswith("-nonstrict"):
            text, strict = text[: -len("-nonstrict")], False
        elif text.endswith("-strict"):
            text = text[: -len("-strict")]
        for window in Window:
            if window.value == text:
                return cls(window, strict)
        raise ValueError(f"unknown predicate token {token!r}")

    def below(self, value: int, n: int) -> bool:
        bound = 1 << n
        return value < bound if self.strict else value <= bound

    def accepts(self, trace: ChainTrace, n: int) -> bool:
        if self.window is Window.FINAL:
            watched = [trace.final]
        elif self.window is Window.BOUNDARY:
            watched = list(trace.boundary_values)
        else:
            final = trace.final
            watched = list(trace.boundary_values) + [final // (final & -final)]
        return any(self.below(v, n) for v in watched)

    def __str__(self) -> str:
        return self.token


ALL_PREDICATES: tuple[IncidencePredicate, ...] = tuple(
    IncidencePredicate(window, strict) for window in Window for strict in (True, False)
)


def classify_integer(L: int, n: int, pred: IncidencePredicate) -> IntegerOutcome:
    if L % 2 == 0:
        raise NotOddError(f"integer classification is for odd seeds, got {L}")
    if not (1 << n) < L <= (1 << (n + 1)):
        raise IntervalRangeError(f"{L} is outside ]2^{n}, 2^{n + 1}]")

    trace = extract_chain(L, n)
    shape_class = classify_shape(trace.shape)
    if shape_class is ShapeClass.OFFICIAL:
        return IntegerOutcome.OFFICIAL_SHAPE
    if shape_class is ShapeClass.NON_OFFICIAL:
        return IntegerOutcome.NON_OFFICIAL_SHAPE
    return IntegerOutcome.INCIDENTAL if pred.accepts(trace, n) else IntegerOutcome.UNRESOLVED


# ── Generative and proper chains ─────────────────────────────────────────────

def generative_lower_bound(n: int) -> int:
    """⌈(2/3)·2^n⌉, the smallest integer of the generative window."""
    return -(-(1 << (n + 1)) // 3)


def is_generative(L: int, n: int) -> bool:
    if L % 2 == 0:
        raise NotOddError(f"generative seeds are odd, got {L}")
    if not generative_lower_bound(n) <= L <= (1 << n):
        return False
    trace = extract_chain(L, n)
    if classify_shape(trace.shape) is not ShapeClass.UNSATISFYING:
        return False
    # BA(L) must be odd, so the second cell is BA
    return n >= 2 and trace.shape.cells[1] is Cell.BA


def derive_proper(L: int, n: int) -> int:
    """Seed L' = (3L+1)/2 of the proper chain generated by L."""
    if not is_generative(L, n):
        raise PreconditionViolatedError(f"{L} is not a generative seed at n={n}")
    proper = (3 * L + 1) // 2
    if proper % 2 == 0 or not (1 << n) < proper < (1 << (n + 1)):
        raise ChainInvariantError(f"proper seed {proper} of {L} left ]2^{n}, 2^{n + 1}[ or is even")
    return proper


# ── Concerned intervals ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class IntervalK:
    """I_K = ]lo·2^n, hi·2^n] with exact rational lo < hi."""
    n: int
    K: int
    lo: Fraction
    hi: Fraction

    def scaled(self) -> tuple[int, int]:
        """Integer bounds (exclusive low, inclusive high) after scaling by 2^n."""
        scale = 1 << self.n
        return math.floor(self.lo * scale), math.floor(self.hi * scale)

    def contains(self, L: int) -> bool:
        return self.lo * (1 << self.n) < L <= self.hi * (1 << self.n)

    def to_dict(self) -> dict:
        lo_int, hi_int = self.scaled()
        return {"n": self.n, "K": self.K, "lo": str(self.lo), "hi": str(self.hi), "lo_int": lo_int, "hi_int": hi_int}


def interval_k(n: int, K: int) -> IntervalK:
    if K < 1:
        raise ValueError("K must be >= 1")
    lo = Fraction(2 ** (2 * (K + 1) - 1) + 1, 3 * 2 ** (2 * K))
    hi = Fraction(2 ** (2 * K - 1) + 1, 3 * 2 ** (2 * (K - 1)))
    return IntervalK(n, K, lo, hi)
