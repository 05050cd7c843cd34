"""
ChainCensus — Exact Arithmetic
Comparisons of 2^a against 3^b, floors and ceilings of quotients of linear
forms a + b·log2(3), and the small combinatorial kernels every count is
built from. Nothing in here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from itertools import accumulate
from typing import Sequence

from calculus.errors import NonPositiveDenominatorError, QuotientOutOfRangeError

# Counts are plain Python ints: exact at any magnitude.
Count = int


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Rounding(Enum):
    FLOOR = "floor"
    CEIL = "ceil"


def cmp_pow23(a: int, b: int) -> Ordering:
    """Compare 2^a with 3^b exactly, for signed exponents."""
    left = (1 << max(a, 0)) * 3 ** max(-b, 0)
    right = (1 << max(-a, 0)) * 3 ** max(b, 0)
    if left < right:
        return Ordering.LESS
    if left > right:
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class LinForm:
    """The real number a + b·λ with λ = log2(3)."""
    a: int
    b: int = 0

    def sign(self) -> int:
        # a + bλ > 0  ⇔  2^a · 3^b > 1  ⇔  2^a > 3^(-b)
        return int(cmp_pow23(self.a, -self.b))

    def __add__(self, other: LinForm) -> LinForm:
        return LinForm(self.a + other.a, self.b + other.b)

    def __sub__(self, other: LinForm) -> LinForm:
        return LinForm(self.a - other.a, self.b - other.b)

    def __neg__(self) -> LinForm:
        return LinForm(-self.a, -self.b)

    def __mul__(self, k: int) -> LinForm:
        return LinForm(self.a * k, self.b * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}·log2(3)"


LAMBDA = LinForm(0, 1)
LAMBDA_MINUS_ONE = LinForm(-1, 1)


def floor_linfrac(num: LinForm, den: LinForm, mode: Rounding = Rounding.FLOOR) -> int:
    """
    Exact ⌊num/den⌋ or ⌈num/den⌉.

    k is bracketed by exponential search from 0, then narrowed by binary
    search, each step deciding sign(num − k·den) with cmp_pow23.
    """
    if den.sign() <= 0:
        raise NonPositiveDenominatorError(f"denominator {den} is not strictly positive")
    if mode is Rounding.CEIL:
        return -floor_linfrac(-num, den, Rounding.FLOOR)

    bound = 4 * (abs(num.a) + abs(num.b) + abs(den.a) + abs(den.b)) + 8

    def fits(k: int) -> bool:
        return (num - den * k).sign() >= 0

    if fits(0):
        lo, step = 0, 1
        while fits(step):
            lo = step
            step *= 2
            if step > 2 * bound:
                raise QuotientOutOfRangeError(f"{num} / {den} exceeds |k| <= {bound}")
        hi = step
    else:
        hi, step = 0, 1
        while not fits(-step):
            hi = -step
            step *= 2
            if step > 2 * bound:
                raise QuotientOutOfRangeError(f"{num} / {den} exceeds |k| <= {bound}")
        lo = -step

    # invariant: fits(lo) and not fits(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits(mid):
            lo = mid
        else:
            hi = mid
    if abs(lo) > bound:
        raise QuotientOutOfRangeError(f"{num} / {den} = {lo} exceeds |k| <= {bound}")
    return lo


def floor_mul_log32(m: int) -> int:
    """⌊m·log3(2)⌋, i.e. the k with 3^k ≤ 2^m < 3^(k+1)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return floor_linfrac(LinForm(m, 0), LAMBDA, Rounding.FLOOR)


def ceil_mul_log32(m: int) -> int:
    """⌈m·log3(2)⌉."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return floor_linfrac(LinForm(m, 0), LAMBDA, Rounding.CEIL)


def binomial(n: int, k: int) -> Count:
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def isqrt(v: int) -> int:
    if v < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(v)


def nested_nondecreasing_count(bounds: Sequence[int]) -> Count:
    """
    Number of tuples 1 <= r_1 <= r_2 <= ... <= r_e with r_i <= bounds[i].

    bounds[0] bounds the outermost sum. Dynamic programme over the last
    value: ways[v-1] counts prefixes ending in v.
    """
    if not bounds:
        return 1
    if bounds[0] < 1:
        return 0
    ways = [1] * bounds[0]
    for b in bounds[1:]:
        if b < 1:
            return 0
        prefix = list(accumulate(ways))
        top = len(prefix)
        ways = [prefix[min(v, top) - 1] for v in range(1, b + 1)]
    return sum(ways)
