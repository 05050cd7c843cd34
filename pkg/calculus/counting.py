"""
ChainCensus — Closed-Form Counts
gamma(n): official plus non-official chain shapes of length n.
delta(n): lower bound on proper chains generated from [2/3·2^n, 2^n].
Every floor and ceiling of a log2(3) expression goes through exactmath;
summation ranges are written exactly as the formulas state them, so an
empty range simply contributes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from calculus.classify import ucc_params
from calculus.errors import TooSmallNError
from calculus.exactmath import (
    LAMBDA_MINUS_ONE,
    Count,
    LinForm,
    Rounding,
    binomial,
    ceil_mul_log32,
    floor_linfrac,
    floor_mul_log32,
    isqrt,
    nested_nondecreasing_count,
)
from utils.alerts import MismatchLevel, dispatch_mismatch
from utils.logger import get_logger

log = get_logger(__name__)

DELTA_MIN_N = 7


# ── gamma ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GammaBreakdown:
    n: int
    term_official: Count
    term_nonofficial_nofree: Count
    term_nonofficial_free: Count

    @property
    def total(self) -> Count:
        return self.term_official + self.term_nonofficial_nofree + self.term_nonofficial_free

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "terms": {
                "official": self.term_official,
                "nonofficial_nofree": self.term_nonofficial_nofree,
                "nonofficial_free": self.term_nonofficial_free,
            },
            "total": self.total,
        }


def official_count(n: int) -> Count:
    if n < 2:
        raise ValueError("official_count needs n >= 2")
    return sum(binomial(n - 1, x - 1) for x in range(1, floor_mul_log32(n - 1) + 1))


def comprehensive_binomial(u: int) -> Count:
    """Number of u-comprehensive cores: C(beta-1, alpha-1)."""
    beta, alpha = ucc_params(u)
    return binomial(beta - 1, alpha - 1)


def w_gamma(n: int, x: int, y: int, s: int) -> int:
    """Allowed movements of the s-th free function behind an (n-x)-comprehensive core."""
    beta, alpha = ucc_params(n - x)
    wall = floor_linfrac(LinForm(s + beta - 1, -alpha), LAMBDA_MINUS_ONE, Rounding.CEIL)
    return y + 1 - alpha - wall


def gamma(n: int) -> GammaBreakdown:
    if n < 3:
        raise ValueError("gamma needs n >= 3")
    y_lo = ceil_mul_log32(n - 1)

    term_official = official_count(n)
    term_nofree = sum(comprehensive_binomial(n - y) for y in range(y_lo, n - 1))

    term_free = 0
    for y in range(y_lo, n - 2):
        for x in range(y + 1, n - 1):
            cores = comprehensive_binomial(n - x)
            if cores == 0:
                continue
            e = x - y
            bounds = [w_gamma(n, x, y, s) for s in range(e, 0, -1)]
            term_free += cores * nested_nondecreasing_count(bounds)

    return GammaBreakdown(n, term_official, term_nofree, term_free)


# ── delta ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DeltaBreakdown:
    n: int
    g: int
    per_K_per_q: dict[tuple[int, int], Count] = field(default_factory=dict)

    @property
    def total(self) -> Count:
        return self.g + sum(self.per_K_per_q.values())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "terms": {
                "g": self.g,
                "per_K_per_q": [
                    {"K": K, "q": q, "count": c} for (K, q), c in sorted(self.per_K_per_q.items())
                ],
            },
            "total": self.total,
        }

    def summands(self) -> list[Count]:
        """g followed by every (K, q) contribution in summation order."""
        return [self.g] + [c for _, c in sorted(self.per_K_per_q.items())]


def g_cap(n: int) -> int:
    """Largest concerned K: ⌊(p + √(p² − 8)) / 4⌋ with p = n − ⌊(n−1)·log3(2)⌋."""
    if n < DELTA_MIN_N:
        raise TooSmallNError(f"g(n) is defined for n >= {DELTA_MIN_N}, got {n}")
    p = n - floor_mul_log32(n - 1)
    return (p + isqrt(p * p - 8)) // 4


def h_cap(n: int, K: int) -> int:
    """Largest number of free functions q for the K-th concerned interval."""
    ceil_ratio = 0 if K == 1 else 1
    return ceil_ratio + n - (2 * K + 1) - ceil_mul_log32(n - 1)


def z_moves(n: int, K: int, q: int, s: int) -> int:
    # (s·log3(2) − 1) / (1 − log3(2)) == (s − λ) / (λ − 1)
    shift = floor_linfrac(LinForm(s, -1), LAMBDA_MINUS_ONE, Rounding.CEIL)
    return n - (2 * K + q + 1) - max(shift, 0)


def delta(n: int) -> DeltaBreakdown:
    if n < 3:
        raise ValueError("delta needs n >= 3")
    if n < DELTA_MIN_N:
        return DeltaBreakdown(n, 0, {})

    g = g_cap(n)
    contributions: dict[tuple[int, int], Count] = {}
    for K in range(1, g + 1):
        for q in range(1, h_cap(n, K) + 1):
            bounds = [z_moves(n, K, q, s) for s in range(q, 0, -1)]
            contributions[(K, q)] = nested_nondecreasing_count(bounds)
    return DeltaBreakdown(n, g, contributions)


# ── Ratio lemma ──────────────────────────────────────────────────────────────

@dataclass
class MonotonicityReport:
    pairs: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(p["status"] != "violated" for p in self.pairs)

    @property
    def equalities(self) -> list[tuple[int, int]]:
        return [(p["n"], p["n"] + 1) for p in self.pairs if p["status"] == "equal"]

    @property
    def violations(self) -> list[tuple[int, int]]:
        return [(p["n"], p["n"] + 1) for p in self.pairs if p["status"] == "violated"]

    def to_dict(self) -> dict:
        return {"holds": self.holds, "pairs": self.pairs}


def coverage_ratio(count: Count, n: int) -> Fraction:
    """(count + 2^(n-1)) / 2^n: share of ]2^n, 2^(n+1)] accounted for, evens included."""
    return Fraction(count + (1 << (n - 1)), 1 << n)


def ratio_check(gammas: Sequence[tuple[int, Count]]) -> MonotonicityReport:
    report = MonotonicityReport()
    ordered = sorted(gammas)
    for (n0, c0), (n1, c1) in zip(ordered, ordered[1:]):
        if n1 != n0 + 1:
            raise ValueError(f"ratio_check needs consecutive n, got {n0} then {n1}")
        before, after = coverage_ratio(c0, n0), coverage_ratio(c1, n1)
        status = "equal" if after == before else ("holds" if after > before else "violated")
        report.pairs.append({
            "n": n0,
            "before": f"{before.numerator}/{before.denominator}",
            "after": f"{after.numerator}/{after.denominator}",
            "status": status,
        })
        if status == "violated":
            dispatch_mismatch(
                MismatchLevel.CRITICAL,
                "ratio-lemma",
                f"coverage ratio decreases from n={n0} to n={n1}",
                {"n": n0, "before": str(before), "after": str(after)},
            )
    log.debug("Ratio lemma checked on {} pairs, {} equalities", len(report.pairs), len(report.equalities))
    return report
