"""
ChainCensus — Property Suites
Library form of the checks behind `app.py verify`: shape periodicity on
random seeds, the shape map bijection, the coverage-ratio lemma, and the
closed-form counts against exhaustive shape enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from config import settings
from calculus.chains import ChainShape, invert_shape, theorem1_check
from calculus.counting import gamma, official_count, ratio_check
from calculus.exactmath import floor_mul_log32
from census.oracle import chain_block, chain_codes, shape_census
from utils.alerts import MismatchLevel, dispatch_mismatch
from utils.logger import get_logger

log = get_logger(__name__)

MAX_REPORTED_FAILURES = 20


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def fail(self, witness: dict) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(witness)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "notes": self.notes,
        }


def theorem1_suite(
    trials: int = settings.THEOREM1_TRIALS,
    max_z: int = settings.THEOREM1_MAX_Z,
    seed: int = settings.DEFAULT_SEED,
) -> SuiteResult:
    """Random odd L < 2^z: C_z(L) and C_z(2^z + L) share a shape, differ by 3^alpha, flip parity."""
    if trials < 0 or max_z < 1:
        raise ValueError("need trials >= 0 and max_z >= 1")
    result = SuiteResult("theorem-1")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        z = int(rng.integers(1, max_z + 1))
        L = 2 * int(rng.integers(0, 1 << (z - 1))) + 1
        check = theorem1_check(L, z)
        result.checked += 1
        if not check.passed:
            result.fail(check.to_dict())
    result.notes.append(f"{result.checked} (L, z) pairs with z <= {max_z}, seed {seed}")
    return result


def theorem2_suite(n_max: int = settings.THEOREM2_MAX_N, n_min: int = 1) -> SuiteResult:
    """The odd seeds of ]2^n, 2^(n+1)] map bijectively onto BA-initial shapes; invert_shape undoes it."""
    result = SuiteResult("theorem-2")
    for n in range(n_min, n_max + 1):
        seeds, codes = chain_codes(n, max_n=n_max)
        shapes = 1 << (n - 1)
        distinct = np.unique(codes)
        result.checked += 1
        if distinct.size != shapes or seeds.size != shapes:
            result.fail({"n": n, "seeds": int(seeds.size), "distinct_shapes": int(distinct.size)})
            continue

        seed_by_code = seeds[np.argsort(codes)]
        for code in range(shapes):
            lifted = invert_shape(ChainShape.from_code(code, n), n)
            if lifted != int(seed_by_code[code]):
                result.fail({"n": n, "code": code, "lifted": lifted, "expected": int(seed_by_code[code])})

        if n >= settings.CENSUS_MIN_N:
            block = chain_block(seeds, n)
            shapes_report = shape_census(n, max_n=n_max)
            by_integer = {"official": int(block.official.sum()), "non_official": int(block.non_official.sum())}
            by_shape = {k: shapes_report.counts[k] for k in by_integer}
            if by_integer != by_shape:
                result.fail({"n": n, "integer_counts": by_integer, "shape_counts": by_shape})

        result.notes.append(f"n={n}: {shapes} shapes ↔ {shapes} integers")
    return result


def ratio_lemma_suite(n_min: int = 3, n_max: int = 25) -> SuiteResult:
    result = SuiteResult("ratio-lemma")
    report = ratio_check([(n, gamma(n).total) for n in range(n_min, n_max + 1)])
    result.checked = len(report.pairs)
    for n0, n1 in report.violations:
        result.fail({"n": n0, "next": n1})
    if report.equalities:
        result.notes.append(f"equal ratios at {report.equalities}")
    return result


def gamma_oracle_suite(n_min: int = 3, n_max: int = settings.GAMMA_ORACLE_MAX_N) -> SuiteResult:
    """gamma(n) against the number of satisfying shapes found by enumeration."""
    result = SuiteResult("gamma-oracle")
    for n in range(n_min, n_max + 1):
        formula = gamma(n).total
        enumerated = shape_census(n, max_n=n_max).satisfying
        result.checked += 1
        if formula != enumerated:
            witness = {"n": n, "gamma": formula, "enumerated": enumerated}
            result.fail(witness)
            dispatch_mismatch(MismatchLevel.WARNING, "gamma-oracle",
                              f"n={n}: gamma={formula}, enumeration={enumerated}", witness)
    return result


def official_count_oracle(n_min: int = 3, n_max: int = settings.GAMMA_ORACLE_MAX_N) -> SuiteResult:
    result = SuiteResult("official-count")
    for n in range(n_min, n_max + 1):
        formula = official_count(n)
        enumerated = shape_census(n, max_n=n_max).counts["official"]
        result.checked += 1
        if formula != enumerated:
            result.fail({"n": n, "formula": formula, "enumerated": enumerated})
    return result


def log_floor_oracle(m_max: int = 200) -> SuiteResult:
    """floor_mul_log32(m) against bracketing 3^k <= 2^m < 3^(k+1) by powers."""
    result = SuiteResult("log-floor")
    for m in range(m_max + 1):
        k = 0
        while 3 ** (k + 1) <= (1 << m):
            k += 1
        result.checked += 1
        got = floor_mul_log32(m)
        if got != k:
            result.fail({"m": m, "floor": got, "expected": k})
    return result


SUITES = {
    "1": theorem1_suite,
    "2": theorem2_suite,
    "ratio-lemma": ratio_lemma_suite,
    "gamma-oracle": gamma_oracle_suite,
    "official-count": official_count_oracle,
    "log-floor": log_floor_oracle,
}


def run_suite(name: str, **params) -> SuiteResult:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    params = {k: v for k, v in params.items() if v is not None}
    result = suite(**params)
    log.info("Suite {}: {} checked, {} failures", result.name, result.checked, result.failure_count)
    return result


def summarise(result: SuiteResult, limit: Optional[int] = None) -> str:
    status = "PASS" if result.passed else "FAIL"
    lines = [f"{result.name}: {status} ({result.checked} checked)"]
    lines += result.notes[:limit] if limit else result.notes
    return "\n".join(lines)
