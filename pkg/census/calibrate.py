"""
ChainCensus — Predicate Calibration
Runs the integer census under every incidence predicate over a range of n
and scores each predicate by exact agreement with the published T(n)
values. The best predicate wins on score, ties going to the first in
canonical order (final, boundary, postb; strict before nonstrict).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from config import settings
from calculus.classify import ALL_PREDICATES, IncidencePredicate
from census.oracle import integer_census_variants
from utils.alerts import MismatchLevel, dispatch_mismatch
from utils.cache import CensusStore
from utils.logger import get_logger

log = get_logger(__name__)


@dataclass
class CalibrationReport:
    n_min: int
    n_max: int
    predicates: list[str] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    scores: dict[str, int] = field(default_factory=dict)
    best: Optional[str] = None

    @property
    def is_empty(self) -> bool:
        return not self.rows

    def diff_rows(self, token: Optional[str] = None) -> list[dict]:
        """Per-row comparison for one predicate (the best by default)."""
        token = token or self.best
        if token is None:
            return []
        out = []
        for row in self.rows:
            got = row["t"][token]
            ref = row["reference_t"]
            out.append({
                "n": row["n"],
                "reference_t": ref,
                "census_t": got,
                "diff": None if ref is None else got - ref,
                "match": ref is not None and got == ref,
            })
        return out

    def to_dict(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "predicates": list(self.predicates),
            "scores": dict(self.scores),
            "best": self.best,
            "rows": self.rows,
            "best_diff": self.diff_rows(),
        }


def check_reference_consistency(ns: Sequence[int]) -> list[int]:
    """n where (gamma+T) - gamma from Table 1 disagrees with the T table."""
    bad = []
    for n in ns:
        if n not in settings.REFERENCE_T or n not in settings.REFERENCE_GAMMA_PLUS_T:
            continue
        derived = settings.REFERENCE_GAMMA_PLUS_T[n] - settings.REFERENCE_GAMMA[n]
        if derived != settings.REFERENCE_T[n]:
            bad.append(n)
            dispatch_mismatch(
                MismatchLevel.WARNING, "reference-tables",
                f"n={n}: Table differences give T={derived}, T table gives {settings.REFERENCE_T[n]}",
            )
    return bad


def calibrate_predicate(
    n_min: int,
    n_max: int,
    predicates: Sequence[IncidencePredicate] = ALL_PREDICATES,
    partitions: int = 1,
    threads: Optional[int] = None,
    max_n: Optional[int] = None,
    store: Optional[CensusStore] = None,
) -> CalibrationReport:
    tokens = [p.token for p in predicates]
    report = CalibrationReport(n_min, n_max, tokens, scores={t: 0 for t in tokens})
    if n_min > n_max or not tokens:
        return report

    check_reference_consistency(range(n_min, n_max + 1))

    for n in range(n_min, n_max + 1):
        reports = integer_census_variants(n, predicates, partitions, threads, max_n, store)
        ref = settings.REFERENCE_T.get(n)
        row = {"n": n, "reference_t": ref, "t": {t: reports[t].t for t in tokens}}
        report.rows.append(row)
        if ref is None:
            continue
        for t in tokens:
            report.scores[t] += reports[t].t == ref

    # max() keeps the first maximum, i.e. canonical order
    report.best = max(tokens, key=lambda t: report.scores[t])

    for diff in report.diff_rows():
        if diff["reference_t"] is not None and not diff["match"]:
            dispatch_mismatch(
                MismatchLevel.WARNING, "calibration",
                f"n={diff['n']}: {report.best} counts T={diff['census_t']}, published {diff['reference_t']}",
                diff,
            )
    log.info("Calibration over [{}, {}]: best {} with {} of {} rows",
             n_min, n_max, report.best, report.scores[report.best], len(report.rows))
    return report
