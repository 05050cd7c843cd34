"""
ChainCensus — Brute-Force Oracles
Exhaustive shape enumeration, exhaustive classification of the odd
integers of ]2^n, 2^(n+1)], and the generative-seed census. The kernels
run chains for a whole block of seeds at once in numpy int64; every block
is checked against KERNEL_VALUE_LIMIT before 3v+1 is formed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from config import settings
from calculus.classify import (
    ALL_PREDICATES,
    IncidencePredicate,
    Window,
    generative_lower_bound,
    interval_k,
    max_satisfying_alpha,
)
from calculus.counting import delta
from calculus.errors import ChainInvariantError, GuardExceededError, TooSmallNError, ValueOverflowError
from census.partition import Subrange, partition_range, run_partitioned
from utils.alerts import MismatchLevel, dispatch_mismatch
from utils.cache import CensusStore, census_cache, census_key
from utils.logger import get_logger

log = get_logger(__name__)

COUNT_KEYS = ("official", "non_official", "incidental", "unresolved")


def check_guard(n: int, lo: int, hi: Optional[int] = None, what: str = "census") -> None:
    hi = settings.CENSUS_MAX_N if hi is None else hi
    if n < lo:
        raise TooSmallNError(f"{what} needs n >= {lo}, got {n}")
    if n > hi:
        raise GuardExceededError(f"{what} is guarded at n <= {hi}, got {n} (raise it with --unsafe-max-n)")


# ── Vectorised chain kernel ──────────────────────────────────────────────────

@dataclass
class ChainBlock:
    """Per-seed chain summaries for one block of odd seeds."""
    seeds: np.ndarray
    alpha: np.ndarray
    final: np.ndarray
    boundary_min: np.ndarray
    prefix_ok: np.ndarray     # some whole-cell prefix C_m, m < n, satisfies the inequality
    official: np.ndarray
    codes: np.ndarray

    @property
    def non_official(self) -> np.ndarray:
        return ~self.official & self.prefix_ok

    @property
    def unsatisfying(self) -> np.ndarray:
        return ~self.official & ~self.prefix_ok


def _max_alpha_table(n: int) -> list[int]:
    # index m holds the largest alpha with 2^(m-1) > 3^alpha; index 0 unused
    return [-1] + [max_satisfying_alpha(m) for m in range(1, n + 1)]


def chain_block(seeds: np.ndarray, n: int, max_alpha: Optional[Sequence[int]] = None) -> ChainBlock:
    seeds = np.asarray(seeds, dtype=np.int64)
    if max_alpha is None:
        max_alpha = _max_alpha_table(n)

    v = seeds.copy()
    alpha = np.zeros_like(v)
    codes = np.zeros_like(v)
    boundary_min = np.full_like(v, np.iinfo(np.int64).max)
    prefix_ok = np.zeros(v.shape, dtype=bool)

    for m in range(1, n + 1):
        if v.size and int(v.max()) >= settings.KERNEL_VALUE_LIMIT:
            raise ValueOverflowError(
                f"chain value reached 2^61 at cell {m}; the int64 kernel cannot continue"
            )
        odd = (v & 1) == 1
        v = np.where(odd, (3 * v + 1) >> 1, v >> 1)
        alpha += odd
        if m >= 2:
            codes |= odd.astype(np.int64) << (m - 2)
        np.minimum(boundary_min, v, out=boundary_min)
        if m < n:
            prefix_ok |= alpha <= max_alpha[m]

    official = alpha <= max_alpha[n]
    return ChainBlock(seeds, alpha, v, boundary_min, prefix_ok, official, codes)


def _below(values: np.ndarray, n: int, strict: bool) -> np.ndarray:
    bound = 1 << n
    return values < bound if strict else values <= bound


def predicate_mask(block: ChainBlock, n: int, pred: IncidencePredicate) -> np.ndarray:
    """Seeds whose chain values dip below 2^n under pred (shape ignored)."""
    if pred.window is Window.FINAL:
        watched = block.final
    elif pred.window is Window.BOUNDARY:
        watched = block.boundary_min
    else:
        final = block.final
        watched = np.minimum(block.boundary_min, final // (final & -final))
    return _below(watched, n, pred.strict)


def iter_odd_blocks(sub: Subrange, chunk: int) -> Iterable[np.ndarray]:
    first, count = sub.odd_bounds()
    for start in range(0, count, chunk):
        size = min(chunk, count - start)
        lo = first + 2 * start
        yield np.arange(lo, lo + 2 * size, 2, dtype=np.int64)


# ── Shape census ─────────────────────────────────────────────────────────────

@dataclass
class ShapeCensusReport:
    n: int
    counts: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def satisfying(self) -> int:
        return self.counts["official"] + self.counts["non_official"]

    def to_dict(self) -> dict:
        return {"n": self.n, "counts": dict(self.counts), "total": self.total, "elapsed": round(self.elapsed, 6)}


def shape_census(n: int, max_n: Optional[int] = None) -> ShapeCensusReport:
    """Classify every BA-initial shape of n cells, enumerated by integer code."""
    check_guard(n, settings.CENSUS_MIN_N, max_n, "shape census")
    t0 = time.perf_counter()
    max_alpha = _max_alpha_table(n)
    totals = {"official": 0, "non_official": 0, "unsatisfying": 0}

    for start in range(0, 1 << (n - 1), settings.CENSUS_CHUNK_SIZE):
        stop = min(start + settings.CENSUS_CHUNK_SIZE, 1 << (n - 1))
        codes = np.arange(start, stop, dtype=np.int64)
        alpha = np.ones_like(codes)
        prefix_ok = np.zeros(codes.shape, dtype=bool)
        for m in range(2, n + 1):
            # the m=1 prefix [BA] never satisfies 1 > 3
            prefix_ok |= alpha <= max_alpha[m - 1]
            alpha += (codes >> (m - 2)) & 1
        official = alpha <= max_alpha[n]
        totals["official"] += int(official.sum())
        totals["non_official"] += int((~official & prefix_ok).sum())
        totals["unsatisfying"] += int((~official & ~prefix_ok).sum())

    report = ShapeCensusReport(n, totals, time.perf_counter() - t0)
    log.info("Shape census n={}: {} in {:.3f}s", n, totals, report.elapsed)
    return report


# ── Integer census ───────────────────────────────────────────────────────────

@dataclass
class CensusReport:
    n: int
    predicate: str
    counts: dict[str, int]
    evens: int
    elapsed: float = 0.0
    partition_count: int = 1

    @property
    def t(self) -> int:
        return self.counts["incidental"]

    @property
    def gamma_plus_t(self) -> int:
        return self.counts["official"] + self.counts["non_official"] + self.counts["incidental"]

    @property
    def odd_total(self) -> int:
        return sum(self.counts[k] for k in COUNT_KEYS)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "predicate": self.predicate,
            "counts": {k: self.counts[k] for k in COUNT_KEYS},
            "evens": self.evens,
            "elapsed": round(self.elapsed, 6),
            "partition_count": self.partition_count,
        }

    @classmethod
    def from_dict(cls, data: dict) -> CensusReport:
        return cls(
            n=int(data["n"]),
            predicate=str(data["predicate"]),
            counts={k: int(data["counts"][k]) for k in COUNT_KEYS},
            evens=int(data["evens"]),
            elapsed=float(data.get("elapsed", 0.0)),
            partition_count=int(data.get("partition_count", 1)),
        )


def _count_subrange(sub: Subrange, n: int, preds: Sequence[IncidencePredicate], max_alpha: list[int]) -> np.ndarray:
    # rows follow preds, columns follow COUNT_KEYS
    acc = np.zeros((len(preds), len(COUNT_KEYS)), dtype=np.int64)
    for seeds in iter_odd_blocks(sub, settings.CENSUS_CHUNK_SIZE):
        block = chain_block(seeds, n, max_alpha)
        official = int(block.official.sum())
        non_official = int(block.non_official.sum())
        unsat = block.unsatisfying
        n_unsat = int(unsat.sum())
        for i, pred in enumerate(preds):
            incidental = int((unsat & predicate_mask(block, n, pred)).sum())
            acc[i] += (official, non_official, incidental, n_unsat - incidental)
    return acc


def _load_stored(n: int, token: str, store: Optional[CensusStore]) -> Optional[CensusReport]:
    if store is None:
        return None
    record = store.load(n, token)
    if record is None:
        return None
    try:
        return CensusReport.from_dict(record)
    except (KeyError, TypeError, ValueError) as e:
        log.warning("Ignoring malformed census record n={} {}: {}", n, token, e)
        return None


def _lookup(n: int, token: str, store: Optional[CensusStore]) -> Optional[CensusReport]:
    """Memo first, then the file store; store hits are memoised."""
    return census_cache.get_or_fetch(census_key(n, token), _load_stored, n, token, store)


def integer_census_variants(
    n: int,
    preds: Sequence[IncidencePredicate] = ALL_PREDICATES,
    partitions: int = 1,
    threads: Optional[int] = None,
    max_n: Optional[int] = None,
    store: Optional[CensusStore] = None,
) -> dict[str, CensusReport]:
    """
    One pass over the odd integers of ]2^n, 2^(n+1)] producing a CensusReport
    per predicate. Cached reports are reused; only missing tokens are counted.
    """
    check_guard(n, settings.CENSUS_MIN_N, max_n)
    if partitions < 1:
        raise ValueError("partitions must be >= 1")

    reports: dict[str, CensusReport] = {}
    missing: list[IncidencePredicate] = []
    for pred in preds:
        cached = _lookup(n, pred.token, store)
        if cached is not None:
            reports[pred.token] = cached
        else:
            missing.append(pred)
    if not missing:
        return reports

    threads = settings.CENSUS_THREADS if threads is None else max(1, threads)
    log.info("Census n={} predicates={} partitions={} threads={}",
             n, [p.token for p in missing], partitions, threads)

    t0 = time.perf_counter()
    max_alpha = _max_alpha_table(n)
    subranges = partition_range((1 << n) + 1, 1 << (n + 1), partitions)
    partials = run_partitioned(lambda sub: _count_subrange(sub, n, missing, max_alpha), subranges, threads)
    totals = np.sum(partials, axis=0)
    elapsed = time.perf_counter() - t0

    evens = 1 << (n - 1)
    for i, pred in enumerate(missing):
        counts = {k: int(totals[i][j]) for j, k in enumerate(COUNT_KEYS)}
        report = CensusReport(n, pred.token, counts, evens, elapsed, len(subranges))
        if report.odd_total != evens:
            raise ChainInvariantError(f"census n={n} classified {report.odd_total} odd integers, expected {evens}")
        census_cache.set(census_key(n, pred.token), report)
        if store is not None:
            store.save(n, pred.token, {k: v for k, v in report.to_dict().items() if k not in ("n", "predicate")})
        reports[pred.token] = report

    log.info("Census n={} done in {:.3f}s", n, elapsed)
    return reports


def integer_census(
    n: int,
    pred: IncidencePredicate,
    partitions: int = 1,
    threads: Optional[int] = None,
    max_n: Optional[int] = None,
    store: Optional[CensusStore] = None,
) -> CensusReport:
    return integer_census_variants(n, [pred], partitions, threads, max_n, store)[pred.token]


def chain_codes(n: int, max_n: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """(odd seeds of ]2^n, 2^(n+1)], shape code of each seed's chain)."""
    check_guard(n, 1, max_n, "shape map")
    seeds = np.arange((1 << n) + 1, 1 << (n + 1), 2, dtype=np.int64)
    return seeds, chain_block(seeds, n).codes


# ── Generative census ────────────────────────────────────────────────────────

@dataclass
class GenerativeReport:
    n: int
    g_count: int
    proper_in_range: int
    delta_formula: int
    per_interval_K: dict[int, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def bound_holds(self) -> bool:
        return self.g_count >= self.delta_formula

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "g_count": self.g_count,
            "proper_in_range": self.proper_in_range,
            "delta_formula": self.delta_formula,
            "bound_holds": self.bound_holds,
            "per_interval_K": {str(K): c for K, c in sorted(self.per_interval_K.items())},
            "elapsed": round(self.elapsed, 6),
        }


def generative_seeds(n: int, max_n: Optional[int] = None) -> np.ndarray:
    """Odd L in [⌈2/3·2^n⌉, 2^n] with an unsatisfying chain whose second cell is BA."""
    check_guard(n, 2, max_n, "generative seeds")
    lo = generative_lower_bound(n) | 1
    seeds = np.arange(lo, (1 << n) + 1, 2, dtype=np.int64)
    block = chain_block(seeds, n)
    second_ba = (block.codes & 1) == 1
    return seeds[block.unsatisfying & second_ba]


def generative_census(n: int, max_n: Optional[int] = None) -> GenerativeReport:
    check_guard(n, settings.GENERATIVE_MIN_N, max_n, "generative census")
    t0 = time.perf_counter()
    seeds = generative_seeds(n, max_n)

    proper = (3 * seeds + 1) >> 1
    in_range = int((((proper & 1) == 1) & (proper > (1 << n)) & (proper < (1 << (n + 1)))).sum())

    per_K: dict[int, int] = {}
    floor_lo = generative_lower_bound(n) - 1
    K = 1
    while True:
        lo_int, hi_int = interval_k(n, K).scaled()
        count = int(np.searchsorted(seeds, hi_int, side="right") - np.searchsorted(seeds, lo_int, side="right"))
        if count:
            per_K[K] = count
        if lo_int <= floor_lo:
            break
        K += 1

    report = GenerativeReport(n, int(seeds.size), in_range, delta(n).total, per_K, time.perf_counter() - t0)
    if report.proper_in_range != report.g_count:
        dispatch_mismatch(MismatchLevel.CRITICAL, "generative", f"n={n}: proper seeds left the interval",
                          report.to_dict())
    if not report.bound_holds:
        dispatch_mismatch(MismatchLevel.WARNING, "generative", f"n={n}: g_count below delta(n)",
                          {"g_count": report.g_count, "delta": report.delta_formula})
    log.info("Generative census n={}: g={} delta={}", n, report.g_count, report.delta_formula)
    return report
