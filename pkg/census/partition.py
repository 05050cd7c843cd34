"""
ChainCensus — Range Partitioning
Splits an integer range into ordered disjoint subranges and runs a worker
over each one in a thread pool. Results come back in subrange order so the
merge is independent of completion order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

from utils.logger import get_logger

log = get_logger(__name__)

R = TypeVar("R")


@dataclass(frozen=True)
class Subrange:
    """Closed interval [lo, hi]."""
    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def odd_bounds(self) -> tuple[int, int]:
        """(first odd >= lo, count of odd integers in the range)."""
        first = self.lo | 1
        if first > self.hi:
            return first, 0
        return first, (self.hi - first) // 2 + 1


def partition_range(lo: int, hi: int, parts: int) -> list[Subrange]:
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if parts < 1:
        raise ValueError("parts must be >= 1")

    size = hi - lo + 1
    parts = min(parts, size)
    base, extra = divmod(size, parts)
    out, start = [], lo
    for i in range(parts):
        length = base + (1 if i < extra else 0)
        out.append(Subrange(start, start + length - 1))
        start += length
    return out


def run_partitioned(
    worker: Callable[[Subrange], R],
    subranges: Sequence[Subrange],
    threads: int,
) -> list[R]:
    """Apply worker to every subrange; results are in subrange order."""
    if threads <= 1 or len(subranges) <= 1:
        return [worker(sub) for sub in subranges]
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="census") as pool:
        results = list(pool.map(worker, subranges))
    log.debug("Merged {} subranges over {} threads", len(subranges), threads)
    return results
