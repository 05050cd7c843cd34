"""
ChainCensus — Mismatch Dispatch
Every disagreement between an oracle and a closed-form count (or a published
table) becomes a MismatchRecord: logged through loguru and kept in an
in-memory ring buffer so reports and the CLI can list them afterwards.
"""

import datetime
from typing import Optional
from utils.logger import get_logger

log = get_logger(__name__)


class MismatchLevel:
    INFO = "INFO"
    WARNING = "WARNING"
    CRITICAL = "CRITICAL"


class MismatchRecord:
    """A single oracle-vs-formula (or census-vs-table) discrepancy."""
    def __init__(self, level: str, source: str, message: str, details: Optional[dict] = None):
        self.level = level
        self.source = source
        self.message = message
        self.details = details or {}
        self.timestamp = datetime.datetime.now(datetime.timezone.utc)

    def to_dict(self) -> dict:
        return {
            "timestamp": self.timestamp.strftime("%Y-%m-%d %H:%M:%S UTC"),
            "level": self.level,
            "source": self.source,
            "message": self.message,
            "details": dict(self.details),
        }

    def __str__(self) -> str:
        return f"[{self.timestamp.strftime('%H:%M:%S')}] {self.level} | {self.source}: {self.message}"


# ── In-memory mismatch log ───────────────────────────────────────────────────

_in_memory_log: list[MismatchRecord] = []
MAX_LOG_SIZE = 500


def dispatch_mismatch(
    level: str,
    source: str,
    message: str,
    details: Optional[dict] = None,
) -> MismatchRecord:
    """
    Record a mismatch: always logged, always appended to the ring buffer.
    Returns the MismatchRecord so callers can attach it to their reports.
    """
    record = MismatchRecord(level, source, message, details)

    log_fn = log.error if level == MismatchLevel.CRITICAL else (
        log.warning if level == MismatchLevel.WARNING else log.info
    )
    log_fn(str(record))

    _in_memory_log.append(record)
    if len(_in_memory_log) > MAX_LOG_SIZE:
        _in_memory_log.pop(0)

    return record


def get_recent_mismatches(limit: int = 50, source: Optional[str] = None) -> list[MismatchRecord]:
    """Retrieve the most recent mismatches (newest first), optionally for one source."""
    records = _in_memory_log if source is None else [r for r in _in_memory_log if r.source == source]
    return list(reversed(records[-limit:]))


def clear_mismatches():
    """Clear the in-memory mismatch log."""
    _in_memory_log.clear()
