"""
ChainCensus — Table Output
Rows of counts and exact ratios, emitted as CSV (pandas), JSON, or a rich
table on the terminal. Counts are written as decimal strings so no column
is ever coerced to float; missing cells are empty.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence, TextIO

import pandas as pd
from rich.console import Console
from rich.table import Table

from config import settings

FORMATS = ("csv", "json", "pretty")


def render_fraction(num: int, den: int, digits: int = settings.RATIO_DIGITS) -> str:
    """Exact decimal expansion of num/den, truncated to `digits` places."""
    if den <= 0 or num < 0:
        raise ValueError("render_fraction needs num >= 0 and den > 0")
    whole, rest = divmod(num, den)
    frac = rest * 10 ** digits // den
    return f"{whole}.{frac:0{digits}d}"


def render_ratio(count: int, n: int, digits: int = settings.RATIO_DIGITS) -> str:
    """(count + 2^(n-1)) / 2^n with `digits` fractional digits."""
    return render_fraction(count + (1 << (n - 1)), 1 << n, digits)


@dataclass
class TableRow:
    n: int
    gamma: Optional[int] = None
    t: Optional[int] = None
    delta: Optional[int] = None
    ratio_gamma: Optional[str] = None
    ratio_gamma_t: Optional[str] = None
    ratio_t_delta: Optional[str] = None
    ref_gamma: Optional[int] = None
    ref_t: Optional[int] = None
    ref_delta: Optional[int] = None

    @classmethod
    def build(
        cls,
        n: int,
        gamma: Optional[int] = None,
        t: Optional[int] = None,
        delta: Optional[int] = None,
    ) -> TableRow:
        row = cls(n, gamma, t, delta)
        if gamma is not None:
            row.ratio_gamma = render_ratio(gamma, n)
            if t is not None:
                row.ratio_gamma_t = render_ratio(gamma + t, n)
        if t is not None and delta:
            row.ratio_t_delta = render_fraction(t, delta)
        row.ref_gamma = settings.REFERENCE_GAMMA.get(n)
        row.ref_t = settings.REFERENCE_T.get(n)
        row.ref_delta = settings.REFERENCE_DELTA.get(n)
        return row

    def to_dict(self) -> dict:
        return asdict(self)


def _cell(value) -> str:
    return "" if value is None else str(value)


def frame_from_records(records: Iterable[dict], columns: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """String-typed frame; ints keep every digit and None becomes an empty cell."""
    records = list(records)
    if columns is None:
        columns = list(dict.fromkeys(k for r in records for k in r))
    rows = [[_cell(r.get(c)) for c in columns] for r in records]
    return pd.DataFrame(rows, columns=list(columns), dtype=str)


def to_frame(rows: Iterable[TableRow], columns: Sequence[str]) -> pd.DataFrame:
    return frame_from_records((row.to_dict() for row in rows), columns)


def emit(
    records: Sequence[dict] | pd.DataFrame,
    fmt: str,
    stream: TextIO,
    title: Optional[str] = None,
    console: Optional[Console] = None,
) -> None:
    """Write a table to stream in csv, json or pretty form."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")

    frame = records if isinstance(records, pd.DataFrame) else frame_from_records(records)

    if fmt == "csv":
        frame.to_csv(stream, index=False, lineterminator="\n")
    elif fmt == "json":
        stream.write(json.dumps([_jsonable(r) for r in frame.to_dict(orient="records")], indent=2))
        stream.write("\n")
    else:
        table = Table(title=title, header_style="bold cyan")
        for col in frame.columns:
            table.add_column(str(col), justify="right")
        for values in frame.itertuples(index=False):
            table.add_row(*(str(v) for v in values))
        (console or Console(file=stream)).print(table)


def _jsonable(record: dict) -> dict:
    # counts back to ints, empty cells to null
    out = {}
    for key, value in record.items():
        if value == "":
            out[key] = None
        elif isinstance(value, str) and value.lstrip("-").isdigit():
            out[key] = int(value)
        else:
            out[key] = value
    return out
