"""
ChainCensus — SVG Line Charts
Reads a table written by the gamma/delta/census commands and draws one
polyline per requested column against n on linear axes. Plain SVG text,
no plotting library.
"""

from __future__ import annotations

from html import escape
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from config import settings
from calculus.errors import MalformedTableError
from utils.logger import get_logger

log = get_logger(__name__)

MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 140, 30, 45


def read_series(path: str | Path, series: Sequence[str]) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """(n values, {column: values}) with rows lacking a value dropped per series."""
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError as e:
        raise MalformedTableError(f"{path} is empty") from e
    except pd.errors.ParserError as e:
        raise MalformedTableError(f"{path} is not a valid CSV table: {e}") from e

    if "n" not in frame.columns:
        raise MalformedTableError(f"{path} has no 'n' column")
    if not series:
        raise MalformedTableError("no series requested")
    missing = [s for s in series if s not in frame.columns]
    if missing:
        raise MalformedTableError(f"{path} lacks column(s) {missing}; has {list(frame.columns)}")

    try:
        ns = frame["n"].astype(int).to_numpy()
    except ValueError as e:
        raise MalformedTableError(f"non-integer n in {path}") from e

    out: dict[str, np.ndarray] = {}
    for name in series:
        column = frame[name].str.strip()
        present = column != ""
        try:
            values = column[present].astype(float).to_numpy()
        except ValueError as e:
            raise MalformedTableError(f"non-numeric value in column {name!r}") from e
        if values.size == 0:
            raise MalformedTableError(f"series {name!r} is empty")
        out[name] = np.column_stack([ns[present.to_numpy()], values])
    return ns, out


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return list(np.linspace(lo, hi, count))


def _label(v: float) -> str:
    if float(v).is_integer() and abs(v) < 1e9:
        return str(int(v))
    return f"{v:.4g}"


def line_chart_svg(
    series: dict[str, np.ndarray],
    width: int = settings.SVG_WIDTH,
    height: int = settings.SVG_HEIGHT,
    title: str = "",
) -> str:
    """series maps a name to an (k, 2) array of (n, value) points."""
    if not series:
        raise MalformedTableError("nothing to plot")

    points = np.vstack(list(series.values()))
    x_min, x_max = float(points[:, 0].min()), float(points[:, 0].max())
    y_min, y_max = min(0.0, float(points[:, 1].min())), float(points[:, 1].max())
    x_range = max(x_max - x_min, 1.0)
    y_range = max(y_max - y_min, 1e-12)

    w = width - MARGIN_L - MARGIN_R
    h = height - MARGIN_T - MARGIN_B

    def to_svg_x(val: float) -> float:
        return MARGIN_L + (val - x_min) / x_range * w

    def to_svg_y(val: float) -> float:
        return MARGIN_T + h - (val - y_min) / y_range * h

    x_ticks = sorted({int(round(v)) for v in _ticks(x_min, x_max, min(int(x_range) + 1, 12))})
    grid = []
    for tx in x_ticks:
        sx = to_svg_x(tx)
        grid.append(f'<line x1="{sx:.1f}" y1="{MARGIN_T + h}" x2="{sx:.1f}" y2="{MARGIN_T + h + 4}" stroke="#444"/>')
        grid.append(f'<text x="{sx:.1f}" y="{MARGIN_T + h + 16}" font-size="10" fill="#555" text-anchor="middle">{tx}</text>')
    for ty in _ticks(y_min, y_max):
        sy = to_svg_y(ty)
        grid.append(f'<line x1="{MARGIN_L}" y1="{sy:.1f}" x2="{MARGIN_L + w}" y2="{sy:.1f}" stroke="#ddd"/>')
        grid.append(f'<text x="{MARGIN_L - 6}" y="{sy + 3:.1f}" font-size="10" fill="#555" text-anchor="end">{escape(_label(ty))}</text>')

    paths, legend = [], []
    for i, (name, pts) in enumerate(series.items()):
        color = settings.SERIES_COLORS[i % len(settings.SERIES_COLORS)]
        d = " ".join(
            f"{'M' if j == 0 else 'L'} {to_svg_x(float(x)):.1f} {to_svg_y(float(y)):.1f}"
            for j, (x, y) in enumerate(pts)
        )
        paths.append(f'<path d="{d}" fill="none" stroke="{color}" stroke-width="1.8"/>')
        for x, y in pts:
            paths.append(f'<circle cx="{to_svg_x(float(x)):.1f}" cy="{to_svg_y(float(y)):.1f}" r="2.5" fill="{color}">'
                         f'<title>{escape(f"{name}({int(x)}) = {_label(float(y))}")}</title></circle>')
        ly = MARGIN_T + 14 + 18 * i
        legend.append(f'<line x1="{MARGIN_L + w + 16}" y1="{ly - 4}" x2="{MARGIN_L + w + 36}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        legend.append(f'<text x="{MARGIN_L + w + 42}" y="{ly}" font-size="11" fill="#333">{escape(name)}</text>')

    svg = f"""
<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}" role="img">
  <rect width="{width}" height="{height}" fill="#fff"/>
  <text x="{MARGIN_L + w / 2}" y="18" font-size="13" fill="#222" text-anchor="middle">{escape(title)}</text>
  {''.join(grid)}
  <line x1="{MARGIN_L}" y1="{MARGIN_T + h}" x2="{MARGIN_L + w}" y2="{MARGIN_T + h}" stroke="#444" stroke-width="1"/>
  <line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{MARGIN_T + h}" stroke="#444" stroke-width="1"/>
  {''.join(paths)}
  {''.join(legend)}
  <text x="{MARGIN_L + w / 2}" y="{height - 8}" font-size="11" fill="#555" text-anchor="middle">n</text>
</svg>
"""
    return svg.strip() + "\n"


def write_plot(input_csv: str | Path, output_svg: str | Path, series: Sequence[str]) -> Path:
    _, data = read_series(input_csv, series)
    svg = line_chart_svg(data, title=", ".join(series))
    out = Path(output_svg)
    out.write_text(svg, encoding="utf-8")
    log.info("Wrote {} ({} series)", out, len(data))
    return out
