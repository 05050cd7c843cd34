"""
ChainCensus — Chains
A chain C_n(L) of an odd seed L is the sequence of n cells (B or BA), one
halving per cell. This module extracts chains, renders them in composition
order, checks the 2^z periodicity of shapes, and inverts a shape back to
its unique seed in ]2^n, 2^(n+1)].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from calculus.dynamics import a_step, b_step
from calculus.errors import InvalidShapeError, NotOddError, ShapeUnrealizableError
from utils.logger import get_logger

log = get_logger(__name__)


class Cell(Enum):
    B = "B"
    BA = "BA"


@dataclass(frozen=True)
class ChainShape:
    """Cells in application order; cells[0] is always BA."""
    cells: tuple[Cell, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if not self.cells:
            raise InvalidShapeError("a chain has at least one cell")
        if self.cells[0] is not Cell.BA:
            raise InvalidShapeError("a chain starts with BA")

    @property
    def alpha(self) -> int:
        return sum(1 for c in self.cells if c is Cell.BA)

    @property
    def beta(self) -> int:
        return len(self.cells)

    def prefix(self, m: int) -> ChainShape:
        if not 1 <= m <= self.beta:
            raise InvalidShapeError(f"prefix length {m} outside 1..{self.beta}")
        return ChainShape(self.cells[:m])

    def alpha_prefixes(self) -> list[int]:
        """alpha of every whole-cell prefix; entry m-1 belongs to the prefix of length m."""
        out, running = [], 0
        for c in self.cells:
            running += c is Cell.BA
            out.append(running)
        return out

    # Bit j-2 of the code is set iff cell j (1-based, j >= 2) is BA.
    @property
    def code(self) -> int:
        return sum(1 << (j - 1) for j, c in enumerate(self.cells[1:], start=1) if c is Cell.BA)

    @classmethod
    def from_code(cls, code: int, n: int) -> ChainShape:
        if n < 1 or not 0 <= code < (1 << (n - 1)):
            raise InvalidShapeError(f"code {code} does not describe a chain of {n} cells")
        return cls((Cell.BA,) + tuple(Cell.BA if (code >> j) & 1 else Cell.B for j in range(n - 1)))

    @classmethod
    def from_string(cls, text: str) -> ChainShape:
        """Parse the composition string produced by shape_string."""
        tokens, i = [], 0
        while i < len(text):
            if text[i] != "B":
                raise InvalidShapeError(f"unexpected symbol {text[i]!r} in {text!r}")
            if text[i + 1:i + 2] == "A":
                tokens.append(Cell.BA)
                i += 2
            else:
                tokens.append(Cell.B)
                i += 1
        return cls(tuple(reversed(tokens)))

    def __str__(self) -> str:
        return shape_string(self)


def shape_string(shape: ChainShape) -> str:
    """Composition order: the last cell applied is written first."""
    return "".join(c.value for c in reversed(shape.cells))


def iter_shapes(n: int) -> Iterator[ChainShape]:
    for code in range(1 << (n - 1)):
        yield ChainShape.from_code(code, n)


@dataclass(frozen=True)
class ChainTrace:
    start: int
    shape: ChainShape
    boundary_values: tuple[int, ...]

    @property
    def final(self) -> int:
        return self.boundary_values[-1]

    @property
    def alpha(self) -> int:
        return self.shape.alpha

    def entering_values(self) -> tuple[int, ...]:
        """Value entering each cell."""
        return (self.start,) + self.boundary_values[:-1]

    def post_a_values(self) -> list[int]:
        """Intermediate 3v+1 values of the BA cells, recomputed on demand."""
        return [3 * v + 1 for v, c in zip(self.entering_values(), self.shape.cells) if c is Cell.BA]

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "shape": shape_string(self.shape),
            "alpha": self.shape.alpha,
            "beta": self.shape.beta,
            "boundary_values": list(self.boundary_values),
            "final": self.final,
        }


def extract_chain(L: int, n: int) -> ChainTrace:
    """Apply cells to odd L until n halvings have been consumed."""
    if L < 1 or L % 2 == 0:
        raise NotOddError(f"chains start from odd seeds >= 1, got {L}")
    if n < 1:
        raise ValueError("n must be positive")

    cells, values = [], []
    v = L
    for _ in range(n):
        if v % 2:
            v = b_step(a_step(v))
            cells.append(Cell.BA)
        else:
            v = b_step(v)
            cells.append(Cell.B)
        values.append(v)
    return ChainTrace(L, ChainShape(tuple(cells)), tuple(values))


# ── Periodicity ──────────────────────────────────────────────────────────────

@dataclass
class CheckResult:
    passed: bool
    L: int
    z: int
    shape_match: bool
    diff_ok: bool
    parity_flip: bool
    witnesses: dict = field(default_factory=dict)
    traces: tuple[Optional[ChainTrace], ...] = ()

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "L": self.L,
            "z": self.z,
            "shape_match": self.shape_match,
            "diff_ok": self.diff_ok,
            "parity_flip": self.parity_flip,
            "witnesses": self.witnesses,
        }


def theorem1_check(L: int, z: int) -> CheckResult:
    """
    For M = 2^z + L: same z-cell shape, finals differing by exactly 3^alpha,
    and opposite parity of the two finals (the next cell flips).
    """
    if L < 1 or L % 2 == 0:
        raise NotOddError(f"periodicity is checked on odd seeds, got {L}")
    if z < 1 or L >= (1 << z):
        raise ValueError(f"need 1 <= L < 2^z, got L={L}, z={z}")

    low = extract_chain(L, z)
    high = extract_chain((1 << z) + L, z)
    shape_match = low.shape == high.shape
    diff = high.final - low.final
    expected = 3 ** low.alpha
    diff_ok = diff == expected
    parity_flip = (high.final - low.final) % 2 == 1
    passed = shape_match and diff_ok and parity_flip

    witnesses = {
        "low_shape": shape_string(low.shape),
        "high_shape": shape_string(high.shape),
        "low_final": low.final,
        "high_final": high.final,
        "difference": diff,
        "expected_difference": expected,
    }
    if not passed:
        log.warning("Periodicity check failed for L={}, z={}: {}", L, z, witnesses)
    return CheckResult(passed, L, z, shape_match, diff_ok, parity_flip, witnesses, (low, high))


# ── Inversion ────────────────────────────────────────────────────────────────

def invert_shape(shape: ChainShape, n: int) -> int:
    """
    The unique odd L in ]2^n, 2^(n+1)] whose chain C_n(L) has this shape.

    Bit lifting: r matches the first j cells modulo 2^j; adding 2^j keeps
    those cells and adds 3^alpha_j to the running value, flipping the
    parity that decides cell j+1.
    """
    if shape.beta != n:
        raise InvalidShapeError(f"shape has {shape.beta} cells, expected {n}")

    r, v, alpha = 1, 1, 0
    for j, cell in enumerate(shape.cells):
        if j > 0:
            want_odd = cell is Cell.BA
            if (v % 2 == 1) != want_odd:
                r += 1 << j
                v += 3 ** alpha
        if v % 2:
            v = b_step(a_step(v))
            alpha += 1
        else:
            v = b_step(v)

    L = (1 << n) + r
    if extract_chain(L, n).shape != shape:
        raise ShapeUnrealizableError(f"lifted seed {L} does not realise {shape_string(shape)}")
    return L
