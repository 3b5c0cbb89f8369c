"""Log-concavity deltas, exception sets and exception landscapes."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from logconcavity.arith import FamilyKind, FamilySpec
from logconcavity.series import CoefficientTable, SeriesKind, p_table, q_table

BULLET = "*"


@dataclass(frozen=True)
class DeltaRecord:
    n: int
    a_prev: Fraction
    a_mid: Fraction
    a_next: Fraction
    delta: Fraction

    @property
    def is_exception(self) -> bool:
        return self.delta < 0


def delta_at(table: CoefficientTable, n: int) -> DeltaRecord:
    """``a_n^2 - a_{n-1} a_{n+1}`` for ``1 <= n <= order - 1``."""
    if not 1 <= n <= table.order - 1:
        raise IndexError(f"delta at n={n} needs coefficients {n - 1}..{n + 1}; table order is {table.order}")
    a, b, c = table[n - 1], table[n], table[n + 1]
    return DeltaRecord(n, a, b, c, b * b - a * c)


def _is_exception(a: Fraction, b: Fraction, c: Fraction) -> bool:
    # Cross-multiplied to integers: b^2 < a c  <=>  (bn^2) ad cd < an cn bd^2.
    lhs = b.numerator**2 * a.denominator * c.denominator
    rhs = a.numerator * c.numerator * b.denominator**2
    return lhs < rhs


@dataclass(frozen=True)
class ExceptionSet:
    family: FamilySpec | None
    kind: SeriesKind
    scanned_max: int
    exceptions: tuple[int, ...]

    def __contains__(self, n: int) -> bool:
        return n in self.exceptions


def exceptions(table: CoefficientTable, N: int) -> ExceptionSet:
    """All ``1 <= n <= N`` where the sequence fails to be log-concave."""
    if table.order < N + 1:
        raise ValueError(f"scanning up to {N} needs a table of order >= {N + 1}, got {table.order}")
    c = table.coeffs
    found = tuple(n for n in range(1, N + 1) if _is_exception(c[n - 1], c[n], c[n + 1]))
    return ExceptionSet(table.family, table.kind, N, found)


@dataclass(frozen=True)
class LandscapeGrid:
    kind: SeriesKind
    family: FamilyKind
    n_max: int
    d_max: int
    cells: tuple[tuple[bool, ...], ...]  # cells[n - 1][d]

    def __post_init__(self) -> None:
        if len(self.cells) != self.n_max or any(len(row) != self.d_max + 1 for row in self.cells):
            raise ValueError("grid cells do not match the declared ranges")

    def cell(self, n: int, d: int) -> bool:
        return self.cells[n - 1][d]


def build_table(family: FamilyKind, kind: SeriesKind, d: int, N: int) -> CoefficientTable:
    spec = FamilySpec(family, d)
    if kind is SeriesKind.EXPONENTIAL:
        return p_table(spec, N)
    if kind is SeriesKind.GEOMETRIC:
        return q_table(spec, N)
    raise ValueError(f"no family table of kind {kind}")


def _column(args: tuple[FamilyKind, SeriesKind, int, int]) -> tuple[int, ...]:
    family, kind, d, n_max = args
    return exceptions(build_table(family, kind, d, n_max + 1), n_max).exceptions


def landscape(kind: SeriesKind, family: FamilyKind, n_max: int, d_max: int, jobs: int = 1) -> LandscapeGrid:
    """Exception flags for ``1 <= n <= n_max`` and ``0 <= d <= d_max``.

    One table of order ``n_max + 1`` is built per degree; with ``jobs > 1``
    the columns are computed in worker processes.
    """
    if n_max < 1 or d_max < 0:
        raise ValueError("need n_max >= 1 and d_max >= 0")
    work = [(family, kind, d, n_max) for d in range(d_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            columns = list(pool.map(_column, work))
    else:
        columns = [_column(w) for w in work]
    cells = tuple(tuple(n in columns[d] for d in range(d_max + 1)) for n in range(1, n_max + 1))
    return LandscapeGrid(kind, family, n_max, d_max, cells)


def _ascii(grid: LandscapeGrid) -> str:
    lines = ["n\\d|" + "".join(f"{d:>3}" for d in range(grid.d_max + 1))]
    lines.append("---+" + "---" * (grid.d_max + 1))
    for n, row in enumerate(grid.cells, start=1):
        line = f"{n:>3}|" + "".join(f"{BULLET if flag else '':>3}" for flag in row)
        lines.append(line.rstrip())
    return "\n".join(lines) + "\n"


def _json(grid: LandscapeGrid) -> str:
    doc = {
        "family": grid.family.value,
        "kind": grid.kind.value,
        "d_range": [0, grid.d_max],
        "n_range": [1, grid.n_max],
        "cells": [
            {"n": n, "d": d, "exception": flag}
            for n, row in enumerate(grid.cells, start=1)
            for d, flag in enumerate(row)
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def _csv(grid: LandscapeGrid) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "d", "exception"])
    for n, row in enumerate(grid.cells, start=1):
        for d, flag in enumerate(row):
            writer.writerow([n, d, int(flag)])
    return buf.getvalue()


_RENDERERS = {"ascii": _ascii, "json": _json, "csv": _csv}


def render_grid(grid: LandscapeGrid, format: str = "ascii") -> str:
    """Render a grid as the fixed-width ascii table, json or csv."""
    try:
        return _RENDERERS[format](grid)
    except KeyError:
        raise ValueError(f"unknown grid format {format!r}") from None


def parse_grid(text: str, format: str, kind: SeriesKind, family: FamilyKind) -> LandscapeGrid:
    """Inverse of :func:`render_grid` for the json and csv formats."""
    if format == "json":
        doc = json.loads(text)
        triples = [(c["n"], c["d"], bool(c["exception"])) for c in doc["cells"]]
    elif format == "csv":
        rows = list(csv.reader(io.StringIO(text)))[1:]
        triples = [(int(n), int(d), bool(int(e))) for n, d, e in rows]
    else:
        raise ValueError(f"cannot parse grid format {format!r}")
    n_max = max(t[0] for t in triples)
    d_max = max(t[1] for t in triples)
    flags = {(n, d): e for n, d, e in triples}
    cells = tuple(tuple(flags[n, d] for d in range(d_max + 1)) for n in range(1, n_max + 1))
    return LandscapeGrid(kind, family, n_max, d_max, cells)
