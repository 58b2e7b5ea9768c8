"""Row/column sorting of integer grids and the bubble-pass column sort.

The point of interest: sorting the rows of a grid and then sorting its
columns leaves the rows sorted.  The two-row min/max merge is the lemma
case, and `bubble_column_sort` reproduces the pass structure that proves
the general case (the bottom row is fixed after the first pass, the next
one after the second, and so on for n - 1 passes).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import pairwise
from typing import Iterator


class GridParseError(ValueError):
    """Bad grid text; carries the 1-based line and column of the offence."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Grid:
    """An immutable n x p grid of integers, stored as a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ValueError("a grid has at least one row and one column")
        width = len(self.entries[0])
        for i, row in enumerate(self.entries):
            if len(row) != width:
                raise ValueError(f"ragged grid: row {i} has {len(row)} entries, expected {width}")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @classmethod
    def from_rows(cls, rows) -> Grid:
        return cls(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class MergeStep:
    """Snapshot after one elementary two-row merge of a bubble pass."""

    pass_no: int   # 1-based pass number
    top_row: int   # 0-based index of the upper row of the merged pair
    grid: Grid


_TOKEN = re.compile(r"\S+")
_INTEGER = re.compile(r"[+-]?[0-9]+")


def parse_grid(text: str) -> Grid:
    """Parse the grid text format: one row per line, whitespace-separated
    decimal integers, blank lines ignored, all rows equally long."""
    rows: list[tuple[int, ...]] = []
    width: int | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        row = []
        for token, column in tokens:
            if not _INTEGER.fullmatch(token):
                raise GridParseError(f"not a decimal integer: {token!r}", lineno, column)
            row.append(int(token))
        if width is None:
            width = len(row)
        elif len(row) != width:
            column = tokens[width][1] if len(row) > width else tokens[-1][1]
            raise GridParseError(
                f"row has {len(row)} entries, expected {width}", lineno, column
            )
        rows.append(tuple(row))
    if not rows:
        raise GridParseError("empty grid", 1, 1)
    return Grid(tuple(rows))


def format_grid(g: Grid) -> str:
    """Render a grid back into the text format (no trailing newline)."""
    return "\n".join(" ".join(str(x) for x in row) for row in g.entries)


def sort_rows(g: Grid) -> Grid:
    """Each row rearranged nondecreasing left to right."""
    return Grid(tuple(tuple(sorted(row)) for row in g.entries))


def sort_cols(g: Grid) -> Grid:
    """Each column rearranged nondecreasing top to bottom."""
    sorted_cols = (sorted(col) for col in zip(*g.entries))
    return Grid(tuple(zip(*sorted_cols)))


def is_rows_sorted(g: Grid) -> bool:
    return all(a <= b for row in g.entries for a, b in pairwise(row))


def is_cols_sorted(g: Grid) -> bool:
    return all(a <= b for col in zip(*g.entries) for a, b in pairwise(col))


def two_row_minmax(top, bottom) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Columnwise (min, max) of two equal-length rows.

    Per column this sorts the pair, and when both inputs are nondecreasing
    so are both outputs: min(t1,b1) <= min(t2,b2) because the left min is
    <= t1 <= t2 and <= b1 <= b2; symmetrically for the max row.
    """
    top, bottom = tuple(top), tuple(bottom)
    if len(top) != len(bottom):
        raise ValueError(f"row length mismatch: {len(top)} vs {len(bottom)}")
    return tuple(map(min, top, bottom)), tuple(map(max, top, bottom))


def column_maxima(g: Grid) -> tuple[int, ...]:
    """The largest entry of each column."""
    return tuple(map(max, *g.entries)) if g.rows > 1 else g.entries[0]


def bubble_column_sort(g: Grid) -> tuple[Grid, int]:
    """Column-sort by n - 1 passes of adjacent two-row merges.

    Pass k merges row pairs (0,1), (1,2), ... stopping one pair earlier
    than the previous pass: after pass 1 the bottom row holds the column
    maxima and never moves again, after pass 2 the row above it, etc.
    Equals sort_cols on every input (per column this is bubble sort).
    Returns the sorted grid and the pass count n - 1.
    """
    rows = list(g.entries)
    n = len(rows)
    for k in range(1, n):
        for i in range(n - k):
            rows[i], rows[i + 1] = two_row_minmax(rows[i], rows[i + 1])
    return Grid(tuple(rows)), n - 1


def trace_bubble(g: Grid) -> Iterator[MergeStep]:
    """Yield a snapshot after every elementary merge of bubble_column_sort."""
    rows = list(g.entries)
    n = len(rows)
    for k in range(1, n):
        for i in range(n - k):
            rows[i], rows[i + 1] = two_row_minmax(rows[i], rows[i + 1])
            yield MergeStep(pass_no=k, top_row=i, grid=Grid(tuple(rows)))
