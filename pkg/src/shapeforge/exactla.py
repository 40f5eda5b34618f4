"""Incremental exact rank and span-membership over the integers.

Rows are sparse integer vectors (dict column -> nonzero coefficient).
The matrix keeps an echelon of primitive rows, one per pivot column,
where each row's pivot is its smallest occupied column.  Candidates are
reduced fraction-free: v <- (p/g) * v - (a/g) * pivot_row with
g = gcd(p, a), then divided by their content, so every intermediate
stays an integer and coefficient growth stays bounded.

Reduction scans pivot columns in ascending order.  A pivot row only
occupies columns at or after its pivot, so one pass eliminates every
pivot column from the candidate.

Scope is deliberately narrow: rank and membership only.  No
determinants, no solving, no null spaces.
"""

from __future__ import annotations

import math


class ColumnSpaceMismatchError(ValueError):
    """Candidate uses a column outside the matrix's declared column space."""


class SparseIntMatrix:
    """Grow-only echelon of sparse integer rows."""

    __slots__ = ("_pivots", "_ncols")

    def __init__(self, ncols: int | None = None):
        self._pivots: dict[int, dict[int, int]] = {}
        self._ncols = ncols

    def rank(self) -> int:
        return len(self._pivots)

    @property
    def ncols(self) -> int | None:
        return self._ncols

    def resize(self, ncols: int):
        """Widen the declared column space; shrinking is not allowed."""
        if self._ncols is not None and ncols < self._ncols:
            raise ValueError("cannot shrink column space")
        self._ncols = ncols

    def pivot_columns(self) -> list[int]:
        return sorted(self._pivots)

    def _check_columns(self, vec: dict[int, int]):
        if self._ncols is None:
            return
        for col in vec:
            if not 0 <= col < self._ncols:
                raise ColumnSpaceMismatchError(
                    f"column {col} outside 0..{self._ncols - 1}"
                )

    def _reduce(self, vec: dict[int, int]) -> dict[int, int]:
        v = {c: x for c, x in vec.items() if x}
        for col in sorted(self._pivots):
            a = v.get(col)
            if not a:
                continue
            row = self._pivots[col]
            p = row[col]
            g = math.gcd(p, a)
            pm, am = p // g, a // g
            if pm != 1:
                for c in v:
                    v[c] *= pm
            for c, rc in row.items():
                new = v.get(c, 0) - am * rc
                if new:
                    v[c] = new
                else:
                    v.pop(c, None)
            _divide_by_content(v)
        return v

    def try_extend(self, vec: dict[int, int]) -> bool:
        """Reduce vec against the echelon.  If anything survives, commit the
        primitive residual as a new pivot row and return True; return False
        when vec already lies in the span (including the zero vector)."""
        self._check_columns(vec)
        residual = self._reduce(vec)
        if not residual:
            return False
        _divide_by_content(residual)
        pivot = min(residual)
        if residual[pivot] < 0:
            residual = {c: -x for c, x in residual.items()}
        self._pivots[pivot] = residual
        return True

    def contains(self, vec: dict[int, int]) -> bool:
        """Span membership without modifying the matrix."""
        self._check_columns(vec)
        return not self._reduce(vec)


def _divide_by_content(v: dict[int, int]):
    g = 0
    for x in v.values():
        g = math.gcd(g, x)
        if g == 1:
            return
    if g > 1:
        for c in v:
            v[c] //= g
