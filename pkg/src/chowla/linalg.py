"""Exact Gaussian elimination over cyclotomic fields."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .cyclotomic import CyclotomicNumber, as_cyclotomic, lift, rational
from .errors import DimensionMismatch


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[CyclotomicNumber, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], order: int | None = None) -> ExactMatrix:
        rows = [[as_cyclotomic(x) for x in row] for row in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("rows have different lengths")
        orders = [x.order for r in rows for x in r]
        M = math.lcm(*orders, order or 1) if orders else (order or 1)
        return cls(len(rows), ncols, tuple(tuple(lift(x, M) for x in r) for r in rows))

    @property
    def field_order(self) -> int:
        return self.entries[0][0].order if self.rows and self.cols else 1

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def __matmul__(self, vec: Sequence[CyclotomicNumber]) -> list[CyclotomicNumber]:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        M = math.lcm(self.field_order, *(v.order for v in vec))
        vec = [lift(v, M) for v in vec]
        out = []
        for row in self.entries:
            total = rational(0, M)
            for a, x in zip(row, vec):
                if a and x:
                    total = total + lift(a, M) * x
            out.append(total)
        return out


def _as_matrix(M) -> ExactMatrix:
    return M if isinstance(M, ExactMatrix) else ExactMatrix.from_rows(M)


def row_reduce(rows: list[list[CyclotomicNumber]], ncols: int | None = None) -> tuple[list[list[CyclotomicNumber]], list[int]]:
    """Reduced row echelon form (in place on a copy); pivots chosen as the first nonzero entry.

    Only the first ``ncols`` columns are used for pivots, so augmented columns ride along.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    width = len(rows[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        if p != 1:
            pinv = p.inv()
            rows[r] = [x * pinv if x else x for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(M) -> int:
    M = _as_matrix(M)
    if not M.rows or not M.cols:
        return 0
    _, pivots = row_reduce([list(r) for r in M.entries])
    return len(pivots)


def solve(M, v: Sequence) -> list[CyclotomicNumber] | None:
    """A solution x of M x = v (free variables set to zero), or None if inconsistent."""
    M = _as_matrix(M)
    v = [as_cyclotomic(x) for x in v]
    if len(v) != M.rows:
        raise DimensionMismatch(f"right-hand side has length {len(v)}, matrix has {M.rows} rows")
    order = math.lcm(M.field_order, *(x.order for x in v)) if v else M.field_order
    aug = [[lift(x, order) for x in row] + [lift(b, order)] for row, b in zip(M.entries, v)]
    reduced, pivots = row_reduce(aug, ncols=M.cols)
    for row in reduced[len(pivots):]:
        if row[-1]:
            return None
    x = [rational(0, order) for _ in range(M.cols)]
    for row, c in zip(reduced, pivots):
        x[c] = row[-1]
    return x


def in_span(vectors: Sequence[Sequence], target: Sequence) -> list[CyclotomicNumber] | None:
    """Coefficients a with sum_i a_i vectors[i] = target, or None."""
    target = list(target)
    if not vectors:
        return [] if all(as_cyclotomic(t).is_zero() for t in target) else None
    length = len(target)
    if any(len(vec) != length for vec in vectors):
        raise DimensionMismatch("vectors and target have different lengths")
    columns = ExactMatrix.from_rows([list(vec) for vec in vectors]).transpose()
    return solve(columns, target)


def nullspace(M) -> list[list[CyclotomicNumber]]:
    """Basis of {x : M x = 0}."""
    M = _as_matrix(M)
    order = M.field_order
    if not M.rows:
        return [[rational(int(i == j), order) for j in range(M.cols)] for i in range(M.cols)]
    reduced, pivots = row_reduce([list(r) for r in M.entries])
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [rational(0, order) for _ in range(M.cols)]
        x[f] = rational(1, order)
        for row, c in zip(reduced, pivots):
            x[c] = -row[f]
        basis.append(x)
    return basis
