"""Exact linear algebra over the rationals.

Matrices are sparse: a list of rows, each row a ``dict`` mapping a column
index to a nonzero :class:`~fractions.Fraction`.  Columns are plain integers
in ``range(ncols)``; callers that index columns by other keys map them to
integers first (see :func:`column_index`).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Sequence

SparseRow = dict[int, Fraction]


def column_index(keys: Iterable[Hashable]) -> dict[Hashable, int]:
    """Enumerate ``keys`` in sorted order."""
    return {k: i for i, k in enumerate(sorted(keys))}


def _clean(row: dict[int, Fraction]) -> SparseRow:
    return {c: Fraction(v) for c, v in row.items() if v != 0}


def rref(rows: Sequence[dict[int, Fraction]], ncols: int) -> tuple[list[SparseRow], list[int]]:
    """Reduced row echelon form.

    Pivot columns are chosen left to right, so the result is deterministic
    for a fixed column order.  Returns ``(reduced_rows, pivot_columns)``.
    """
    pending = [_clean(r) for r in rows]
    pending = [r for r in pending if r]
    reduced: list[SparseRow] = []
    pivots: list[int] = []
    for col in range(ncols):
        hit = None
        for idx, r in enumerate(pending):
            if col in r:
                hit = idx
                break
        if hit is None:
            continue
        prow = pending.pop(hit)
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        for idx, r in enumerate(pending):
            f = r.get(col)
            if f is None:
                continue
            for c, v in prow.items():
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
            pending[idx] = r
        pending = [r for r in pending if r]
        for r in reduced:
            f = r.get(col)
            if f is None:
                continue
            for c, v in prow.items():
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        reduced.append(prow)
        pivots.append(col)
        if not pending:
            break
    return reduced, pivots


def rank(rows: Sequence[dict[int, Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[dict[int, Fraction]], ncols: int) -> list[SparseRow]:
    """Basis of ``{x : A x = 0}`` with one vector per free column.

    The vector for free column ``f`` has a 1 in position ``f`` and is zero
    on the other free columns.  Vectors are ordered by free column.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec: SparseRow = {f: Fraction(1)}
        for prow, p in zip(reduced, pivots):
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve(rows: Sequence[dict[int, Fraction]], rhs: Sequence[Fraction], ncols: int) -> SparseRow | None:
    """One solution of ``A x = b`` (free variables set to zero), or ``None``."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = Fraction(b)
        aug.append(row)
    reduced, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    sol: SparseRow = {}
    for prow, p in zip(reduced, pivots):
        v = prow.get(ncols)
        if v:
            sol[p] = v
    return sol


def dense_to_sparse(matrix: Sequence[Sequence]) -> list[SparseRow]:
    return [_clean({c: v for c, v in enumerate(row)}) for row in matrix]


def integer_rows(rows: Sequence[SparseRow]) -> list[SparseRow]:
    """Scale each row by the lcm of its denominators (row space unchanged)."""
    out = []
    for r in rows:
        den = lcm(*(v.denominator for v in r.values())) if r else 1
        out.append({c: v * den for c, v in r.items()})
    return out
