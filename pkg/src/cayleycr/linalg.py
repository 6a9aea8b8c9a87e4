"""Exact rational linear algebra on sparse rows (``{column: Fraction}``)."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

SparseRow = dict


def rref(rows: Iterable[SparseRow]) -> dict[int, SparseRow]:
    """Reduced row echelon form, returned as ``{pivot_column: row}``.

    Rows are added one at a time; each new row is reduced against the
    existing pivots and, if it survives, its pivot is eliminated from the
    rows already stored, so the result stays fully reduced.
    """
    pivots: dict[int, SparseRow] = {}
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v != 0}
        # stored pivot rows are zero in every other pivot column, so one pass suffices
        for c in [k for k in r if k in pivots]:
            v = r[c]
            for cc, pv in pivots[c].items():
                nv = r.get(cc, 0) - v * pv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        for q, prow in pivots.items():
            v = prow.get(p)
            if v:
                for cc, rv in r.items():
                    nv = prow.get(cc, 0) - v * rv
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[p] = r
    return pivots


def nullspace(rows: Iterable[SparseRow], ncols: int) -> list[dict[int, Fraction]]:
    """Exact basis of ``{v : row . v = 0 for every row}``, one vector per free column,
    in increasing free-column order."""
    piv = rref(rows)
    basis = []
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: Fraction(1)}
        for p, row in piv.items():
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def rank(rows: Iterable[SparseRow]) -> int:
    return len(rref(rows))


def dense_rows(matrix: Sequence[Sequence]) -> list[SparseRow]:
    return [{j: Fraction(v) for j, v in enumerate(row) if v != 0} for row in matrix]


def solve_left(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]] | None:
    """Find ``R`` with ``R @ a == b`` (``a`` is m x k, ``b`` is p x k), or ``None``."""
    m = len(a)
    k = len(a[0]) if m else 0
    # unknown R[i][j] -> column i*m + j; each (i, col) gives one equation
    out = []
    for i, brow in enumerate(b):
        rows = []
        for col in range(k):
            row = {j: Fraction(a[j][col]) for j in range(m) if a[j][col] != 0}
            row[m] = -Fraction(brow[col])
            rows.append(row)
        piv = rref(rows)
        if m in piv:
            return None
        sol = [Fraction(0)] * m
        for p, row in piv.items():
            sol[p] = -row.get(m, Fraction(0))
        out.append(sol)
    return out


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for cc in range(c, n):
                    a[r][cc] -= f * a[c][cc]
    return d
