"""Exact Gaussian elimination over any field whose elements support ``+ - * /``.

Used with :class:`fractions.Fraction` and :class:`superhc.scalars.CycloScalar`.
Matrices are plain lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Matrix = list[list[Any]]


def _copy(rows: Sequence[Sequence[Any]]) -> Matrix:
    return [list(r) for r in rows]


def row_echelon(rows: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = _copy(rows)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c] if not isinstance(a[r][c], int) else Fraction(1, a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(rows: Sequence[Sequence[Any]]) -> int:
    return len(row_echelon(rows)[1])


def det(rows: Sequence[Sequence[Any]]) -> Any:
    a = _copy(rows)
    n = len(a)
    result: Any = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result = result * piv
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(rows: Sequence[Sequence[Any]], one: Any = Fraction(1), zero: Any = Fraction(0)) -> Matrix:
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    red, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def solve(rows: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> list[Any] | None:
    """One solution of ``rows @ x = rhs`` (free variables set to zero), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = row_echelon(aug)
    if ncols in piv:
        return None
    x: list[Any] = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = red[i][ncols]
    return x


def nullspace(rows: Sequence[Sequence[Any]]) -> Matrix:
    """Basis of the right kernel."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, piv = row_echelon(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v: list[Any] = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -red[i][f]
        basis.append(v)
    return basis
