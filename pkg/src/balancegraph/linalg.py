"""Exact Gauss-Jordan elimination over a :class:`Field`.

Matrices are lists of rows of :class:`Scalar`.  Only what the presentation
machinery needs is provided.
"""

from __future__ import annotations

from .fields import Field, Scalar

Matrix = list[list[Scalar]]


def rref(field: Field, rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c].inv()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(field: Field, rows: Matrix, ncols: int) -> int:
    return len(rref(field, rows, ncols)[1])


def nullspace(field: Field, rows: Matrix, ncols: int) -> list[list[Scalar]]:
    """Basis of ``{x : rows * x = 0}``, one vector per free column."""
    red, pivots = rref(field, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for i, c in enumerate(pivots):
            x[c] = -red[i][f]
        basis.append(x)
    return basis


def solve(field: Field, rows: Matrix, ncols: int, rhs: list[Scalar]) -> list[Scalar] | None:
    """A solution of ``rows * x = rhs`` with free variables 0, or ``None``."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(field, aug, ncols)
    for i in range(len(pivots), len(red)):
        if red[i][ncols]:
            return None
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x
