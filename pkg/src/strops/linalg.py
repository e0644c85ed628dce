"""Small exact linear algebra over Z (via fractions) and prime fields.

Matrices are plain lists of rows of ints. Everything here is dense and meant
for the tiny pairing / structure-map matrices this package produces.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import StropsError

Matrix = list[list[int]]


class SingularMatrixError(StropsError):
    pass


def _field_ops(p: int):
    if p:
        return (lambda a: a % p), (lambda a: pow(a, -1, p))
    return Fraction, (lambda a: 1 / a)


def _row_reduce(rows: list[list], p: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    conv, inv = _field_ops(p)
    rows = [[conv(v) for v in r] for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        f = inv(rows[r][c])
        rows[r] = [conv(v * f) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                g = rows[i][c]
                rows[i] = [conv(a - g * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Sequence[Sequence[int]], p: int = 0) -> int:
    """Rank over Q (``p == 0``) or over F_p."""
    if not m or not m[0]:
        return 0
    return len(_row_reduce([list(r) for r in m], p)[1])


def _to_int(v, p: int) -> int:
    if p:
        return int(v) % p
    if v.denominator != 1:
        raise SingularMatrixError("matrix is not invertible over Z")
    return int(v)


def inverse(m: Sequence[Sequence[int]], p: int = 0) -> Matrix:
    """Inverse over F_p, or over Z (the inverse must be integral)."""
    n = len(m)
    if n == 0:
        return []
    if any(len(r) != n for r in m):
        raise SingularMatrixError("matrix is not square")
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m)]
    rows, pivots = _row_reduce(aug, p)
    if pivots[:n] != list(range(n)) or len(pivots) < n or any(c >= n for c in pivots[:n]):
        raise SingularMatrixError("matrix is singular")
    return [[_to_int(v, p) for v in row[n:]] for row in rows]


def solve(m: Sequence[Sequence[int]], b: Sequence[int], p: int = 0) -> list[int]:
    """Solve ``m x = b`` for square invertible ``m``."""
    inv = inverse(m, p)
    out = [sum(a * v for a, v in zip(row, b)) for row in inv]
    return [v % p for v in out] if p else out


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int = 0) -> Matrix:
    bt = transpose(b)
    out = [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]
    return [[v % p for v in r] for r in out] if p else out


def elementary_divisors(m: Sequence[Sequence[int]], p: int = 0) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form (all 1 over a field)."""
    if p:
        return [1] * rank(m, p)
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    out = []
    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            piv = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    done = False
                    break
            if not done:
                continue
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    done = False
                    break
            if not done:
                continue
            # the pivot must divide every remaining entry
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv), None)
            if bad:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        out.append(abs(a[t][t]))
        t += 1
    return out
