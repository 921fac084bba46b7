"""Small exact linear algebra over the rationals.

Vectors are tuples of ints or Fractions; nothing here ever touches floats.
"""
from __future__ import annotations

from fractions import Fraction
from operator import mul
from typing import Optional, Sequence

Vector = tuple


def dot(x: Sequence, y: Sequence):
    return sum(map(mul, x, y))


def add(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Sequence) -> Vector:
    return tuple(c * a for a in x)


def neg(x: Sequence) -> Vector:
    return tuple(-a for a in x)


def normalize(x: Sequence) -> Vector:
    """Turn integral Fractions back into ints so hashing/equality behave."""
    out = []
    for a in x:
        if isinstance(a, Fraction) and a.denominator == 1:
            a = a.numerator
        out.append(a)
    return tuple(out)


def solve(columns: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """Return the unique c with sum(c[i] * columns[i]) == rhs, or None.

    The columns must be linearly independent; an inconsistent system gives None.
    """
    k = len(columns)
    m = len(rhs)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(rhs[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            raise ValueError("columns are linearly dependent")
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [a / piv for a in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, m)):
        return None
    return normalize(rows[i][k] for i in range(k))


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    rows = [[Fraction(a) for a in v] for v in vectors]
    n = len(rows[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


# square matrices are tuples of row tuples

def identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = list(zip(*b))
    return tuple(tuple(sum(map(mul, row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in a)


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a))


def inverse(a: Sequence[Sequence]) -> tuple:
    n = len(a)
    cols = transpose(a)
    inv_cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        x = solve(cols, e)
        if x is None:
            raise ValueError("singular matrix")
        inv_cols.append(x)
    return transpose(inv_cols)


def determinant(a: Sequence[Sequence]) -> Fraction:
    rows = [[Fraction(x) for x in row] for row in a]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det
