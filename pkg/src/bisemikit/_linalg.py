"""Dense matrix helpers over Fractions or complex numbers.

Matrices are tuples of row tuples.  Everything here is exact when the
entries are Fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = tuple


def as_matrix(rows: Sequence[Sequence], coerce=None) -> Matrix:
    rows = tuple(tuple(coerce(x) if coerce else x for x in row) for row in rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def shape(a: Matrix) -> tuple:
    return (len(a), len(a[0]) if a else 0)


def is_square(a: Matrix) -> bool:
    n, m = shape(a)
    return n == m


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def diag(values: Sequence, zero=Fraction(0)) -> Matrix:
    n = len(values)
    return tuple(tuple(values[i] if i == j else zero for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    cols = transpose(b)
    return tuple(tuple(_dot(row, col) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence) -> tuple:
    if shape(a)[1] != len(v):
        raise ValueError(f"shape mismatch {shape(a)} @ ({len(v)},)")
    return tuple(_dot(row, v) for row in a)


def _dot(u, v):
    # fixed left-to-right order
    total = 0
    for x, y in zip(u, v):
        total = total + x * y
    return total


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def frobenius(a: Matrix) -> float:
    return math.sqrt(sum(abs(x) ** 2 for row in a for x in row))


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse with partial pivoting.

    Raises ``ZeroDivisionError`` for singular input (exact zero pivot).
    """
    n, m = shape(a)
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    one = 1 if not _has_complex(a) else 1 + 0j
    work = [list(row) + [one if i == j else 0 * one for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(work[r][col]))
        if work[pivot][col] == 0:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def leading_minors(a: Matrix) -> tuple:
    """Determinants of the leading principal k x k blocks, k = 1..n."""
    n = len(a)
    return tuple(determinant(tuple(row[:k] for row in a[:k])) for k in range(1, n + 1))


def determinant(a: Matrix):
    """Fraction-free Bareiss elimination for exact input, LU otherwise."""
    n = len(a)
    if n == 0:
        return 1
    if _has_complex(a) or any(isinstance(x, float) for row in a for x in row):
        return _det_float(a)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_float(a: Matrix):
    n = len(a)
    m = [[complex(x) for x in row] for row in a]
    det = 1 + 0j
    for k in range(n):
        pivot = max(range(k, n), key=lambda r: abs(m[r][k]))
        if m[pivot][k] == 0:
            return 0j
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return det


def _has_complex(a: Matrix) -> bool:
    return any(isinstance(x, complex) for row in a for x in row)


def is_symmetric(a: Matrix) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def is_positive_definite(a: Matrix) -> bool:
    """Sylvester's criterion on a real symmetric matrix."""
    if not is_symmetric(a):
        return False
    return all(_real(m) > 0 for m in leading_minors(a))


def _real(x):
    return x.real if isinstance(x, complex) else x
