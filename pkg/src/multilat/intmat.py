"""Exact integer and rational matrix arithmetic.

Matrices are numpy arrays with ``dtype=object`` holding Python ints or
``fractions.Fraction``, so every operation is arbitrary precision.  No
floating point enters anywhere in the algebra kernel.
"""

from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, NotUnimodular

__all__ = [
    "intmat",
    "ratmat",
    "identity",
    "zeros",
    "mat_mul",
    "rat_mat_mul",
    "det",
    "unimodular_inverse",
    "is_unimodular",
    "is_integer_mat",
    "to_int_mat",
    "rat_reduce",
    "frac_floor",
    "mat_eq",
    "mat_key",
]


def intmat(rows):
    """Build an exact integer matrix from nested sequences."""
    a = np.array(rows, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got ndim={a.ndim}")
    for x in a.flat:
        if not isinstance(x, (int, np.integer)):
            raise TypeError(f"non-integer entry {x!r}")
    return np.array([[int(x) for x in row] for row in a], dtype=object)


def ratmat(rows):
    """Build an exact rational matrix; entries are coerced to Fraction."""
    a = np.array(rows, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got ndim={a.ndim}")
    return np.array([[Fraction(x) for x in row] for row in a], dtype=object)


def identity(n):
    return np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object)


def zeros(rows, cols):
    return np.array([[0] * cols for _ in range(rows)], dtype=object)


def mat_mul(a, b):
    """Exact matrix product."""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


rat_mat_mul = mat_mul


def det(a):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows, cols = a.shape
    if rows != cols:
        raise DimensionMismatch(f"determinant of non-square {a.shape}")
    n = rows
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a):
    return a.shape[0] == a.shape[1] and abs(det(a)) == 1


def unimodular_inverse(a):
    """Exact integer inverse of a matrix with determinant +-1."""
    d = det(a)
    if abs(d) != 1:
        raise NotUnimodular(f"determinant is {d}, expected +-1")
    n = a.shape[0]
    # Gauss-Jordan over the rationals; the result is integral since |det| = 1.
    work = [[Fraction(x) for x in row] for row in a]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if work[r][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return np.array([[int(x) for x in row] for row in inv], dtype=object)


def frac_floor(x):
    x = Fraction(x)
    return x.numerator // x.denominator


def is_integer_mat(m):
    return all(Fraction(x).denominator == 1 for x in m.flat)


def to_int_mat(m):
    """Convert a rational matrix with integral entries to an integer matrix."""
    out = zeros(*m.shape)
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            x = Fraction(m[i, j])
            if x.denominator != 1:
                raise ValueError(f"entry ({i},{j}) = {x} is not an integer")
            out[i, j] = x.numerator
    return out


def rat_reduce(m):
    """Entrywise fractional part: each entry mapped into [0, 1)."""
    return np.array(
        [[Fraction(x) - frac_floor(x) for x in row] for row in m], dtype=object
    )


def mat_eq(a, b):
    return a.shape == b.shape and all(
        Fraction(x) == Fraction(y) for x, y in zip(a.flat, b.flat)
    )


def mat_key(a):
    """Hashable key for an exact matrix (shape plus flattened entries)."""
    return (a.shape, tuple(a.flat))
