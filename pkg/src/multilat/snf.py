"""Smith normal form over the integers with full transformation matrices.

Convention: ``L = U @ D @ V`` with U, V unimodular and D diagonal,
nonnegative, each diagonal entry dividing the next.  D is unique; U and V
are not, so tests must only check their defining properties.
"""

from dataclasses import dataclass
from itertools import combinations
from math import gcd

import numpy as np

from .errors import SizeLimitExceeded
from .intmat import det, identity, unimodular_inverse

__all__ = [
    "SnfDecomposition",
    "smith_decompose",
    "elementary_divisors_oracle",
    "kernel_mod_basis",
]

PIVOT_STRATEGIES = ("min_abs", "first_nonzero")


@dataclass(frozen=True)
class SnfDecomposition:
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    rank: int

    def reconstruct(self):
        return self.U @ self.D @ self.V

    @property
    def divisors(self):
        """Nonzero diagonal entries (d_1, ..., d_r)."""
        return tuple(int(self.D[i, i]) for i in range(self.rank))


def _find_pivot(d, t, l, m, strategy):
    """Position of the pivot in the working submatrix d[t:, t:], or None."""
    if strategy == "first_nonzero":
        for i in range(t, l):
            for j in range(t, m):
                if d[i][j] != 0:
                    return i, j
        return None
    best = None
    for i in range(t, l):
        for j in range(t, m):
            v = abs(d[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else (best[1], best[2])


def smith_decompose(L, pivot_strategy="min_abs"):
    """Reduce an integer matrix to Smith normal form.

    Returns an SnfDecomposition with ``U @ D @ V`` equal to the input.
    The pivot strategy only affects U and V, never D.
    """
    if pivot_strategy not in PIVOT_STRATEGIES:
        raise ValueError(f"unknown pivot strategy {pivot_strategy!r}")
    l, m = L.shape
    d = [[int(x) for x in row] for row in L]
    u = [[int(x) for x in row] for row in identity(l)]
    v = [[int(x) for x in row] for row in identity(m)]

    # Elementary moves keep the invariant  original = U @ D @ V: every
    # operation applied to D is compensated by its inverse on U or V.
    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        for r in range(l):
            u[r][i], u[r][j] = u[r][j], u[r][i]

    def row_add(i, j, c):  # row i of D += c * row j
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        for r in range(l):
            u[r][j] -= c * u[r][i]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        for r in range(l):
            u[r][i] = -u[r][i]

    def col_swap(i, j):
        for r in range(l):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        v[i], v[j] = v[j], v[i]

    def col_add(j, i, c):  # column j of D += c * column i
        for r in range(l):
            d[r][j] += c * d[r][i]
        v[i] = [x - c * y for x, y in zip(v[i], v[j])]

    t = 0
    while t < min(l, m):
        pos = _find_pivot(d, t, l, m, pivot_strategy)
        if pos is None:
            break
        if pos[0] != t:
            row_swap(t, pos[0])
        if pos[1] != t:
            col_swap(t, pos[1])
        while True:
            restart = False
            for i in range(t + 1, l):
                if d[i][t] == 0:
                    continue
                q = d[i][t] // d[t][t]
                if q:
                    row_add(i, t, -q)
                if d[i][t] != 0:
                    # Remainder is smaller than the pivot; promote it.
                    row_swap(i, t)
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, m):
                if d[t][j] == 0:
                    continue
                q = d[t][j] // d[t][t]
                if q:
                    col_add(j, t, -q)
                if d[t][j] != 0:
                    col_swap(j, t)
                    restart = True
                    break
            if restart:
                continue
            # Row and column t are clean; enforce divisibility of the rest.
            bad = None
            for i in range(t + 1, l):
                for j in range(t + 1, m):
                    if d[i][j] % d[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        t += 1

    rank = t
    for i in range(rank):
        if d[i][i] < 0:
            row_negate(i)
    return SnfDecomposition(
        U=np.array(u, dtype=object),
        D=np.array(d, dtype=object),
        V=np.array(v, dtype=object),
        rank=rank,
    )


def elementary_divisors_oracle(L, max_dim=7):
    """Invariant factors via gcds of all k x k minors.

    Exponential in the matrix size; meant as an independent test oracle,
    not a production path.
    """
    l, m = L.shape
    if min(l, m) > max_dim:
        raise SizeLimitExceeded(f"minor enumeration capped at {max_dim}, got {min(l, m)}")
    divisors = []
    prev = 1
    for k in range(1, min(l, m) + 1):
        g = 0
        for rows in combinations(range(l), k):
            for cols in combinations(range(m), k):
                sub = L[np.ix_(rows, cols)]
                g = gcd(g, int(det(sub)))
        if g == 0:
            break
        divisors.append(g // prev)
        prev = g
    return divisors


def kernel_mod_basis(L):
    """Z-basis of the integer kernel {x : L @ x = 0}.

    These are the columns of V^-1 beyond the rank.
    """
    dec = smith_decompose(L)
    vinv = unimodular_inverse(dec.V)
    m = L.shape[1]
    return [vinv[:, j].copy() for j in range(dec.rank, m)]
