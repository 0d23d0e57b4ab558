"""Permutation action on shift vectors and the flattened master matrix.

Index conventions
-----------------
All public index maps are 1-based, matching the usual ordering of the
shift components (all components of the first shift, then the second,
and so on).  Internally matrices are 0-based numpy object arrays.

The shift matrix ``A`` of a permutation ``sigma`` is stored by rows: row
``alpha`` expresses the image of the alpha-th shift in terms of the free
generators p_1, ..., p_N (with p_0 = 0).  Under this storage the product
rule is reversed, ``A(sigma o tau) = A(tau) @ A(sigma)``, and the master
equation reads ``M @ P = P @ A.T + T``; both facts are pinned by tests.
"""

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .errors import CapExceeded, DimensionMismatch
from .intmat import identity, intmat, is_unimodular, mat_key, zeros

__all__ = [
    "Permutation",
    "GroupPresentation",
    "shift_rep",
    "flatten_index",
    "unflatten_index",
    "flatten_row_index",
    "unflatten_row_index",
    "kron_flatten",
    "build_master_matrix",
    "group_closure",
    "check_homomorphism",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., N} given by its tuple of images."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection of 0..{len(imgs) - 1}: {imgs}")

    @classmethod
    def identity(cls, points):
        return cls(tuple(range(points)))

    def __call__(self, x):
        return self.images[x]

    def __len__(self):
        return len(self.images)

    def compose(self, other):
        """self after other: (self * other)(x) = self(other(x))."""
        if len(other) != len(self):
            raise DimensionMismatch("permutations act on different point counts")
        return Permutation(tuple(self.images[other.images[x]] for x in range(len(self))))

    def inverse(self):
        inv = [0] * len(self)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class GroupPresentation:
    """Generators (M, sigma) of a finite lattice-group action on N+1 points."""

    n: int
    N: int
    generators: tuple = field(default=())

    def __post_init__(self):
        gens = []
        for M, sigma in self.generators:
            M = intmat(M)
            if M.shape != (self.n, self.n):
                raise DimensionMismatch(f"generator matrix has shape {M.shape}, expected ({self.n}, {self.n})")
            if not is_unimodular(M):
                from .errors import NotUnimodular

                raise NotUnimodular(f"generator matrix {M.tolist()} has |det| != 1")
            if not isinstance(sigma, Permutation):
                sigma = Permutation(tuple(sigma))
            if len(sigma) != self.N + 1:
                raise DimensionMismatch(f"permutation acts on {len(sigma)} points, expected {self.N + 1}")
            gens.append((M, sigma))
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def K(self):
        return len(self.generators)

    def shift_matrices(self):
        return [shift_rep(sigma, self.N) for _, sigma in self.generators]


def shift_rep(sigma, N):
    """Matrix of the induced action of a permutation on the shift vectors.

    Row alpha carries +1 in column sigma(alpha) (when nonzero) and -1 in
    column sigma(0) (when nonzero), expressing
    p_alpha -> p_{sigma(alpha)} - p_{sigma(0)} with p_0 = 0.
    """
    if not isinstance(sigma, Permutation):
        sigma = Permutation(tuple(sigma))
    if len(sigma) != N + 1:
        raise DimensionMismatch(f"permutation acts on {len(sigma)} points, expected {N + 1}")
    a = zeros(N, N)
    s0 = sigma(0)
    for alpha in range(1, N + 1):
        sa = sigma(alpha)
        if sa != 0:
            a[alpha - 1, sa - 1] += 1
        if s0 != 0:
            a[alpha - 1, s0 - 1] -= 1
    return a


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise IndexError(f"{name}={value} out of range [{lo}, {hi}]")


def flatten_index(i, alpha, n):
    """1-based component index a = i + (alpha - 1) * n."""
    _check_range("i", i, 1, n)
    _check_range("alpha", alpha, 1, 10**18)
    return i + (alpha - 1) * n


def unflatten_index(a, n):
    _check_range("a", a, 1, 10**18)
    alpha = (a - 1) // n + 1
    return a - (alpha - 1) * n, alpha


def flatten_row_index(i, alpha, k, n, N):
    """1-based stacked row index J = i + (k - 1) * n * N + (alpha - 1) * n."""
    _check_range("i", i, 1, n)
    _check_range("alpha", alpha, 1, N)
    _check_range("k", k, 1, 10**18)
    return i + (k - 1) * n * N + (alpha - 1) * n


def unflatten_row_index(J, n, N):
    _check_range("J", J, 1, 10**18)
    k = (J - 1) // (n * N) + 1
    alpha = (J - (k - 1) * n * N - 1) // n + 1
    i = J - (k - 1) * n * N - (alpha - 1) * n
    return i, alpha, k


def kron_flatten(M, A):
    """Flatten the tensor M (x) A^T to an nN x nN matrix.

    Entry at (i + (alpha-1)n, j + (beta-1)n) is M[i, j] * A[beta, alpha];
    as a Kronecker product this is kron(A.T, M).  The map is a group
    morphism: kron_flatten(M, A) @ kron_flatten(H, B) =
    kron_flatten(M @ H, B @ A).
    """
    if M.shape[0] != M.shape[1] or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("kron_flatten needs square factors")
    return np.kron(A.T, M)


def build_master_matrix(p):
    """Stack the per-generator blocks of the flattened master system.

    Block k is kron_flatten(M_k, I_N) - kron_flatten(I_n, A_k.T), so that
    the block applied to the column-stacked P gives M_k @ P - P @ A_k.T.
    """
    blocks = []
    i_n = identity(p.n)
    i_N = identity(p.N)
    for (M, _), A in zip(p.generators, p.shift_matrices()):
        blocks.append(kron_flatten(M, i_N) - kron_flatten(i_n, A.T))
    if not blocks:
        return zeros(0, p.n * p.N)
    return np.vstack(blocks)


def group_closure(p, cap=10000):
    """All distinct products of the generators, as (M, sigma) pairs.

    Raises CapExceeded once more than ``cap`` elements appear, which
    signals an infinite (or just too large) generated group.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens = list(p.generators)
    if not gens:
        return []
    seen = {}
    frontier = []
    for M, sigma in gens:
        key = (mat_key(M), sigma.images)
        if key not in seen:
            seen[key] = (M, sigma)
            frontier.append((M, sigma))
    while frontier:
        new_frontier = []
        for M, sigma in frontier:
            for Mg, sg in gens:
                prod = (M @ Mg, sigma.compose(sg))
                key = (mat_key(prod[0]), prod[1].images)
                if key not in seen:
                    seen[key] = prod
                    new_frontier.append(prod)
                    if len(seen) > cap:
                        raise CapExceeded(f"group closure exceeded cap {cap}")
        frontier = new_frontier
    return list(seen.values())


def check_homomorphism(p, cap=10000):
    """True iff the generator assignment M -> sigma extends to the closure.

    Closes the set of (M, shift matrix) pairs under products and reports
    False as soon as one M appears with two distinct shift matrices.
    """
    pair_cap = cap * factorial(p.N + 1)
    gens = [(M, shift_rep(sigma, p.N)) for M, sigma in p.generators]
    if not gens:
        return True
    assigned = {}
    seen = set()
    frontier = []
    for M, A in gens:
        key = (mat_key(M), mat_key(A))
        if key not in seen:
            seen.add(key)
            frontier.append((M, A))
            mk = mat_key(M)
            if mk in assigned and assigned[mk] != mat_key(A):
                return False
            assigned[mk] = mat_key(A)
    while frontier:
        new_frontier = []
        for M, A in frontier:
            for Mg, Ag in gens:
                # Row-stored shift matrices compose in reverse order.
                prod = (M @ Mg, Ag @ A)
                key = (mat_key(prod[0]), mat_key(prod[1]))
                if key in seen:
                    continue
                seen.add(key)
                mk = mat_key(prod[0])
                if mk in assigned and assigned[mk] != mat_key(prod[1]):
                    return False
                assigned[mk] = mat_key(prod[1])
                new_frontier.append(prod)
                if len(seen) > pair_cap:
                    raise CapExceeded(f"pair closure exceeded cap {pair_cap}")
        frontier = new_frontier
    return True
