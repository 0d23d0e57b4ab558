"""Shared fixtures: the hexagonal reference presentation and random
finite-order presentation generators used by the property suites."""

import random

import pytest

from multilat.intmat import intmat, unimodular_inverse
from multilat.representation import GroupPresentation, Permutation

# Hexagonal 2-lattice reference system: a six-fold rotation with the
# c-axis flip, and a mirror.  Both generators fix the two lattice points,
# so the induced shift permutations are trivial.
HEX_GENERATORS = (
    ([[-1, 1, 0], [-1, 0, 0], [0, 0, -1]], (0, 1)),
    ([[-1, 1, 0], [0, 1, 0], [0, 0, 1]], (0, 1)),
)


@pytest.fixture(scope="session")
def hexagonal():
    return GroupPresentation(n=3, N=1, generators=HEX_GENERATORS)


def random_int_matrix(rng, rows, cols, lo=-10, hi=10):
    return intmat([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(rng, n, steps=4):
    """Product of random elementary row additions; always determinant 1."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        m[i] = [x + c * y for x, y in zip(m[i], m[j])]
    return intmat(m)


def random_signed_permutation(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    s = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        s[i][p] = rng.choice((-1, 1))
    return intmat(s)


def random_presentation(rng, max_n=3, max_N=3, max_K=2):
    """Random presentation generating a finite group.

    All matrix generators are signed permutation matrices conjugated by
    one shared unimodular matrix, so the generated matrix group embeds in
    the (finite) hyperoctahedral group and closure always terminates.
    """
    n = rng.randint(1, max_n)
    N = rng.randint(1, max_N)
    K = rng.randint(1, max_K)
    W = random_unimodular(rng, n)
    Winv = unimodular_inverse(W)
    gens = []
    for _ in range(K):
        M = W @ random_signed_permutation(rng, n) @ Winv
        sigma = list(range(N + 1))
        rng.shuffle(sigma)
        gens.append((M, Permutation(tuple(sigma))))
    return GroupPresentation(n=n, N=N, generators=tuple(gens))


@pytest.fixture
def rng():
    return random.Random(20260824)
