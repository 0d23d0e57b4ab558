"""Assemble and solve the master equation for all integer right-hand sides.

The flattened system ``L @ vec(P) = 0 mod Z`` is solved through the Smith
normal form L = U D V: every solution class is indexed by a tuple
(k_1, ..., k_r) with k_i in {0, ..., D_ii - 1}, giving
X = (k_1/D_11, ..., k_r/D_rr, 0, ...) and P = V^-1 X reduced to the unit
cell, plus one free direction per zero divisor.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import NotASolution, NotInvariant, PreconditionFailed
from .intmat import (
    frac_floor,
    mat_eq,
    rat_reduce,
    ratmat,
    to_int_mat,
    unimodular_inverse,
    zeros,
)
from .representation import build_master_matrix, check_homomorphism, shift_rep
from .snf import smith_decompose

__all__ = [
    "MasterSystem",
    "SolutionFamily",
    "build_system",
    "solve_master",
    "compute_translations",
    "residual_check",
    "evaluate_family",
    "is_degenerate",
    "closure_check",
]


@dataclass(frozen=True)
class MasterSystem:
    presentation: object
    L: np.ndarray
    snf: object
    Vinv: np.ndarray

    @property
    def rank(self):
        return self.snf.rank


@dataclass(frozen=True)
class SolutionFamily:
    class_index: tuple  # (k_1, ..., k_r)
    P0: np.ndarray  # n x N rational matrix, entries in [0, 1)
    free_dirs: tuple  # integer nN-vectors, columns of V^-1 beyond the rank
    S: tuple  # length nNK integer vector, zeros beyond the rank
    T: tuple  # one n x N integer matrix per generator, the residuals at P0
    degenerate: bool
    faithful: bool


def build_system(p, pivot_strategy="min_abs", strict=False):
    """Flatten a presentation into its master system and Smith data.

    With strict=True the generator assignment M -> sigma must extend to a
    well-defined map on the closure.  The default is permissive: even an
    inconsistent assignment yields a meaningful stacked system, since
    products of generator triples satisfy the master equation regardless.
    """
    if strict and not check_homomorphism(p):
        raise PreconditionFailed("generator permutations are not a consistent representation")
    L = build_master_matrix(p)
    dec = smith_decompose(L, pivot_strategy=pivot_strategy)
    return MasterSystem(presentation=p, L=L, snf=dec, Vinv=unimodular_inverse(dec.V))


def _vec(P):
    """Column-stack an n x N matrix into a length-nN vector."""
    return P.reshape(-1, order="F")


def _unvec(v, n, N):
    return np.asarray(v, dtype=object).reshape((n, N), order="F")


def residual_check(p, P):
    """Translations T_k = M_k @ P - P @ A_k.T, or NotInvariant.

    Raises NotInvariant with the offending generator and entry when any
    residual entry fails to be an integer.
    """
    P = ratmat(P)
    if P.shape != (p.n, p.N):
        raise PreconditionFailed(f"P has shape {P.shape}, expected ({p.n}, {p.N})")
    out = []
    for k, ((M, _), A) in enumerate(zip(p.generators, p.shift_matrices())):
        R = M @ P - P @ A.T
        for i in range(p.n):
            for alpha in range(p.N):
                if Fraction(R[i, alpha]).denominator != 1:
                    raise NotInvariant(k, (i + 1, alpha + 1), R[i, alpha])
        out.append(to_int_mat(R))
    return out


def compute_translations(sys, X):
    """Right-hand side data S = D @ X and the per-generator translations.

    X must solve the diagonal system: D @ X integral in the first r
    components and zero beyond.  Returns (S, [T_1, ..., T_K]) with the
    T_k read off from U @ S by the stacked row ordering.
    """
    p = sys.presentation
    X = np.array([Fraction(x) for x in X], dtype=object)
    if X.shape[0] != p.n * p.N:
        raise PreconditionFailed(f"X has length {X.shape[0]}, expected {p.n * p.N}")
    DX = sys.snf.D @ X
    r = sys.rank
    S = []
    for idx, val in enumerate(DX):
        val = Fraction(val)
        if val.denominator != 1:
            raise NotASolution(f"D @ X has non-integer component {val} at {idx + 1}")
        if idx >= r and val != 0:
            raise NotASolution(f"D @ X nonzero beyond the rank at component {idx + 1}")
        S.append(val.numerator)
    S = np.array(S, dtype=object)
    Tflat = sys.snf.U @ S
    Ts = [
        _unvec(Tflat[k * p.n * p.N : (k + 1) * p.n * p.N], p.n, p.N)
        for k in range(p.K)
    ]
    return S, Ts


def _is_degenerate_cols(P):
    """True iff {0, p_1, ..., p_N} is a subgroup of Q^n / Z^n."""
    cols = {tuple(Fraction(x) - frac_floor(x) for x in P[:, a]) for a in range(P.shape[1])}
    cols.add(tuple(Fraction(0) for _ in range(P.shape[0])))
    for c in cols:
        if tuple(Fraction(-x) - frac_floor(-x) for x in c) not in cols:
            return False
        for d in cols:
            s = tuple(Fraction(x + y) - frac_floor(x + y) for x, y in zip(c, d))
            if s not in cols:
                return False
    return True


def is_degenerate(f, p=None):
    """Whether the family's point set at t = 0 is itself a Bravais lattice."""
    return _is_degenerate_cols(f.P0)


def _is_faithful_cols(P):
    """False when two shift columns (or a column and 0) coincide mod Z^n."""
    cols = [tuple(Fraction(x) - frac_floor(x) for x in P[:, a]) for a in range(P.shape[1])]
    cols.append(tuple(Fraction(0) for _ in range(P.shape[0])))
    return len(set(cols)) == len(cols)


def solve_master(sys):
    """Every solution family of the master system, mod lattice translations.

    One family per class-index tuple, ordered lexicographically; the total
    count is the product of the nonzero elementary divisors.
    """
    p = sys.presentation
    n, N = p.n, p.N
    r = sys.rank
    nN = n * N
    divisors = sys.snf.divisors
    free_dirs = tuple(sys.Vinv[:, j].copy() for j in range(r, nN))
    families = []
    for ks in product(*(range(d) for d in divisors)):
        X = np.array(
            [Fraction(k, d) for k, d in zip(ks, divisors)] + [Fraction(0)] * (nN - r),
            dtype=object,
        )
        P0 = rat_reduce(_unvec(sys.Vinv @ X, n, N))
        S, _ = compute_translations(sys, X)
        Ts = residual_check(p, P0)
        families.append(
            SolutionFamily(
                class_index=ks,
                P0=P0,
                free_dirs=free_dirs,
                S=tuple(int(s) for s in S),
                T=tuple(Ts),
                degenerate=_is_degenerate_cols(P0),
                faithful=_is_faithful_cols(P0),
            )
        )
    return families


def evaluate_family(f, t):
    """Shift matrix at a point of the family's free parameters."""
    t = [Fraction(x) for x in t]
    if len(t) != len(f.free_dirs):
        raise PreconditionFailed(f"expected {len(f.free_dirs)} free parameters, got {len(t)}")
    n, N = f.P0.shape
    v = _vec(f.P0).copy()
    for tj, dj in zip(t, f.free_dirs):
        v = v + tj * dj
    return rat_reduce(_unvec(v, n, N))


def closure_check(sys, f, triples=None):
    """Verify the group law on the solution's symmetry triples.

    Every product of two generator triples, and every inverse triple,
    must again satisfy the master equation at P0 with integer translation.
    A corrupted T breaks this.
    """
    p = sys.presentation
    P = f.P0
    if triples is None:
        triples = [
            (M, shift_rep(sigma, p.N), ratmat(T))
            for ((M, sigma), T) in zip(p.generators, f.T)
        ]

    def satisfies(M, A, T):
        return mat_eq(M @ P - P @ A.T, T)

    for M, A, T in triples:
        if not satisfies(M, A, T):
            return False
        Minv = unimodular_inverse(M)
        Ainv = unimodular_inverse(A)
        Tinv = -(Minv @ T @ Ainv.T)
        if not satisfies(Minv, Ainv, ratmat(Tinv)):
            return False
    for M1, A1, T1 in triples:
        for M2, A2, T2 in triples:
            Mc = M1 @ M2
            Ac = A2 @ A1  # row-stored shift matrices compose in reverse
            Tc = T1 @ A2.T + M1 @ T2
            if not satisfies(Mc, Ac, Tc):
                return False
            if not all(Fraction(x).denominator == 1 for x in Tc.flat):
                return False
    return True
