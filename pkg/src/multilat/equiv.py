"""Arithmetic equivalence of solutions via conjugator search.

Candidate conjugators (H, B) range over the unimodular centralizer of the
generator matrices and the permutation centralizer of the shift action.
A pair of solutions is witnessed equivalent when the diagonal-basis
right-hand sides satisfy  S' = U'^-1 WK^-1 U S + D Z  for an integer Z.

The centralizer in GL(n, Z) may be infinite, so the search is bounded;
results carry an explicit exhaustiveness flag and a missing witness only
proves inequivalence when that flag is set.
"""

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

import numpy as np

from .errors import CapExceeded, NotUnimodular, PreconditionFailed
from .intmat import identity, is_unimodular, mat_eq, mat_key, unimodular_inverse, zeros
from .representation import Permutation, kron_flatten, shift_rep
from .snf import kernel_mod_basis

__all__ = [
    "EquivalenceWitness",
    "CentralizerSet",
    "ClassReport",
    "commutant_basis",
    "enumerate_unimodular_centralizer",
    "perm_centralizer",
    "build_WK",
    "test_equivalence",
    "classify",
]


@dataclass(frozen=True)
class EquivalenceWitness:
    H: np.ndarray
    B: Permutation
    B_matrix: np.ndarray
    Z: tuple


@dataclass(frozen=True)
class CentralizerSet:
    module_basis: tuple
    elements: tuple
    exhaustive: bool


@dataclass(frozen=True)
class ClassReport:
    classes: tuple  # tuple of tuples of family indices
    witnesses: dict  # (i, j) -> EquivalenceWitness for same-class pairs found
    caveat: bool  # True when the conjugator search was not certified exhaustive


def commutant_basis(Ms):
    """Z-basis of the integer matrices commuting with every given matrix.

    The commutator conditions M @ H - H @ M = 0 are stacked as one linear
    system on the column-stacked H and solved by the integer kernel.
    """
    Ms = list(Ms)
    if not Ms:
        raise PreconditionFailed("need at least one matrix")
    n = Ms[0].shape[0]
    i_n = identity(n)
    blocks = [np.kron(i_n, M) - np.kron(M.T, i_n) for M in Ms]
    kernel = kernel_mod_basis(np.vstack(blocks))
    return [np.asarray(v, dtype=object).reshape((n, n), order="F") for v in kernel]


def _combinations(basis, bound):
    for coeffs in product(range(-bound, bound + 1), repeat=len(basis)):
        m = zeros(*basis[0].shape)
        for c, b in zip(coeffs, basis):
            if c:
                m = m + c * b
        yield m


def _unimodular_in_bound(basis, bound):
    found = {}
    for m in _combinations(basis, bound):
        if is_unimodular(m):
            found[mat_key(m)] = m
    return found


def enumerate_unimodular_centralizer(basis, bound=2):
    """Unimodular integer combinations of a commutant basis.

    Coefficients range over [-bound, bound].  The exhaustive flag is set
    only when the elements found form a group and the set is stable under
    doubling the bound, a conservative certificate.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    basis = [np.asarray(b, dtype=object) for b in basis]
    if not basis:
        return CentralizerSet(module_basis=(), elements=(), exhaustive=True)
    found = _unimodular_in_bound(basis, bound)
    exhaustive = False
    if found:
        closed = True
        for a in found.values():
            if mat_key(unimodular_inverse(a)) not in found:
                closed = False
                break
            for b in found.values():
                if mat_key(a @ b) not in found:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            doubled = _unimodular_in_bound(basis, 2 * bound)
            exhaustive = set(doubled) == set(found)
    # Identity first, so witness searches report the simplest conjugator.
    ident = identity(basis[0].shape[0])
    elements = tuple(
        sorted(found.values(), key=lambda m: (not mat_eq(m, ident), mat_key(m)))
    )
    return CentralizerSet(module_basis=tuple(basis), elements=elements, exhaustive=exhaustive)


def perm_centralizer(p, cap=8):
    """Permutations whose shift matrix commutes with every generator's.

    Brute force over the symmetric group; capped by the point count.
    """
    if p.N + 1 > cap:
        raise CapExceeded(f"searching S_{p.N + 1} exceeds the factorial cap {cap}")
    As = p.shift_matrices()
    out = []
    for images in permutations(range(p.N + 1)):
        tau = Permutation(images)
        Bt = shift_rep(tau, p.N)
        if all(mat_eq(Bt @ A, A @ Bt) for A in As):
            out.append((tau, Bt))
    return out


def build_WK(H, B, K):
    """Block-diagonal transport matrix with K copies of kron_flatten(H, B.T).

    The diagonal block sends vec(P) to vec(H @ P @ B.T), the transported
    shift matrix.
    """
    if not is_unimodular(H):
        raise NotUnimodular("H must be unimodular")
    if not is_unimodular(B):
        raise NotUnimodular("B must be invertible over Z")
    W = kron_flatten(H, B.T)  # = kron(B, H)
    s = W.shape[0]
    out = zeros(s * K, s * K)
    for k in range(K):
        out[k * s : (k + 1) * s, k * s : (k + 1) * s] = W
    return out


def _check_generator_conjugacy(pA, pB, H, Bmat):
    """H and B must conjugate the generators of system A onto system B."""
    if pA.K != pB.K or pA.n != pB.n or pA.N != pB.N:
        raise PreconditionFailed("systems have mismatched dimensions or generator counts")
    AsA = pA.shift_matrices()
    AsB = pB.shift_matrices()
    for (MA, _), (MB, _), AA, AB in zip(pA.generators, pB.generators, AsA, AsB):
        if not mat_eq(MA @ H, H @ MB):
            raise PreconditionFailed("H does not conjugate the lattice-group generators")
        if not mat_eq(AA @ Bmat, Bmat @ AB):
            raise PreconditionFailed("B does not conjugate the shift representations")


def test_equivalence(sysA, SA, sysB, SB, H, B):
    """Witness that solution SB of sysB is equivalent to SA of sysA, or None.

    B may be a Permutation or its shift matrix.  Checks the generator
    conjugacy preconditions and equality of Smith forms first, then looks
    for the unique integer Z with
    SB = U_B^-1 @ WK^-1 @ U_A @ SA + D @ Z.
    """
    pA, pB = sysA.presentation, sysB.presentation
    if isinstance(B, Permutation):
        tau = B
        Bmat = shift_rep(B, pA.N)
    else:
        tau = None
        Bmat = B
    _check_generator_conjugacy(pA, pB, H, Bmat)
    if not mat_eq(sysA.snf.D, sysB.snf.D):
        raise PreconditionFailed("systems have different Smith normal forms")
    SA = np.array([int(x) for x in SA], dtype=object)
    SB = np.array([int(x) for x in SB], dtype=object)
    WK = build_WK(H, Bmat, pA.K)
    transported = unimodular_inverse(sysB.snf.U) @ unimodular_inverse(WK) @ sysA.snf.U @ SA
    diff = SB - transported
    r = sysB.rank
    nN = pB.n * pB.N
    Z = [0] * nN
    for idx, val in enumerate(diff):
        val = int(val)
        if idx < r:
            d = int(sysB.snf.D[idx, idx])
            if val % d != 0:
                return None
            Z[idx] = val // d
        elif val != 0:
            return None
    return EquivalenceWitness(H=H, B=tau, B_matrix=Bmat, Z=tuple(Z))


def classify(sys, families, bound=2):
    """Partition solution families into witnessed equivalence classes.

    Runs every (H, B) candidate on every pair; merges via union-find.  The
    caveat flag is set when the centralizer search was not certified
    exhaustive, in which case unmerged pairs are only "no witness found".
    """
    p = sys.presentation
    cset = enumerate_unimodular_centralizer(commutant_basis([M for M, _ in p.generators]), bound)
    perms = perm_centralizer(p)
    parent = list(range(len(families)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    witnesses = {}
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            for H in cset.elements:
                w = None
                for tau, _ in perms:
                    w = test_equivalence(sys, families[j].S, sys, families[i].S, H, tau)
                    if w is not None:
                        break
                if w is not None:
                    witnesses[(i, j)] = w
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
                    break
    groups = {}
    for i in range(len(families)):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(tuple(v) for _, v in sorted(groups.items()))
    return ClassReport(classes=classes, witnesses=witnesses, caveat=not cset.exhaustive)
