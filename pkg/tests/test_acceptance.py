"""Acceptance suite: one test per criterion, all exact (tolerance zero).

Each test prints a single ``criterion N ...: PASS`` line when it
succeeds, so the full run yields a pass/fail line per criterion.
"""

import random
from fractions import Fraction
from math import lcm

import numpy as np
import pytest

from multilat.intmat import (
    frac_floor,
    identity,
    intmat,
    is_unimodular,
    mat_eq,
    mat_key,
    ratmat,
    unimodular_inverse,
)
from multilat.master import (
    build_system,
    closure_check,
    compute_translations,
    evaluate_family,
    residual_check,
    solve_master,
)
from multilat.equiv import (
    classify,
    commutant_basis,
    enumerate_unimodular_centralizer,
    perm_centralizer,
)
from multilat.representation import build_master_matrix
from multilat.snf import elementary_divisors_oracle, smith_decompose

from conftest import random_int_matrix, random_presentation

# The verified 2-lattice reference data for the hexagonal system.
HEX_L = [
    [-2, 1, 0],
    [-1, -1, 0],
    [0, 0, -2],
    [-2, 1, 0],
    [0, 0, 0],
    [0, 0, 0],
]
HEX_P_NONTRIVIAL = {
    (Fraction(2, 3), Fraction(1, 3), Fraction(1, 2)),
    (Fraction(1, 3), Fraction(2, 3), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1, 2)),
    (Fraction(2, 3), Fraction(1, 3), Fraction(0)),
    (Fraction(1, 3), Fraction(2, 3), Fraction(1, 2)),
}


def report(num, label):
    print(f"criterion {num} ({label}): PASS")


@pytest.fixture(scope="module")
def hex_system(hexagonal):
    return build_system(hexagonal)


@pytest.fixture(scope="module")
def hex_families(hex_system):
    return solve_master(hex_system)


@pytest.fixture(scope="module")
def sample_systems(hexagonal):
    """Random finite-order presentations with solvable family counts."""
    rng = random.Random(1789)
    out = []
    attempts = 0
    while len(out) < 100 and attempts < 2000:
        attempts += 1
        p = random_presentation(rng)
        sys_ = build_system(p)
        prod = 1
        for d in sys_.snf.divisors:
            prod *= d
        if prod > 60:
            continue
        out.append((p, sys_, solve_master(sys_)))
    assert len(out) >= 100
    return out


def test_criterion_01_master_matrix(hexagonal):
    L = build_master_matrix(hexagonal)
    assert L.tolist() == HEX_L
    report(1, "hexagonal master matrix row-for-row")


def test_criterion_02_snf(hex_system):
    dec = hex_system.snf
    assert dec.rank == 3
    assert [int(dec.D[i, i]) for i in range(3)] == [1, 1, 6]
    assert all(x == 0 for x in dec.D[3:, :].flat)
    assert mat_eq(dec.reconstruct(), intmat(HEX_L))
    assert is_unimodular(dec.U) and is_unimodular(dec.V)
    report(2, "hexagonal SNF D = diag(1,1,6), rank 3, U D V = L")


def test_criterion_03_families(hex_families):
    assert len(hex_families) == 6
    nontrivial = {
        tuple(f.P0[:, 0]) for f in hex_families if f.class_index != (0, 0, 0)
    }
    assert nontrivial == HEX_P_NONTRIVIAL
    report(3, "six families, five nontrivial shift vectors")


def test_criterion_04_translations(hexagonal, hex_system):
    p = hexagonal
    for i in range(6):
        X = [Fraction(0), Fraction(0), Fraction(i, 6)]
        S, Ts = compute_translations(hex_system, X)
        assert list(S) == [0, 0, i, 0, 0, 0]
        # The residuals at P = V^-1 X coincide with the unflattening of U S.
        P = (hex_system.Vinv @ np.array(X, dtype=object)).reshape(
            (p.n, p.N), order="F"
        )
        for T, R in zip(Ts, residual_check(p, P)):
            assert mat_eq(T, R)
    report(4, "S_i = (0,0,i,0,0,0) and T = unflattened U S")


def test_criterion_05_centralizers(hexagonal):
    basis = commutant_basis([M for M, _ in hexagonal.generators])
    cset = enumerate_unimodular_centralizer(basis, bound=2)
    assert cset.exhaustive
    expected = {
        mat_key(intmat([[s, 0, 0], [0, s, 0], [0, 0, t]]))
        for s in (1, -1)
        for t in (1, -1)
    }
    assert {mat_key(m) for m in cset.elements} == expected
    perms = perm_centralizer(hexagonal)
    assert sorted(tuple(B.flat) for _, B in perms) == [(-1,), (1,)]
    report(5, "centralizer {+-diag(1,1,+-1)} exhaustive, B in {+1,-1}")


def test_criterion_06_three_classes(hex_system, hex_families):
    result = classify(hex_system, hex_families, bound=2)
    assert not result.caveat
    # The trivial family sits alone; the five nontrivial ones split into
    # exactly the three expected classes.
    nontrivial = tuple(c for c in result.classes if 0 not in c)
    assert nontrivial == ((1, 5), (2, 4), (3,))
    for pair in ((1, 5), (2, 4)):
        w = result.witnesses[pair]
        assert mat_eq(w.H, identity(3))
        assert w.B_matrix.tolist() == [[-1]]
        assert any(z != 0 for z in w.Z)
    assert hex_families[3].degenerate
    report(6, "three classes {1,5} {2,4} {3}, witnesses (I, -1, Z), family 3 degenerate")


def test_criterion_07_snf_property_suite():
    rng = random.Random(424242)
    for _ in range(1000):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        L = random_int_matrix(rng, rows, cols, -10, 10)
        dec = smith_decompose(L)
        assert mat_eq(dec.reconstruct(), L)
        assert is_unimodular(dec.U) and is_unimodular(dec.V)
        divs = dec.divisors
        assert all(d > 0 for d in divs)
        for a, b in zip(divs, divs[1:]):
            assert b % a == 0
        for i in range(dec.rank, min(rows, cols)):
            assert dec.D[i, i] == 0
        assert list(divs) == elementary_divisors_oracle(L)
    report(7, "1000-matrix SNF property suite vs minor-gcd oracle")


def test_criterion_08_solver_property_suite(sample_systems):
    rng = random.Random(5151)
    assert len(sample_systems) >= 100
    for p, sys_, families in sample_systems:
        prod = 1
        for d in sys_.snf.divisors:
            prod *= d
        assert len(families) == prod
        for f in families:
            for T, R in zip(f.T, residual_check(p, f.P0)):
                assert mat_eq(T, R)
            assert closure_check(sys_, f)
            for _ in range(5):
                t = tuple(
                    Fraction(rng.randint(-8, 8), rng.randint(1, 8))
                    for _ in f.free_dirs
                )
                residual_check(p, evaluate_family(f, t))
    report(8, "100-presentation solver suite: residuals, counts, closure")


def _family_membership(sys_, P):
    """Class index of a solution P and its kernel-coset consistency."""
    p = sys_.presentation
    v = P.reshape(-1, order="F")
    X = sys_.snf.V @ v
    r = sys_.rank
    index = []
    for i in range(r):
        d = int(sys_.snf.D[i, i])
        val = Fraction(X[i]) * d
        assert val.denominator == 1
        index.append(val.numerator % d)
    return tuple(index)


def test_criterion_09_brute_force_completeness(sample_systems):
    checked = 0
    for p, sys_, families in sample_systems:
        divisors = sys_.snf.divisors
        q = lcm(*divisors) if divisors else 1
        nN = p.n * p.N
        if q > 6 or nN > 4:
            continue
        by_index = {f.class_index: f for f in families}
        # Every rational P with denominator q in [0,1)^{nN} solving the
        # system must land in a returned family mod Z^{nN}.
        from itertools import product as iproduct

        for combo in iproduct(range(q), repeat=nN):
            P = ratmat(
                [
                    [Fraction(combo[i + a * p.n], q) for a in range(p.N)]
                    for i in range(p.n)
                ]
            )
            Lv = sys_.L @ P.reshape(-1, order="F")
            if not all(Fraction(x).denominator == 1 for x in Lv.flat):
                continue
            idx = _family_membership(sys_, P)
            f = by_index[idx]
            diff = P.reshape(-1, order="F") - f.P0.reshape(-1, order="F")
            proj = sys_.snf.V @ diff
            for i in range(sys_.rank):
                assert Fraction(proj[i]).denominator == 1
        checked += 1
    assert checked >= 10
    report(9, f"brute-force completeness over {checked} small systems")


def test_criterion_10_pivot_independence(hexagonal, sample_systems):
    # P0 representatives depend on the particular V only through the set
    # they form: the class indexing may permute, the reduced shifts not.
    def p0_set(sys_):
        return {tuple(f.P0.flat) for f in solve_master(sys_)}

    subjects = [hexagonal] + [p for p, _, _ in sample_systems[:20]]
    for p in subjects:
        a = build_system(p, pivot_strategy="min_abs")
        b = build_system(p, pivot_strategy="first_nonzero")
        assert p0_set(a) == p0_set(b)
    report(10, "identical P0 sets under both pivot strategies")


def test_criterion_11_same_d_insufficiency(hex_system, hex_families):
    # One Smith form D for all six families, yet the five nontrivial ones
    # fall into three distinct classes: equal D does not imply equivalence.
    result = classify(hex_system, hex_families, bound=2)
    nontrivial = [c for c in result.classes if 0 not in c]
    assert len(nontrivial) == 3
    assert not result.caveat
    report(11, "shared D splits into three inequivalent classes")
