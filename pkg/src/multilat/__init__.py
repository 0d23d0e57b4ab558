"""Exact-arithmetic solver and classifier for multilattice master equations.

Solves M P = P A + T over all integer right-hand sides via the Smith
normal form of the flattened system, enumerates every shift-vector
solution family modulo lattice translations, and partitions families
into arithmetic equivalence classes by bounded conjugator search.
"""

from .errors import (
    CapExceeded,
    DimensionMismatch,
    MultilatError,
    NotASolution,
    NotInvariant,
    NotUnimodular,
    ParseError,
    PreconditionFailed,
    SizeLimitExceeded,
)
from .intmat import (
    det,
    identity,
    intmat,
    mat_eq,
    mat_mul,
    rat_mat_mul,
    rat_reduce,
    ratmat,
    unimodular_inverse,
)
from .snf import SnfDecomposition, elementary_divisors_oracle, kernel_mod_basis, smith_decompose
from .representation import (
    GroupPresentation,
    Permutation,
    build_master_matrix,
    check_homomorphism,
    flatten_index,
    flatten_row_index,
    group_closure,
    kron_flatten,
    shift_rep,
    unflatten_index,
    unflatten_row_index,
)
from .master import (
    MasterSystem,
    SolutionFamily,
    build_system,
    closure_check,
    compute_translations,
    evaluate_family,
    is_degenerate,
    residual_check,
    solve_master,
)
from .equiv import (
    CentralizerSet,
    ClassReport,
    EquivalenceWitness,
    build_WK,
    classify,
    commutant_basis,
    enumerate_unimodular_centralizer,
    perm_centralizer,
    test_equivalence,
)

__version__ = "0.1.0"
