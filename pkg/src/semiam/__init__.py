"""Exact diagonals and amenability constants of finite semilattice and
commutative Clifford semigroup convolution algebras."""

from .exactlinalg import (
    ExactMatrix,
    LinearSolution,
    Rational,
    SparseEliminator,
    kron,
    rat,
    rat_decimal,
    rat_str,
    solve_linear,
)
from .semilattice import (
    Semilattice,
    ValidationReport,
    Violation,
    are_isomorphic,
    cayley_embed,
    chain,
    check_table,
    flat,
    flat_with_top,
    from_hasse,
    power_set,
    product,
    validate,
)
from .diagonal import (
    DiagonalTensor,
    L1Vector,
    amenability_constant,
    convolve,
    diagonal_recursive,
    tensor_diagonal,
    unit,
    verify_diagonal,
)
from .moebius import (
    MoebiusTable,
    diagonal_via_mobius,
    mobius_table,
    schutzenberger,
    schutzenberger_inverse,
    unit_via_schutzenberger,
)
from .clifford import (
    CliffordSemigroup,
    ConnectingHom,
    DiagonalSolveError,
    FiniteAbelianGroup,
    NotUnitalError,
    am_constant,
    build_clifford,
    collapse,
    diagonal_solve,
    semigroup_table,
    unit_solve,
)
from .enumeration import (
    GapReport,
    SpectrumReport,
    canonical_table,
    enumerate_by_extension,
    enumerate_by_families,
    enumerate_brute,
    enumerate_semilattices,
    gap_search,
    spectrum,
)

__version__ = "0.1.0"
