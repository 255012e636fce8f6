"""Pseudofermions, the two-qubit Pauli group and PT-symmetric circuit dynamics."""

from .circuits import (
    CircuitParamsS,
    CircuitParamsT,
    Trajectory,
    build_HS,
    build_HT,
    build_LS,
    derivative_check,
    evolve,
)
from .linalg import (
    ExactComplex,
    anticommutator,
    commutator,
    kron,
    mat_exp,
    null_space,
    psd_sqrt,
    span_decompose,
)
from .pauli import (
    FiniteMatrixGroup,
    PauliElement,
    from_matrix,
    generate_group,
    is_central_product,
    pauli_mul,
    to_matrix,
)
from .pseudofermion import (
    BiorthogonalSystem,
    PseudofermionPair,
    PseudofermionParams,
    biorthogonal_system,
    fermionize,
    h_eff,
    make_pf_pair,
    mu_ops,
    number_ops,
)
from .xbasis import (
    LiftedPair,
    XBasis,
    commutant_dimension,
    gamma_sets,
    lifted_pf,
    verify_p2_generation,
    verify_x_realization,
    x_matrices,
)

__version__ = "0.1.0"
