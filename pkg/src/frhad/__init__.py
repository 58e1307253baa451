"""Continuous-variable fractional Hadamard transforms.

A one-parameter family of unitaries interpolating between identity and the
scaled position-to-momentum (Hadamard) transform, generalized by two
independent scale lengths. Implemented in three mutually verifying
representations: a discretized integral kernel acting on sampled
wavefunctions, a truncated number-basis operator, and a symplectic
phase-space map, plus the two-mode extension over the entangled-plane
representation.
"""

__version__ = "0.1.0"

from .core import (
    EPS_SIN,
    Grid1D,
    HadamardScale,
    SampledWavefunction,
    TransformParams,
    coherent_wavefunction,
    hermite_function,
    l2_inner,
    reduce_angle,
    sampled_hermite,
    validate_params,
)
from .errors import (
    AliasedGrid,
    FrhadError,
    GridMismatch,
    NonFiniteAngle,
    NonPositiveScale,
    NormDrift,
    NumericalContractError,
    SeriesOverflow,
    SignalFileError,
    SingularKernelAngle,
    SizeMismatch,
    SizeTooSmall,
    TruncationLeak,
    UnphysicalState,
    ValidationError,
)
from .kernel1d import (
    KernelMatrix,
    adjoint_kernel,
    apply_kernel,
    column_norm_residual,
    frft_kernel,
    frht_kernel,
    hadamard_kernel,
    matched_grid,
    matched_scale,
    measure_position,
    unitarity_residual,
)
from .fock import (
    FockOperator,
    NormalOrderFactors,
    coherent_vector,
    fock_to_grid,
    fractional_op,
    frhad_decomposed,
    frhad_normal_ordered,
    grid_to_fock,
    ladder,
    normal_order_factors,
    quadratures,
    squeezer1,
    trusted_max_diff,
)
from .symplectic import (
    GaussianState,
    SymplecticMap,
    apply_gaussian,
    frhad_symplectic1,
    frhad_symplectic2,
    omega,
    rotation_map,
    squeeze_map,
    squeezer2_symplectic,
    symplectic_eigenvalues,
)
from .twomode import (
    BridgeResult,
    EtaGrid,
    EtaKernel,
    TwoModeFockOperator,
    TwoModeWavefunction,
    apply_eta_kernel,
    bridge_check,
    completeness_residual,
    dense_eta_kernel,
    eta_kernel,
    eta_overlap,
    fock_basis_vector2,
    fractional_op2,
    frhad2_decomposed,
    measure_bell,
    quadratures2,
    sample_eta,
    squeezer2,
)
