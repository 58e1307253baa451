"""Exception hierarchy shared across the package.

Two branches matter to callers: ``ValidationError`` for inputs that are
rejected before any computation (bad parameters, incompatible grids,
malformed files), and ``NumericalContractError`` for computations that ran
but could not meet a stated numerical guarantee (truncation leakage, series
precision loss, norm drift). The CLI maps the former to exit code 2 and the
latter to exit code 3.
"""


class FrhadError(Exception):
    """Base class for all library errors."""


class ValidationError(FrhadError):
    """Invalid parameters, grids, sizes, or input files."""


class NumericalContractError(FrhadError):
    """A numerical guarantee could not be met at the requested size."""


class NonPositiveScale(ValidationError):
    """A scale length (mu, nu, or sigma) must be strictly positive."""


class NonFiniteAngle(ValidationError):
    """The transform angle must be a finite real number."""


class SingularKernelAngle(ValidationError):
    """|sin(alpha)| is too small for the kernel route; the prefactor
    1/sqrt(sin alpha) diverges there. The Fock and symplectic routes
    remain regular at those angles."""


class GridMismatch(ValidationError):
    """Operands sampled on different grids."""


class AliasedGrid(ValidationError):
    """The kernel chirp would advance by more than pi between adjacent
    samples; the grid cannot represent this transform."""


class SizeTooSmall(ValidationError):
    """Requested truncation dimension is too small."""


class SizeMismatch(ValidationError):
    """Operands of incompatible dimensions."""


class UnphysicalState(ValidationError):
    """Covariance matrix violates the uncertainty principle."""


class SignalFileError(ValidationError):
    """Malformed signal, matrix, or report file."""


class TruncationLeak(NumericalContractError):
    """An operator moved more amplitude out of the resolvable levels than
    the truncation budget allows."""


class SeriesOverflow(NumericalContractError):
    """Exponential-series coefficients grew large enough to lose precision."""


class NormDrift(NumericalContractError):
    """A transform changed the signal norm beyond the aliasing-symptom
    threshold."""
