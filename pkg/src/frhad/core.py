"""Parameter records, grids, sampled signals, norms, and validation.

Conventions used throughout the package: hbar = 1, X = (a + a†)/sqrt(2),
P = (a - a†)/(i sqrt(2)), vacuum wavefunction pi^(-1/4) exp(-x^2/2),
vacuum covariance I/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    GridMismatch,
    NonFiniteAngle,
    NonPositiveScale,
    SingularKernelAngle,
)

#: Kernel-route construction refuses |sin alpha| below this threshold.
#: Angles at or near multiples of pi must go through the Fock or symplectic
#: route, which stay regular there.
EPS_SIN = 1e-6

_TWO_PI = 2.0 * math.pi

PATHS = ("kernel", "fock", "symplectic")


def reduce_angle(alpha: float) -> float:
    """Reduce an angle modulo 2*pi into [0, 2*pi).

    No reduction modulo pi is performed: the sign of sin(alpha) selects the
    kernel branch.
    """
    return float(alpha) % _TWO_PI


@dataclass(frozen=True)
class TransformParams:
    """Angle and the two scale lengths parameterizing every transform.

    Parameters
    ----------
    alpha : float
        Transform angle in radians.
    mu : float
        Input-side scale length, > 0.
    nu : float
        Output-side scale length, > 0.
    """

    alpha: float
    mu: float = 1.0
    nu: float = 1.0


@dataclass(frozen=True)
class HadamardScale:
    """Scale length of the position-to-momentum transform.

    Equivalent to ``TransformParams(pi/2, sigma/sqrt(2), sigma/sqrt(2))``.
    """

    sigma: float

    @property
    def params(self) -> TransformParams:
        s = self.sigma / math.sqrt(2.0)
        return TransformParams(alpha=math.pi / 2.0, mu=s, nu=s)


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1-D sampling grid with n points spanning [x_min, x_max]."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid endpoints must be finite")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.n < 16:
            raise ValueError(f"grid needs at least 16 points, got {self.n}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)

    @property
    def abs_max(self) -> float:
        return max(abs(self.x_min), abs(self.x_max))


@dataclass(frozen=True)
class SampledWavefunction:
    """Complex signal sampled on a uniform grid.

    The values are stored read-only; all operations return new instances.
    """

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} samples, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values.view(float))):
            raise ValueError("samples must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def norm(self) -> float:
        """L2 norm under the dx-weighted quadrature."""
        return math.sqrt(
            float(np.sum(np.abs(self.values) ** 2)) * self.grid.dx
        )


def validate_params(p: TransformParams, path: str) -> None:
    """Check a parameter triple against the requested evaluation path.

    Raises ``NonPositiveScale``, ``NonFiniteAngle``, or (kernel path only)
    ``SingularKernelAngle``. The Fock and symplectic paths accept any finite
    angle. Pure: same input always gives the same outcome.
    """
    if path not in PATHS:
        raise ValueError(f"unknown path {path!r}, expected one of {PATHS}")
    if not (math.isfinite(p.mu) and p.mu > 0.0):
        raise NonPositiveScale(f"mu must be positive and finite, got {p.mu}")
    if not (math.isfinite(p.nu) and p.nu > 0.0):
        raise NonPositiveScale(f"nu must be positive and finite, got {p.nu}")
    if not math.isfinite(p.alpha):
        raise NonFiniteAngle(f"alpha must be finite, got {p.alpha}")
    if path == "kernel" and abs(math.sin(p.alpha)) < EPS_SIN:
        raise SingularKernelAngle(
            f"|sin(alpha)| = {abs(math.sin(p.alpha)):.3e} < {EPS_SIN}; "
            "use the Fock or symplectic route near multiples of pi"
        )


def l2_inner(
    f: SampledWavefunction,
    g: SampledWavefunction,
    trapezoid: bool = False,
) -> complex:
    """Quadrature inner product <f|g>, conjugate-linear in ``f``.

    Riemann sum with uniform weight dx; ``trapezoid=True`` halves the two
    endpoint weights.
    """
    if f.grid != g.grid:
        raise GridMismatch(f"grids differ: {f.grid} vs {g.grid}")
    prod = np.conj(f.values) * g.values
    if trapezoid:
        prod = prod.copy()
        prod[0] *= 0.5
        prod[-1] *= 0.5
    return complex(np.sum(prod) * f.grid.dx)


def hermite_function(n: int, x: np.ndarray) -> np.ndarray:
    """Orthonormal Hermite function h_n(x) via the stable recurrence.

    h_0 = pi^(-1/4) exp(-x^2/2) and
    h_n = sqrt(2/n) x h_{n-1} - sqrt((n-1)/n) h_{n-2}.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    h_prev = np.pi ** (-0.25) * np.exp(-0.5 * x**2)
    if n == 0:
        return h_prev
    h = math.sqrt(2.0) * x * h_prev
    for k in range(2, n + 1):
        h, h_prev = (
            math.sqrt(2.0 / k) * x * h - math.sqrt((k - 1) / k) * h_prev,
            h,
        )
    return h


def sampled_hermite(n: int, grid: Grid1D, scale: float = 1.0) -> SampledWavefunction:
    """Unit-norm Hermite function h_n(x/scale)/sqrt(scale) on a grid."""
    x = grid.points / scale
    return SampledWavefunction(grid, hermite_function(n, x) / math.sqrt(scale))


def coherent_wavefunction(
    grid: Grid1D, x0: float = 0.0, p0: float = 0.0
) -> SampledWavefunction:
    """Displaced-vacuum wavefunction with mean position x0 and momentum p0."""
    x = grid.points
    values = np.pi ** (-0.25) * np.exp(
        -0.5 * (x - x0) ** 2 + 1j * p0 * x - 0.5j * x0 * p0
    )
    return SampledWavefunction(grid, values)
