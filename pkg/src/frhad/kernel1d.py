"""Discretized single-mode integral-kernel engine.

The transform with angle alpha and scales (mu, nu) acts on position
wavefunctions as

    g(y) = C * Integral exp{ -i (x^2/mu^2 + y^2/nu^2) cot(alpha) / 2
                             + i x y / (mu nu sin alpha) } f(x) dx,
    C    = e^{i(pi/2 - alpha)/2} / sqrt(2 pi mu nu sin alpha),

which is well defined for sin(alpha) > 0. Angles reduced into (pi, 2*pi)
have sin(alpha) < 0; rather than pick an arbitrary complex square-root
branch the engine factors alpha = alpha' + pi with sin(alpha') > 0 and
evaluates the alpha' kernel at reflected input coordinates, which realizes
the number-basis parity phase e^{i pi n} exactly. Correctness of this
composition is asserted against the Fock-basis construction in the test
suite, not by an independent branch convention.

Discretization: entries hold sqrt(dx*dy) * K(y_j, x_k), so the matrix maps
sqrt(dx)-scaled samples to sqrt(dy)-scaled samples. Such a matrix is
exactly unitary if and only if the grid is critically sampled,
n * dx * dy = 2 pi mu nu |sin alpha| (see ``matched_grid``); on finer grids
the matrix is an accurate quadrature of the unitary operator on
well-resolved signals but its columns — pure chirps — are not unit
vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    Grid1D,
    HadamardScale,
    SampledWavefunction,
    TransformParams,
    reduce_angle,
    validate_params,
)
from .errors import AliasedGrid, GridMismatch

__all__ = [
    "KernelMatrix",
    "frht_kernel",
    "frft_kernel",
    "hadamard_kernel",
    "apply_kernel",
    "adjoint_kernel",
    "measure_position",
    "matched_grid",
    "matched_scale",
    "column_norm_residual",
    "unitarity_residual",
]


@dataclass(frozen=True)
class KernelMatrix:
    """Dense discretized kernel with quadrature weights folded in.

    ``entries[j, k] = sqrt(dx * dy) * K(y_j, x_k)`` where K is the analytic
    kernel, x runs over ``grid_in`` and y over ``grid_out``.
    """

    grid_in: Grid1D
    grid_out: Grid1D
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        expected = (self.grid_out.n, self.grid_in.n)
        if entries.shape != expected:
            raise ValueError(f"entries shape {entries.shape} != {expected}")
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


def _check_aliasing(
    mu: float,
    nu: float,
    abs_cot: float,
    abs_sin: float,
    grid_in: Grid1D,
    grid_out: Grid1D,
) -> None:
    """Largest kernel phase step between adjacent samples must stay < pi."""
    cross = 1.0 / (mu * nu * abs_sin)
    rate_in = (grid_in.abs_max * abs_cot / mu**2 + grid_out.abs_max * cross) * grid_in.dx
    rate_out = (grid_out.abs_max * abs_cot / nu**2 + grid_in.abs_max * cross) * grid_out.dx
    worst = max(rate_in, rate_out)
    if worst >= math.pi:
        raise AliasedGrid(
            f"kernel phase advances by {worst:.3f} rad per sample (>= pi); "
            "refine the grid or reduce its extent"
        )


def frht_kernel(
    p: TransformParams,
    grid_in: Grid1D,
    grid_out: Grid1D | None = None,
) -> KernelMatrix:
    """Build the discretized transform kernel for parameters ``p``.

    Parameters
    ----------
    p : TransformParams
        Requires |sin(alpha)| >= EPS_SIN (kernel path).
    grid_in, grid_out : Grid1D
        Sampling grids; ``grid_out`` defaults to ``grid_in``.

    Raises
    ------
    SingularKernelAngle
        If alpha is within EPS_SIN of a multiple of pi.
    AliasedGrid
        If the chirp phase would step by >= pi between samples.
    """
    validate_params(p, "kernel")
    if grid_out is None:
        grid_out = grid_in
    alpha = reduce_angle(p.alpha)
    reflect = math.sin(alpha) < 0.0
    alpha_eff = alpha - math.pi if reflect else alpha

    sin_a = math.sin(alpha_eff)
    cot_a = math.cos(alpha_eff) / sin_a
    _check_aliasing(p.mu, p.nu, abs(cot_a), abs(sin_a), grid_in, grid_out)

    x = grid_in.points
    if reflect:
        x = -x
    y = grid_out.points

    prefactor = np.exp(0.5j * (0.5 * math.pi - alpha_eff)) / math.sqrt(
        2.0 * math.pi * p.mu * p.nu * sin_a
    )
    chirp_in = np.exp(-0.5j * cot_a * (x / p.mu) ** 2)
    chirp_out = np.exp(-0.5j * cot_a * (y / p.nu) ** 2)
    cross = np.exp(1j * np.outer(y, x) / (p.mu * p.nu * sin_a))

    weight = math.sqrt(grid_in.dx * grid_out.dx)
    entries = (weight * prefactor) * (
        chirp_out[:, None] * cross * chirp_in[None, :]
    )
    return KernelMatrix(grid_in=grid_in, grid_out=grid_out, entries=entries)


def frft_kernel(alpha: float, grid: Grid1D) -> KernelMatrix:
    """Plain fractional Fourier kernel: scales mu = nu = 1, square grid."""
    return frht_kernel(TransformParams(alpha, 1.0, 1.0), grid, grid)


def hadamard_kernel(s: HadamardScale, grid: Grid1D) -> KernelMatrix:
    """Position-to-momentum kernel exp(2ixy/sigma^2)/(sqrt(pi) sigma),
    i.e. the angle pi/2 transform with mu = nu = sigma/sqrt(2)."""
    return frht_kernel(s.params, grid, grid)


def apply_kernel(K: KernelMatrix, f: SampledWavefunction) -> SampledWavefunction:
    """Apply a discretized kernel to a sampled wavefunction.

    Output value at y_j is the dx-weighted quadrature of K(y_j, x) f(x);
    the L2 norm is preserved within grid tolerance for well-resolved
    signals.
    """
    if f.grid != K.grid_in:
        raise GridMismatch(
            f"signal grid {f.grid} does not match kernel input grid {K.grid_in}"
        )
    scale = math.sqrt(K.grid_in.dx / K.grid_out.dx)
    return SampledWavefunction(K.grid_out, scale * (K.entries @ f.values))


def adjoint_kernel(K: KernelMatrix) -> KernelMatrix:
    """Conjugate-transpose kernel, mapping grid_out back to grid_in."""
    return KernelMatrix(
        grid_in=K.grid_out, grid_out=K.grid_in, entries=K.entries.conj().T
    )


def measure_position(p: TransformParams, f: SampledWavefunction) -> SampledWavefunction:
    """Position-basis amplitudes of the transformed state.

    Named alias for building the square kernel on ``f``'s grid and applying
    it: the position wavefunction of the output state is the generalized
    fractional Fourier transform of the input wavefunction.
    """
    return apply_kernel(frht_kernel(p, f.grid, f.grid), f)


def matched_grid(p: TransformParams, n: int, center: float = 0.0) -> Grid1D:
    """Symmetric grid on which the discretized kernel is exactly unitary.

    Critical sampling requires n * dx^2 = 2 pi mu nu |sin alpha|; the
    returned grid satisfies it, making the weighted kernel matrix unitary
    to rounding.
    """
    validate_params(p, "kernel")
    dx = math.sqrt(2.0 * math.pi * p.mu * p.nu * abs(math.sin(p.alpha)) / n)
    half = 0.5 * (n - 1) * dx
    return Grid1D(center - half, center + half, n)


def matched_scale(grid: Grid1D, alpha: float) -> float:
    """Product mu*nu that critically samples ``grid`` at angle ``alpha``."""
    return grid.n * grid.dx**2 / (2.0 * math.pi * abs(math.sin(alpha)))


def _interior_slice(n: int, interior: float) -> slice:
    margin = int(round(0.5 * (1.0 - interior) * n))
    return slice(margin, n - margin)


def column_norm_residual(K: KernelMatrix, interior: float = 0.8) -> float:
    """Max deviation of column norms from 1 over the central columns."""
    norms = np.sqrt(np.sum(np.abs(K.entries) ** 2, axis=0))
    sl = _interior_slice(K.grid_in.n, interior)
    return float(np.max(np.abs(norms[sl] - 1.0)))


def unitarity_residual(K: KernelMatrix, interior: float = 0.8) -> float:
    """Max-norm of (K†K - I) restricted to the central columns."""
    gram = K.entries.conj().T @ K.entries
    n = K.grid_in.n
    sl = _interior_slice(n, interior)
    delta = gram[:, sl] - np.eye(n, dtype=complex)[:, sl]
    return float(np.max(np.abs(delta)))
