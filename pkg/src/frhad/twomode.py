"""Two-mode engine over the entangled-plane representation.

States are represented by wavefunctions f(eta) = <eta|f> on the complex
plane eta = eta1 + i*eta2, where |eta> is the joint eigenvector of the
relative position X1 - X2 (eigenvalue sqrt(2) eta1) and total momentum
P1 + P2 (eigenvalue sqrt(2) eta2). The integration measure carries 1/pi:
norms are Integral |f|^2 d(eta1) d(eta2) / pi.

The two-mode transform kernel factorizes over (eta1, eta2) into two copies
of the single-mode kernel, one per axis, even though |eta> itself is
entangled; application therefore costs two dense 1-D multiplications
(O(n^3)) instead of one 2-D one (O(n^4)). The dense 2-D matrix exists only
as a test oracle at small resolution.

Composite number-basis indexing is row-major: |n1, n2> sits at n1 * N + n2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .core import Grid1D, TransformParams, reduce_angle, validate_params
from .errors import NonPositiveScale, SizeTooSmall, TruncationLeak
from .fock import LEAK_TOL
from .kernel1d import KernelMatrix, frht_kernel

__all__ = [
    "EtaGrid",
    "TwoModeWavefunction",
    "TwoModeFockOperator",
    "EtaKernel",
    "eta_kernel",
    "apply_eta_kernel",
    "measure_bell",
    "dense_eta_kernel",
    "squeezer2",
    "fractional_op2",
    "frhad2_decomposed",
    "quadratures2",
    "eta_overlap",
    "fock_basis_vector2",
    "sample_eta",
    "bridge_check",
    "BridgeResult",
    "completeness_residual",
    "mode_indices",
]

#: Default per-mode truncation and trusted total photon number.
DEFAULT_DIM2 = 32
DEFAULT_TRUSTED_TOTAL = 8

#: Ladder of extra per-mode levels tried beyond the requested dimension.
LEAK_PADS2 = (0, 4, 12, 24)

_MAX_OVERLAP_INDEX = 64


@dataclass(frozen=True)
class EtaGrid:
    """Rectangular sampling of the entangled plane."""

    re_axis: Grid1D
    im_axis: Grid1D

    @property
    def weight(self) -> float:
        """Area element of the d^2(eta)/pi measure."""
        return self.re_axis.dx * self.im_axis.dx / math.pi

    @property
    def shape(self) -> tuple[int, int]:
        return (self.re_axis.n, self.im_axis.n)

    def mesh(self) -> np.ndarray:
        """Complex eta values, shape (n_re, n_im)."""
        return self.re_axis.points[:, None] + 1j * self.im_axis.points[None, :]

    @classmethod
    def square(cls, half_width: float, n: int) -> "EtaGrid":
        axis = Grid1D(-half_width, half_width, n)
        return cls(axis, axis)


@dataclass(frozen=True)
class TwoModeWavefunction:
    """Complex field sampled on an EtaGrid, row-major in (eta1, eta2)."""

    grid: EtaGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise ValueError(f"values shape {values.shape} != {self.grid.shape}")
        if not np.all(np.isfinite(values.view(float))):
            raise ValueError("samples must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def norm(self) -> float:
        """L2 norm under the d^2(eta)/pi measure."""
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.grid.weight)


@dataclass(frozen=True)
class TwoModeFockOperator:
    """Dense operator on the composite truncated number basis.

    Identities are asserted only on the block of total photon number
    n1 + n2 <= trusted_total.
    """

    dim: int
    entries: np.ndarray = field(repr=False)
    trusted_total: int = DEFAULT_TRUSTED_TOTAL

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        d2 = self.dim * self.dim
        if entries.shape != (d2, d2):
            raise ValueError(f"entries shape {entries.shape} != ({d2}, {d2})")
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def trusted_indices(self) -> np.ndarray:
        n1, n2 = mode_indices(self.dim)
        return np.where(n1 + n2 <= self.trusted_total)[0]

    def trusted_block(self) -> np.ndarray:
        idx = self.trusted_indices()
        return self.entries[np.ix_(idx, idx)]

    def dagger(self) -> "TwoModeFockOperator":
        return TwoModeFockOperator(self.dim, self.entries.conj().T, self.trusted_total)


@lru_cache(maxsize=32)
def mode_indices(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-mode photon numbers (n1, n2) for each composite index."""
    idx = np.arange(N * N)
    n1 = idx // N
    n2 = idx % N
    n1.setflags(write=False)
    n2.setflags(write=False)
    return n1, n2


# ---------------------------------------------------------------------------
# entangled-plane kernel


@dataclass(frozen=True)
class EtaKernel:
    """Factorized discretization of the two-mode kernel.

    The full weighted matrix is the Kronecker product of the two 1-D
    factors (row-major pairing); see ``dense_eta_kernel`` for the direct
    2-D construction used as a cross-check.
    """

    grid: EtaGrid
    factor_re: KernelMatrix
    factor_im: KernelMatrix


def eta_kernel(p: TransformParams, grid: EtaGrid) -> EtaKernel:
    """Discretize the two-mode transform on an entangled-plane grid.

    Same parameter validity and aliasing rules as the 1-D kernel, applied
    per axis.
    """
    return EtaKernel(
        grid=grid,
        factor_re=frht_kernel(p, grid.re_axis, grid.re_axis),
        factor_im=frht_kernel(p, grid.im_axis, grid.im_axis),
    )


def apply_eta_kernel(K: EtaKernel, f: TwoModeWavefunction) -> TwoModeWavefunction:
    """Apply the factorized kernel: one dense multiply per axis."""
    if f.grid != K.grid:
        raise ValueError("wavefunction grid does not match kernel grid")
    out = K.factor_re.entries @ f.values @ K.factor_im.entries.T
    return TwoModeWavefunction(f.grid, out)


def measure_bell(p: TransformParams, f: TwoModeWavefunction) -> TwoModeWavefunction:
    """Entangled-basis amplitudes <eta'| of the transformed state.

    Named alias for building the kernel on ``f``'s grid and applying it:
    the output wavefunction is the generalized complex fractional Fourier
    transform of the input one.
    """
    return apply_eta_kernel(eta_kernel(p, f.grid), f)


def dense_eta_kernel(p: TransformParams, grid: EtaGrid) -> np.ndarray:
    """Direct 2-D kernel matrix with d^2(eta)/pi weights folded in.

    Test oracle only: O(n^4) memory. Built from the analytic two-plane
    formula, independent of the factorized path.
    """
    validate_params(p, "kernel")
    alpha = reduce_angle(p.alpha)
    reflect = math.sin(alpha) < 0.0
    alpha_eff = alpha - math.pi if reflect else alpha
    sin_a = math.sin(alpha_eff)
    cot_a = math.cos(alpha_eff) / sin_a

    eta_in = grid.mesh().ravel()
    if reflect:
        eta_in = -eta_in
    eta_out = grid.mesh().ravel()

    constant = np.exp(1j * (0.5 * math.pi - alpha_eff)) / (
        2.0 * math.pi * p.mu * p.nu * sin_a
    )
    chirp_in = np.exp(-0.5j * cot_a * np.abs(eta_in / p.mu) ** 2)
    chirp_out = np.exp(-0.5j * cot_a * np.abs(eta_out / p.nu) ** 2)
    cross = np.exp(
        1j
        * np.real(np.outer(np.conj(eta_out), eta_in))
        / (p.mu * p.nu * sin_a)
    )
    weight = grid.re_axis.dx * grid.im_axis.dx
    return (weight * constant) * (chirp_out[:, None] * cross * chirp_in[None, :])


# ---------------------------------------------------------------------------
# composite number-basis operators


@lru_cache(maxsize=16)
def _two_mode_ladders(N: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.diag(np.sqrt(np.arange(1.0, N)), k=1)
    eye = np.eye(N)
    a1 = np.kron(a, eye)
    a2 = np.kron(eye, a)
    a1.setflags(write=False)
    a2.setflags(write=False)
    return a1, a2


@lru_cache(maxsize=32)
def _squeezer2_entries(r: float, N: int) -> np.ndarray:
    a1, a2 = _two_mode_ladders(N)
    generator = r * (a1.T @ a2.T - a1 @ a2)
    s = expm(generator)
    s.setflags(write=False)
    return s


def _crop2(entries: np.ndarray, W: int, N: int) -> np.ndarray:
    """Restrict a composite W-per-mode matrix to the first N levels per mode."""
    return np.ascontiguousarray(
        entries.reshape(W, W, W, W)[:N, :N, :N, :N].reshape(N * N, N * N)
    )


def _converged_window2(build, N: int, trusted_total: int, what: str) -> np.ndarray:
    """Two-mode analogue of the adaptive working-size evaluation."""
    n1, n2 = mode_indices(N)
    idx = np.where(n1 + n2 <= trusted_total)[0]
    previous = _crop2(build(N + LEAK_PADS2[0]), N + LEAK_PADS2[0], N)
    leak = math.inf
    for pad in LEAK_PADS2[1:]:
        current = _crop2(build(N + pad), N + pad, N)
        leak = float(
            np.max(np.abs(current[np.ix_(idx, idx)] - previous[np.ix_(idx, idx)]))
        )
        if leak <= LEAK_TOL:
            return current
        previous = current
    raise TruncationLeak(
        f"{what}: trusted block still moves by {leak:.2e} at per-mode "
        f"working size {N + LEAK_PADS2[-1]} (budget {LEAK_TOL:.0e})"
    )


def squeezer2(mu: float, N: int = DEFAULT_DIM2) -> TwoModeFockOperator:
    """Two-mode squeezer expm[(a1†a2† - a1 a2) ln mu] at per-mode size N.

    Self-checks the squeezed-vacuum column: amplitudes on |n,n> must equal
    tanh^n(ln mu)/cosh(ln mu) within 1e-8 for n <= 5.
    """
    if not (math.isfinite(mu) and mu > 0.0):
        raise NonPositiveScale(f"mu must be positive and finite, got {mu}")
    if N < 2:
        raise SizeTooSmall(f"per-mode dimension {N} < 2")
    r = math.log(mu)
    s = _converged_window2(
        lambda size: _squeezer2_entries(r, size),
        N,
        DEFAULT_TRUSTED_TOTAL,
        f"squeezer2(mu={mu}, N={N})",
    )

    th, ch = math.tanh(r), math.cosh(r)
    want = np.array([th**n / ch for n in range(min(6, N))])
    got = s[[n * N + n for n in range(min(6, N))], 0]
    if np.max(np.abs(got - want)) > 1e-8:
        raise AssertionError("two-mode squeezer disagrees with its vacuum column")
    return TwoModeFockOperator(N, s, DEFAULT_TRUSTED_TOTAL)


def fractional_op2(alpha: float, N: int = DEFAULT_DIM2) -> TwoModeFockOperator:
    """diag(e^{i alpha (n1 + n2)}); exactly unitary at any truncation."""
    if N < 2:
        raise SizeTooSmall(f"per-mode dimension {N} < 2")
    n1, n2 = mode_indices(N)
    return TwoModeFockOperator(N, np.diag(np.exp(1j * alpha * (n1 + n2))))


def _decomposed2_entries(alpha: float, mu: float, nu: float, N: int) -> np.ndarray:
    n1, n2 = mode_indices(N)
    phases = np.exp(1j * alpha * (n1 + n2))
    return _squeezer2_entries(math.log(nu), N).T @ (
        phases[:, None] * _squeezer2_entries(math.log(mu), N)
    )


def frhad2_decomposed(p: TransformParams, N: int = DEFAULT_DIM2) -> TwoModeFockOperator:
    """Two-mode squeeze-rotate-squeeze product S2†(nu) e^{i a (n1+n2)} S2(mu).

    Regular at every angle. Like the single-mode build, the product is
    evaluated at a converged working size and cropped, so trusted entries
    are the true operator's; at mu = nu = 1 it is the diagonal phase
    rotation exactly.
    """
    validate_params(p, "fock")
    if N < 2:
        raise SizeTooSmall(f"per-mode dimension {N} < 2")
    entries = _converged_window2(
        lambda size: _decomposed2_entries(p.alpha, p.mu, p.nu, size),
        N,
        DEFAULT_TRUSTED_TOTAL,
        f"frhad2_decomposed({p}, N={N})",
    )
    return TwoModeFockOperator(N, entries, DEFAULT_TRUSTED_TOTAL)


def quadratures2(N: int = DEFAULT_DIM2) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Composite quadratures (X1, P1, X2, P2) as dense arrays."""
    a1, a2 = _two_mode_ladders(N)
    x1 = (a1 + a1.T) / math.sqrt(2.0)
    p1 = (a1 - a1.T) / (1j * math.sqrt(2.0))
    x2 = (a2 + a2.T) / math.sqrt(2.0)
    p2 = (a2 - a2.T) / (1j * math.sqrt(2.0))
    return x1, p1, x2, p2


# ---------------------------------------------------------------------------
# number-basis <-> entangled-plane bridge


def eta_overlap(n1: int, n2: int, eta: complex | np.ndarray) -> complex | np.ndarray:
    """Overlap <n1, n2 | eta> as a finite sum.

    e^{-|eta|^2/2} sqrt(n1! n2!) * sum_k eta^(n1-k) (-eta*)^(n2-k)
    / ((n1-k)! (n2-k)! k!) over k <= min(n1, n2). Only relative values and
    finite projections are meaningful: the |eta> family is delta-normalized.
    """
    if n1 < 0 or n2 < 0:
        raise ValueError("mode indices must be non-negative")
    if n1 > _MAX_OVERLAP_INDEX or n2 > _MAX_OVERLAP_INDEX:
        raise ValueError(
            f"indices above {_MAX_OVERLAP_INDEX} would need log-domain factorials"
        )
    eta_arr = np.asarray(eta, dtype=complex)
    total = np.zeros_like(eta_arr)
    root = math.sqrt(math.factorial(n1) * math.factorial(n2))
    for k in range(min(n1, n2) + 1):
        coeff = root / (
            math.factorial(n1 - k) * math.factorial(n2 - k) * math.factorial(k)
        )
        total = total + coeff * eta_arr ** (n1 - k) * (-np.conj(eta_arr)) ** (n2 - k)
    result = np.exp(-0.5 * np.abs(eta_arr) ** 2) * total
    return complex(result) if np.isscalar(eta) else result


def fock_basis_vector2(n1: int, n2: int, N: int) -> np.ndarray:
    """Composite basis vector |n1, n2>."""
    if not (0 <= n1 < N and 0 <= n2 < N):
        raise ValueError(f"({n1}, {n2}) outside per-mode range 0..{N - 1}")
    vec = np.zeros(N * N, dtype=complex)
    vec[n1 * N + n2] = 1.0
    return vec


def sample_eta(coeffs: np.ndarray, N: int, grid: EtaGrid) -> TwoModeWavefunction:
    """Entangled-plane wavefunction <eta|f> of a composite Fock vector."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (N * N,):
        raise ValueError(f"expected composite vector of length {N * N}")
    eta = grid.mesh()
    values = np.zeros(grid.shape, dtype=complex)
    for idx in np.nonzero(coeffs)[0]:
        n1, n2 = divmod(int(idx), N)
        values += coeffs[idx] * np.conj(eta_overlap(n1, n2, eta))
    return TwoModeWavefunction(grid, values)


@dataclass(frozen=True)
class BridgeResult:
    """Outcome of the grid-route vs Fock-route consistency check."""

    residual: float
    interior_fraction: float
    grid: EtaGrid


def bridge_check(
    p: TransformParams,
    coeffs: np.ndarray,
    grid: EtaGrid,
    N: int = DEFAULT_DIM2,
    interior: float = 0.8,
) -> BridgeResult:
    """Transform a Fock vector two independent ways and compare.

    Grid route: sample <eta|f>, apply the factorized kernel. Fock route:
    apply the decomposed composite operator, then sample. Reports the max
    pointwise difference over the central ``interior`` fraction of the
    grid. The input must be supported on the trusted block.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n1, n2 = mode_indices(N)
    support = np.nonzero(coeffs)[0]
    if np.any(n1[support] + n2[support] > DEFAULT_TRUSTED_TOTAL):
        raise ValueError("input vector must be supported on the trusted block")

    grid_route = apply_eta_kernel(eta_kernel(p, grid), sample_eta(coeffs, N, grid))
    fock_route = sample_eta(frhad2_decomposed(p, N).entries @ coeffs, N, grid)

    diff = np.abs(grid_route.values - fock_route.values)
    m_re = int(round(0.5 * (1.0 - interior) * grid.re_axis.n))
    m_im = int(round(0.5 * (1.0 - interior) * grid.im_axis.n))
    residual = float(np.max(diff[m_re : grid.re_axis.n - m_re, m_im : grid.im_axis.n - m_im]))
    return BridgeResult(residual=residual, interior_fraction=interior, grid=grid)


def completeness_residual(grid: EtaGrid, max_total: int = 3) -> float:
    """Discretized closure check of the entangled basis.

    Accumulates sum_grid |eta><eta| d^2(eta)/pi restricted to number states
    with n1 + n2 <= max_total and returns the max deviation from the
    identity Gram matrix.
    """
    eta = grid.mesh().ravel()
    states = [
        (n1, n2)
        for total in range(max_total + 1)
        for n1 in range(total + 1)
        for n2 in [total - n1]
    ]
    overlaps = np.array([eta_overlap(n1, n2, eta) for (n1, n2) in states])
    gram = (overlaps * grid.weight) @ overlaps.conj().T
    return float(np.max(np.abs(gram - np.eye(len(states)))))
