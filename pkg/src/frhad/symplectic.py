"""Phase-space engine: linear quadrature maps and Gaussian states.

Basis ordering is (X1, P1, X2, P2) with the symplectic form made of 2x2
blocks [[0, 1], [-1, 0]]. Gaussian covariance convention: vacuum = I/2
(hbar = 1, X = (a + a†)/sqrt(2)), matching the Fock-module quadratures.

Maps built here carry the operator-conjugation coefficients U R U† = S R.
Schrodinger evolution of a state |psi> -> U|psi> moves means and
covariances with the INVERSE of that matrix (equivalently, the map of the
adjoint transform), available as ``SymplecticMap.inverse``. Conjugation
maps compose in reverse operator order: S_{UV} = S_V @ S_U.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import TransformParams, validate_params
from .errors import NonPositiveScale, SizeMismatch, UnphysicalState

__all__ = [
    "SymplecticMap",
    "GaussianState",
    "omega",
    "frhad_symplectic1",
    "frhad_symplectic2",
    "rotation_map",
    "squeeze_map",
    "squeezer2_symplectic",
    "apply_gaussian",
    "symplectic_eigenvalues",
]

_SYMPLECTIC_TOL = 1e-8


def omega(size: int) -> np.ndarray:
    """Canonical commutation form: block-diagonal [[0, 1], [-1, 0]]."""
    if size % 2:
        raise ValueError("size must be even")
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(size // 2), block)


@dataclass(frozen=True)
class SymplecticMap:
    """Real linear quadrature map with S Omega S^T = Omega."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("entries must be a square matrix")
        if entries.shape[0] not in (2, 4):
            raise ValueError("only single- and two-mode maps are supported")
        w = omega(entries.shape[0])
        residual = np.max(np.abs(entries @ w @ entries.T - w))
        if residual > _SYMPLECTIC_TOL:
            raise ValueError(f"matrix is not symplectic (residual {residual:.2e})")
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def inverse(self) -> "SymplecticMap":
        """Exact symplectic inverse -Omega S^T Omega."""
        w = omega(self.size)
        return SymplecticMap(-w @ self.entries.T @ w)

    def __matmul__(self, other: "SymplecticMap") -> "SymplecticMap":
        if self.size != other.size:
            raise SizeMismatch("maps act on different mode counts")
        return SymplecticMap(self.entries @ other.entries)


@dataclass(frozen=True)
class GaussianState:
    """First and second quadrature moments of a Gaussian state."""

    mean: np.ndarray
    cov: np.ndarray = field(repr=False)

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).copy()
        cov = np.asarray(self.cov, dtype=float).copy()
        if mean.ndim != 1 or cov.shape != (mean.size, mean.size):
            raise ValueError("mean must be a vector and cov a matching square matrix")
        if np.max(np.abs(cov - cov.T)) > 1e-12:
            raise UnphysicalState("covariance must be symmetric")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def size(self) -> int:
        return self.mean.size

    @classmethod
    def vacuum(cls, modes: int = 1) -> "GaussianState":
        return cls(np.zeros(2 * modes), 0.5 * np.eye(2 * modes))


def _check_physical(cov: np.ndarray) -> None:
    w = omega(cov.shape[0])
    eigs = np.linalg.eigvalsh(cov.astype(complex) + 0.5j * w)
    if float(np.min(eigs)) < -1e-10:
        raise UnphysicalState(
            f"cov + i Omega/2 has negative eigenvalue {float(np.min(eigs)):.2e}"
        )


def frhad_symplectic1(p: TransformParams) -> SymplecticMap:
    """Single-mode conjugation map: X -> (mu/nu) cos(a) X + mu nu sin(a) P,
    P -> (nu/mu) cos(a) P - sin(a)/(mu nu) X. Determinant is exactly 1.

    Accepts any finite angle; the angle-0 limit is the pure scaling
    diag(mu/nu, nu/mu) and angle pi composes it with total parity -I.
    """
    validate_params(p, "symplectic")
    c, s = math.cos(p.alpha), math.sin(p.alpha)
    mu, nu = p.mu, p.nu
    return SymplecticMap(
        np.array(
            [
                [(mu / nu) * c, mu * nu * s],
                [-s / (mu * nu), (nu / mu) * c],
            ]
        )
    )


def rotation_map(alpha: float) -> SymplecticMap:
    """Conjugation map of the number-basis rotation e^{i alpha n}."""
    return frhad_symplectic1(TransformParams(alpha, 1.0, 1.0))


def squeeze_map(mu: float) -> SymplecticMap:
    """Conjugation map of the position-scaling squeezer: diag(mu, 1/mu)."""
    if not (math.isfinite(mu) and mu > 0.0):
        raise NonPositiveScale(f"mu must be positive and finite, got {mu}")
    return SymplecticMap(np.diag([mu, 1.0 / mu]))


# Rows express (X1-X2, P1-P2, X1+X2, P1+P2) in terms of (X1, P1, X2, P2).
_EPR_BASIS = np.array(
    [
        [1.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, -1.0],
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
    ]
)


def _from_epr_blocks(minus_block: np.ndarray, plus_block: np.ndarray) -> SymplecticMap:
    blocks = np.zeros((4, 4))
    blocks[:2, :2] = minus_block
    blocks[2:, 2:] = plus_block
    # T has orthogonal rows of squared norm 2, so T^-1 = T^T / 2.
    return SymplecticMap(0.5 * _EPR_BASIS.T @ blocks @ _EPR_BASIS)


def frhad_symplectic2(p: TransformParams) -> SymplecticMap:
    """Two-mode conjugation map acting on (X1, P1, X2, P2).

    In the EPR combinations the map is block diagonal: (X1-X2, P1-P2)
    transform with the single-mode map of (alpha, mu, nu) and
    (X1+X2, P1+P2) with the single-mode map of (alpha, 1/mu, 1/nu).
    """
    validate_params(p, "symplectic")
    minus = frhad_symplectic1(p).entries
    plus = frhad_symplectic1(
        TransformParams(p.alpha, 1.0 / p.mu, 1.0 / p.nu)
    ).entries
    return _from_epr_blocks(minus, plus)


def squeezer2_symplectic(mu: float) -> SymplecticMap:
    """Two-mode squeezer map: (X1-X2, P1+P2) scale by mu, (X1+X2, P1-P2)
    by 1/mu."""
    if not (math.isfinite(mu) and mu > 0.0):
        raise NonPositiveScale(f"mu must be positive and finite, got {mu}")
    minus = np.diag([mu, 1.0 / mu])
    plus = np.diag([1.0 / mu, mu])
    return _from_epr_blocks(minus, plus)


def apply_gaussian(S: SymplecticMap, g: GaussianState) -> GaussianState:
    """Push a Gaussian state through a linear quadrature map:
    mean -> S mean, cov -> S cov S^T.

    The input covariance must satisfy cov + i Omega/2 >= 0; symplectic maps
    preserve both physicality and the symplectic spectrum.
    """
    if S.size != g.size:
        raise SizeMismatch(f"map size {S.size} != state size {g.size}")
    _check_physical(g.cov)
    return GaussianState(S.entries @ g.mean, S.entries @ g.cov @ S.entries.T)


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix, sorted ascending."""
    cov = np.asarray(cov, dtype=float)
    w = omega(cov.shape[0])
    eigs = np.linalg.eigvals(1j * w @ cov)
    # eigenvalues come in +/- pairs; keep one of each
    return np.sort(np.abs(eigs.real))[::2]
