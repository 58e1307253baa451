"""Identity-verification suite with machine-readable results.

Each check exercises one operator identity across one or more
representations at a stated tolerance and yields a ``CheckResult``. The CLI
renders these as a key=value report; the acceptance test suite asserts
them. Informational entries (pass=info) record findings that are
deliberately not gated, such as the angle-pi parity action.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .core import (
    Grid1D,
    HadamardScale,
    SampledWavefunction,
    TransformParams,
    l2_inner,
    sampled_hermite,
)
from . import fock, kernel1d, symplectic, twomode

SCOPES = ("all", "kernel", "fock", "symplectic", "twomode")

KERNEL_GRID = Grid1D(-12.0, 12.0, 1024)
ETA_HALF_WIDTH = 6.0
ETA_POINTS = 256
ALPHA_SWEEP = (0.3, 0.7, math.pi / 2, 2.0, 2.8)
SCALE_SWEEP = (0.5, 1.0, 1.6)
FOCK_DIM = 128

CONVENTIONS = {
    "hbar": "1",
    "X": "(a+a_dag)/sqrt(2)",
    "vacuum_cov": "I/2",
    "omega_block": "[[0,1],[-1,0]]",
    "mode_order": "(X1,P1,X2,P2)",
    "composite_index": "row_major_n1_major",
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    identity: str
    params: str
    residual: float
    tolerance: float
    passed: bool
    info: bool = False
    elapsed: float = 0.0


def _result(name, identity, params, residual, tolerance, elapsed, info=False, invert=False):
    ok = residual > tolerance if invert else residual <= tolerance
    return CheckResult(
        name=name,
        identity=identity,
        params=params,
        residual=float(residual),
        tolerance=float(tolerance),
        passed=bool(ok),
        info=info,
        elapsed=elapsed,
    )


def _hermites(grid: Grid1D, n_max: int, scale: float = 1.0) -> list[np.ndarray]:
    return [sampled_hermite(n, grid, scale).values for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# kernel checks


def check_kernel_hadamard_closed_form() -> CheckResult:
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    sigma = math.sqrt(2.0)
    K = kernel1d.hadamard_kernel(HadamardScale(sigma), grid)
    x = grid.points
    closed = np.exp(2j * np.outer(x, x) / sigma**2) / (math.sqrt(math.pi) * sigma)
    residual = np.max(np.abs(K.entries / grid.dx - closed))
    return _result(
        "kernel-hadamard-closed-form",
        "position-to-momentum-kernel",
        f"sigma:{sigma},grid:[-12,12]x1024",
        residual,
        1e-12,
        time.perf_counter() - t0,
    )


def check_kernel_vacuum_invariance() -> CheckResult:
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    vac = sampled_hermite(0, grid)
    worst = 0.0
    for alpha in ALPHA_SWEEP:
        out = kernel1d.measure_position(TransformParams(alpha), vac)
        worst = max(worst, float(np.max(np.abs(out.values - vac.values))))
    return _result(
        "kernel-vacuum-invariance",
        "vacuum-eigenstate",
        "alpha:sweep,mu:1,nu:1",
        worst,
        1e-6,
        time.perf_counter() - t0,
    )


def check_kernel_eigenfunctions() -> CheckResult:
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    hs = _hermites(grid, 10)
    worst = 0.0
    for alpha in ALPHA_SWEEP:
        K = kernel1d.frft_kernel(alpha, grid)
        for n, h in enumerate(hs):
            delta = K.entries @ h - np.exp(1j * alpha * n) * h
            worst = max(worst, math.sqrt(float(np.sum(np.abs(delta) ** 2)) * grid.dx))
    return _result(
        "kernel-eigenfunctions",
        "hermite-eigenrelation",
        "alpha:sweep,n:<=10,grid:[-12,12]x1024",
        worst,
        1e-6,
        time.perf_counter() - t0,
    )


def check_kernel_unitarity_matched() -> CheckResult:
    # At the quarter turn the kernel carries no quadratic chirp, so the
    # critically sampled grid passes the aliasing guard and the discretized
    # matrix is unitary to rounding.
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    alpha = math.pi / 2
    m = math.sqrt(kernel1d.matched_scale(grid, alpha))
    worst = 0.0
    for mu, nu in ((m, m), (2.0 * m, 0.5 * m)):
        K = kernel1d.frht_kernel(TransformParams(alpha, mu, nu), grid, grid)
        worst = max(worst, kernel1d.unitarity_residual(K))
    return _result(
        "kernel-unitarity-matched",
        "unitarity",
        "grid:[-12,12]x1024,alpha:pi/2,scales:critically_sampled",
        worst,
        1e-6,
        time.perf_counter() - t0,
    )


def check_kernel_unitarity_signals() -> CheckResult:
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    hs = _hermites(grid, 10)
    worst = 0.0
    for alpha in (0.7, math.pi / 2, 2.0):
        K = kernel1d.frft_kernel(alpha, grid)
        gram = K.entries.conj().T @ K.entries
        for h in hs:
            delta = gram @ h - h
            worst = max(worst, math.sqrt(float(np.sum(np.abs(delta) ** 2)) * grid.dx))
    return _result(
        "kernel-unitarity-signals",
        "unitarity",
        "grid:[-12,12]x1024,mu:1,nu:1,basis:hermite<=10",
        worst,
        1e-6,
        time.perf_counter() - t0,
    )


_ADD_PARAMS = (0.4, 0.9, 1.2, 0.9, 1.4)  # alpha, beta, mu, nu, mu_prime


def _kernel_additivity_residual(nu_inner: float) -> float:
    alpha, beta, mu, nu, mup = _ADD_PARAMS
    grid = KERNEL_GRID
    K_a = kernel1d.frht_kernel(TransformParams(alpha, mu, nu), grid, grid)
    K_b = kernel1d.frht_kernel(TransformParams(beta, mup, nu_inner), grid, grid)
    K_ab = kernel1d.frht_kernel(TransformParams(alpha + beta, mup, nu), grid, grid)
    worst = 0.0
    for h in _hermites(grid, 8, scale=mup):
        delta = K_a.entries @ (K_b.entries @ h) - K_ab.entries @ h
        worst = max(worst, math.sqrt(float(np.sum(np.abs(delta) ** 2)) * grid.dx))
    return worst


def check_kernel_additivity() -> CheckResult:
    t0 = time.perf_counter()
    residual = _kernel_additivity_residual(nu_inner=_ADD_PARAMS[2])
    return _result(
        "kernel-additivity",
        "additivity-matched-inner-scale",
        "alpha:0.4,beta:0.9,mu:1.2,nu:0.9,mu_prime:1.4,basis:hermite<=8",
        residual,
        1e-5,
        time.perf_counter() - t0,
    )


def check_kernel_additivity_negative() -> CheckResult:
    t0 = time.perf_counter()
    residual = _kernel_additivity_residual(nu_inner=1.11 * _ADD_PARAMS[2])
    return _result(
        "kernel-additivity-negative",
        "additivity-mismatched-inner-scale",
        "inner_scale_off_by:1.11x",
        residual,
        1e-2,
        time.perf_counter() - t0,
        invert=True,
    )


def check_kernel_adjoint() -> CheckResult:
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    p = TransformParams(1.1, 1.4, 0.9)
    K = kernel1d.frht_kernel(p, grid, grid)
    K_inv = kernel1d.frht_kernel(
        TransformParams(2.0 * math.pi - p.alpha, p.nu, p.mu), grid, grid
    )
    residual = np.max(np.abs(kernel1d.adjoint_kernel(K).entries - K_inv.entries))
    return _result(
        "kernel-adjoint",
        "adjoint-equals-negated-angle-swapped-scales",
        "alpha:1.1,mu:1.4,nu:0.9",
        residual,
        1e-12,
        time.perf_counter() - t0,
    )


def check_kernel_roundtrip() -> CheckResult:
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    p = TransformParams(0.9, 1.2, 0.8)
    K = kernel1d.frht_kernel(p, grid, grid)
    worst = 0.0
    for n in (0, 1, 3):
        f = sampled_hermite(n, grid)
        back = kernel1d.apply_kernel(kernel1d.adjoint_kernel(K), kernel1d.apply_kernel(K, f))
        worst = max(worst, float(np.max(np.abs(back.values - f.values))))
    return _result(
        "kernel-roundtrip",
        "unitarity",
        "alpha:0.9,mu:1.2,nu:0.8",
        worst,
        1e-6,
        time.perf_counter() - t0,
    )


def check_kernel_parity_branch() -> CheckResult:
    """Kernel route for sin(alpha) < 0 against the Fock route."""
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    p = TransformParams(4.0, 1.2, 0.9)
    worst = 0.0
    for n in (0, 1, 2):
        via_kernel = kernel1d.measure_position(p, sampled_hermite(n, grid))
        coeffs = np.zeros(FOCK_DIM, dtype=complex)
        coeffs[n] = 1.0
        via_fock = fock.fock_to_grid(
            fock.frhad_decomposed(p, FOCK_DIM).entries @ coeffs, grid
        )
        worst = max(worst, float(np.max(np.abs(via_kernel.values - via_fock.values))))
    return _result(
        "kernel-parity-branch",
        "angle-beyond-pi-parity-composition",
        "alpha:4.0,mu:1.2,nu:0.9",
        worst,
        1e-5,
        time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# fock checks


def check_fock_pi_half_closed_form() -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for sigma in (1.0, 1.3, math.sqrt(2.0), 2.0):
        f = fock.normal_order_factors(HadamardScale(sigma).params)
        s4 = sigma**4
        worst = max(
            worst,
            abs(f.prefactor - 2.0 * sigma / math.sqrt(s4 + 4.0)),
            abs(f.c_plus - (s4 - 4.0) / (2.0 * (s4 + 4.0))),
            abs(f.c_minus - (s4 - 4.0) / (2.0 * (s4 + 4.0))),
            abs(f.lam - 4j * sigma**2 / (s4 + 4.0)),
        )
    return _result(
        "fock-pi-half-closed-form",
        "half-turn-normal-order-coefficients",
        "sigma:{1.0,1.3,sqrt2,2.0}",
        worst,
        1e-12,
        time.perf_counter() - t0,
    )


def _fock_param_sweep():
    for alpha in ALPHA_SWEEP:
        for mu in SCALE_SWEEP:
            for nu in SCALE_SWEEP:
                yield TransformParams(alpha, mu, nu)


def check_fock_normal_vs_decomposed() -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for p in _fock_param_sweep():
        a = fock.frhad_normal_ordered(p, FOCK_DIM)
        b = fock.frhad_decomposed(p, FOCK_DIM)
        worst = max(worst, fock.trusted_max_diff(a, b))
    return _result(
        "fock-normal-vs-decomposed",
        "normal-order-equals-squeeze-rotate-squeeze",
        "alpha:sweep5,mu:sweep3,nu:sweep3,N:128,M:32",
        worst,
        1e-8,
        time.perf_counter() - t0,
    )


def check_fock_unitarity() -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    eye = np.eye(FOCK_DIM)
    m = FOCK_DIM // 4
    params = [
        TransformParams(alpha, mu, nu)
        for alpha in ALPHA_SWEEP
        for mu, nu in ((1.0, 1.0), (1.1, 1.1), (1.2, 0.9), (1.3, 0.8), (0.8, 1.3))
    ]
    for p in params:
        h = fock.frhad_decomposed(p, FOCK_DIM).entries
        gram = h.conj().T @ h
        worst = max(worst, float(np.max(np.abs(gram[:m, :m] - eye[:m, :m]))))
    return _result(
        "fock-unitarity",
        "unitarity",
        "alpha:sweep5,scales:representable,N:128,M:32",
        worst,
        1e-8,
        time.perf_counter() - t0,
    )


def check_fock_offwindow_mass() -> CheckResult:
    """Informational: window-compressing scales push trusted-state mass
    past any fixed truncation; the faithful window then has a real
    unitarity defect of that size."""
    t0 = time.perf_counter()
    p = TransformParams(math.pi / 2, 0.5, 0.5)
    h = fock.frhad_decomposed(p, FOCK_DIM).entries
    m = FOCK_DIM // 4
    gram = h.conj().T @ h
    defect = float(np.max(np.abs(gram[:m, :m] - np.eye(FOCK_DIM)[:m, :m])))
    return _result(
        "fock-offwindow-mass",
        "true-operator-mass-beyond-truncation",
        "alpha:pi/2,mu:0.5,nu:0.5,N:128,M:32",
        defect,
        math.inf,
        time.perf_counter() - t0,
        info=True,
    )


def _fock_additivity_residual(nu_inner: float) -> float:
    alpha, beta, mu, nu, mup = _ADD_PARAMS
    h_a = fock.frhad_decomposed(TransformParams(alpha, mu, nu), FOCK_DIM)
    h_b = fock.frhad_decomposed(TransformParams(beta, mup, nu_inner), FOCK_DIM)
    h_ab = fock.frhad_decomposed(TransformParams(alpha + beta, mup, nu), FOCK_DIM)
    m = FOCK_DIM // 4
    prod = h_a.entries @ h_b.entries
    return float(np.max(np.abs(prod[:m, :m] - h_ab.entries[:m, :m])))


def check_fock_additivity() -> CheckResult:
    t0 = time.perf_counter()
    residual = _fock_additivity_residual(nu_inner=_ADD_PARAMS[2])
    return _result(
        "fock-additivity",
        "additivity-matched-inner-scale",
        "alpha:0.4,beta:0.9,mu:1.2,nu:0.9,mu_prime:1.4,N:128,M:32",
        residual,
        1e-8,
        time.perf_counter() - t0,
    )


def check_fock_additivity_negative() -> CheckResult:
    t0 = time.perf_counter()
    residual = _fock_additivity_residual(nu_inner=1.11 * _ADD_PARAMS[2])
    return _result(
        "fock-additivity-negative",
        "additivity-mismatched-inner-scale",
        "inner_scale_off_by:1.11x",
        residual,
        1e-2,
        time.perf_counter() - t0,
        invert=True,
    )


_HEISENBERG_PARAMS = (
    TransformParams(0.3, 0.9, 1.2),
    TransformParams(0.7, 1.0, 1.0),
    TransformParams(math.pi / 2, 1.4, 0.8),
    TransformParams(2.0, 1.3, 0.8),
    TransformParams(2.8, 0.8, 1.2),
)


def _conjugate(h: np.ndarray, op: np.ndarray) -> np.ndarray:
    return h @ op @ h.conj().T


def check_fock_heisenberg() -> list[CheckResult]:
    t0 = time.perf_counter()
    x_op, p_op = fock.quadratures(FOCK_DIM)
    x, pq = x_op.entries, p_op.entries
    m = FOCK_DIM // 4
    worst_x = worst_p = 0.0
    for p in _HEISENBERG_PARAMS:
        h = fock.frhad_decomposed(p, FOCK_DIM).entries
        c, s = math.cos(p.alpha), math.sin(p.alpha)
        want_x = (p.mu / p.nu) * c * x + p.mu * p.nu * s * pq
        want_p = (p.nu / p.mu) * c * pq - s / (p.mu * p.nu) * x
        worst_x = max(worst_x, float(np.max(np.abs((_conjugate(h, x) - want_x)[:m, :m]))))
        worst_p = max(worst_p, float(np.max(np.abs((_conjugate(h, pq) - want_p)[:m, :m]))))
    elapsed = time.perf_counter() - t0

    t1 = time.perf_counter()
    swap = TransformParams(math.pi / 2, 1.4, 0.6)
    h = fock.frhad_decomposed(swap, FOCK_DIM).entries
    mn = swap.mu * swap.nu
    worst_swap = max(
        float(np.max(np.abs((_conjugate(h, x) - mn * pq)[:m, :m]))),
        float(np.max(np.abs((_conjugate(h, pq) + x / mn)[:m, :m]))),
    )
    return [
        _result(
            "fock-heisenberg-x",
            "position-conjugation-law",
            "params:sweep5,N:128,M:32",
            worst_x,
            1e-6,
            elapsed,
        ),
        _result(
            "fock-heisenberg-p",
            "momentum-conjugation-law",
            "params:sweep5,N:128,M:32",
            worst_p,
            1e-6,
            elapsed,
        ),
        _result(
            "fock-quadrature-swap",
            "half-turn-exchanges-quadratures",
            "alpha:pi/2,mu:1.4,nu:0.6",
            worst_swap,
            1e-6,
            time.perf_counter() - t1,
        ),
    ]


def check_fock_rotation_conjugation() -> CheckResult:
    t0 = time.perf_counter()
    N = FOCK_DIM
    a, _, _ = fock.ladder(N)
    x_op, p_op = fock.quadratures(N)
    m = N // 4
    worst = 0.0
    for alpha in (0.5, 2.2):
        f = fock.fractional_op(alpha, N).entries
        got_a = _conjugate(f, a.entries) - a.entries * np.exp(-1j * alpha)
        got_x = _conjugate(f, x_op.entries) - (
            math.cos(alpha) * x_op.entries + math.sin(alpha) * p_op.entries
        )
        worst = max(
            worst,
            float(np.max(np.abs(got_a[:m, :m]))),
            float(np.max(np.abs(got_x[:m, :m]))),
        )
    return _result(
        "fock-rotation-conjugation",
        "rotation-conjugation-law",
        "alpha:{0.5,2.2},N:128,M:32",
        worst,
        1e-12,
        time.perf_counter() - t0,
    )


def check_fock_kernel_bridge() -> CheckResult:
    t0 = time.perf_counter()
    grid = KERNEL_GRID
    worst = 0.0
    for p in (TransformParams(1.1, 2.0, 0.7), TransformParams(0.7, 1.0, 1.0)):
        h = fock.frhad_decomposed(p, FOCK_DIM).entries
        K = kernel1d.frht_kernel(p, grid, grid)
        for n in range(7):
            transformed = kernel1d.apply_kernel(K, sampled_hermite(n, grid))
            for m in range(7):
                via_grid = l2_inner(sampled_hermite(m, grid), transformed)
                worst = max(worst, abs(h[m, n] - via_grid))
    return _result(
        "fock-kernel-bridge",
        "matrix-elements-match-quadrature",
        "params:{(1.1,2,0.7),(0.7,1,1)},n:<=6,m:<=6",
        worst,
        1e-5,
        time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# symplectic checks


def check_symplectic_form_random() -> CheckResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(20250809)
    worst = 0.0
    for _ in range(20):
        alpha = rng.uniform(-8.0, 8.0)
        mu, nu = np.exp(rng.uniform(-1.2, 1.2, size=2))
        p = TransformParams(alpha, float(mu), float(nu))
        for S in (symplectic.frhad_symplectic1(p), symplectic.frhad_symplectic2(p)):
            w = symplectic.omega(S.size)
            worst = max(worst, float(np.max(np.abs(S.entries @ w @ S.entries.T - w))))
    return _result(
        "symplectic-form-random",
        "symplectic-condition",
        "draws:20,seed:20250809",
        worst,
        1e-12,
        time.perf_counter() - t0,
    )


def _fit_conjugation(conjugated: np.ndarray, basis: list[np.ndarray], m: int) -> tuple[np.ndarray, float]:
    """Least-squares coefficients of a conjugated quadrature on a basis."""
    cols = np.stack([op[:m, :m].ravel() for op in basis], axis=1)
    target = conjugated[:m, :m].ravel()
    coeffs, *_ = np.linalg.lstsq(cols, target, rcond=None)
    fit_residual = float(np.max(np.abs(cols @ coeffs - target)))
    return coeffs, fit_residual


def check_symplectic_coefficients_fock() -> CheckResult:
    t0 = time.perf_counter()
    x_op, p_op = fock.quadratures(FOCK_DIM)
    basis = [x_op.entries, p_op.entries]
    m = FOCK_DIM // 4
    worst = 0.0
    for p in (TransformParams(0.7, 1.3, 0.8), TransformParams(2.0, 0.6, 1.2)):
        h = fock.frhad_decomposed(p, FOCK_DIM).entries
        S = symplectic.frhad_symplectic1(p).entries
        for row, op in enumerate(basis):
            coeffs, fit_res = _fit_conjugation(_conjugate(h, op), basis, m)
            worst = max(worst, float(np.max(np.abs(coeffs.real - S[row]))), abs(coeffs.imag).max(), fit_res)
    return _result(
        "symplectic-coefficients-fock",
        "conjugation-coefficients-cross-representation",
        "params:{(0.7,1.3,0.8),(2.0,0.6,1.2)},N:128,M:32",
        worst,
        1e-10,
        time.perf_counter() - t0,
    )


def check_symplectic_decomposition() -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for p in (TransformParams(0.9, 1.7, 0.6), TransformParams(2.4, 0.8, 1.1)):
        direct = symplectic.frhad_symplectic1(p).entries
        # conjugation maps compose in reverse operator order
        composed = (
            symplectic.squeeze_map(p.mu)
            @ symplectic.rotation_map(p.alpha)
            @ symplectic.squeeze_map(1.0 / p.nu)
        ).entries
        worst = max(worst, float(np.max(np.abs(direct - composed))))
    return _result(
        "symplectic-decomposition",
        "squeeze-rotate-squeeze-phase-space",
        "params:{(0.9,1.7,0.6),(2.4,0.8,1.1)}",
        worst,
        1e-12,
        time.perf_counter() - t0,
    )


def check_symplectic_additivity() -> CheckResult:
    t0 = time.perf_counter()
    alpha, beta, mu, nu, mup = _ADD_PARAMS
    first = symplectic.frhad_symplectic1(TransformParams(beta, mup, mu))
    second = symplectic.frhad_symplectic1(TransformParams(alpha, mu, nu))
    combined = symplectic.frhad_symplectic1(TransformParams(alpha + beta, mup, nu))
    residual = float(np.max(np.abs((first @ second).entries - combined.entries)))
    return _result(
        "symplectic-additivity",
        "additivity-matched-inner-scale",
        "alpha:0.4,beta:0.9,mu:1.2,nu:0.9,mu_prime:1.4",
        residual,
        1e-12,
        time.perf_counter() - t0,
    )


def check_symplectic_state_bridge() -> CheckResult:
    """Means and covariances of Fock-evolved states vs the phase-space map."""
    t0 = time.perf_counter()
    N = FOCK_DIM
    x_op, p_op = fock.quadratures(N)
    worst = 0.0
    for p in (TransformParams(0.8, 1.5, 0.7), TransformParams(2.2, 0.9, 1.2)):
        psi = fock.coherent_vector(0.6 + 0.3j, N)
        phi = fock.frhad_decomposed(p, N).entries @ psi
        state_map = symplectic.frhad_symplectic1(p).inverse()

        def moments(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
            mean = np.array(
                [np.vdot(v, x_op.entries @ v).real, np.vdot(v, p_op.entries @ v).real]
            )
            ops = (x_op.entries, p_op.entries)
            cov = np.empty((2, 2))
            for i in range(2):
                for j in range(2):
                    sym = 0.5 * (ops[i] @ ops[j] + ops[j] @ ops[i])
                    cov[i, j] = np.vdot(v, sym @ v).real - mean[i] * mean[j]
            return mean, cov

        mean_in, cov_in = moments(psi)
        mean_out, cov_out = moments(phi)
        evolved = symplectic.apply_gaussian(
            state_map, symplectic.GaussianState(mean_in, cov_in)
        )
        worst = max(
            worst,
            float(np.max(np.abs(evolved.mean - mean_out))),
            float(np.max(np.abs(evolved.cov - cov_out))),
        )
    return _result(
        "symplectic-state-bridge",
        "state-evolution-vs-phase-space",
        "state:coherent(0.6+0.3i),params:{(0.8,1.5,0.7),(2.2,0.9,1.2)}",
        worst,
        1e-6,
        time.perf_counter() - t0,
    )


def check_symplectic_pi_parity() -> CheckResult:
    """Informational: the angle-pi map is total parity, not the identity."""
    t0 = time.perf_counter()
    p = TransformParams(math.pi, 1.0, 1.0)
    S = symplectic.frhad_symplectic2(p)
    residual = float(np.max(np.abs(S.entries + np.eye(4))))
    return _result(
        "twomode-pi-is-parity-not-identity",
        "angle-pi-action",
        "map:-I_at_mu=nu,spectrum:(-1)^(n1+n2)",
        residual,
        1e-12,
        time.perf_counter() - t0,
        info=True,
    )


# ---------------------------------------------------------------------------
# twomode checks


def _eta_grid() -> twomode.EtaGrid:
    return twomode.EtaGrid.square(ETA_HALF_WIDTH, ETA_POINTS)


def check_twomode_unitarity() -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    for p in (
        TransformParams(0.7, 1.0, 1.0),
        TransformParams(2.0, 1.2, 0.9),
        TransformParams(math.pi / 2, 1.25, 0.8),
    ):
        h = twomode.frhad2_decomposed(p)
        idx = h.trusted_indices()
        gram = h.entries.conj().T @ h.entries
        block = gram[np.ix_(idx, idx)] - np.eye(idx.size)
        worst = max(worst, float(np.max(np.abs(block))))
    return _result(
        "twomode-unitarity",
        "unitarity",
        "params:3sets,N:32,trusted_total:8",
        worst,
        1e-8,
        time.perf_counter() - t0,
    )


def _twomode_additivity_residual(nu_inner: float) -> float:
    alpha, beta, mu, nu, mup = _ADD_PARAMS
    h_a = twomode.frhad2_decomposed(TransformParams(alpha, mu, nu))
    h_b = twomode.frhad2_decomposed(TransformParams(beta, mup, nu_inner))
    h_ab = twomode.frhad2_decomposed(TransformParams(alpha + beta, mup, nu))
    idx = h_a.trusted_indices()
    delta = (h_a.entries @ h_b.entries - h_ab.entries)[np.ix_(idx, idx)]
    return float(np.max(np.abs(delta)))


def check_twomode_additivity() -> CheckResult:
    t0 = time.perf_counter()
    residual = _twomode_additivity_residual(nu_inner=_ADD_PARAMS[2])
    return _result(
        "twomode-additivity",
        "additivity-matched-inner-scale",
        "alpha:0.4,beta:0.9,mu:1.2,nu:0.9,mu_prime:1.4,N:32",
        residual,
        1e-8,
        time.perf_counter() - t0,
    )


def check_twomode_additivity_negative() -> CheckResult:
    t0 = time.perf_counter()
    residual = _twomode_additivity_residual(nu_inner=1.25 * _ADD_PARAMS[2])
    return _result(
        "twomode-additivity-negative",
        "additivity-mismatched-inner-scale",
        "inner_scale_off_by:1.25x",
        residual,
        1e-2,
        time.perf_counter() - t0,
        invert=True,
    )


def check_twomode_heisenberg() -> CheckResult:
    t0 = time.perf_counter()
    N = twomode.DEFAULT_DIM2
    x1, p1, x2, p2 = twomode.quadratures2(N)
    xm, pm = x1 - x2, p1 - p2
    xp, pp = x1 + x2, p1 + p2
    n1, n2 = twomode.mode_indices(N)
    idx = np.where(n1 + n2 <= twomode.DEFAULT_TRUSTED_TOTAL)[0]
    worst = 0.0
    for p in (TransformParams(0.9, 1.2, 0.85), TransformParams(2.0, 0.9, 1.15)):
        h = twomode.frhad2_decomposed(p, N).entries
        c, s = math.cos(p.alpha), math.sin(p.alpha)
        mu, nu = p.mu, p.nu
        laws = (
            (xm, (mu / nu) * c * xm + mu * nu * s * pm),
            (xp, (nu / mu) * c * xp + s / (mu * nu) * pp),
            (pm, (nu / mu) * c * pm - s / (mu * nu) * xm),
            (pp, (mu / nu) * c * pp - mu * nu * s * xp),
        )
        for op, want in laws:
            delta = (_conjugate(h, op) - want)[np.ix_(idx, idx)]
            worst = max(worst, float(np.max(np.abs(delta))))
    return _result(
        "twomode-heisenberg-epr",
        "epr-combination-conjugation-laws",
        "params:{(0.9,1.2,0.85),(2.0,0.9,1.15)},N:32,trusted_total:8",
        worst,
        1e-6,
        time.perf_counter() - t0,
    )


def check_twomode_symplectic_coefficients() -> CheckResult:
    t0 = time.perf_counter()
    N = twomode.DEFAULT_DIM2
    x1, p1, x2, p2 = twomode.quadratures2(N)
    xm, pm = x1 - x2, p1 - p2
    xp, pp = x1 + x2, p1 + p2
    n1, n2 = twomode.mode_indices(N)
    keep = np.where(n1 + n2 <= twomode.DEFAULT_TRUSTED_TOTAL)[0]

    def fit(conj, basis):
        cols = np.stack([op[np.ix_(keep, keep)].ravel() for op in basis], axis=1)
        target = conj[np.ix_(keep, keep)].ravel()
        coeffs, *_ = np.linalg.lstsq(cols, target, rcond=None)
        res = float(np.max(np.abs(cols @ coeffs - target)))
        return coeffs, res

    p = TransformParams(0.9, 1.2, 0.85)
    h = twomode.frhad2_decomposed(p, N).entries
    minus = symplectic.frhad_symplectic1(p).entries
    plus = symplectic.frhad_symplectic1(
        TransformParams(p.alpha, 1.0 / p.mu, 1.0 / p.nu)
    ).entries
    worst = 0.0
    for row, op in ((0, xm), (1, pm)):
        coeffs, res = fit(_conjugate(h, op), [xm, pm])
        worst = max(worst, float(np.max(np.abs(coeffs.real - minus[row]))), abs(coeffs.imag).max(), res)
    for row, op in ((0, xp), (1, pp)):
        coeffs, res = fit(_conjugate(h, op), [xp, pp])
        worst = max(worst, float(np.max(np.abs(coeffs.real - plus[row]))), abs(coeffs.imag).max(), res)
    return _result(
        "twomode-symplectic-coefficients",
        "conjugation-coefficients-cross-representation",
        "alpha:0.9,mu:1.2,nu:0.85,N:32",
        worst,
        1e-10,
        time.perf_counter() - t0,
    )


def check_twomode_eta_unitarity_matched() -> CheckResult:
    t0 = time.perf_counter()
    grid = _eta_grid()
    alpha = math.pi / 2
    m = math.sqrt(kernel1d.matched_scale(grid.re_axis, alpha))
    K = twomode.eta_kernel(TransformParams(alpha, m, m), grid)
    r_re = kernel1d.unitarity_residual(K.factor_re)
    r_im = kernel1d.unitarity_residual(K.factor_im)
    residual = r_re + r_im + r_re * r_im
    return _result(
        "twomode-eta-unitarity-matched",
        "unitarity",
        "grid:[-6,6]^2x256^2,alpha:pi/2,scales:critically_sampled",
        residual,
        1e-5,
        time.perf_counter() - t0,
    )


def check_twomode_eta_factorization() -> CheckResult:
    t0 = time.perf_counter()
    grid = twomode.EtaGrid.square(2.5, 32)
    worst = 0.0
    for p in (TransformParams(0.8, 1.3, 0.9), TransformParams(4.0, 1.1, 0.8)):
        dense = twomode.dense_eta_kernel(p, grid)
        K = twomode.eta_kernel(p, grid)
        # the pi from the measure cancels against the squared 1-D prefactor
        kron = np.kron(K.factor_re.entries, K.factor_im.entries)
        worst = max(worst, float(np.max(np.abs(dense - kron))))
    return _result(
        "twomode-eta-factorization",
        "two-plane-kernel-factorizes",
        "grid:[-2.5,2.5]^2x32^2,params:2sets",
        worst,
        1e-12,
        time.perf_counter() - t0,
    )


def check_twomode_tmsv() -> CheckResult:
    t0 = time.perf_counter()
    N = twomode.DEFAULT_DIM2
    worst = 0.0
    for mu in (1.5, 0.8):
        s = twomode.squeezer2(mu, N)
        r = math.log(mu)
        th, ch = math.tanh(r), math.cosh(r)
        for n in range(6):
            got = s.entries[n * N + n, 0]
            worst = max(worst, abs(got - th**n / ch))
    return _result(
        "twomode-tmsv-closed-form",
        "squeezed-vacuum-amplitudes",
        "mu:{1.5,0.8},n:<=5",
        worst,
        1e-8,
        time.perf_counter() - t0,
    )


def check_twomode_bridge() -> CheckResult:
    t0 = time.perf_counter()
    grid = _eta_grid()
    N = twomode.DEFAULT_DIM2
    p = TransformParams(0.8, 1.3, 0.9)
    rng = np.random.default_rng(7)
    states = []
    states.append(twomode.fock_basis_vector2(0, 0, N))
    states.append(twomode.fock_basis_vector2(1, 1, N))
    bell = (
        twomode.fock_basis_vector2(0, 0, N) + twomode.fock_basis_vector2(1, 1, N)
    ) / math.sqrt(2.0)
    states.append(bell)
    mixed = np.zeros(N * N, dtype=complex)
    n1, n2 = twomode.mode_indices(N)
    for idx in np.where(n1 + n2 <= 4)[0]:
        mixed[idx] = rng.standard_normal() + 1j * rng.standard_normal()
    mixed /= np.linalg.norm(mixed)
    states.append(mixed)
    worst = 0.0
    for vec in states:
        worst = max(worst, twomode.bridge_check(p, vec, grid, N).residual)
    return _result(
        "twomode-bridge",
        "grid-route-vs-number-route",
        "alpha:0.8,mu:1.3,nu:0.9,grid:[-6,6]^2x256^2,total:<=4",
        worst,
        1e-4,
        time.perf_counter() - t0,
    )


def check_twomode_completeness() -> CheckResult:
    t0 = time.perf_counter()
    residual = twomode.completeness_residual(_eta_grid(), max_total=3)
    return _result(
        "twomode-completeness",
        "entangled-basis-closure",
        "grid:[-6,6]^2x256^2,total:<=3",
        residual,
        1e-4,
        time.perf_counter() - t0,
    )


def check_twomode_pi_parity_fock() -> CheckResult:
    """Informational: e^{i pi (n1+n2)} flips odd-total states."""
    t0 = time.perf_counter()
    N = 8
    op = twomode.fractional_op2(math.pi, N).entries
    n1, n2 = twomode.mode_indices(N)
    want = np.diag(np.where((n1 + n2) % 2 == 0, 1.0, -1.0).astype(complex))
    residual = float(np.max(np.abs(op - want)))
    return _result(
        "twomode-pi-parity-spectrum",
        "angle-pi-action",
        "spectrum:+/-1_by_total_parity",
        residual,
        1e-12,
        time.perf_counter() - t0,
        info=True,
    )


# ---------------------------------------------------------------------------
# registry and reporting

_CHECKS = {
    "kernel": (
        check_kernel_hadamard_closed_form,
        check_kernel_vacuum_invariance,
        check_kernel_eigenfunctions,
        check_kernel_unitarity_matched,
        check_kernel_unitarity_signals,
        check_kernel_additivity,
        check_kernel_additivity_negative,
        check_kernel_adjoint,
        check_kernel_roundtrip,
        check_kernel_parity_branch,
    ),
    "fock": (
        check_fock_pi_half_closed_form,
        check_fock_normal_vs_decomposed,
        check_fock_unitarity,
        check_fock_offwindow_mass,
        check_fock_additivity,
        check_fock_additivity_negative,
        check_fock_heisenberg,
        check_fock_rotation_conjugation,
        check_fock_kernel_bridge,
    ),
    "symplectic": (
        check_symplectic_form_random,
        check_symplectic_coefficients_fock,
        check_symplectic_decomposition,
        check_symplectic_additivity,
        check_symplectic_state_bridge,
        check_symplectic_pi_parity,
    ),
    "twomode": (
        check_twomode_unitarity,
        check_twomode_additivity,
        check_twomode_additivity_negative,
        check_twomode_heisenberg,
        check_twomode_symplectic_coefficients,
        check_twomode_eta_unitarity_matched,
        check_twomode_eta_factorization,
        check_twomode_tmsv,
        check_twomode_bridge,
        check_twomode_completeness,
        check_twomode_pi_parity_fock,
    ),
}


def run_checks(scope: str = "all") -> list[CheckResult]:
    """Run the verification suite for one scope (or all of them)."""
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}, expected one of {SCOPES}")
    selected = (
        [fn for fns in _CHECKS.values() for fn in fns]
        if scope == "all"
        else list(_CHECKS[scope])
    )
    results: list[CheckResult] = []
    for fn in selected:
        out = fn()
        results.extend(out if isinstance(out, list) else [out])
    return results


def report_text(results: list[CheckResult], scope: str) -> str:
    """Render results as the stable key=value report format."""
    lines = [
        "frhad-verify-report",
        f"version={__version__}",
        "conventions "
        + " ".join(f"{k}={v}" for k, v in CONVENTIONS.items()),
    ]
    for r in results:
        status = "info" if r.info else ("true" if r.passed else "false")
        lines.append(
            f"check={r.name} identity={r.identity} params={r.params} "
            f"residual={r.residual:.6e} tolerance={r.tolerance:.1e} "
            f"pass={status} elapsed={r.elapsed:.2f}s"
        )
    gated = [r for r in results if not r.info]
    failed = [r for r in gated if not r.passed]
    lines.append(
        f"summary scope={scope} total={len(results)} "
        f"passed={len(gated) - len(failed)} failed={len(failed)} "
        f"info={sum(1 for r in results if r.info)}"
    )
    return "\n".join(lines) + "\n"


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results if not r.info)
