"""Command-line front door.

Subcommands: ``transform`` (1-D signals), ``twomode`` (entangled-plane
signals), ``fock`` (operator matrices), ``gaussian`` (phase-space
transforms), ``verify`` (identity suite with report), and ``plotdata``
(columnar magnitude/phase for external plotting).

Exit codes: 0 success, 2 validation or parse failure, 3 numerical-contract
failure (norm drift, truncation leak, series overflow, failing checks).
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .core import HadamardScale, TransformParams
from .errors import NormDrift, NumericalContractError, ValidationError
from .fock import frhad_decomposed, frhad_normal_ordered
from .kernel1d import frht_kernel, apply_kernel
from .symplectic import (
    GaussianState,
    apply_gaussian,
    frhad_symplectic1,
    frhad_symplectic2,
)
from .twomode import measure_bell
from . import io as fio
from . import verify as fverify

#: Relative norm change above which a 1-D/2-D transform exits 3.
NORM_DRIFT_TOL = 1e-3


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--alpha", type=float, help="transform angle in radians")
    sub.add_argument("--alpha-deg", type=float, help="transform angle in degrees")
    sub.add_argument("--mu", type=float, default=1.0, help="input-side scale (default 1)")
    sub.add_argument("--nu", type=float, default=1.0, help="output-side scale (default 1)")
    sub.add_argument(
        "--sigma",
        type=float,
        help="position-to-momentum scale; shorthand for alpha=pi/2, mu=nu=sigma/sqrt(2)",
    )


def _resolve_params(args: argparse.Namespace) -> TransformParams:
    if args.sigma is not None:
        if args.alpha is not None or args.alpha_deg is not None:
            raise ValidationError("--sigma cannot be combined with --alpha/--alpha-deg")
        return HadamardScale(args.sigma).params
    if args.alpha is not None and args.alpha_deg is not None:
        raise ValidationError("give only one of --alpha and --alpha-deg")
    if args.alpha is not None:
        alpha = args.alpha
    elif args.alpha_deg is not None:
        alpha = math.radians(args.alpha_deg)
    else:
        raise ValidationError("an angle is required: --alpha, --alpha-deg, or --sigma")
    return TransformParams(alpha, args.mu, args.nu)


def _print_norms(before: float, after: float) -> None:
    print(f"input_norm={before!r}")
    print(f"output_norm={after!r}")


def _check_drift(before: float, after: float) -> None:
    if abs(after - before) > NORM_DRIFT_TOL * max(before, 1e-300):
        raise NormDrift(
            f"norm moved from {before!r} to {after!r} (> {NORM_DRIFT_TOL:.0e} "
            "relative); the grid is likely too coarse for these parameters"
        )


def _cmd_transform(args: argparse.Namespace) -> int:
    params = _resolve_params(args)
    signal = fio.read_signal1d(args.input)
    out = apply_kernel(frht_kernel(params, signal.grid, signal.grid), signal)
    fio.write_signal1d(args.output, out)
    _print_norms(signal.norm(), out.norm())
    _check_drift(signal.norm(), out.norm())
    return 0


def _cmd_twomode(args: argparse.Namespace) -> int:
    params = _resolve_params(args)
    signal = fio.read_signal2d(args.input)
    out = measure_bell(params, signal)
    fio.write_signal2d(args.output, out)
    _print_norms(signal.norm(), out.norm())
    _check_drift(signal.norm(), out.norm())
    return 0


def _cmd_fock(args: argparse.Namespace) -> int:
    params = _resolve_params(args)
    build = frhad_normal_ordered if args.route == "normal_ordered" else frhad_decomposed
    op = build(params, args.fock_dim)
    fio.write_matrix(
        args.output,
        op.entries,
        {
            "alpha": repr(params.alpha),
            "mu": repr(params.mu),
            "nu": repr(params.nu),
            "dim": op.dim,
            "route": args.route,
            "trusted": op.trusted,
        },
    )
    print(f"wrote {op.dim}x{op.dim} matrix (trusted block {op.trusted}) to {args.output}")
    return 0


def _parse_vector(text: str, length: int, what: str) -> np.ndarray:
    try:
        values = np.array([float(v) for v in text.split(",")])
    except ValueError as exc:
        raise ValidationError(f"bad {what}: {exc}") from None
    if values.size != length:
        raise ValidationError(f"{what} needs {length} comma-separated values")
    return values


def _cmd_gaussian(args: argparse.Namespace) -> int:
    params = _resolve_params(args)
    dim = 2 * args.modes
    state = GaussianState.vacuum(args.modes)
    if args.mean is not None:
        state = GaussianState(_parse_vector(args.mean, dim, "--mean"), state.cov)
    if args.cov is not None:
        cov = _parse_vector(args.cov, dim * dim, "--cov").reshape(dim, dim)
        state = GaussianState(state.mean, cov)

    conj = frhad_symplectic1(params) if args.modes == 1 else frhad_symplectic2(params)
    state_map = conj.inverse()
    out = apply_gaussian(state_map, state)

    def flat(a: np.ndarray) -> str:
        return ",".join(repr(float(v)) for v in np.asarray(a).ravel())

    lines = [
        f"# alpha={params.alpha!r} mu={params.mu!r} nu={params.nu!r} modes={args.modes}",
        "# conjugation_map rows give U R U_dag coefficients; states evolve",
        "# with its symplectic inverse (state_map), written below",
        f"conjugation_map,{flat(conj.entries)}",
        f"state_map,{flat(state_map.entries)}",
        f"mean_out,{flat(out.mean)}",
        f"cov_out,{flat(out.cov)}",
    ]
    fio.atomic_write_text(args.output, "\n".join(lines) + "\n")
    print(f"wrote transformed {args.modes}-mode Gaussian state to {args.output}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = fverify.run_checks(args.scope)
    text = fverify.report_text(results, args.scope)
    if args.output:
        fio.atomic_write_text(args.output, text)
    print(text, end="")
    return 0 if fverify.all_passed(results) else 3


def _cmd_plotdata(args: argparse.Namespace) -> int:
    signal = fio.read_signal1d(args.input)
    x = signal.grid.points
    if args.what == "wigner_none":
        fio.atomic_write_text(
            args.output,
            "# wigner data intentionally not generated; "
            "use --what magnitude or phase\n",
        )
        return 0
    column = (
        np.abs(signal.values) if args.what == "magnitude" else np.angle(signal.values)
    )
    if args.format == "csv":
        lines = [f"x,{args.what}"] + [
            f"{xv!r},{cv!r}" for xv, cv in zip(x, column)
        ]
    else:
        lines = [f"{xv!r} {cv!r}" for xv, cv in zip(x, column)]
    fio.atomic_write_text(args.output, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frhad",
        description="Continuous-variable fractional Hadamard transforms: "
        "signals, operator matrices, Gaussian states, and identity verification.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    t = subs.add_parser("transform", help="transform a 1-D sampled signal")
    _add_param_flags(t)
    t.add_argument("--input", required=True)
    t.add_argument("--output", required=True)
    t.set_defaults(func=_cmd_transform)

    w = subs.add_parser("twomode", help="transform an entangled-plane signal")
    _add_param_flags(w)
    w.add_argument("--input", required=True)
    w.add_argument("--output", required=True)
    w.set_defaults(func=_cmd_twomode)

    f = subs.add_parser("fock", help="emit the number-basis operator matrix")
    _add_param_flags(f)
    f.add_argument("--fock-dim", type=int, default=128)
    f.add_argument(
        "--route", choices=("decomposed", "normal_ordered"), default="decomposed"
    )
    f.add_argument("--output", required=True)
    f.set_defaults(func=_cmd_fock)

    g = subs.add_parser("gaussian", help="transform a Gaussian state")
    _add_param_flags(g)
    g.add_argument("--modes", type=int, choices=(1, 2), default=1)
    g.add_argument("--mean", help="comma-separated quadrature means (default zeros)")
    g.add_argument(
        "--cov", help="comma-separated row-major covariance (default vacuum I/2)"
    )
    g.add_argument("--output", required=True)
    g.set_defaults(func=_cmd_gaussian)

    v = subs.add_parser("verify", help="run the identity-verification suite")
    v.add_argument("--scope", choices=fverify.SCOPES, default="all")
    v.add_argument("--output", help="also write the report to this path")
    v.set_defaults(func=_cmd_verify)

    p = subs.add_parser("plotdata", help="emit plain columns for plotting")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument(
        "--what", choices=("magnitude", "phase", "wigner_none"), required=True
    )
    p.add_argument("--format", choices=("columns", "csv"), default="columns")
    p.set_defaults(func=_cmd_plotdata)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalContractError as exc:
        print(f"numerical contract failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
