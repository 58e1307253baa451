"""Signal, matrix, and report file formats.

1-D signals: CSV with header ``x,re,im``. 2-D signals: CSV with header
``eta1,eta2,re,im``, rows in row-major axis order (eta1 outer). Matrices:
``#``-prefixed metadata lines, then ``row,col,re,im`` per entry. Floats are
written with ``repr``, the shortest round-tripping form, so
read -> write -> read is byte-identical once a file is in canonical form.

All writes are atomic: a temp file in the destination directory is
populated and then renamed over the target.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .core import Grid1D, SampledWavefunction
from .errors import SignalFileError
from .twomode import EtaGrid, TwoModeWavefunction

#: Relative tolerance for the uniform-spacing check on input files.
SPACING_RTOL = 1e-9


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_floats(line: str, count: int, lineno: int, path) -> list[float]:
    parts = line.split(",")
    if len(parts) != count:
        raise SignalFileError(
            f"{path}: line {lineno}: expected {count} comma-separated fields, "
            f"got {len(parts)}"
        )
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise SignalFileError(f"{path}: line {lineno}: {exc}") from None


def _check_uniform_axis(x: np.ndarray, path, what: str) -> None:
    diffs = np.diff(x)
    if np.any(diffs <= 0):
        raise SignalFileError(f"{path}: {what} values must be strictly increasing")
    mean = float(np.mean(diffs))
    span = max(1.0, abs(x[-1] - x[0]))
    if float(np.max(np.abs(diffs - mean))) > SPACING_RTOL * span:
        raise SignalFileError(f"{path}: {what} values are not uniformly spaced")


def read_signal1d(path: str | os.PathLike) -> SampledWavefunction:
    """Parse an ``x,re,im`` CSV file into a sampled wavefunction."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].strip() != "x,re,im":
        raise SignalFileError(f"{path}: line 1: expected header 'x,re,im'")
    rows = [
        _parse_floats(line, 3, i, path)
        for i, line in enumerate(lines[1:], start=2)
        if line.strip()
    ]
    if len(rows) < 16:
        raise SignalFileError(f"{path}: need at least 16 samples, got {len(rows)}")
    data = np.array(rows)
    _check_uniform_axis(data[:, 0], path, "x")
    grid = Grid1D(float(data[0, 0]), float(data[-1, 0]), len(rows))
    return SampledWavefunction(grid, data[:, 1] + 1j * data[:, 2])


def write_signal1d(path: str | os.PathLike, f: SampledWavefunction) -> None:
    x = f.grid.points
    lines = ["x,re,im"]
    lines += [
        f"{xi!r},{v.real!r},{v.imag!r}" for xi, v in zip(x, f.values)
    ]
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_signal2d(path: str | os.PathLike) -> TwoModeWavefunction:
    """Parse an ``eta1,eta2,re,im`` CSV file (row-major in eta1)."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].strip() != "eta1,eta2,re,im":
        raise SignalFileError(f"{path}: line 1: expected header 'eta1,eta2,re,im'")
    rows = [
        _parse_floats(line, 4, i, path)
        for i, line in enumerate(lines[1:], start=2)
        if line.strip()
    ]
    if not rows:
        raise SignalFileError(f"{path}: no samples")
    data = np.array(rows)
    eta1 = np.unique(data[:, 0])
    eta2 = np.unique(data[:, 1])
    if eta1.size * eta2.size != len(rows):
        raise SignalFileError(f"{path}: rows do not form a complete grid")
    want1 = np.repeat(eta1, eta2.size)
    want2 = np.tile(eta2, eta1.size)
    if not (np.array_equal(data[:, 0], want1) and np.array_equal(data[:, 1], want2)):
        raise SignalFileError(f"{path}: rows must be sorted row-major in (eta1, eta2)")
    _check_uniform_axis(eta1, path, "eta1")
    _check_uniform_axis(eta2, path, "eta2")
    grid = EtaGrid(
        Grid1D(float(eta1[0]), float(eta1[-1]), eta1.size),
        Grid1D(float(eta2[0]), float(eta2[-1]), eta2.size),
    )
    values = (data[:, 2] + 1j * data[:, 3]).reshape(eta1.size, eta2.size)
    return TwoModeWavefunction(grid, values)


def write_signal2d(path: str | os.PathLike, f: TwoModeWavefunction) -> None:
    e1 = f.grid.re_axis.points
    e2 = f.grid.im_axis.points
    lines = ["eta1,eta2,re,im"]
    for i, a in enumerate(e1):
        for j, b in enumerate(e2):
            v = f.values[i, j]
            lines.append(f"{a!r},{b!r},{v.real!r},{v.imag!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_matrix(
    path: str | os.PathLike, entries: np.ndarray, metadata: dict[str, object]
) -> None:
    """Write a dense complex matrix as '#' metadata plus row,col,re,im lines."""
    lines = [f"# {key}={value}" for key, value in metadata.items()]
    lines.append("row,col,re,im")
    rows, cols = entries.shape
    for r in range(rows):
        for c in range(cols):
            v = entries[r, c]
            lines.append(f"{r},{c},{v.real!r},{v.imag!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_matrix(path: str | os.PathLike) -> tuple[np.ndarray, dict[str, str]]:
    """Inverse of ``write_matrix``; used by tests and downstream tooling."""
    metadata: dict[str, str] = {}
    body: list[tuple[int, int, complex]] = []
    lines = Path(path).read_text().splitlines()
    seen_header = False
    for i, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            metadata[key.strip()] = value.strip()
            continue
        if not seen_header:
            if line.strip() != "row,col,re,im":
                raise SignalFileError(f"{path}: line {i}: expected 'row,col,re,im'")
            seen_header = True
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise SignalFileError(f"{path}: line {i}: expected 4 fields")
        try:
            body.append(
                (int(parts[0]), int(parts[1]), float(parts[2]) + 1j * float(parts[3]))
            )
        except ValueError as exc:
            raise SignalFileError(f"{path}: line {i}: {exc}") from None
    if not body:
        raise SignalFileError(f"{path}: no matrix entries")
    n_rows = max(r for r, _, _ in body) + 1
    n_cols = max(c for _, c, _ in body) + 1
    out = np.zeros((n_rows, n_cols), dtype=complex)
    for r, c, v in body:
        out[r, c] = v
    return out, metadata
