"""File formats: trajectory CSV, kernel coefficient files, atomic writes.

Trajectory CSV: one sample per row, q comma-separated reals, optional header
row ``v1,...,vq``; the time index is implicit in the row order.

Kernel file: plain text; first line ``p q ell``; then ell+1 blocks of p
lines with q space-separated reals each, block i holding the coefficient of
the i-th power of the shift.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .behaviors import KernelRep
from .exceptions import InvalidInputError

__all__ = [
    "read_trajectory_csv",
    "write_trajectory_csv",
    "read_kernel_file",
    "write_kernel_file",
    "write_text_atomic",
]


def write_text_atomic(path, text: str) -> None:
    """Write text via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def read_trajectory_csv(path) -> np.ndarray:
    """Read a trajectory CSV into an array of shape (length, q)."""
    path = Path(path)
    try:
        lines = [ln.strip() for ln in path.read_text().splitlines()]
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InvalidInputError(f"{path}: no data rows")
    start = 0
    try:
        [float(tok) for tok in lines[0].split(",")]
    except ValueError:
        start = 1  # header row
    rows = []
    width = None
    for num, line in enumerate(lines[start:], start=start + 1):
        tokens = line.split(",")
        try:
            row = [float(tok) for tok in tokens]
        except ValueError:
            raise InvalidInputError(f"{path}:{num}: cannot parse {line!r} as numbers") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InvalidInputError(
                f"{path}:{num}: expected {width} values per row, got {len(row)}"
            )
        rows.append(row)
    if not rows:
        raise InvalidInputError(f"{path}: no data rows")
    arr = np.asarray(rows, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{path}: non-finite values in data")
    return arr


def write_trajectory_csv(path, w) -> None:
    """Write a trajectory (length, q) with header and round-trip precision."""
    arr = np.asarray(w, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInputError("trajectory must be a non-empty 2-D array")
    header = ",".join(f"v{i + 1}" for i in range(arr.shape[1]))
    body = "\n".join(",".join(repr(v) for v in row) for row in arr.tolist())
    write_text_atomic(path, header + "\n" + body + "\n")


def read_kernel_file(path) -> KernelRep:
    """Parse a kernel coefficient file into a KernelRep."""
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    lines = [ln.strip() for ln in raw.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidInputError(f"{path}: empty kernel file")
    head = lines[0].split()
    if len(head) != 3:
        raise InvalidInputError(f"{path}: first line must be 'p q ell', got {lines[0]!r}")
    try:
        p, q, ell = (int(tok) for tok in head)
    except ValueError:
        raise InvalidInputError(f"{path}: first line must hold three integers") from None
    if p < 1 or q < 1 or ell < 0:
        raise InvalidInputError(f"{path}: need p >= 1, q >= 1, ell >= 0, got {p} {q} {ell}")
    expected = (ell + 1) * p
    if len(lines) - 1 != expected:
        raise InvalidInputError(
            f"{path}: expected {expected} coefficient rows, found {len(lines) - 1}"
        )
    coeffs = []
    cursor = 1
    for block in range(ell + 1):
        mat = []
        for r in range(p):
            tokens = lines[cursor].split()
            if len(tokens) != q:
                raise InvalidInputError(
                    f"{path}: block {block} row {r} must hold {q} values, got {len(tokens)}"
                )
            try:
                mat.append([float(tok) for tok in tokens])
            except ValueError:
                raise InvalidInputError(
                    f"{path}: block {block} row {r}: cannot parse {lines[cursor]!r}"
                ) from None
            cursor += 1
        coeffs.append(np.asarray(mat, dtype=float))
    try:
        return KernelRep(tuple(coeffs))
    except InvalidInputError as exc:
        raise InvalidInputError(f"{path}: {exc}") from None


def write_kernel_file(path, rep: KernelRep) -> None:
    """Write a KernelRep in the kernel file format."""
    lines = [f"{rep.p} {rep.q} {rep.degree}"]
    for coeff in rep.coeffs:
        for row in coeff.tolist():
            lines.append(" ".join(repr(v) for v in row))
    write_text_atomic(path, "\n".join(lines) + "\n")
