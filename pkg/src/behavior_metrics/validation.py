"""Input validation helpers used throughout the package."""

from __future__ import annotations

from typing import Union

import numpy as np

from .exceptions import InvalidInputError

# A rank tolerance is a non-negative threshold relative to the largest
# singular value, or the sentinel "auto" for max(rows, cols) * machine eps.
RankTolerance = Union[float, str]


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Coerce ``M`` to a 2-D float array with at least one row, all finite."""
    arr = np.asarray(M, dtype=float)
    if arr.ndim != 2:
        raise InvalidInputError(f"{name} must be 2-D, got a {arr.ndim}-D array")
    if arr.shape[0] < 1:
        raise InvalidInputError(f"{name} must have at least one row")
    if arr.size and not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return arr


def check_trajectory(w, name: str = "trajectory") -> np.ndarray:
    """Coerce time-series data to shape (length, q).

    A 1-D array is treated as a single-variable trajectory. Entries must be
    finite and both dimensions positive.
    """
    arr = np.asarray(w, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2:
        raise InvalidInputError(f"{name} must be 1-D or 2-D, got a {arr.ndim}-D array")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInputError(f"{name} needs at least one sample of at least one variable")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return arr


def check_trajectories(ws, name: str = "trajectories") -> tuple[list[np.ndarray], int]:
    """Normalize to a non-empty list of (length, q) arrays sharing a common q.

    A single array is accepted and wrapped in a list. Returns the normalized
    list together with the shared variable count q.
    """
    if isinstance(ws, np.ndarray):
        ws = [ws]
    trajs = [check_trajectory(w, f"{name}[{i}]") for i, w in enumerate(ws)]
    if not trajs:
        raise InvalidInputError(f"{name} must be non-empty")
    q = trajs[0].shape[1]
    for i, w in enumerate(trajs):
        if w.shape[1] != q:
            raise InvalidInputError(
                f"{name}[{i}] has {w.shape[1]} variables per sample, expected {q}"
            )
    return trajs, q


def check_positive_int(value, name: str) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise InvalidInputError(f"{name} must be a positive integer, got {value!r}")
    if value < 1:
        raise InvalidInputError(f"{name} must be a positive integer, got {value}")
    return int(value)


def resolve_rank_tol(tol: RankTolerance, shape: tuple[int, int]) -> float:
    """Resolve a rank tolerance to a relative threshold on singular values."""
    if isinstance(tol, str):
        if tol == "auto":
            return max(shape) * float(np.finfo(float).eps)
        raise InvalidInputError(f'rank tolerance must be "auto" or a number, got {tol!r}')
    t = float(tol)
    if not np.isfinite(t) or t < 0.0:
        raise InvalidInputError(f"rank tolerance must be non-negative, got {tol!r}")
    return t
