"""Numerically robust subspace primitives.

Orthonormal bases, numerical rank, principal angles, and orthogonal
projectors, all built on dense SVD. Every other module reduces its geometry
to these four operations, so their tolerance conventions are pinned here:
rank thresholds are relative to the largest singular value, and principal
angles below 45 degrees are refined through a sine-based SVD because the
plain arccos-of-cosines route loses half the significant digits for
well-aligned subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatchError, InvalidInputError
from .validation import RankTolerance, as_matrix, resolve_rank_tol

__all__ = [
    "Subspace",
    "orthonormal_basis",
    "nullspace_basis",
    "numerical_rank",
    "principal_angles",
    "projector",
    "containment_gap",
]

_ORTHONORMALITY_TOL = 1e-10
_COS_REFINE = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A k-dimensional subspace of R^N held as an N x k orthonormal basis.

    ``dim == 0`` (an empty basis) is allowed and represents the zero
    subspace. The basis array is copied and marked read-only on
    construction, so instances are immutable and safe to share across
    threads.

    Raises
    ------
    InvalidInputError
        If the basis is not 2-D, has no rows, has more columns than rows,
        contains non-finite entries, or its columns are not orthonormal to
        within 1e-10 in max-absolute-entry norm.
    """

    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        if basis.ndim != 2:
            raise InvalidInputError("subspace basis must be a 2-D array")
        n, k = basis.shape
        if n < 1:
            raise InvalidInputError("subspace ambient dimension must be at least 1")
        if k > n:
            raise InvalidInputError(
                f"subspace dimension {k} exceeds ambient dimension {n}"
            )
        if basis.size and not np.all(np.isfinite(basis)):
            raise InvalidInputError("subspace basis contains non-finite entries")
        if k:
            gram_err = np.max(np.abs(basis.T @ basis - np.eye(k)))
            if gram_err > _ORTHONORMALITY_TOL:
                raise InvalidInputError(
                    f"subspace basis columns are not orthonormal "
                    f"(max Gram deviation {gram_err:.3e})"
                )
        basis = basis.copy()
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __repr__(self) -> str:  # keep reprs short; bases can be large
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def numerical_rank(M, tol: RankTolerance = "auto") -> int:
    """Numerical rank of a matrix.

    Counts the singular values exceeding ``tol * sigma_max``. With
    ``tol="auto"`` the relative threshold is ``max(rows, cols) * eps``, the
    standard numerical-rank convention.

    Parameters
    ----------
    M : array_like, shape (m, n)
        Input matrix; must have at least one row.
    tol : float or "auto"
        Relative threshold on singular values.

    Returns
    -------
    int
        Number of singular values above the threshold.
    """
    M = as_matrix(M, "M")
    if M.shape[1] == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    threshold = resolve_rank_tol(tol, M.shape) * s[0]
    return int(np.count_nonzero(s > threshold))


def orthonormal_basis(M, tol: RankTolerance = "auto") -> Subspace:
    """Orthonormal basis for the numerical column space of a matrix.

    Parameters
    ----------
    M : array_like, shape (m, n)
        Input matrix; must have at least one row. Zero columns are allowed
        and yield the zero subspace.
    tol : float or "auto"
        Relative rank threshold, as in :func:`numerical_rank`.

    Returns
    -------
    Subspace
        Subspace whose columns orthonormally span the numerical column
        space of ``M``; its dimension equals ``numerical_rank(M, tol)``.
    """
    M = as_matrix(M, "M")
    if M.shape[1] == 0:
        return Subspace(np.zeros((M.shape[0], 0)))
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s > resolve_rank_tol(tol, M.shape) * s[0]))
    return Subspace(u[:, :rank])


def nullspace_basis(M, tol: RankTolerance = "auto") -> Subspace:
    """Orthonormal basis for the numerical null space of a matrix."""
    M = as_matrix(M, "M")
    if M.shape[1] == 0:
        raise InvalidInputError("null space of a matrix with no columns is undefined")
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s > resolve_rank_tol(tol, M.shape) * s[0]))
    return Subspace(vh[rank:].T)


def principal_angles(V: Subspace, U: Subspace) -> np.ndarray:
    """Principal angles between two subspaces of the same ambient space.

    The cosines of the angles are the singular values of
    ``V.basis.T @ U.basis``, clamped into [0, 1]. Angles whose cosine
    exceeds 1/sqrt(2) are recomputed from the singular values of the
    residual ``U.basis - V.basis @ (V.basis.T @ U.basis)`` (the sine-based
    method), which keeps full precision for nearly aligned directions.

    Parameters
    ----------
    V, U : Subspace
        Subspaces with equal ambient dimension. Either may have dimension
        zero, in which case the result is empty.

    Returns
    -------
    numpy.ndarray
        ``min(V.dim, U.dim)`` angles in radians, inside [0, pi/2], sorted
        ascending.

    Raises
    ------
    DimensionMismatchError
        If the ambient dimensions differ. Callers comparing behaviors of
        different ambient dimension must embed first (zero padding).
    """
    _check_same_ambient(V, U)
    r = min(V.dim, U.dim)
    if r == 0:
        return np.zeros(0)
    cross = V.basis.T @ U.basis
    cosines = np.clip(np.linalg.svd(cross, compute_uv=False), 0.0, 1.0)
    angles = np.arccos(cosines)  # ascending, since cosines come sorted descending
    # Residual of the smaller-dimensional basis against the other subspace;
    # its singular values are the sines of the same r principal angles.
    if V.dim >= U.dim:
        residual = U.basis - V.basis @ cross
    else:
        residual = V.basis - U.basis @ cross.T
    sines = np.clip(np.linalg.svd(residual, compute_uv=False), 0.0, 1.0)[::-1]
    refine = cosines > _COS_REFINE
    angles[refine] = np.arcsin(sines[refine])
    return np.sort(angles)


def projector(V: Subspace) -> np.ndarray:
    """Orthogonal projector onto a subspace.

    Returns the N x N matrix ``basis @ basis.T``; symmetric and idempotent
    to within 1e-10. The zero subspace yields the zero matrix.
    """
    return V.basis @ V.basis.T


def containment_gap(inner: Subspace, outer: Subspace) -> float:
    """Largest principal angle from ``inner`` into ``outer``, in radians.

    Zero (up to rounding) exactly when ``inner`` is contained in ``outer``.
    When ``inner.dim > outer.dim`` containment is impossible and pi/2 is
    returned.
    """
    _check_same_ambient(inner, outer)
    if inner.dim == 0:
        return 0.0
    if inner.dim > outer.dim:
        return float(np.pi / 2.0)
    return float(np.max(principal_angles(inner, outer)))


def _check_same_ambient(V: Subspace, U: Subspace) -> None:
    if V.ambient_dim != U.ambient_dim:
        raise DimensionMismatchError(
            f"subspaces live in different ambient spaces "
            f"(R^{V.ambient_dim} vs R^{U.ambient_dim}); embed first"
        )
