"""Finite-horizon linear behaviors and their constructors.

A behavior restricted to a window of L samples is a subspace of R^(q*L),
where q is the number of variables per sample. The stacking convention used
everywhere is (w_1; w_2; ...; w_L) with each w_i a contiguous q-block,
matching the column layout of a depth-L Hankel matrix.

Behaviors can be built from raw trajectory data (the column space of a
Hankel matrix), from a kernel representation given by polynomial-matrix
coefficients (the null space of a block-banded matrix), or from a
state-space model (span of impulse and initial-state responses).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .exceptions import InsufficientDataError, InvalidInputError
from .linalg import Subspace, nullspace_basis, orthonormal_basis
from .validation import (
    RankTolerance,
    as_matrix,
    check_positive_int,
    check_trajectories,
    check_trajectory,
)

__all__ = [
    "FiniteHorizonBehavior",
    "KernelRep",
    "IntegerInvariants",
    "StateSpaceModel",
    "hankel",
    "behavior_from_data",
    "behavior_from_kernel",
    "behavior_from_state_space",
    "integer_invariants",
    "simulate",
    "complexity",
    "restrict",
    "embed_zero_pad",
]

# Entries at or below this magnitude count as structural zeros when reading
# off polynomial row degrees; degrees are combinatorial and must not be
# inflated by rounding noise.
STRUCTURAL_ZERO_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FiniteHorizonBehavior:
    """A linear behavior restricted to a window of ``L`` samples.

    Attributes
    ----------
    subspace : Subspace
        Subspace of R^(q*L) spanned by the stacked windows.
    q : int
        Variables per sample.
    L : int
        Window length (horizon).
    """

    subspace: Subspace
    q: int
    L: int

    def __post_init__(self):
        check_positive_int(self.q, "q")
        check_positive_int(self.L, "L")
        if self.q * self.L != self.subspace.ambient_dim:
            raise InvalidInputError(
                f"ambient dimension {self.subspace.ambient_dim} does not match "
                f"q*L = {self.q} * {self.L}"
            )

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def ambient_dim(self) -> int:
        return self.subspace.ambient_dim


@dataclass(frozen=True, eq=False)
class KernelRep:
    """Coefficients C_0..C_d of a polynomial matrix defining a kernel.

    The represented behavior is the set of trajectories w with
    ``sum_i C_i w_{t+i} = 0`` for every t. All coefficients share the shape
    (p, q) with p <= q, and the leading coefficient must not vanish (the
    degree is tight). The representation is trusted to be minimal (full row
    rank as a polynomial matrix); minimality is documented, not verified.
    """

    coeffs: tuple

    def __post_init__(self):
        raw = tuple(self.coeffs)
        if not raw:
            raise InvalidInputError("kernel representation needs at least one coefficient")
        mats = []
        shape = None
        for i, c in enumerate(raw):
            mat = as_matrix(c, f"coefficient {i}")
            if shape is None:
                shape = mat.shape
            elif mat.shape != shape:
                raise InvalidInputError(
                    f"coefficient {i} has shape {mat.shape}, expected {shape}"
                )
            mat = mat.copy()
            mat.setflags(write=False)
            mats.append(mat)
        p, q = shape
        if q < 1:
            raise InvalidInputError("kernel coefficients must have at least one column")
        if p > q:
            raise InvalidInputError(f"row count {p} exceeds variable count {q}")
        if np.max(np.abs(mats[-1])) <= STRUCTURAL_ZERO_TOL:
            raise InvalidInputError("leading coefficient is zero; drop it so the degree is tight")
        object.__setattr__(self, "coeffs", tuple(mats))

    @property
    def p(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def q(self) -> int:
        return self.coeffs[0].shape[1]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


class IntegerInvariants(NamedTuple):
    """Structure indices of a linear time-invariant behavior."""

    num_inputs: int
    lag: int
    order: int


@dataclass(frozen=True, eq=False)
class StateSpaceModel:
    """Discrete-time state-space model used as a trajectory generator.

    x_{t+1} = A x_t + B u_t,  y_t = C x_t + D u_t. The associated
    trajectories carry q = m + p variables per sample, stacked as
    (u_t; y_t). ``m = 0`` (autonomous) and ``n = 0`` (static) are allowed.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        B = np.atleast_2d(np.asarray(self.B, dtype=float))
        C = np.atleast_2d(np.asarray(self.C, dtype=float))
        D = np.atleast_2d(np.asarray(self.D, dtype=float))
        n = A.shape[0]
        if A.shape != (n, n):
            raise InvalidInputError(f"A must be square, got {A.shape}")
        if B.size == 0:
            B = B.reshape(n, B.shape[1] if B.shape[0] == n else 0)
        if B.shape[0] != n:
            raise InvalidInputError(f"B must have {n} rows, got {B.shape}")
        if C.size == 0:
            C = C.reshape(C.shape[0] if C.shape[1] == n else 0, n)
        if C.shape[1] != n:
            raise InvalidInputError(f"C must have {n} columns, got {C.shape}")
        m, p = B.shape[1], C.shape[0]
        if D.size == 0 and p * m == 0:
            D = D.reshape(p, m)
        if D.shape != (p, m):
            raise InvalidInputError(f"D must have shape ({p}, {m}), got {D.shape}")
        if m + p < 1:
            raise InvalidInputError("model must have at least one input or output")
        for name, mat in (("A", A), ("B", B), ("C", C), ("D", D)):
            if mat.size and not np.all(np.isfinite(mat)):
                raise InvalidInputError(f"{name} contains non-finite entries")
            mat.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", D)

    @property
    def order(self) -> int:
        return self.A.shape[0]

    @property
    def num_inputs(self) -> int:
        return self.B.shape[1]

    @property
    def num_outputs(self) -> int:
        return self.C.shape[0]

    @property
    def q(self) -> int:
        return self.num_inputs + self.num_outputs


def hankel(w, L: int) -> np.ndarray:
    """Depth-L Hankel matrix of a trajectory.

    Column j holds the stacked window (w_j; w_{j+1}; ...; w_{j+L-1}), so the
    result has shape (q*L, T - L + 1) for a length-T trajectory with q
    variables per sample.

    Raises
    ------
    InsufficientDataError
        If the trajectory is shorter than ``L``.
    """
    w = check_trajectory(w)
    L = check_positive_int(L, "L")
    T, q = w.shape
    if T < L:
        raise InsufficientDataError(f"trajectory of length {T} is shorter than the window {L}")
    cols = T - L + 1
    H = np.empty((q * L, cols))
    for j in range(cols):
        H[:, j] = w[j : j + L].reshape(-1)
    return H


def behavior_from_data(
    ws, L: int, tol: RankTolerance = "auto"
) -> FiniteHorizonBehavior:
    """Behavior spanned by every length-L window of the given trajectories.

    Hankel blocks of all trajectories long enough for the window are
    concatenated horizontally (a mosaic Hankel matrix) and the orthonormal
    column space is taken. Trajectories shorter than ``L`` are skipped; if
    none remains, InsufficientDataError is raised.

    No excitation check is performed: the achieved dimension is whatever
    the data supports, and judging sufficiency is left to the caller.
    """
    trajs, q = check_trajectories(ws)
    L = check_positive_int(L, "L")
    usable = [w for w in trajs if w.shape[0] >= L]
    if not usable:
        raise InsufficientDataError(
            f"no trajectory is long enough for a window of {L} samples"
        )
    blocks = [hankel(w, L) for w in usable]
    sub = orthonormal_basis(np.hstack(blocks), tol)
    return FiniteHorizonBehavior(sub, q, L)


def behavior_from_kernel(rep: KernelRep, L: int) -> FiniteHorizonBehavior:
    """Window restriction of the behavior annihilated by a kernel rep.

    For ``L > degree`` the restriction is the null space of the
    p*(L - degree) x q*L block-banded matrix whose block-row i places
    [C_0 C_1 ... C_d] starting at block-column i. For ``L <= degree`` no
    complete constraint row fits inside the window, so the restriction is
    all of R^(q*L).
    """
    if not isinstance(rep, KernelRep):
        raise InvalidInputError("rep must be a KernelRep")
    L = check_positive_int(L, "L")
    d, p, q = rep.degree, rep.p, rep.q
    if L <= d:
        return FiniteHorizonBehavior(Subspace(np.eye(q * L)), q, L)
    band = np.hstack(rep.coeffs)  # p x q*(d+1)
    T = np.zeros((p * (L - d), q * L))
    for i in range(L - d):
        T[i * p : (i + 1) * p, i * q : i * q + q * (d + 1)] = band
    return FiniteHorizonBehavior(nullspace_basis(T), q, L)


def integer_invariants(rep: KernelRep) -> IntegerInvariants:
    """Structure indices read off a minimal kernel representation.

    num_inputs is q - p, the lag is the largest row degree, and the order is
    the sum of the row degrees, where the degree of a row is the largest
    coefficient index carrying a non-structural-zero entry in that row.
    The caller asserts minimality (full row rank of the polynomial matrix);
    it is not verified here.

    Raises
    ------
    InvalidInputError
        If some row is zero in every coefficient (its degree is undefined).
    """
    if not isinstance(rep, KernelRep):
        raise InvalidInputError("rep must be a KernelRep")
    stacked = np.stack(rep.coeffs)  # (d+1, p, q)
    nonzero = np.any(np.abs(stacked) > STRUCTURAL_ZERO_TOL, axis=2)  # (d+1, p)
    row_degrees = []
    for i in range(rep.p):
        hits = np.nonzero(nonzero[:, i])[0]
        if hits.size == 0:
            raise InvalidInputError(f"row {i} is zero in every coefficient; degree undefined")
        row_degrees.append(int(hits[-1]))
    return IntegerInvariants(
        num_inputs=rep.q - rep.p,
        lag=max(row_degrees),
        order=sum(row_degrees),
    )


def simulate(
    model: StateSpaceModel,
    length: int,
    x0=None,
    inputs=None,
) -> np.ndarray:
    """Roll out a state-space model for ``length`` steps.

    Returns an array of shape (length, q) whose rows are the stacked
    samples (u_t, y_t). Missing ``x0`` or ``inputs`` default to zero.
    """
    length = check_positive_int(length, "length")
    n, m = model.order, model.num_inputs
    if x0 is None:
        x = np.zeros(n)
    else:
        x = np.asarray(x0, dtype=float).reshape(-1)
        if x.shape != (n,):
            raise InvalidInputError(f"x0 must have {n} entries, got {x.shape}")
    if inputs is None:
        U = np.zeros((length, m))
    else:
        U = np.asarray(inputs, dtype=float)
        if U.ndim == 1:
            U = U[:, np.newaxis]
        if U.shape != (length, m):
            raise InvalidInputError(f"inputs must have shape ({length}, {m}), got {U.shape}")
    out = np.empty((length, model.q))
    for t in range(length):
        u = U[t]
        out[t, :m] = u
        out[t, m:] = model.C @ x + model.D @ u
        x = model.A @ x + model.B @ u
    return out


def behavior_from_state_space(model: StateSpaceModel, L: int) -> FiniteHorizonBehavior:
    """Window restriction of the behavior generated by a state-space model.

    The span is generated deterministically: one zero-input response per
    canonical initial state, plus one response per canonical input impulse
    at each step and channel with zero initial state. Whenever ``L`` is at
    least the lag of the model, the dimension equals
    ``num_inputs * L + order``.
    """
    if not isinstance(model, StateSpaceModel):
        raise InvalidInputError("model must be a StateSpaceModel")
    L = check_positive_int(L, "L")
    n, m, q = model.order, model.num_inputs, model.q
    cols = []
    for j in range(n):
        x0 = np.zeros(n)
        x0[j] = 1.0
        cols.append(simulate(model, L, x0=x0).reshape(-1))
    for c in range(m):
        for step in range(L):
            U = np.zeros((L, m))
            U[step, c] = 1.0
            cols.append(simulate(model, L, inputs=U).reshape(-1))
    generators = np.column_stack(cols) if cols else np.zeros((q * L, 0))
    return FiniteHorizonBehavior(orthonormal_basis(generators, "auto"), q, L)


def complexity(behavior: FiniteHorizonBehavior) -> float:
    """Dimension of the behavior divided by q*L; a value in [0, 1]."""
    return behavior.dim / (behavior.q * behavior.L)


def restrict(behavior: FiniteHorizonBehavior, L_new: int) -> FiniteHorizonBehavior:
    """Restriction of a behavior to a shorter window.

    Keeps the first q*L_new coordinates of every basis vector and
    re-orthonormalizes, re-determining the dimension by numerical rank.
    """
    L_new = check_positive_int(L_new, "L_new")
    if L_new > behavior.L:
        raise InvalidInputError(f"cannot restrict horizon {behavior.L} to longer {L_new}")
    if L_new == behavior.L:
        return behavior
    truncated = behavior.subspace.basis[: behavior.q * L_new, :]
    return FiniteHorizonBehavior(orthonormal_basis(truncated, "auto"), behavior.q, L_new)


def embed_zero_pad(
    obj: Union[FiniteHorizonBehavior, Subspace], N_target: int
) -> Subspace:
    """Embed a subspace into a larger ambient space by zero padding.

    Basis vectors gain trailing zeros up to length ``N_target``; the
    dimension is unchanged, and principal angles against any co-padded
    subspace are preserved.
    """
    sub = obj.subspace if isinstance(obj, FiniteHorizonBehavior) else obj
    if not isinstance(sub, Subspace):
        raise InvalidInputError("expected a Subspace or FiniteHorizonBehavior")
    N_target = check_positive_int(N_target, "N_target")
    if N_target < sub.ambient_dim:
        raise InvalidInputError(
            f"target ambient dimension {N_target} is smaller than {sub.ambient_dim}"
        )
    if N_target == sub.ambient_dim:
        return sub
    pad = np.zeros((N_target - sub.ambient_dim, sub.dim))
    return Subspace(np.vstack([sub.basis, pad]))
