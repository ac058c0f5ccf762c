"""Model selection as a minimum-distance problem.

Given trajectory data, the smallest unfalsified behavior at horizon L is the
column space of the data's depth-L Hankel matrix (every time shift of the
data contributes exactly those columns). The misfit of a candidate model is
the squared premetric between that reference and the candidate, and the
utility subtracts an additional complexity-gap term so that utility always
equals minus the squared distance. Maximizing utility over any candidate
list is therefore the same problem as minimizing the distance to the
reference, and the reference itself is optimal among models that contain
the data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .behaviors import FiniteHorizonBehavior, behavior_from_data, complexity
from .exceptions import FalsifiedCandidateError, InvalidInputError
from .linalg import containment_gap, projector
from .metrics import MetricKind, MetricLike, as_metric_kind, distance, premetric
from .validation import RankTolerance, check_positive_int, check_trajectories, check_trajectory

__all__ = [
    "mpum_restricted",
    "misfit",
    "utility",
    "projection_misfit",
    "verify_mpum_optimality",
    "CandidateResult",
    "OptimalityReport",
    "CONTAINMENT_TOL",
]

# A candidate contains the data's behavior when every principal angle from
# the reference into the candidate stays below this bound.
CONTAINMENT_TOL = 1e-8

# Candidates whose objective value is within this tolerance of the best one
# are reported as optimal.
_VALUE_TOL = 1e-12

# Distance at or below this threshold counts as zero for the projector
# equality check.
_ZERO_DISTANCE_TOL = 1e-9


def mpum_restricted(
    trajectories, L: int, tol: RankTolerance = "auto"
) -> FiniteHorizonBehavior:
    """Smallest behavior at horizon ``L`` containing every window of the data.

    This is exactly :func:`behavior_from_data`: restricting the span of all
    time shifts of the data to ``L`` samples yields the column space of the
    depth-L mosaic Hankel matrix.
    """
    return behavior_from_data(trajectories, L, tol)


def misfit(
    trajectories,
    model: FiniteHorizonBehavior,
    kind: MetricLike,
    L: int,
    tol: RankTolerance = "auto",
) -> float:
    """Squared premetric between the data's behavior and a candidate model.

    Zero exactly when the model explains the data (the data's behavior is
    contained in the model's).
    """
    reference = _reference_for(trajectories, model, L, tol)
    return premetric(kind, reference.subspace, model.subspace) ** 2


def utility(
    trajectories,
    model: FiniteHorizonBehavior,
    kind: MetricLike,
    L: int,
    tol: RankTolerance = "auto",
) -> float:
    """Misfit plus complexity-gap penalty, negated; equals -distance**2.

    Returns ``-misfit - w**2 * q * L * |c(reference) - c(model)|`` where c
    is the complexity (dimension over q*L) and w the metric's penalty
    weight. Always non-positive.
    """
    kind = as_metric_kind(kind)
    reference = _reference_for(trajectories, model, L, tol)
    delta_sq = premetric(kind, reference.subspace, model.subspace) ** 2
    gap = abs(complexity(reference) - complexity(model))
    return -delta_sq - kind.penalty_weight**2 * model.q * L * gap


def projection_misfit(w, model: FiniteHorizonBehavior) -> float:
    """Euclidean distance from one stacked window to the model's subspace.

    The trajectory must have exactly ``model.L`` samples of ``model.q``
    variables. Orthogonal projection attains the infimum exactly for the
    Euclidean norm, so this is the norm of the projection residual.
    """
    w = check_trajectory(w)
    if w.shape != (model.L, model.q):
        raise InvalidInputError(
            f"trajectory has shape {w.shape}, expected ({model.L}, {model.q})"
        )
    x = w.reshape(-1)
    basis = model.subspace.basis
    return float(np.linalg.norm(x - basis @ (basis.T @ x)))


@dataclass(frozen=True)
class CandidateResult:
    """One row of an optimality report."""

    index: int
    label: str
    dim: int
    distance_sq: float
    utility: float
    optimal: bool


@dataclass(frozen=True)
class OptimalityReport:
    """Outcome of checking a candidate list against the data's behavior."""

    metric: MetricKind
    horizon: int
    reference_dim: int
    reference_complexity: float
    candidates: tuple
    utility_maximizers: tuple
    distance_minimizers: tuple
    optimizer_sets_match: bool
    reference_attains_max_utility: bool
    max_projector_gap_at_zero_distance: float

    def to_text(self) -> str:
        lines = [
            f"horizon L = {self.horizon}, metric = {self.metric.value}",
            f"reference behavior: dim {self.reference_dim}, "
            f"complexity {self.reference_complexity:.12g}",
            f"{'#':>3}  {'label':<24} {'dim':>4}  {'distance^2':>18}  {'utility':>18}  optimal",
        ]
        for c in self.candidates:
            lines.append(
                f"{c.index:>3}  {c.label:<24} {c.dim:>4}  {c.distance_sq:>18.12g}  "
                f"{c.utility:>18.12g}  {'yes' if c.optimal else 'no'}"
            )
        lines.append(
            "utility maximizers "
            + _fmt_indices(self.utility_maximizers)
            + " and squared-distance minimizers "
            + _fmt_indices(self.distance_minimizers)
            + (" coincide" if self.optimizer_sets_match else " DIFFER")
        )
        lines.append(
            "reference attains the maximum utility: "
            + ("yes" if self.reference_attains_max_utility else "NO")
        )
        if np.isfinite(self.max_projector_gap_at_zero_distance):
            lines.append(
                "max projector gap among zero-distance candidates: "
                f"{self.max_projector_gap_at_zero_distance:.3e}"
            )
        return "\n".join(lines)

    def to_csv(self) -> str:
        rows = ["index,distance_sq,utility,optimal"]
        for c in self.candidates:
            rows.append(f"{c.index},{c.distance_sq!r},{c.utility!r},{int(c.optimal)}")
        return "\n".join(rows) + "\n"


def verify_mpum_optimality(
    trajectories,
    candidates: Sequence[FiniteHorizonBehavior],
    kind: MetricLike,
    L: int,
    tol: RankTolerance = "auto",
    labels: Optional[Sequence[str]] = None,
) -> OptimalityReport:
    """Check a finite candidate list against the data's behavior.

    Every candidate must be unfalsified at horizon ``L``, meaning the data's
    behavior is contained in it (all principal angles from the reference
    into the candidate at most 1e-8); a falsified candidate raises
    FalsifiedCandidateError naming it. The report records, per candidate,
    the squared distance to the reference and the utility, flags the
    optimizers of both objectives, and verifies that (a) the reference
    attains the maximum utility, (b) utility maximizers and distance
    minimizers coincide, and (c) every zero-distance candidate has the same
    projector as the reference.
    """
    kind = as_metric_kind(kind)
    L = check_positive_int(L, "L")
    candidates = list(candidates)
    if not candidates:
        raise InvalidInputError("candidate list must be non-empty")
    if labels is None:
        labels = [f"candidate {i}" for i in range(len(candidates))]
    elif len(labels) != len(candidates):
        raise InvalidInputError("labels must match candidates one to one")

    trajs, q = check_trajectories(trajectories)
    reference = mpum_restricted(trajs, L, tol)
    for i, cand in enumerate(candidates):
        if not isinstance(cand, FiniteHorizonBehavior):
            raise InvalidInputError(f"candidate {i} is not a FiniteHorizonBehavior")
        if cand.q != q or cand.L != L:
            raise InvalidInputError(
                f"candidate {i} has (q, L) = ({cand.q}, {cand.L}), expected ({q}, {L})"
            )
        gap = containment_gap(reference.subspace, cand.subspace)
        if gap > CONTAINMENT_TOL:
            raise FalsifiedCandidateError(i, labels[i], gap)

    dist_sq = []
    utils = []
    for cand in candidates:
        d = distance(kind, reference.subspace, cand.subspace)
        dist_sq.append(d * d)
        utils.append(utility(trajs, cand, kind, L, tol))
    best_util = max(utils)
    best_dist = min(dist_sq)
    maximizers = tuple(i for i, u in enumerate(utils) if u >= best_util - _VALUE_TOL)
    minimizers = tuple(i for i, d in enumerate(dist_sq) if d <= best_dist + _VALUE_TOL)

    ref_proj = projector(reference.subspace)
    zero_gaps = [
        float(np.max(np.abs(projector(candidates[i].subspace) - ref_proj)))
        for i, d in enumerate(dist_sq)
        if d <= _ZERO_DISTANCE_TOL**2
    ]
    results = tuple(
        CandidateResult(
            index=i,
            label=labels[i],
            dim=candidates[i].dim,
            distance_sq=dist_sq[i],
            utility=utils[i],
            optimal=i in maximizers,
        )
        for i in range(len(candidates))
    )
    return OptimalityReport(
        metric=kind,
        horizon=L,
        reference_dim=reference.dim,
        reference_complexity=complexity(reference),
        candidates=results,
        utility_maximizers=maximizers,
        distance_minimizers=minimizers,
        optimizer_sets_match=maximizers == minimizers,
        reference_attains_max_utility=best_util <= _VALUE_TOL,
        max_projector_gap_at_zero_distance=(max(zero_gaps) if zero_gaps else float("nan")),
    )


def _reference_for(trajectories, model, L, tol) -> FiniteHorizonBehavior:
    if not isinstance(model, FiniteHorizonBehavior):
        raise InvalidInputError("model must be a FiniteHorizonBehavior")
    L = check_positive_int(L, "L")
    if model.L != L:
        raise InvalidInputError(f"model horizon {model.L} does not match L = {L}")
    trajs, q = check_trajectories(trajectories)
    if q != model.q:
        raise InvalidInputError(
            f"data has {q} variables per sample but the model has {model.q}"
        )
    return mpum_restricted(trajs, L, tol)


def _fmt_indices(indices) -> str:
    return "{" + ", ".join(str(i) for i in indices) + "}"
