"""Distances between subspaces of possibly different dimension.

Three principal-angle metrics are provided. Each combines a premetric on the
shared principal angles with a penalty on the dimension gap,

    distance(V, U) = sqrt(premetric(V, U)**2 + w**2 * |dim V - dim U|),

where the weight ``w`` is 1 for the chordal and Procrustes metrics and pi/2
for the Grassmann metric. The max-angle gap distance ``l_gap`` is included
as a baseline; it saturates at 1 whenever the dimensions differ.
"""

from __future__ import annotations

from enum import Enum
from typing import Union

import numpy as np

from .exceptions import InvalidInputError
from .linalg import Subspace, _check_same_ambient, principal_angles

__all__ = ["MetricKind", "as_metric_kind", "premetric", "distance", "l_gap"]


class MetricKind(str, Enum):
    """The three principal-angle metrics."""

    CHORDAL = "chordal"
    GRASSMANN = "grassmann"
    PROCRUSTES = "procrustes"

    @property
    def penalty_weight(self) -> float:
        """Weight w applied as w**2 per unit of dimension mismatch."""
        return _PENALTY_WEIGHT[self]


_PENALTY_WEIGHT = {
    MetricKind.CHORDAL: 1.0,
    MetricKind.GRASSMANN: np.pi / 2.0,
    MetricKind.PROCRUSTES: 1.0,
}

MetricLike = Union[MetricKind, str]


def as_metric_kind(kind: MetricLike) -> MetricKind:
    """Coerce a string such as "chordal" to a :class:`MetricKind`."""
    if isinstance(kind, MetricKind):
        return kind
    try:
        return MetricKind(str(kind).lower())
    except ValueError:
        valid = ", ".join(k.value for k in MetricKind)
        raise InvalidInputError(f"unknown metric {kind!r}; expected one of: {valid}") from None


def premetric(kind: MetricLike, V: Subspace, U: Subspace) -> float:
    """Principal-angle part of a subspace distance.

    Chordal: l2 norm of the sines of the principal angles. Grassmann: l2
    norm of the angles themselves. Procrustes: sqrt(2 * sum sin(theta/2)**2).
    Returns 0 when either subspace has dimension zero.
    """
    return _premetric_from_angles(as_metric_kind(kind), principal_angles(V, U))


def distance(kind: MetricLike, V: Subspace, U: Subspace) -> float:
    """Distance between subspaces, including the dimension-gap penalty.

    Satisfies all metric axioms for subspaces of arbitrary (possibly
    different) dimension within a common ambient space. Use
    :func:`behavior_metrics.behaviors.embed_zero_pad` first when the ambient
    dimensions differ.
    """
    kind = as_metric_kind(kind)
    angles = principal_angles(V, U)
    delta = _premetric_from_angles(kind, angles)
    gap = abs(V.dim - U.dim)
    return float(np.sqrt(delta**2 + kind.penalty_weight**2 * gap))


def l_gap(V: Subspace, U: Subspace) -> float:
    """Max-angle gap distance, in [0, 1].

    Exactly 1 when the dimensions differ; otherwise the sine of the largest
    principal angle, which equals the spectral-norm distance between the
    orthogonal projectors.
    """
    _check_same_ambient(V, U)
    if V.dim != U.dim:
        return 1.0
    angles = principal_angles(V, U)
    if angles.size == 0:
        return 0.0
    return float(np.sin(angles[-1]))


def _premetric_from_angles(kind: MetricKind, angles: np.ndarray) -> float:
    if angles.size == 0:
        return 0.0
    if kind is MetricKind.CHORDAL:
        return float(np.linalg.norm(np.sin(angles)))
    if kind is MetricKind.GRASSMANN:
        return float(np.linalg.norm(angles))
    return float(np.sqrt(2.0 * np.sum(np.sin(angles / 2.0) ** 2)))
