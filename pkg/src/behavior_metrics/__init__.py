"""Distances between finite-horizon linear behaviors.

Finite windows of linear system trajectories span subspaces, and this
package compares them with principal-angle metrics that stay meaningful
when the dimensions differ. It also builds behaviors from raw data, kernel
representations, or state-space models, scores candidate models against
data as a minimum-distance problem, and ships a sliding-window anomaly
detection experiment plus scikit-learn style estimator wrappers.
"""

from .anomaly import (
    AnomalyConfig,
    DistanceSeries,
    Regime,
    generate_signal,
    nominal_behavior,
    run_detection,
    steady_state_summary,
)
from .behaviors import (
    FiniteHorizonBehavior,
    IntegerInvariants,
    KernelRep,
    StateSpaceModel,
    behavior_from_data,
    behavior_from_kernel,
    behavior_from_state_space,
    complexity,
    embed_zero_pad,
    hankel,
    integer_invariants,
    restrict,
    simulate,
)
from .estimators import BehaviorBasis, SubspaceAnomalyDetector
from .exceptions import (
    BehaviorMetricsError,
    ConfigError,
    DimensionMismatchError,
    FalsifiedCandidateError,
    InsufficientDataError,
    InvalidInputError,
)
from .linalg import (
    Subspace,
    containment_gap,
    nullspace_basis,
    numerical_rank,
    orthonormal_basis,
    principal_angles,
    projector,
)
from .metrics import MetricKind, distance, l_gap, premetric
from .modeling import (
    OptimalityReport,
    misfit,
    mpum_restricted,
    projection_misfit,
    utility,
    verify_mpum_optimality,
)

__version__ = "0.1.0"

__all__ = [
    "AnomalyConfig",
    "BehaviorBasis",
    "BehaviorMetricsError",
    "ConfigError",
    "DimensionMismatchError",
    "DistanceSeries",
    "FalsifiedCandidateError",
    "FiniteHorizonBehavior",
    "InsufficientDataError",
    "IntegerInvariants",
    "InvalidInputError",
    "KernelRep",
    "MetricKind",
    "OptimalityReport",
    "Regime",
    "StateSpaceModel",
    "Subspace",
    "SubspaceAnomalyDetector",
    "behavior_from_data",
    "behavior_from_kernel",
    "behavior_from_state_space",
    "complexity",
    "containment_gap",
    "distance",
    "embed_zero_pad",
    "generate_signal",
    "hankel",
    "integer_invariants",
    "l_gap",
    "misfit",
    "mpum_restricted",
    "nominal_behavior",
    "nullspace_basis",
    "numerical_rank",
    "orthonormal_basis",
    "premetric",
    "principal_angles",
    "projection_misfit",
    "projector",
    "restrict",
    "run_detection",
    "simulate",
    "steady_state_summary",
    "utility",
    "verify_mpum_optimality",
]
