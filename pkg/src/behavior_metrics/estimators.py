"""scikit-learn compatible estimators wrapping the core algorithms.

Two pieces of this library are naturally fit-shaped and are exposed as
estimators so they compose with pipelines, grid search, and the rest of the
scikit-learn ecosystem: learning a window behavior from trajectory data
(a transformer projecting windows onto the learned basis) and scoring a
signal against a nominal behavior (an anomaly scorer). Both delegate to the
functional API; parameters are stored verbatim in ``__init__`` and resolved
in ``fit``, per the scikit-learn contract.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .behaviors import behavior_from_data, hankel
from .exceptions import InvalidInputError
from .linalg import orthonormal_basis
from .metrics import as_metric_kind, distance, l_gap
from .validation import check_trajectory

__all__ = ["BehaviorBasis", "SubspaceAnomalyDetector"]


class BehaviorBasis(BaseEstimator, TransformerMixin):
    """Learn the subspace spanned by length-``horizon`` windows of the data.

    Parameters
    ----------
    horizon : int, default=10
        Window length L; learned vectors live in R^(q*L).
    rank_tol : float or "auto", default="auto"
        Relative rank threshold used when orthonormalizing the window span.

    Attributes
    ----------
    behavior_ : FiniteHorizonBehavior
        The learned behavior.
    dim_ : int
        Dimension of the learned subspace.
    n_features_in_ : int
        Variables per sample of the training trajectories.
    """

    def __init__(self, horizon=10, rank_tol="auto"):
        self.horizon = horizon
        self.rank_tol = rank_tol

    def fit(self, X, y=None):
        """Fit from one trajectory (length, q) or a list of trajectories."""
        self.behavior_ = behavior_from_data(X, self.horizon, self.rank_tol)
        self.dim_ = self.behavior_.dim
        self.n_features_in_ = self.behavior_.q
        return self

    def transform(self, X):
        """Coordinates of each window of ``X`` in the learned basis.

        Returns an array of shape (length - horizon + 1, dim_).
        """
        check_is_fitted(self, "behavior_")
        H = self._window_matrix(X)
        return (self.behavior_.subspace.basis.T @ H).T

    def inverse_transform(self, Z):
        """Stacked windows reconstructed from basis coordinates."""
        check_is_fitted(self, "behavior_")
        Z = np.asarray(Z, dtype=float)
        if Z.ndim != 2 or Z.shape[1] != self.dim_:
            raise InvalidInputError(f"expected coordinates of width {self.dim_}")
        return (self.behavior_.subspace.basis @ Z.T).T

    def score_samples(self, X):
        """Negative projection residual norm per window (higher is better)."""
        check_is_fitted(self, "behavior_")
        H = self._window_matrix(X)
        basis = self.behavior_.subspace.basis
        residual = H - basis @ (basis.T @ H)
        return -np.linalg.norm(residual, axis=0)

    def _window_matrix(self, X):
        w = check_trajectory(X)
        if w.shape[1] != self.n_features_in_:
            raise InvalidInputError(
                f"trajectory has {w.shape[1]} variables, expected {self.n_features_in_}"
            )
        return hankel(w, self.behavior_.L)


class SubspaceAnomalyDetector(BaseEstimator):
    """Score a signal by subspace distance of trailing windows to nominal.

    ``fit`` learns the nominal behavior from a clean reference signal; then
    ``score_samples`` slides a (window_rows x window_cols) Hankel window
    over a test signal and returns, per time step, the distance between the
    window's column space and the nominal behavior. Entries before the
    first full window are NaN. No thresholding is applied; the scores are
    raw distances.

    Parameters
    ----------
    window_rows : int, default=10
        Depth of the sliding Hankel window.
    window_cols : int, default=16
        Number of shifted segments per window.
    metric : str, default="chordal"
        "chordal", "grassmann", "procrustes", or "lgap".
    rank_tol : float or "auto", default=1e-8
        Relative rank threshold for the window column spaces.

    Attributes
    ----------
    nominal_ : FiniteHorizonBehavior
        Behavior learned from the reference signal.
    """

    def __init__(self, window_rows=10, window_cols=16, metric="chordal", rank_tol=1e-8):
        self.window_rows = window_rows
        self.window_cols = window_cols
        self.metric = metric
        self.rank_tol = rank_tol

    def fit(self, X, y=None):
        """Learn the nominal behavior from a clean signal (length, q)."""
        if self.metric != "lgap":
            as_metric_kind(self.metric)  # fail early on unknown metric names
        self.nominal_ = behavior_from_data(X, self.window_rows, self.rank_tol)
        return self

    def score_samples(self, X):
        """Distance of each trailing window of ``X`` to the nominal behavior."""
        check_is_fitted(self, "nominal_")
        w = check_trajectory(X)
        if w.shape[1] != self.nominal_.q:
            raise InvalidInputError(
                f"signal has {w.shape[1]} variables, expected {self.nominal_.q}"
            )
        warmup = self.window_rows + self.window_cols - 1
        nominal = self.nominal_.subspace
        scores = np.full(w.shape[0], np.nan)
        for k in range(warmup - 1, w.shape[0]):
            H = hankel(w[k - warmup + 1 : k + 1], self.window_rows)
            sub = orthonormal_basis(H, self.rank_tol)
            if self.metric == "lgap":
                scores[k] = l_gap(sub, nominal)
            else:
                scores[k] = distance(self.metric, sub, nominal)
        return scores

    def window_ranks(self, X):
        """Numerical rank of each trailing window (NaN-free; -1 in warm-up)."""
        check_is_fitted(self, "nominal_")
        w = check_trajectory(X)
        warmup = self.window_rows + self.window_cols - 1
        ranks = np.full(w.shape[0], -1, dtype=int)
        for k in range(warmup - 1, w.shape[0]):
            H = hankel(w[k - warmup + 1 : k + 1], self.window_rows)
            ranks[k] = orthonormal_basis(H, self.rank_tol).dim
        return ranks
