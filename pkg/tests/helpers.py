"""Shared random generators for the test suite.

The base seed comes from the BEHAVIOR_METRICS_SEED environment variable, so
test-data generation is reproducible by default and re-randomizable on
demand. Each test derives its own generator with a distinct offset, making
results independent of test execution order.
"""

import os

import numpy as np

from behavior_metrics import StateSpaceModel, Subspace, simulate

SEED = int(os.environ.get("BEHAVIOR_METRICS_SEED", "20250811"))


def make_rng(offset=0):
    return np.random.default_rng(SEED + offset)


def random_subspace(rng, N, k):
    if k == 0:
        return Subspace(np.zeros((N, 0)))
    q, _ = np.linalg.qr(rng.standard_normal((N, k)))
    return Subspace(q[:, :k])


def random_orthogonal(rng, N):
    q, r = np.linalg.qr(rng.standard_normal((N, N)))
    return q * np.sign(np.diag(r))


def random_permutation_matrix(rng, N):
    return np.eye(N)[rng.permutation(N)]


def well_conditioned_invertible(rng, n):
    """Invertible matrix with singular values in [0.5, 2]."""
    return (
        random_orthogonal(rng, n)
        @ np.diag(rng.uniform(0.5, 2.0, size=n))
        @ random_orthogonal(rng, n)
    )


def random_marginal_model(rng, n, m, p):
    """Random state-space model with an orthogonal state matrix.

    Marginal stability keeps trajectories O(1) over finite windows, so
    numerical ranks of the generated data are exact.
    """
    A = random_orthogonal(rng, n) if n else np.zeros((0, 0))
    return StateSpaceModel(
        A=A,
        B=rng.standard_normal((n, m)),
        C=rng.standard_normal((p, n)),
        D=rng.standard_normal((p, m)),
    )


def observability_lag(model, max_L=50):
    """Smallest L with full-rank stacked observability map; brute force."""
    n = model.order
    if n == 0:
        return 0
    rows = []
    power = np.eye(n)
    for L in range(1, max_L + 1):
        rows.append(model.C @ power)
        if np.linalg.matrix_rank(np.vstack(rows)) == n:
            return L
        power = model.A @ power
    raise AssertionError("model is not observable within the probed horizon")


def excited_trajectory(rng, model, length):
    """Simulated trajectory with random initial state and random inputs."""
    x0 = rng.standard_normal(model.order)
    inputs = None
    if model.num_inputs:
        inputs = rng.standard_normal((length, model.num_inputs))
    return simulate(model, length, x0=x0, inputs=inputs)


def sampled_sinusoid(freq_per_sample, length, amplitude=1.0, phase=0.0):
    t = np.arange(length)
    return amplitude * np.sin(2.0 * np.pi * freq_per_sample * t + phase)
