"""Acceptance suite: one test per criterion, each at its stated tolerance.

Each test prints a single pass/fail line (collected into the terminal
summary by conftest). Random data derives from the BEHAVIOR_METRICS_SEED
environment variable.
"""

import functools
import time

import numpy as np
import pytest

from behavior_metrics import (
    AnomalyConfig,
    FiniteHorizonBehavior,
    MetricKind,
    Regime,
    Subspace,
    behavior_from_data,
    behavior_from_state_space,
    distance,
    mpum_restricted,
    orthonormal_basis,
    premetric,
    principal_angles,
    projector,
    run_detection,
    utility,
    verify_mpum_optimality,
)
from behavior_metrics.cli import EXIT_OK, main

from conftest import record_acceptance
from helpers import (
    excited_trajectory,
    make_rng,
    observability_lag,
    random_marginal_model,
    random_orthogonal,
    random_permutation_matrix,
    random_subspace,
    well_conditioned_invertible,
)

ALL_KINDS = list(MetricKind)


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                record_acceptance(f"criterion {number:2d} FAIL: {title}")
                raise
            record_acceptance(f"criterion {number:2d} PASS: {title}")

        return inner

    return wrap


def rebased(rng, sub):
    if sub.dim == 0:
        return sub
    return Subspace(sub.basis @ random_orthogonal(rng, sub.dim))


@criterion(1, "metric axioms on 500 random subspace triples in under 10 s")
def test_metric_axioms():
    rng = make_rng(1001)
    start = time.perf_counter()
    for trial in range(500):
        n = int(rng.integers(2, 31))
        v = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        u = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        w = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        if trial % 10 == 0:
            u = rebased(rng, v)  # exercise the zero-distance direction
        pv, pu, pw = projector(v), projector(u), projector(w)
        gaps = {
            ("v", "u"): np.max(np.abs(pv - pu)),
            ("v", "w"): np.max(np.abs(pv - pw)),
            ("u", "w"): np.max(np.abs(pu - pw)),
        }
        for kind in ALL_KINDS:
            dvu = distance(kind, v, u)
            dvw = distance(kind, v, w)
            duw = distance(kind, u, w)
            assert dvu >= 0.0 and dvw >= 0.0 and duw >= 0.0
            assert abs(dvu - distance(kind, u, v)) <= 1e-10
            assert dvu <= dvw + duw + 1e-9
            assert dvw <= dvu + duw + 1e-9
            assert duw <= dvu + dvw + 1e-9
            for (d, gap) in ((dvu, gaps[("v", "u")]), (dvw, gaps[("v", "w")]),
                             (duw, gaps[("u", "w")])):
                assert (d <= 1e-8) == (gap <= 1e-7)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"metric axiom sweep took {elapsed:.1f} s"


@criterion(2, "distance**2 = premetric**2 + penalty on 1000 random pairs (1e-10)")
def test_decomposition_identity():
    rng = make_rng(1002)
    for _ in range(1000):
        n = int(rng.integers(2, 25))
        v = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        u = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        for kind in ALL_KINDS:
            residual = (
                distance(kind, v, u) ** 2
                - premetric(kind, v, u) ** 2
                - kind.penalty_weight**2 * abs(v.dim - u.dim)
            )
            assert abs(residual) <= 1e-10


@criterion(3, "coordinate-change, rotation, permutation invariance on 200 pairs (1e-8)")
def test_invariances():
    rng = make_rng(1003)
    for _ in range(200):
        n = int(rng.integers(2, 25))
        ka = int(rng.integers(1, n + 1))
        kb = int(rng.integers(1, n + 1))
        ha = rng.standard_normal((n, ka))
        hb = rng.standard_normal((n, kb))
        va = orthonormal_basis(ha)
        vb = orthonormal_basis(hb)
        pa = well_conditioned_invertible(rng, ka)
        pb = well_conditioned_invertible(rng, kb)
        va_cc = orthonormal_basis(ha @ pa)
        vb_cc = orthonormal_basis(hb @ pb)
        q = random_orthogonal(rng, n)
        perm = random_permutation_matrix(rng, n)
        for kind in ALL_KINDS:
            base = distance(kind, va, vb)
            assert abs(base - distance(kind, va_cc, vb_cc)) <= 1e-8
            assert abs(base - distance(kind, Subspace(q @ va.basis),
                                       Subspace(q @ vb.basis))) <= 1e-8
            assert abs(base - distance(kind, Subspace(perm @ va.basis),
                                       Subspace(perm @ vb.basis))) <= 1e-8


@criterion(4, "window dimension m*L + n for 50 random models, both constructions, exact")
def test_dimension_formula():
    rng = make_rng(1004)
    for _ in range(50):
        n = int(rng.integers(0, 5))
        m = int(rng.integers(0, 3))
        p = int(rng.integers(1, 5 - m))
        model = random_marginal_model(rng, n, m, p)
        lag = max(observability_lag(model), 1)
        for L in range(lag, lag + 6):
            expected = m * L + n
            from_model = behavior_from_state_space(model, L)
            assert from_model.dim == expected
            length = (m + 1) * (L + n) + 10
            w = excited_trajectory(rng, model, length)
            from_data = behavior_from_data(w, L)
            assert from_data.dim == expected


@criterion(5, "orthogonal lines stay at chordal distance 1 while matrix norms shrink")
def test_matrix_norm_limitation():
    for eps in (1e-6, 1e-3, 1.0):
        rep_a = eps * np.array([[1.0], [0.0]])  # eps * I_{2x1}
        rep_b = np.array([[0.0], [eps]])
        d = distance("chordal", orthonormal_basis(rep_a), orthonormal_basis(rep_b))
        assert abs(d - 1.0) <= 1e-12
        frobenius = np.linalg.norm(rep_a - rep_b)
        assert frobenius == pytest.approx(np.sqrt(2.0) * eps, rel=1e-12)
        print(f"  eps={eps:g}: chordal distance {d:.12f}, matrix Frobenius {frobenius:.3e}")


@criterion(6, "utility + distance**2 = 0 on 100 random dataset/model pairs (1e-9)")
def test_utility_identity():
    rng = make_rng(1006)
    for _ in range(100):
        q = int(rng.integers(1, 3))
        L = int(rng.integers(2, 6))
        data = [
            rng.standard_normal((L + int(rng.integers(0, 10)), q))
            for _ in range(int(rng.integers(1, 3)))
        ]
        model = FiniteHorizonBehavior(
            random_subspace(rng, q * L, int(rng.integers(0, q * L + 1))), q, L
        )
        reference = mpum_restricted(data, L)
        for kind in ALL_KINDS:
            mu = utility(data, model, kind, L)
            d = distance(kind, reference.subspace, model.subspace)
            assert abs(mu + d * d) <= 1e-9


@criterion(7, "data's behavior attains max utility; zero-distance ties share its projector")
def test_mpum_optimality():
    rng = make_rng(1007)
    for trial in range(10):
        q = int(rng.integers(1, 3))
        L = int(rng.integers(4, 8))
        data = [rng.standard_normal((L + 3, q)) for _ in range(2)]
        reference = mpum_restricted(data, L)
        ambient = q * L
        extra = int(rng.integers(1, max(2, ambient - reference.dim)))
        grown = orthonormal_basis(
            np.hstack([reference.subspace.basis, rng.standard_normal((ambient, extra))])
        )
        candidates = [
            reference,
            FiniteHorizonBehavior(grown, q, L),
            FiniteHorizonBehavior(rebased(rng, reference.subspace), q, L),
        ]
        for kind in ALL_KINDS:
            report = verify_mpum_optimality(data, candidates, kind, L)
            assert report.reference_attains_max_utility
            assert report.candidates[0].optimal
            assert report.candidates[2].optimal
            if candidates[1].dim > reference.dim:
                assert not report.candidates[1].optimal
            assert report.optimizer_sets_match
            assert report.max_projector_gap_at_zero_distance <= 1e-7


@criterion(8, "fault experiment steady states: ~0 / sqrt(2) / 2, gap saturation, under 5 s")
def test_anomaly_experiment():
    start = time.perf_counter()
    series = run_detection(AnomalyConfig())
    elapsed = time.perf_counter() - start
    normal = [i for i, lab in enumerate(series.labels) if lab is Regime.NORMAL]
    fault1 = [i for i, lab in enumerate(series.labels) if lab is Regime.FAULT1]
    fault2 = [i for i, lab in enumerate(series.labels) if lab is Regime.FAULT2]
    assert normal and fault1 and fault2
    assert np.max(series.chordal[normal]) <= 1e-6
    assert np.max(series.l_gap[normal]) <= 1e-6
    assert np.max(np.abs(series.chordal[fault1] - np.sqrt(2.0))) <= 1e-3
    assert np.max(np.abs(series.chordal[fault2] - 2.0)) <= 1e-3
    assert np.all(series.l_gap[fault1] == 1.0)
    assert np.all(series.l_gap[fault2] == 1.0)
    means = [float(np.mean(series.chordal[idx])) for idx in (normal, fault1, fault2)]
    assert means[0] < means[1] < means[2]
    assert elapsed < 5.0, f"detection run took {elapsed:.1f} s"


@criterion(9, "principal angles match the projector-difference oracle (1e-7, 100 pairs)")
def test_principal_angle_oracle():
    rng = make_rng(1009)
    for _ in range(100):
        n = int(rng.integers(2, 25))
        k = int(rng.integers(1, n + 1))
        v = random_subspace(rng, n, k)
        u = random_subspace(rng, n, k)
        produced = principal_angles(v, u)
        # Oracle: the singular values of P_V - P_U are the sines of the
        # nonzero principal angles, each appearing twice.
        sines_paired = np.linalg.svd(projector(v) - projector(u), compute_uv=False)
        sines = sines_paired[0::2]
        if sines.size < k:
            sines = np.concatenate([sines, np.zeros(k - sines.size)])
        oracle = np.sort(np.arcsin(np.clip(sines[:k], 0.0, 1.0)))
        assert np.max(np.abs(produced - oracle)) <= 1e-7


@criterion(10, "two anomaly CLI runs with one config produce byte-identical CSVs")
def test_cli_determinism(tmp_path):
    dir_a = tmp_path / "run_a"
    dir_b = tmp_path / "run_b"
    assert main(["anomaly", "--outdir", str(dir_a)]) == EXIT_OK
    assert main(["anomaly", "--outdir", str(dir_b)]) == EXIT_OK
    names = ["output_signal.csv", "distance_chordal.csv", "distance_gap.csv",
             "distance_detail.csv"]
    for name in names:
        assert (dir_a / name).read_bytes() == (dir_b / name).read_bytes()
