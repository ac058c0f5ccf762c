"""Command-line interface.

Subcommands: ``distance`` and ``angles`` compare the window behaviors of two
trajectory files; ``invariants`` reads a kernel file and sweeps the window
dimension over horizons; ``mpum`` checks candidate models against the data's
behavior; ``anomaly`` runs the sliding-window fault experiment and writes
its CSVs.

Exit codes: 0 success, 2 usage error, 3 data error, 4 precondition
violation (a falsified candidate). The environment variable
``BEHAVIOR_METRICS_SEED`` fixes the seed of any randomized test-data
generation; the shipped test suite honors it, the CLI itself is
deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .anomaly import AnomalyConfig, run_detection, steady_state_summary, write_outputs
from .behaviors import behavior_from_data, behavior_from_kernel, embed_zero_pad, integer_invariants
from .exceptions import BehaviorMetricsError, ConfigError, FalsifiedCandidateError, InvalidInputError
from .io import read_kernel_file, read_trajectory_csv, write_text_atomic
from .linalg import containment_gap, principal_angles
from .metrics import MetricKind, distance, l_gap, premetric
from .modeling import CONTAINMENT_TOL, mpum_restricted, verify_mpum_optimality

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_PRECONDITION = 4

_METRIC_CHOICES = ("chordal", "grassmann", "procrustes", "lgap")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _fmt_angles(angles) -> str:
    if angles.size == 0:
        return "(none)"
    return " ".join(_fmt(a) for a in angles)


def _rank_tol(text: str):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'auto', got {text!r}") from None


def _warn_if_underspanned(label, behavior, trajectories) -> None:
    # dim equal to the Hankel column count means the data bounds the span,
    # so the true behavior may be larger than what was identified
    cols = sum(
        w.shape[0] - behavior.L + 1 for w in trajectories if w.shape[0] >= behavior.L
    )
    if behavior.dim == cols:
        print(
            f"warning: {label}: achieved dimension {behavior.dim} equals the window "
            f"count; the data may under-span the true behavior",
            file=sys.stderr,
        )


def _load_behavior_pair(args):
    wa = read_trajectory_csv(args.file_a)
    wb = read_trajectory_csv(args.file_b)
    ba = behavior_from_data(wa, args.horizon, args.tol)
    bb = behavior_from_data(wb, args.horizon, args.tol)
    _warn_if_underspanned(args.file_a, ba, [wa])
    _warn_if_underspanned(args.file_b, bb, [wb])
    va, vb = ba.subspace, bb.subspace
    if va.ambient_dim != vb.ambient_dim:
        target = max(va.ambient_dim, vb.ambient_dim)
        print(
            f"note: ambient dimensions differ ({va.ambient_dim} vs {vb.ambient_dim}); "
            f"zero-padding the smaller into R^{target}"
        )
        va = embed_zero_pad(va, target)
        vb = embed_zero_pad(vb, target)
    return ba, bb, va, vb


def cmd_distance(args) -> int:
    ba, bb, va, vb = _load_behavior_pair(args)
    print(f"behavior A: dim {va.dim} in R^{va.ambient_dim} (q={ba.q}, L={ba.L})")
    print(f"behavior B: dim {vb.dim} in R^{vb.ambient_dim} (q={bb.q}, L={bb.L})")
    angles = principal_angles(va, vb)
    print(f"principal angles (rad): {_fmt_angles(angles)}")
    if args.metric == "lgap":
        value = l_gap(va, vb)
        if va.dim != vb.dim:
            print("l-gap saturates: subspace dimensions differ")
        print(f"distance: {_fmt(value)}")
        return EXIT_OK
    kind = MetricKind(args.metric)
    pre = premetric(kind, va, vb)
    penalty = kind.penalty_weight**2 * abs(va.dim - vb.dim)
    print(f"premetric: {_fmt(pre)}")
    print(f"dimension penalty: {_fmt(penalty)}")
    print(f"distance: {_fmt(distance(kind, va, vb))}")
    return EXIT_OK


def cmd_angles(args) -> int:
    _, _, va, vb = _load_behavior_pair(args)
    print(_fmt_angles(principal_angles(va, vb)))
    return EXIT_OK


def cmd_invariants(args) -> int:
    rep = read_kernel_file(args.kernel_file)
    inv = integer_invariants(rep)
    print(f"num_inputs m = {inv.num_inputs}, lag = {inv.lag}, order n = {inv.order}")
    max_horizon = args.max_horizon if args.max_horizon is not None else inv.lag + 5
    if max_horizon < 1:
        raise InvalidInputError("--max-horizon must be at least 1")
    print(f"{'L':>4}  {'dim':>5}  formula")
    for L in range(1, max_horizon + 1):
        dim = behavior_from_kernel(rep, L).dim
        if L >= inv.lag:
            note = f"m*L + n = {inv.num_inputs * L + inv.order}"
        else:
            note = "(below lag)"
        print(f"{L:>4}  {dim:>5}  {note}")
    return EXIT_OK


def _load_candidates(directory: Path, q: int, horizon: int, tol):
    files = sorted(p for p in directory.iterdir() if p.is_file())
    if not files:
        raise InvalidInputError(f"no candidate files in {directory}")
    behaviors, labels = [], []
    for path in files:
        if path.suffix.lower() == ".csv":
            beh = behavior_from_data(read_trajectory_csv(path), horizon, tol)
        else:
            beh = behavior_from_kernel(read_kernel_file(path), horizon)
        if beh.q != q:
            raise InvalidInputError(
                f"candidate {path.name} has q = {beh.q}, data has q = {q}"
            )
        behaviors.append(beh)
        labels.append(path.name)
    return behaviors, labels


def cmd_mpum(args) -> int:
    trajectories = [read_trajectory_csv(p) for p in args.data_files]
    reference = mpum_restricted(trajectories, args.horizon, args.tol)
    _warn_if_underspanned("data", reference, trajectories)
    candidates, labels = _load_candidates(
        Path(args.candidates), reference.q, args.horizon, args.tol
    )
    falsified = []
    for i, cand in enumerate(candidates):
        gap = containment_gap(reference.subspace, cand.subspace)
        if gap > CONTAINMENT_TOL:
            falsified.append((i, labels[i], gap))
    if falsified:
        print("falsified candidates (containment violation, rad):")
        for i, label, gap in falsified:
            print(f"  {i}: {label}  max principal angle {gap:.3e}")
        return EXIT_PRECONDITION
    report = verify_mpum_optimality(
        trajectories, candidates, args.metric, args.horizon, args.tol, labels=labels
    )
    print(report.to_text())
    write_text_atomic(args.report, report.to_csv())
    print(f"report written to {args.report}")
    return EXIT_OK


def cmd_anomaly(args) -> int:
    if args.config is not None:
        try:
            with open(args.config) as handle:
                mapping = json.load(handle)
        except OSError as exc:
            raise InvalidInputError(f"cannot read {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: invalid JSON: {exc}") from exc
        if not isinstance(mapping, dict):
            raise ConfigError(f"{args.config}: expected a JSON object")
        cfg = AnomalyConfig.from_mapping(mapping)
    else:
        cfg = AnomalyConfig()
    series = run_detection(cfg)
    paths = write_outputs(cfg, series, args.outdir)
    summary = steady_state_summary(series)
    parts = []
    for regime in ("normal", "fault1", "fault2"):
        if regime in summary:
            parts.append(f"{regime}={_fmt(summary[regime]['mean_chordal'])}")
    gap_parts = []
    for regime in ("normal", "fault1", "fault2"):
        if regime in summary:
            gap_parts.append(f"{regime}={_fmt(summary[regime]['mean_l_gap'])}")
    print("steady-state mean chordal: " + ", ".join(parts))
    print("steady-state mean l-gap: " + ", ".join(gap_parts))
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="behavior-metrics",
        description="Subspace distances between finite-horizon linear behaviors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pair_args(p):
        p.add_argument("file_a", help="trajectory CSV for behavior A")
        p.add_argument("file_b", help="trajectory CSV for behavior B")
        p.add_argument("--horizon", "-L", type=int, required=True, help="window length L")
        p.add_argument("--tol", type=_rank_tol, default="auto",
                       help="relative rank tolerance or 'auto' (default)")

    p_dist = sub.add_parser("distance", help="distance between two data behaviors")
    add_pair_args(p_dist)
    p_dist.add_argument("--metric", choices=_METRIC_CHOICES, default="chordal")
    p_dist.set_defaults(func=cmd_distance)

    p_ang = sub.add_parser("angles", help="principal angles between two data behaviors")
    add_pair_args(p_ang)
    p_ang.set_defaults(func=cmd_angles)

    p_inv = sub.add_parser("invariants", help="structure indices of a kernel file")
    p_inv.add_argument("kernel_file", help="kernel coefficient file")
    p_inv.add_argument("--max-horizon", type=int, default=None,
                       help="sweep window dimension up to this horizon (default lag + 5)")
    p_inv.set_defaults(func=cmd_invariants)

    p_mpum = sub.add_parser("mpum", help="check candidate models against the data")
    p_mpum.add_argument("data_files", nargs="+", help="trajectory CSV files")
    p_mpum.add_argument("--horizon", "-L", type=int, required=True)
    p_mpum.add_argument("--candidates", required=True,
                        help="directory of candidate files (.csv trajectory or kernel)")
    p_mpum.add_argument("--metric", choices=("chordal", "grassmann", "procrustes"),
                        default="chordal")
    p_mpum.add_argument("--tol", type=_rank_tol, default="auto")
    p_mpum.add_argument("--report", default="mpum_report.csv",
                        help="path of the CSV report (default mpum_report.csv)")
    p_mpum.set_defaults(func=cmd_mpum)

    p_anom = sub.add_parser("anomaly", help="run the harmonic fault experiment")
    p_anom.add_argument("--config", default=None, help="JSON config file (default: built-ins)")
    p_anom.add_argument("--outdir", default=".", help="output directory (default: cwd)")
    p_anom.set_defaults(func=cmd_anomaly)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except FalsifiedCandidateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BehaviorMetricsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
