"""Command-line interface: assignment stats, sensitivity probes, counting runs, sweeps."""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from .assignment import count_c4_instances, greedy_assign
from .estimators import EstimatorKind
from .experiments import (
    ExperimentConfig,
    METHODS,
    parse_edge_list,
    run_sweep,
)
from .graph import enumerate_triangles, exact_below_threshold_count
from .mechanisms import PrivacyBudget, RandomSource
from .protocol import Mechanism, communication_report, release_step1, run_baseline, run_two_step
from .sensitivity import (
    build_instance,
    global_sensitivity,
    smooth_sensitivity,
    smooth_sensitivity_bruteforce,
)


def _cmd_assign(args) -> int:
    graph = parse_edge_list(args.graph)
    triangles = enumerate_triangles(graph)
    assignment = greedy_assign(graph, triangles)
    print(f"triangles: {len(triangles)}")
    print(f"squared_load: {assignment.squared_load()}")
    print(f"c4_instances: {count_c4_instances(assignment)}")
    if args.stats:
        histogram = Counter(assignment.loads.values())
        print("load_histogram:")
        for load in sorted(histogram):
            print(f"  {load}: {histogram[load]}")
    return 0


def _cmd_sensitivity(args) -> int:
    graph = parse_edge_list(args.graph)
    if not (0 <= args.node < graph.node_count):
        print(f"node {args.node} out of range", file=sys.stderr)
        return 2
    kind = EstimatorKind(args.estimator)
    triangles = enumerate_triangles(graph)
    assignment = greedy_assign(graph, triangles)
    release, _ = release_step1(graph, args.eps1, RandomSource(args.seed))
    p = None if kind is EstimatorKind.BIASED else PrivacyBudget(args.eps1, 1.0).p
    inst = build_instance(
        graph, assignment, release.symmetric, args.node, args.lam, args.beta, kind, p=p
    )
    gs = global_sensitivity(args.node, assignment, graph, kind, p=p)
    fast = smooth_sensitivity(inst)
    print(f"assigned_triangles: {len(assignment.triangles_of(args.node))}")
    print(f"global_sensitivity: {gs:.12g}")
    print(f"smooth_sensitivity: {fast:.12g}")
    if args.oracle:
        oracle = smooth_sensitivity_bruteforce(inst)
        print(f"oracle: {oracle:.12g}")
    return 0


def _budget_from_args(args) -> PrivacyBudget:
    if args.eps1 is not None or args.eps2 is not None:
        if args.eps1 is None or args.eps2 is None:
            raise SystemExit("--eps1 and --eps2 must be given together")
        return PrivacyBudget(args.eps1, args.eps2, args.eps)
    return PrivacyBudget.even_split(args.eps)


def _cmd_count(args) -> int:
    graph = parse_edge_list(args.graph)
    budget = _budget_from_args(args)
    kind = EstimatorKind(args.estimator)
    mechanism = Mechanism(args.mechanism)
    triangles = enumerate_triangles(graph)
    assignment = greedy_assign(graph, triangles)
    exact = exact_below_threshold_count(graph, args.lam, triangles)
    print(f"f_exact: {exact}")
    report = None
    for trial in range(args.trials):
        rng = RandomSource(args.seed).subsource(trial)
        report = run_two_step(
            graph, args.lam, budget, kind, mechanism, rng,
            triangles=triangles, assignment=assignment,
        )
        rel = abs(exact - report.estimate) / exact if exact else float("nan")
        print(f"trial {trial}: estimate={report.estimate:.6f} rel_error={rel:.6g}")
    tallies = communication_report(report)
    print(
        f"communication: uploads1={tallies.uploads_step1} "
        f"downloads={tallies.downloads} uploads2={tallies.uploads_step2}"
    )
    return 0


def _cmd_baseline(args) -> int:
    graph = parse_edge_list(args.graph)
    triangles = enumerate_triangles(graph)
    exact = exact_below_threshold_count(graph, args.lam, triangles)
    print(f"f_exact: {exact}")
    report = None
    for trial in range(args.trials):
        rng = RandomSource(args.seed).subsource(trial)
        report = run_baseline(graph, args.lam, args.eps, rng, triangles=triangles)
        rel = abs(exact - report.estimate) / exact if exact else float("nan")
        print(f"trial {trial}: estimate={report.estimate:.6f} rel_error={rel:.6g}")
    tallies = communication_report(report)
    print(
        f"communication: uploads1={tallies.uploads_step1} "
        f"downloads={tallies.downloads} uploads2={tallies.uploads_step2}"
    )
    return 0


def _cmd_experiment(args) -> int:
    graph = parse_edge_list(args.graph)
    if args.sweep == "eps":
        values = tuple(float(v) for v in args.values.split(","))
    else:
        values = tuple(int(v) for v in args.values.split(","))
    methods = tuple(args.methods.split(",")) if args.methods else METHODS
    cfg = ExperimentConfig(
        axis=args.sweep,
        values=values,
        trials=args.trials,
        methods=methods,
        seed=args.seed,
        epsilon=args.eps,
        lam=args.lam,
    )
    report = run_sweep(cfg, graph)
    csv_text = report.to_csv()
    with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(csv_text)
    print(f"wrote {args.out} ({len(report.rows)} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lwdp-triangles",
        description="Private below-threshold triangle counting under local weight DP",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assign", help="greedy triangle assignment statistics")
    p.add_argument("--graph", required=True)
    p.add_argument("--stats", action="store_true", help="print the load histogram")
    p.set_defaults(func=_cmd_assign)

    p = sub.add_parser("sensitivity", help="smooth sensitivity of one node's count")
    p.add_argument("--graph", required=True)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--estimator", choices=[k.value for k in EstimatorKind], required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--eps1", type=float, default=1.0, help="step-1 budget for the noisy release")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    p.set_defaults(func=_cmd_sensitivity)

    p = sub.add_parser("count", help="run the two-step protocol")
    p.add_argument("--graph", required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--eps1", type=float)
    p.add_argument("--eps2", type=float)
    p.add_argument("--estimator", choices=[k.value for k in EstimatorKind], required=True)
    p.add_argument("--mechanism", choices=[m.value for m in Mechanism], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("baseline", help="run the non-interactive baseline")
    p.add_argument("--graph", required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("experiment", help="sweep an axis and write a CSV error table")
    p.add_argument("--graph", required=True)
    p.add_argument("--sweep", choices=["eps", "lambda", "size"], required=True)
    p.add_argument("--values", required=True, help="comma-separated axis values")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--methods", default=None, help="comma-separated subset of methods")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=2.0)
    p.add_argument("--lambda", dest="lam", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
