"""Experiment command-line interface.

Every solver writes ``PREFIX.csv`` (one ``tau,...`` row per visited cap
plus a ``summary,...`` row with the realized solution) and the chosen
assignment as ``expert_id<TAB>task_id`` lines in ``PREFIX.assignment.tsv``.
Wall time goes to stderr so output files are byte-identical across
repeated runs with the same seed.

Exit codes: 0 ok, 1 solver error, 2 usage error (bad flags, bad files).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .baselines import BaselineConfig, greedy_individual_trace, no_update_greedy, task_greedy
from .graph import metric_closure
from .io import (
    ParseError,
    build_cooccurrence_graph,
    build_jaccard_graph,
    generate_instance,
    parse_assignment,
    parse_graph,
    parse_instance,
    parse_pair_counts,
    write_graph,
    write_instance,
)
from .metrics import team_characteristics
from .model import from_pairs
from .network import NThresholdConfig, nthreshold
from .oracle import OracleSizeError, brute_force_opt
from .threshold import lambda_sweep, realized_summary, threshold_greedy

SOLVER_HEADER = "row,tau,coverage,objective,lmax"
SWEEP_HEADER = "lambda,best_tau,coverage,max_load,objective"
METRICS_HEADER = "row,task,size,radius,density,rho"


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_solver_csv(path, trace_entries, best_tau, coverage, objective, lmax):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(SOLVER_HEADER + "\n")
        for entry in trace_entries:
            handle.write(
                f"tau,{entry.tau},{_fmt(entry.coverage)},{_fmt(entry.objective)},\n"
            )
        handle.write(
            f"summary,{_fmt(best_tau)},{_fmt(coverage)},{_fmt(objective)},{_fmt(lmax)}\n"
        )


def _write_assignment(path, assignment, expert_ids, task_ids):
    with open(path, "w", encoding="utf-8") as handle:
        for i, j in sorted(assignment.pairs):
            handle.write(f"{expert_ids[i]}\t{task_ids[j]}\n")


def _report_wall(started):
    wall_ms = int((time.perf_counter() - started) * 1000)
    print(f"wall_ms={wall_ms}", file=sys.stderr)


def _cmd_generate(args):
    instance = generate_instance(
        args.n,
        args.m,
        args.skills,
        args.skills_per_expert,
        args.skills_per_task,
        args.seed,
        skill_zipf=args.zipf,
    )
    write_instance(instance, args.out_experts, args.out_tasks)
    return 0


def _cmd_build_graph(args):
    instance, expert_ids, _task_ids = parse_instance(args.experts, args.tasks)
    if args.kind == "jaccard":
        edges = build_jaccard_graph(instance)
    else:
        if not args.pairs:
            print("error: --pairs is required for --kind cooccurrence", file=sys.stderr)
            return 2
        counts = parse_pair_counts(args.pairs, expert_ids)
        edges = build_cooccurrence_graph(counts, args.f)
    write_graph(edges, expert_ids, args.out)
    return 0


def _cmd_solve_balanced(args):
    instance, expert_ids, task_ids = parse_instance(args.experts, args.tasks)
    started = time.perf_counter()
    assignment, trace = threshold_greedy(
        instance,
        args.lam,
        search=args.search,
        chain=not args.fresh,
        backend=args.backend,
    )
    coverage, lmax, realized = realized_summary(assignment, args.lam)
    _write_solver_csv(f"{args.out}.csv", trace.entries, trace.best_tau, coverage, realized, lmax)
    _write_assignment(f"{args.out}.assignment.tsv", assignment, expert_ids, task_ids)
    _report_wall(started)
    return 0


def _cmd_solve_network(args):
    instance, expert_ids, task_ids = parse_instance(args.experts, args.tasks)
    edges = parse_graph(args.graph, expert_ids)
    graph = metric_closure(instance.n, edges)
    config = NThresholdConfig(
        radius=args.radius,
        lam=args.lam,
        candidate_mode=args.candidates,
        k=args.k,
        matcher=args.matcher,
        search=args.search,
    )
    started = time.perf_counter()
    assignment, trace = nthreshold(instance, graph, config)
    coverage, lmax, realized = realized_summary(assignment, args.lam)
    _write_solver_csv(f"{args.out}.csv", trace.entries, trace.best_tau, coverage, realized, lmax)
    _write_assignment(f"{args.out}.assignment.tsv", assignment, expert_ids, task_ids)
    _report_wall(started)
    return 0


def _cmd_lambda_sweep(args):
    instance, expert_ids, task_ids = parse_instance(args.experts, args.tasks)
    try:
        lambdas = [float(part) for part in args.lambdas.split(",") if part.strip()]
    except ValueError:
        print(f"error: bad --lambdas value {args.lambdas!r}", file=sys.stderr)
        return 2
    started = time.perf_counter()
    report = lambda_sweep(instance, lambdas, search=args.search)
    with open(f"{args.out}.csv", "w", encoding="utf-8") as handle:
        handle.write(SWEEP_HEADER + "\n")
        for row in report.rows:
            handle.write(
                f"{_fmt(row.lam)},{row.best_tau},{_fmt(row.coverage)},{row.max_load},{_fmt(row.objective)}\n"
            )
    _write_assignment(f"{args.out}.assignment.tsv", report.best_assignment, expert_ids, task_ids)
    _report_wall(started)
    return 0


def _cmd_baseline(args):
    instance, expert_ids, task_ids = parse_instance(args.experts, args.tasks)
    config = BaselineConfig(
        beta=args.beta,
        seed=args.seed,
        tau=args.tau,
        radius=args.radius,
        lam=args.lam,
        search=args.search,
    )
    started = time.perf_counter()
    entries = []
    best_tau = None
    if args.algo == "task-greedy":
        assignment = task_greedy(instance, config)
    elif args.algo == "no-update":
        assignment = no_update_greedy(instance, config)
    else:
        if args.graph is None or args.radius is None:
            print("error: greedy-individual requires --graph and --radius", file=sys.stderr)
            return 2
        edges = parse_graph(args.graph, expert_ids)
        graph = metric_closure(instance.n, edges)
        if args.tau is not None:
            from .baselines import _greedy_individual_at

            assignment = _greedy_individual_at(instance, graph, config, args.tau)
            best_tau = args.tau
        else:
            assignment, trace = greedy_individual_trace(instance, graph, config)
            entries = trace.entries
            best_tau = trace.best_tau
    coverage, lmax, realized = realized_summary(assignment, args.lam)
    _write_solver_csv(f"{args.out}.csv", entries, best_tau, coverage, realized, lmax)
    _write_assignment(f"{args.out}.assignment.tsv", assignment, expert_ids, task_ids)
    _report_wall(started)
    return 0


def _cmd_oracle(args):
    instance, expert_ids, task_ids = parse_instance(args.experts, args.tasks)
    started = time.perf_counter()
    assignment, value = brute_force_opt(instance, args.lam)
    coverage, lmax, _realized = realized_summary(assignment, args.lam)
    _write_solver_csv(f"{args.out}.csv", [], None, coverage, value, lmax)
    _write_assignment(f"{args.out}.assignment.tsv", assignment, expert_ids, task_ids)
    _report_wall(started)
    return 0


def _cmd_metrics(args):
    instance, expert_ids, task_ids = parse_instance(args.experts, args.tasks)
    edges = parse_graph(args.graph, expert_ids)
    graph = metric_closure(instance.n, edges)
    pairs = parse_assignment(args.assignment, expert_ids, task_ids)
    assignment = from_pairs(instance, pairs)
    report = team_characteristics(assignment, instance, graph)
    with open(f"{args.out}.csv", "w", encoding="utf-8") as handle:
        handle.write(METRICS_HEADER + "\n")
        for row in report.rows:
            handle.write(
                f"team,{task_ids[row.task]},{row.size},{_fmt(row.radius)},"
                f"{_fmt(row.density)},{_fmt(row.pairwise)}\n"
            )
        handle.write(
            f"avg,,{_fmt(report.avg_size)},{_fmt(report.avg_radius)},"
            f"{_fmt(report.avg_density)},{_fmt(report.avg_pairwise)}\n"
        )
        handle.write(f"max,,{report.max_size},,,\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teambalance",
        description="Balanced-coverage team formation solvers and experiment tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_args(p):
        p.add_argument("--experts", required=True, help="experts TSV file")
        p.add_argument("--tasks", required=True, help="tasks TSV file")

    p = sub.add_parser("generate", help="write a synthetic instance")
    p.add_argument("--out-experts", required=True)
    p.add_argument("--out-tasks", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--skills", type=int, required=True)
    p.add_argument("--skills-per-expert", type=float, required=True)
    p.add_argument("--skills-per-task", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zipf", type=float, default=1.0, help="skill popularity skew (0 = uniform)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("build-graph", help="write a coordination graph")
    add_instance_args(p)
    p.add_argument("--kind", choices=["jaccard", "cooccurrence"], required=True)
    p.add_argument("--pairs", help="co-occurrence counts TSV (required for cooccurrence)")
    p.add_argument("--f", type=float, default=0.1, help="decay rate for exp(-f*D) weights")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build_graph)

    p = sub.add_parser("solve-balanced", help="threshold greedy for the unconstrained problem")
    add_instance_args(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--search", choices=["linear", "exp_linear", "full"], default="exp_linear")
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; solver is deterministic")
    p.add_argument("--fresh", action="store_true", help="independent greedy per cap instead of the warm-start chain")
    p.add_argument("--backend", choices=["auto", "python", "ext"], default=None)
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=_cmd_solve_balanced)

    p = sub.add_parser("solve-network", help="radius-constrained solver")
    add_instance_args(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--candidates", choices=["R", "allr"], default="R")
    p.add_argument("--k", type=int, default=5, help="radius grid size for --candidates allr")
    p.add_argument("--matcher", choices=["exact", "greedy"], default="exact")
    p.add_argument("--search", choices=["linear", "exp_linear", "full"], default="exp_linear")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_solve_network)

    p = sub.add_parser("lambda-sweep", help="best-greedy results for several lambdas from one run")
    add_instance_args(p)
    p.add_argument("--lambdas", required=True, help="comma list, descending, e.g. 4,2,0.4")
    p.add_argument("--search", choices=["linear", "exp_linear", "full"], default="exp_linear")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_lambda_sweep)

    p = sub.add_parser("baseline", help="comparison heuristics")
    add_instance_args(p)
    p.add_argument("--algo", choices=["task-greedy", "no-update", "greedy-individual"], required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--graph", default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--search", choices=["linear", "exp_linear", "full"], default="exp_linear")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("oracle", help="brute-force optimum (tiny instances only)")
    add_instance_args(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("metrics", help="team characteristics of a saved assignment")
    add_instance_args(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--assignment", required=True, help="assignment TSV (expert_id<TAB>task_id)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_metrics)

    return parser


def cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli())
