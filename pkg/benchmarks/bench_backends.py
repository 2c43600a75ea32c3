#!/usr/bin/env python3
"""Benchmark the compiled greedy kernel against the pure-Python fallback.

Generates a synthetic instance, solves it with both engines and reports
wall times plus the speedup. Also asserts both backends return identical
assignments, so the benchmark doubles as an equivalence check.

    python benchmarks/bench_backends.py --n 1000 --m 4000 --skills 24
"""

import argparse
import time

from teambalance._backend import extension_available
from teambalance.io import generate_instance
from teambalance.threshold import realized_summary, threshold_greedy


def run(instance, lam, backend):
    started = time.perf_counter()
    assignment, trace = threshold_greedy(instance, lam, backend=backend)
    elapsed = time.perf_counter() - started
    coverage, lmax, realized = realized_summary(assignment, lam)
    return {
        "backend": backend,
        "seconds": elapsed,
        "best_tau": trace.best_tau,
        "objective": realized,
        "lmax": lmax,
        "coverage": float(coverage),
        "pairs": frozenset(assignment.pairs),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1000)
    parser.add_argument("--m", type=int, default=4000)
    parser.add_argument("--skills", type=int, default=24)
    parser.add_argument("--skills-per-expert", type=float, default=2.2)
    parser.add_argument("--skills-per-task", type=float, default=2.0)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--zipf", type=float, default=1.0)
    parser.add_argument("--lambda", dest="lam", type=float, default=0.1)
    parser.add_argument("--repeats", type=int, default=1)
    args = parser.parse_args()

    instance = generate_instance(
        args.n,
        args.m,
        args.skills,
        args.skills_per_expert,
        args.skills_per_task,
        args.seed,
        skill_zipf=args.zipf,
    )
    print(
        f"instance: n={args.n} m={args.m} skills={args.skills} "
        f"seed={args.seed} lambda={args.lam}"
    )

    backends = ["python"]
    if extension_available():
        backends.append("ext")
    else:
        print("note: compiled kernel unavailable, timing the fallback only")

    results = {}
    for backend in backends:
        best = None
        for _ in range(args.repeats):
            outcome = run(instance, args.lam, backend)
            if best is None or outcome["seconds"] < best["seconds"]:
                best = outcome
        results[backend] = best
        print(
            f"{backend:>7}: {best['seconds']:8.2f}s  best_tau={best['best_tau']} "
            f"objective={best['objective']:.2f} lmax={best['lmax']} "
            f"coverage={best['coverage']:.1f}"
        )

    if len(results) == 2:
        assert results["python"]["pairs"] == results["ext"]["pairs"], (
            "backends disagree on the returned assignment"
        )
        speedup = results["python"]["seconds"] / results["ext"]["seconds"]
        print(f"speedup: {speedup:.1f}x (identical assignments)")


if __name__ == "__main__":
    main()
