"""Outer search over workload thresholds, and the lambda sweep.

For each cap tau the greedy coverage solver yields A_tau; the score used
for selection is F_tau = lam*C_tau - tau (the cap, not the realized max
load, which is reported separately). Selection ties prefer the smallest
tau, and the empty assignment (F=0) is always a candidate.

The canonical implementation extends one warm-start chain, so every tau
it passes through is evaluated for free and the trace records all of
them; the search mode only controls the stopping rule. The fresh mode
(chain=False) reruns the greedy per tau, where exponential probing
genuinely skips work; it exists for comparison and audits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .greedy import GreedyState, greedy_cover
from .model import Assignment, Instance, from_pairs, max_load

SEARCH_MODES = ("linear", "exp_linear", "full")


@dataclass(frozen=True)
class TraceEntry:
    tau: int
    coverage: Fraction
    objective: float


@dataclass
class ThresholdTrace:
    entries: list[TraceEntry]
    best_tau: int
    best_objective: float


@dataclass
class LambdaSweepRow:
    lam: float
    best_tau: int
    coverage: Fraction
    max_load: int
    objective: float


@dataclass
class LambdaSweepReport:
    rows: list[LambdaSweepRow]
    best_assignment: Assignment | None = None  # solution at the largest lambda


def _probe_sequence(m: int) -> list[int]:
    probes = []
    p = 1
    while p < m:
        probes.append(p)
        p *= 2
    probes.append(m)
    return probes


def _pick_best(scored: list[tuple[int, Fraction]]) -> tuple[int, Fraction]:
    """Smallest tau attaining the maximum F; tau=0 (empty, F=0) included."""
    best_tau, best_f = 0, Fraction(0)
    for tau, f in sorted(scored):
        if f > best_f:
            best_tau, best_f = tau, f
    return best_tau, best_f


def threshold_greedy(
    instance: Instance,
    lam,
    search: str = "exp_linear",
    chain: bool = True,
    backend=None,
) -> tuple[Assignment, ThresholdTrace]:
    """Best greedy assignment over workload caps tau = 1..m."""
    if search not in SEARCH_MODES:
        raise ValueError(f"search must be one of {SEARCH_MODES}")
    lam_exact = Fraction(lam)
    if lam_exact <= 0:
        raise ValueError("lambda must be positive")
    if chain:
        return _threshold_chain(instance, lam_exact, search, backend)
    return _threshold_fresh(instance, lam_exact, search, backend)


def _threshold_chain(instance, lam, search, backend):
    m = instance.m
    state = GreedyState(instance, backend=backend)
    coverages: list[Fraction] = []  # C_tau for tau = 1..len
    cut_points: list[int] = []  # additions consumed after each tau

    def step():
        state.extend()
        coverages.append(state.coverage_exact())
        cut_points.append(len(state.additions))

    def f_at(tau):
        return lam * coverages[tau - 1] - tau

    if search == "full":
        for _ in range(m):
            step()
    elif search == "linear":
        prev = Fraction(0)
        for tau in range(1, m + 1):
            step()
            f = f_at(tau)
            if f < prev:
                break
            prev = f
    else:  # exp_linear: stop at the first exponential probe whose F dropped
        prev_probe = Fraction(0)
        for probe in _probe_sequence(m):
            while state.tau < probe:
                step()
            f = f_at(probe)
            if f < prev_probe:
                break
            prev_probe = f

    scored = [(tau, f_at(tau)) for tau in range(1, state.tau + 1)]
    best_tau, best_f = _pick_best(scored)
    entries = [
        TraceEntry(tau, coverages[tau - 1], float(f)) for tau, f in scored
    ]
    trace = ThresholdTrace(entries, best_tau, float(best_f))
    if best_tau == 0:
        return Assignment(instance), trace
    pairs = [(i, j) for i, j, _ in state.additions[: cut_points[best_tau - 1]]]
    return from_pairs(instance, pairs), trace


def search_caps(evaluate, m: int, search: str) -> dict[int, Fraction]:
    """Visit workload caps per the chosen search mode.

    evaluate(tau) must return the exact score F_tau. linear mode stops at
    the first strict decrease; exp_linear probes tau = 1, 2, 4, ... until
    a probe's score drops, then fills in the bracketing interval; full
    visits every tau. Returns {tau: F_tau} for the visited caps.
    """
    if search not in SEARCH_MODES:
        raise ValueError(f"search must be one of {SEARCH_MODES}")
    cache: dict[int, Fraction] = {}

    def ev(tau):
        if tau not in cache:
            cache[tau] = evaluate(tau)
        return cache[tau]

    if search == "full":
        for tau in range(1, m + 1):
            ev(tau)
    elif search == "linear":
        prev = Fraction(0)
        for tau in range(1, m + 1):
            f = ev(tau)
            if f < prev:
                break
            prev = f
    else:
        probes = _probe_sequence(m)
        prev_probe = Fraction(0)
        lo, hi = 0, m
        dropped = False
        for idx, probe in enumerate(probes):
            f = ev(probe)
            if f < prev_probe:
                lo = probes[idx - 2] if idx >= 2 else 0
                hi = probe
                dropped = True
                break
            prev_probe = f
        if not dropped:
            lo = probes[-2] if len(probes) >= 2 else 0
        for tau in range(lo + 1, hi + 1):
            ev(tau)
    return cache


def _threshold_fresh(instance, lam, search, backend):
    assignments: dict[int, tuple[Fraction, Assignment]] = {}

    def evaluate(tau):
        assignment = greedy_cover(instance, tau, warm_start=False, backend=backend)
        coverage = _coverage_exact(assignment)
        assignments[tau] = (coverage, assignment)
        return lam * coverage - tau

    scores = search_caps(evaluate, instance.m, search)
    best_tau, best_f = _pick_best(list(scores.items()))
    entries = [
        TraceEntry(tau, assignments[tau][0], float(scores[tau]))
        for tau in sorted(scores)
    ]
    trace = ThresholdTrace(entries, best_tau, float(best_f))
    if best_tau == 0:
        return Assignment(instance), trace
    return assignments[best_tau][1], trace


def _coverage_exact(assignment: Assignment) -> Fraction:
    total = Fraction(0)
    sizes = assignment.instance.task_sizes
    for j, count in enumerate(assignment.cover_counts):
        if count:
            total += Fraction(count, sizes[j])
    return total


def lambda_sweep(
    instance: Instance,
    lambdas: list,
    search: str = "exp_linear",
    backend=None,
) -> LambdaSweepReport:
    """Best-greedy results for several lambdas from one warm-start chain.

    The chain is run once, stopping by the largest lambda's rule; every
    smaller lambda then selects its best tau from the recorded
    (tau, C_tau) pairs, which is exact because smaller lambdas prefer
    smaller caps.
    """
    if not lambdas:
        raise ValueError("lambdas must be non-empty")
    lams = [Fraction(v) for v in lambdas]
    if any(v <= 0 for v in lams):
        raise ValueError("lambdas must be positive")
    if any(a < b for a, b in zip(lams, lams[1:])):
        raise ValueError("lambdas must be sorted in descending order")

    m = instance.m
    state = GreedyState(instance, backend=backend)
    coverages: list[Fraction] = []
    loads_at: list[int] = []
    cut_points: list[int] = []

    def step():
        state.extend()
        coverages.append(state.coverage_exact())
        loads_at.append(max(state.assignment.loads))
        cut_points.append(len(state.additions))

    lam_max = lams[0]

    def f_at(tau):
        return lam_max * coverages[tau - 1] - tau

    if search == "full":
        for _ in range(m):
            step()
    elif search == "linear":
        prev = Fraction(0)
        for tau in range(1, m + 1):
            step()
            f = f_at(tau)
            if f < prev:
                break
            prev = f
    elif search == "exp_linear":
        prev_probe = Fraction(0)
        for probe in _probe_sequence(m):
            while state.tau < probe:
                step()
            f = f_at(probe)
            if f < prev_probe:
                break
            prev_probe = f
    else:
        raise ValueError(f"search must be one of {SEARCH_MODES}")

    rows = []
    for lam in lams:
        scored = [
            (tau, lam * coverages[tau - 1] - tau) for tau in range(1, state.tau + 1)
        ]
        best_tau, best_f = _pick_best(scored)
        if best_tau == 0:
            rows.append(LambdaSweepRow(float(lam), 0, Fraction(0), 0, 0.0))
        else:
            rows.append(
                LambdaSweepRow(
                    float(lam),
                    best_tau,
                    coverages[best_tau - 1],
                    loads_at[best_tau - 1],
                    float(best_f),
                )
            )

    top_tau = rows[0].best_tau
    if top_tau == 0:
        best_assignment = Assignment(instance)
    else:
        pairs = [(i, j) for i, j, _ in state.additions[: cut_points[top_tau - 1]]]
        best_assignment = from_pairs(instance, pairs)
    return LambdaSweepReport(rows, best_assignment)


def realized_summary(assignment: Assignment, lam) -> tuple[Fraction, int, float]:
    """(exact coverage, realized max load, realized objective) of a solution."""
    coverage = _coverage_exact(assignment)
    lmax = max_load(assignment)
    return coverage, lmax, float(Fraction(lam) * coverage - lmax)
