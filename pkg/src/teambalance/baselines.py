"""Comparison heuristics: TaskGreedy, NoUpdateGreedy, GreedyIndividual.

All three honor a marginal-gain floor beta: a pair is only assigned when
its gain strictly exceeds beta. Gain comparisons are exact (a task of
size s clears the floor at ceil-above of beta*s covered skills), and the
only randomness is the seeded shuffle in TaskGreedy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bitset import pack_masks, pair_cover_counts
from .graph import CoordinationGraph
from .model import Assignment, Instance, from_pairs
from .rng import Rng64
from .threshold import ThresholdTrace, TraceEntry, _coverage_exact, _pick_best, search_caps


@dataclass(frozen=True)
class BaselineConfig:
    beta: float = 0.0
    seed: int = 0
    tau: int | None = None
    radius: float | None = None
    lam: float = 1.0
    search: str = "exp_linear"

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("beta must be >= 0")


def _min_counts(instance: Instance, beta: float) -> list[int]:
    """Per task, the smallest covered-skill count whose fraction exceeds beta."""
    exact = Fraction(beta)
    return [math.floor(exact * size) + 1 for size in instance.task_sizes]


def task_greedy(instance: Instance, config: BaselineConfig) -> Assignment:
    """Per task in index order, repeatedly add the expert with the largest
    marginal gain for that task (candidate order shuffled by seed; the
    first maximum in shuffled order wins ties) while some gain clears beta."""
    rng = Rng64(config.seed)
    floor = _min_counts(instance, config.beta)
    assignment = Assignment(instance)
    for j in range(instance.m):
        order = list(range(instance.n))
        rng.shuffle(order)
        task_mask = instance.task_masks[j]
        covered = 0
        members = set()
        while True:
            best_count = 0
            best_expert = -1
            for i in order:
                if i in members:
                    continue
                count = (instance.expert_masks[i] & task_mask & ~covered).bit_count()
                if count > best_count:
                    best_count = count
                    best_expert = i
            if best_count < floor[j]:
                break
            assignment.add_pair(best_expert, j)
            members.add(best_expert)
            covered |= instance.expert_masks[best_expert] & task_mask
    return assignment


def _static_pair_order(instance: Instance):
    """All positive-gain pairs sorted by decreasing static gain, ties by
    (expert, task). Gains compare exactly via a common integer scale."""
    scale = math.lcm(*set(instance.task_sizes))
    weights = [scale // s for s in instance.task_sizes]
    num_skills = len(instance.skill_names)
    counts = pair_cover_counts(
        pack_masks(instance.expert_masks, num_skills),
        pack_masks(instance.task_masks, num_skills),
    )
    order = []
    for i in range(instance.n):
        row = counts[i]
        for j in row.nonzero()[0]:
            order.append((-int(row[j]) * weights[j], i, int(j), int(row[j])))
    order.sort()
    return order


def no_update_greedy(instance: Instance, config: BaselineConfig) -> Assignment:
    """Add pairs in decreasing order of their static (never-updated) gain,
    keeping every pair whose static gain exceeds beta."""
    floor = _min_counts(instance, config.beta)
    assignment = Assignment(instance)
    for _neg, i, j, count in _static_pair_order(instance):
        if count >= floor[j]:
            assignment.add_pair(i, j)
    return assignment


def greedy_individual(
    instance: Instance, graph: CoordinationGraph, config: BaselineConfig
) -> Assignment:
    """Assign individual experts to tasks in decreasing static-gain order,
    subject to a load cap and a pairwise distance check against everyone
    already on the task's team.

    With config.tau set, runs at that single cap. Otherwise the cap is
    searched like the other threshold solvers and the best lam*C - tau
    incumbent is returned.
    """
    if config.radius is None:
        raise ValueError("greedy_individual requires a radius")
    if config.tau is not None:
        return _greedy_individual_at(instance, graph, config, config.tau)

    lam = Fraction(config.lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    solutions: dict[int, Assignment] = {}

    def evaluate(tau):
        assignment = _greedy_individual_at(instance, graph, config, tau)
        solutions[tau] = assignment
        return lam * _coverage_exact(assignment) - tau

    scores = search_caps(evaluate, instance.m, config.search)
    best_tau, _best_f = _pick_best(list(scores.items()))
    if best_tau == 0:
        return from_pairs(instance, [])
    return solutions[best_tau]


def greedy_individual_trace(
    instance: Instance, graph: CoordinationGraph, config: BaselineConfig
) -> tuple[Assignment, ThresholdTrace]:
    """Search-mode greedy_individual, also reporting the visited-cap trace."""
    if config.radius is None:
        raise ValueError("greedy_individual requires a radius")
    lam = Fraction(config.lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    solutions: dict[int, tuple[Fraction, Assignment]] = {}

    def evaluate(tau):
        assignment = _greedy_individual_at(instance, graph, config, tau)
        coverage = _coverage_exact(assignment)
        solutions[tau] = (coverage, assignment)
        return lam * coverage - tau

    scores = search_caps(evaluate, instance.m, config.search)
    best_tau, best_f = _pick_best(list(scores.items()))
    entries = [
        TraceEntry(tau, solutions[tau][0], float(scores[tau])) for tau in sorted(scores)
    ]
    trace = ThresholdTrace(entries, best_tau, float(best_f))
    if best_tau == 0:
        return from_pairs(instance, []), trace
    return solutions[best_tau][1], trace


def _greedy_individual_at(instance, graph, config, tau) -> Assignment:
    if tau < 1:
        raise ValueError("tau must be >= 1")
    r = config.radius
    floor = _min_counts(instance, config.beta)
    assignment = Assignment(instance)
    for _neg, i, j, count in _static_pair_order(instance):
        if count < floor[j]:
            continue
        if assignment.loads[i] >= tau:
            continue
        members = assignment.task_members[j]
        if all(graph.closure[i, e] <= r for e in members):
            assignment.add_pair(i, j)
    return assignment
