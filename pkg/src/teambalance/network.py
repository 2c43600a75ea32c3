"""Radius-constrained solver: candidate teams, per-cap matching, pruning.

Candidate teams are generated once from the coordination graph; for each
visited workload cap tau, teams are matched to tasks (per-team use cap
tau), the matching is expanded so every member of an assigned team joins
the task, and the expansion is pruned back to per-expert load <= tau.
Every output team is a subset of a candidate team, so its radius stays
within the bound.

Early termination reuses the threshold search rules. Unlike the plain
greedy chain, matching plus pruning gives no monotonicity guarantee, so
stopping early is a heuristic here; search="full" scans every cap for
audits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import CoordinationGraph, candidate_teams_allr, candidate_teams_r, team_radius
from .matching import assign_teams_exact, assign_teams_greedy, build_cost_matrix, team_pruning
from .model import Assignment, Instance, from_pairs
from .threshold import ThresholdTrace, TraceEntry, _coverage_exact, _pick_best, search_caps

CANDIDATE_MODES = ("R", "allr")
MATCHERS = ("exact", "greedy")


@dataclass(frozen=True)
class NThresholdConfig:
    radius: float
    lam: float
    candidate_mode: str = "R"
    k: int = 5
    matcher: str = "exact"
    search: str = "exp_linear"

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.candidate_mode not in CANDIDATE_MODES:
            raise ValueError(f"candidate_mode must be one of {CANDIDATE_MODES}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.matcher not in MATCHERS:
            raise ValueError(f"matcher must be one of {MATCHERS}")


def candidate_teams(graph: CoordinationGraph, config: NThresholdConfig):
    if config.candidate_mode == "R":
        return candidate_teams_r(graph, config.radius)
    return candidate_teams_allr(graph, config.radius, config.k)


def _merged_candidates(graph: CoordinationGraph, config: NThresholdConfig):
    """Distinct candidate member sets plus how many centers generate each.

    There is one conceptual candidate per center (per the candidate
    construction), so when several centers produce the same ball, the
    merged team keeps a multiplicity and its per-cap use bound becomes
    tau * multiplicity: identical to matching against the unmerged list,
    with a much smaller cost matrix.
    """
    if config.candidate_mode == "R":
        per_center = [
            [team.members] for team in candidate_teams_r(graph, config.radius)
        ]
    else:
        per_center = [set() for _ in range(graph.n)]
        for step in range(1, config.k + 1):
            r_prime = config.radius * step / config.k
            for center, team in enumerate(candidate_teams_r(graph, r_prime)):
                per_center[center].add(team.members)
    member_lists: list[list[int]] = []
    multiplicity: list[int] = []
    index: dict[frozenset, int] = {}
    for center_sets in per_center:
        for members in sorted(center_sets, key=sorted):
            if members not in index:
                index[members] = len(member_lists)
                member_lists.append(sorted(members))
                multiplicity.append(0)
            multiplicity[index[members]] += 1
    return member_lists, multiplicity


def _radius_repair(assignment: Assignment, graph: CoordinationGraph, r: float, instance: Instance):
    """Trim teams whose member-restricted radius exceeds r.

    A pruned team is a subset of some candidate ball, but once the ball's
    center itself was pruned away, the min-max radius over the survivors
    can stretch up to 2r. Repair keeps, for the anchor member whose r-ball
    preserves the most task coverage (ties: larger team, then smaller
    anchor index), exactly the members within r of that anchor, so the
    anchor witnesses radius <= r. Only removes pairs.
    """
    for j in range(instance.m):
        members = sorted(assignment.task_members[j])
        if len(members) < 2:
            continue
        radius, _center = team_radius(members, graph)
        if radius <= r:
            continue
        task_mask = instance.task_masks[j]
        best = None
        for anchor in members:
            kept = [b for b in members if graph.closure[anchor, b] <= r]
            mask = 0
            for b in kept:
                mask |= instance.expert_masks[b]
            covered = (mask & task_mask).bit_count()
            key = (-covered, -len(kept), anchor)
            if best is None or key < best[0]:
                best = (key, kept)
        for b in set(members) - set(best[1]):
            assignment.remove_pair(b, j)


def nthreshold(
    instance: Instance, graph: CoordinationGraph, config: NThresholdConfig
) -> tuple[Assignment, ThresholdTrace]:
    """Best radius-feasible assignment over workload caps tau = 1..m."""
    if graph.n != instance.n:
        raise ValueError("graph and instance disagree on the number of experts")
    lam = Fraction(config.lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")

    member_lists, multiplicity = _merged_candidates(graph, config)
    cost = build_cost_matrix(member_lists, instance)
    match = assign_teams_exact if config.matcher == "exact" else assign_teams_greedy

    solutions: dict[int, tuple[Fraction, Assignment]] = {}

    def evaluate(tau):
        caps = [tau * mult for mult in multiplicity]
        matching = match(cost, tau, team_caps=caps)
        expanded = Assignment(instance)
        for task, team_index in matching.assigned.items():
            for i in member_lists[team_index]:
                expanded.add_pair(i, task)
        pruned = team_pruning(expanded, tau, instance)
        _radius_repair(pruned, graph, config.radius, instance)
        coverage = _coverage_exact(pruned)
        solutions[tau] = (coverage, pruned)
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
