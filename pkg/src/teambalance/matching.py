"""Assigning pre-formed teams to tasks, and pruning overloaded experts.

The exact matcher solves max-weight bipartite b-matching (teams with use
cap tau, tasks with cap 1) by successive shortest augmenting paths on a
small flow network. Because the constraint matrix is an interval/network
matrix, the combinatorial optimum equals the fractional LP optimum, so
this realizes the LP exactly. All costs are exact integers: coverage
fractions count/|J_j| are scaled by lcm(task sizes), which keeps ties
and optimality checks deterministic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .model import Assignment, Instance


class CostMatrix:
    """Team-task coverage fractions as scaled integers.

    counts[k][j] is the number of task j's skills covered by team k; the
    scaled entry counts[k][j] * (scale / |J_j|) is exact because scale is
    the lcm of all task sizes.
    """

    def __init__(self, counts: list[list[int]], task_sizes: list[int]):
        self.counts = counts
        self.task_sizes = task_sizes
        self.scale = math.lcm(*set(task_sizes)) if task_sizes else 1
        self.weights = [self.scale // s for s in task_sizes]
        self.num_teams = len(counts)
        self.num_tasks = len(task_sizes)

    def scaled(self, k: int, j: int) -> int:
        return self.counts[k][j] * self.weights[j]

    def fraction(self, k: int, j: int) -> Fraction:
        return Fraction(self.counts[k][j], self.task_sizes[j])


def build_cost_matrix(teams: list, instance: Instance) -> CostMatrix:
    """Coverage counts for each (team member set, task) pair."""
    team_masks = []
    for members in teams:
        mask = 0
        for i in members:
            mask |= instance.expert_masks[i]
        team_masks.append(mask)
    counts = [
        [(mask & tmask).bit_count() for tmask in instance.task_masks]
        for mask in team_masks
    ]
    return CostMatrix(counts, list(instance.task_sizes))


@dataclass
class TeamTaskMatching:
    assigned: dict[int, int] = field(default_factory=dict)  # task -> team
    scaled_value: int = 0
    scale: int = 1

    @property
    def value(self) -> Fraction:
        return Fraction(self.scaled_value, self.scale)


def assign_teams_exact(cost: CostMatrix, tau: int, team_caps=None) -> TeamTaskMatching:
    """Integral maximizer of total covered fraction under per-task <= 1
    and per-team <= tau, via successive shortest augmenting paths.

    team_caps overrides the uniform cap per team (used when duplicate
    candidate teams have been merged and carry a multiplicity).
    """
    if tau < 1:
        raise ValueError("tau must be >= 1")
    t, m = cost.num_teams, cost.num_tasks
    caps = list(team_caps) if team_caps is not None else [tau] * t
    if len(caps) != t:
        raise ValueError("team_caps must give one cap per team")
    num_nodes = t + m + 2
    source, sink = 0, t + m + 1

    # adjacency as parallel lists: to, cap, cost, index of reverse edge
    graph: list[list[int]] = [[] for _ in range(num_nodes)]
    edge_to: list[int] = []
    edge_cap: list[int] = []
    edge_cost: list[int] = []

    def add_edge(u, v, cap, cst):
        graph[u].append(len(edge_to))
        edge_to.append(v)
        edge_cap.append(cap)
        edge_cost.append(cst)
        graph[v].append(len(edge_to))
        edge_to.append(u)
        edge_cap.append(0)
        edge_cost.append(-cst)

    for k in range(t):
        add_edge(source, 1 + k, caps[k], 0)
    pair_edges = {}
    for k in range(t):
        for j in range(m):
            w = cost.scaled(k, j)
            if w > 0:
                pair_edges[(k, j)] = len(edge_to)
                add_edge(1 + k, 1 + t + j, 1, -w)
    for j in range(m):
        add_edge(1 + t + j, sink, 1, 0)

    INF = float("inf")
    # initial potentials by relaxation in layer order (graph is a DAG here)
    potential = [0] * num_nodes
    for k in range(t):
        for j in range(m):
            if (k, j) in pair_edges:
                w = -cost.scaled(k, j)
                if w < potential[1 + t + j]:
                    potential[1 + t + j] = w
    if m > 0:
        potential[sink] = min(potential[1 + t + j] for j in range(m))

    while True:
        dist = [INF] * num_nodes
        prev_edge = [-1] * num_nodes
        dist[source] = 0
        queue = [(0, source)]
        while queue:
            d, u = heapq.heappop(queue)
            if d > dist[u]:
                continue
            for eid in graph[u]:
                if edge_cap[eid] <= 0:
                    continue
                v = edge_to[eid]
                nd = d + edge_cost[eid] + potential[u] - potential[v]
                if nd < dist[v]:
                    dist[v] = nd
                    prev_edge[v] = eid
                    heapq.heappush(queue, (nd, v))
        if dist[sink] == INF:
            break
        true_cost = dist[sink] + potential[sink] - potential[source]
        if true_cost >= 0:
            break
        for v in range(num_nodes):
            if dist[v] < INF:
                potential[v] += dist[v]
        v = sink
        while v != source:
            eid = prev_edge[v]
            edge_cap[eid] -= 1
            edge_cap[eid ^ 1] += 1
            v = edge_to[eid ^ 1]

    result = TeamTaskMatching(scale=cost.scale)
    for (k, j), eid in pair_edges.items():
        if edge_cap[eid] == 0:  # forward capacity consumed => matched
            result.assigned[j] = k
            result.scaled_value += cost.scaled(k, j)
    return result


def assign_teams_greedy(cost: CostMatrix, tau: int, team_caps=None) -> TeamTaskMatching:
    """2-approximate matcher: repeatedly take the feasible pair of maximum
    remaining cost, ties by smallest (team, task)."""
    if tau < 1:
        raise ValueError("tau must be >= 1")
    caps = list(team_caps) if team_caps is not None else [tau] * cost.num_teams
    if len(caps) != cost.num_teams:
        raise ValueError("team_caps must give one cap per team")
    order = []
    for k in range(cost.num_teams):
        for j in range(cost.num_tasks):
            w = cost.scaled(k, j)
            if w > 0:
                order.append((-w, k, j))
    order.sort()
    uses = [0] * cost.num_teams
    result = TeamTaskMatching(scale=cost.scale)
    for neg_w, k, j in order:
        if j not in result.assigned and uses[k] < caps[k]:
            result.assigned[j] = k
            uses[k] += 1
            result.scaled_value += -neg_w
    return result


def team_pruning(assignment: Assignment, tau: int, instance: Instance) -> Assignment:
    """Remove pairs of overloaded experts in non-decreasing coverage-loss
    order until every expert's load is at most tau.

    After each removal the losses of the remaining co-assigned experts on
    that task are recomputed; experts that were not overloaded on entry
    are never removed. Equal losses break toward the smallest
    (expert, task) pair.
    """
    if tau < 0:
        raise ValueError("tau must be >= 0")
    pruned = assignment.copy()
    overloaded = {i for i, load in enumerate(pruned.loads) if load > tau}
    if not overloaded:
        return pruned

    scale = math.lcm(*set(instance.task_sizes))
    versions = [0] * instance.m

    def loss_scaled(i: int, j: int) -> int:
        others = 0
        for e in pruned.task_members[j]:
            if e != i:
                others |= instance.expert_masks[e]
        kept = (others & instance.task_masks[j]).bit_count()
        return (pruned.cover_counts[j] - kept) * (scale // instance.task_sizes[j])

    heap = []
    for i in sorted(overloaded):
        for j in sorted(j for e, j in pruned.pairs if e == i):
            heapq.heappush(heap, (loss_scaled(i, j), i, j, versions[j]))

    pending = set(overloaded)
    while pending:
        loss, i, j, stamp = heapq.heappop(heap)
        if pruned.loads[i] <= tau:
            pending.discard(i)
            continue
        if (i, j) not in pruned.pairs or stamp != versions[j]:
            continue
        pruned.remove_pair(i, j)
        versions[j] += 1
        if pruned.loads[i] <= tau:
            pending.discard(i)
        for e in pruned.task_members[j]:
            if e in overloaded and pruned.loads[e] > tau:
                heapq.heappush(heap, (loss_scaled(e, j), e, j, versions[j]))
    return pruned
