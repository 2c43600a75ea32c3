"""Weighted expert graph, its shortest-path closure, and candidate teams.

Distances between non-adjacent experts are shortest-path distances
through the graph; disconnected pairs are infinite (numpy inf), and a
team containing such a pair has infinite radius, so it never satisfies
a finite radius bound.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path


class CoordinationGraph:
    def __init__(self, n: int, edges: list[tuple[int, int, float]], closure: np.ndarray):
        self.n = n
        self.edges = edges
        self.closure = closure
        self.adjacency: list[set[int]] = [set() for _ in range(n)]
        for i, j, _w in edges:
            if i != j:
                self.adjacency[i].add(j)
                self.adjacency[j].add(i)

    def distance(self, i: int, j: int) -> float:
        return float(self.closure[i, j])

    def __repr__(self):
        return f"CoordinationGraph(n={self.n}, edges={len(self.edges)})"


def metric_closure(n: int, edges: list[tuple[int, int, float]]) -> CoordinationGraph:
    """All-pairs shortest-path distances; numpy inf for disconnected pairs."""
    if n < 1:
        raise ValueError("graph needs at least one expert")
    best: dict[tuple[int, int], float] = {}
    for i, j, w in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i},{j}) out of range for n={n}")
        if w < 0:
            raise ValueError(f"edge ({i},{j}) has negative weight {w}")
        if i == j:
            continue
        key = (min(i, j), max(i, j))
        if key not in best or w < best[key]:
            best[key] = w
    if best:
        rows = [k[0] for k in best]
        cols = [k[1] for k in best]
        data = [best[k] for k in best]
        sparse = csr_matrix((data, (rows, cols)), shape=(n, n))
        closure = shortest_path(sparse, method="auto", directed=False)
    else:
        closure = np.full((n, n), np.inf)
        np.fill_diagonal(closure, 0.0)
    # zero-weight edges survive as exact zeros; make the diagonal exact too
    np.fill_diagonal(closure, 0.0)
    return CoordinationGraph(n, [(i, j, w) for (i, j), w in best.items()], closure)


class Team:
    """A set of experts; radius and attaining center are computed on first
    access and cached."""

    def __init__(self, members, graph: CoordinationGraph):
        if not members:
            raise ValueError("team must be non-empty")
        self.members = frozenset(members)
        self._graph = graph
        self._radius_center: tuple[float, int] | None = None

    def _compute(self):
        if self._radius_center is None:
            self._radius_center = team_radius(self.members, self._graph)
        return self._radius_center

    @property
    def radius(self) -> float:
        return self._compute()[0]

    @property
    def center(self) -> int:
        return self._compute()[1]

    def __repr__(self):
        return f"Team({sorted(self.members)})"


def team_radius(members, graph: CoordinationGraph) -> tuple[float, int]:
    """Min over member centers of the max distance to the team; ties on the
    smallest center index."""
    idx = sorted(members)
    if not idx:
        raise ValueError("team must be non-empty")
    if len(idx) == 1:
        return 0.0, idx[0]
    sub = graph.closure[np.ix_(idx, idx)]
    worst = sub.max(axis=1)
    pos = int(np.argmin(worst))  # argmin takes the first, i.e. smallest index
    return float(worst[pos]), idx[pos]


def team_diameter(members, graph: CoordinationGraph) -> float:
    idx = sorted(members)
    if not idx:
        raise ValueError("team must be non-empty")
    if len(idx) == 1:
        return 0.0
    sub = graph.closure[np.ix_(idx, idx)]
    return float(sub.max())


def candidate_teams_r(graph: CoordinationGraph, r: float) -> list[Team]:
    """One ball per expert: all others within closure distance r of the
    center. Exactly n teams, every one of radius at most r."""
    if r <= 0:
        raise ValueError("radius bound must be positive")
    teams = []
    for i in range(graph.n):
        near = np.flatnonzero(graph.closure[i] <= r)
        members = set(int(j) for j in near)
        members.add(i)
        teams.append(Team(members, graph))
    return teams


def candidate_teams_allr(graph: CoordinationGraph, r: float, k: int) -> list[Team]:
    """Union of the per-expert balls at radii r/k, 2r/k, ..., r, with
    duplicate member sets removed (first generation wins)."""
    if r <= 0:
        raise ValueError("radius bound must be positive")
    if k < 1:
        raise ValueError("k must be >= 1")
    seen = set()
    teams = []
    for step in range(1, k + 1):
        for team in candidate_teams_r(graph, r * step / k):
            if team.members not in seen:
                seen.add(team.members)
                teams.append(team)
    return teams
