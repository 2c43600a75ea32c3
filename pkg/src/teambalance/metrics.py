"""Team-characteristics report: sizes, radii, densities, pairwise distances.

Density of a team is 1 + (sum of member degrees in the team-induced
unweighted subgraph) / |T|, so isolated singletons sit at the floor of
1.0. Mean pairwise distance uses shortest-path (closure) distances and
is undefined for teams of size < 2; such teams are excluded from the
pairwise average and counted separately.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import CoordinationGraph, team_radius
from .model import Assignment, Instance


@dataclass(frozen=True)
class TeamRow:
    task: int
    size: int
    radius: float
    density: float
    pairwise: float | None


@dataclass
class TeamReport:
    rows: list[TeamRow]
    avg_size: float
    max_size: int
    avg_radius: float
    avg_density: float
    avg_pairwise: float | None
    pairwise_excluded: int


def team_characteristics(
    assignment: Assignment, instance: Instance, graph: CoordinationGraph
) -> TeamReport:
    """Per-task team statistics plus aggregates over non-empty teams."""
    rows = []
    for j in range(instance.m):
        members = sorted(assignment.task_members[j])
        if not members:
            continue
        size = len(members)
        radius, _center = team_radius(members, graph)
        degree_sum = sum(
            len(graph.adjacency[i].intersection(members)) for i in members
        )
        density = 1.0 + degree_sum / size
        if size >= 2:
            sub = graph.closure[np.ix_(members, members)]
            upper = sub[np.triu_indices(size, k=1)]
            pairwise = float(upper.mean())
        else:
            pairwise = None
        rows.append(TeamRow(j, size, radius, density, pairwise))

    if not rows:
        return TeamReport([], 0.0, 0, 0.0, 0.0, None, 0)
    sizes = [r.size for r in rows]
    with_pairs = [r.pairwise for r in rows if r.pairwise is not None]
    return TeamReport(
        rows=rows,
        avg_size=sum(sizes) / len(rows),
        max_size=max(sizes),
        avg_radius=sum(r.radius for r in rows) / len(rows),
        avg_density=sum(r.density for r in rows) / len(rows),
        avg_pairwise=(sum(with_pairs) / len(with_pairs)) if with_pairs else None,
        pairwise_excluded=len(rows) - len(with_pairs),
    )
