"""Capacity-constrained greedy coverage maximization with warm starts.

``GreedyState`` wraps a lazy engine (compiled or pure-Python) and exposes
the warm-start chain: each ``extend_capacity`` grants every expert one
more use and resumes the greedy, so the assignments at successive caps
are nested (A_1 ⊆ A_2 ⊆ ...). ``greedy_cover`` runs either the chain up
to a target cap (default) or a single fresh pass with the full cap.

Zero-gain pairs are never assigned: they cannot raise coverage and only
consume capacity. Ties between equal gains go to the smallest
(expert, task) pair.
"""

from __future__ import annotations

from fractions import Fraction

from ._backend import make_engine
from .model import Assignment, Instance


class GreedyState:
    """Warm-startable greedy run; capacity grows one unit per extension."""

    def __init__(self, instance: Instance, backend=None):
        self.instance = instance
        self.engine = make_engine(
            instance.expert_masks,
            instance.task_masks,
            instance.task_sizes,
            len(instance.skill_names),
            backend=backend,
        )
        self.assignment = Assignment(instance)
        self.tau = 0
        self.additions: list[tuple[int, int, int]] = []

    def extend(self) -> list[tuple[int, int, int]]:
        """Raise every expert's cap by one and resume; returns new additions."""
        self.tau += 1
        self.engine.grant(1)
        added = self.engine.run_phase()
        for i, j, _count in added:
            self.assignment.add_pair(i, j)
        self.additions.extend(added)
        return added

    def coverage_exact(self) -> Fraction:
        return Fraction(self.engine.scaled_coverage, self.engine.scale)

    @property
    def backend(self) -> str:
        return self.engine.backend


def greedy_cover(instance: Instance, tau: int, warm_start: bool = True, backend=None) -> Assignment:
    """Greedy assignment with per-expert load at most tau.

    warm_start=True builds the cap-1..tau chain (the canonical mode, whose
    per-cap assignments are nested); warm_start=False grants the full cap
    up front, which is the textbook single greedy pass.
    """
    if tau < 1:
        raise ValueError("tau must be >= 1")
    if warm_start:
        state = GreedyState(instance, backend=backend)
        for _ in range(tau):
            state.extend()
        return state.assignment
    engine = make_engine(
        instance.expert_masks,
        instance.task_masks,
        instance.task_sizes,
        len(instance.skill_names),
        backend=backend,
    )
    engine.grant(tau)
    assignment = Assignment(instance)
    for i, j, _count in engine.run_phase():
        assignment.add_pair(i, j)
    return assignment


def extend_capacity(state: GreedyState) -> GreedyState:
    """Grant one more use per expert and resume the greedy; returns the state."""
    state.extend()
    return state
