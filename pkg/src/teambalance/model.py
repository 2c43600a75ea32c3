"""Experts, tasks, assignments and the coverage/load/objective functions.

Skill sets are interned to dense integer ids and carried both as frozensets
(for readability) and as arbitrary-precision int bitmasks (for the solvers;
bit k set means skill id k). Coverage is kept as exact integer pairs
(covered_count, task_size); floats appear only at reporting boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def skills_to_mask(skills) -> int:
    mask = 0
    for s in skills:
        mask |= 1 << s
    return mask


@dataclass(frozen=True)
class Expert:
    index: int
    skills: frozenset[int]


@dataclass(frozen=True)
class Task:
    index: int
    skills: frozenset[int]

    def __post_init__(self):
        if not self.skills:
            raise ValueError(f"task {self.index} has an empty skill set")


class Instance:
    """Immutable problem instance: n experts, m tasks over a shared skill universe."""

    def __init__(self, experts: list[Expert], tasks: list[Task], skill_names: list[str]):
        if not experts:
            raise ValueError("instance requires n >= 1")
        if not tasks:
            raise ValueError("instance requires m >= 1")
        num_skills = len(skill_names)
        for e in experts:
            if any(s < 0 or s >= num_skills for s in e.skills):
                raise ValueError(f"expert {e.index} uses a skill id outside the universe")
        for t in tasks:
            if any(s < 0 or s >= num_skills for s in t.skills):
                raise ValueError(f"task {t.index} uses a skill id outside the universe")
        self.experts = experts
        self.tasks = tasks
        self.skill_names = skill_names
        self.expert_masks = [skills_to_mask(e.skills) for e in experts]
        self.task_masks = [skills_to_mask(t.skills) for t in tasks]
        self.task_sizes = [len(t.skills) for t in tasks]

    @property
    def n(self) -> int:
        return len(self.experts)

    @property
    def m(self) -> int:
        return len(self.tasks)

    def __repr__(self):
        return f"Instance(n={self.n}, m={self.m}, skills={len(self.skill_names)})"


def make_instance(expert_skills, task_skills, skill_names=None) -> Instance:
    """Build an Instance from iterables of skill-id collections."""
    experts = [Expert(i, frozenset(s)) for i, s in enumerate(expert_skills)]
    tasks = [Task(j, frozenset(s)) for j, s in enumerate(task_skills)]
    if skill_names is None:
        top = 0
        for group in (experts, tasks):
            for member in group:
                if member.skills:
                    top = max(top, max(member.skills) + 1)
        skill_names = [f"s{k}" for k in range(top)]
    return Instance(experts, tasks, skill_names)


class Assignment:
    """A set of (expert, task) pairs with cached per-task coverage and per-expert load.

    Caches are maintained incrementally and always equal a from-scratch
    recomputation from the pair set. Duplicate insertion is a no-op.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.pairs: set[tuple[int, int]] = set()
        self.task_members: list[set[int]] = [set() for _ in range(instance.m)]
        self.cover_masks: list[int] = [0] * instance.m
        self.cover_counts: list[int] = [0] * instance.m
        self.loads: list[int] = [0] * instance.n

    def add_pair(self, expert: int, task: int) -> bool:
        """Assign expert to task; returns False if the pair was already present."""
        key = (expert, task)
        if key in self.pairs:
            return False
        self.pairs.add(key)
        self.task_members[task].add(expert)
        self.loads[expert] += 1
        new_mask = self.cover_masks[task] | (
            self.instance.expert_masks[expert] & self.instance.task_masks[task]
        )
        if new_mask != self.cover_masks[task]:
            self.cover_masks[task] = new_mask
            self.cover_counts[task] = new_mask.bit_count()
        return True

    def remove_pair(self, expert: int, task: int) -> bool:
        key = (expert, task)
        if key not in self.pairs:
            return False
        self.pairs.remove(key)
        self.task_members[task].remove(expert)
        self.loads[expert] -= 1
        # the removed expert may have been the sole provider of some skills
        mask = 0
        for i in self.task_members[task]:
            mask |= self.instance.expert_masks[i]
        mask &= self.instance.task_masks[task]
        self.cover_masks[task] = mask
        self.cover_counts[task] = mask.bit_count()
        return True

    def copy(self) -> "Assignment":
        dup = Assignment(self.instance)
        dup.pairs = set(self.pairs)
        dup.task_members = [set(s) for s in self.task_members]
        dup.cover_masks = list(self.cover_masks)
        dup.cover_counts = list(self.cover_counts)
        dup.loads = list(self.loads)
        return dup

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return f"Assignment({len(self.pairs)} pairs, Lmax={max_load(self)})"


def from_pairs(instance: Instance, pairs) -> Assignment:
    a = Assignment(instance)
    for i, j in pairs:
        a.add_pair(i, j)
    return a


def coverage_of_task(task: Task, assignment: Assignment) -> float:
    """Fraction of the task's required skills covered by its assigned experts."""
    j = task.index
    return assignment.cover_counts[j] / assignment.instance.task_sizes[j]


def total_coverage(assignment: Assignment) -> float:
    return float(total_coverage_exact(assignment))


def total_coverage_exact(assignment: Assignment) -> Fraction:
    """Sum of per-task covered fractions, as an exact rational."""
    acc = Fraction(0)
    sizes = assignment.instance.task_sizes
    for j, count in enumerate(assignment.cover_counts):
        if count:
            acc += Fraction(count, sizes[j])
    return acc


def max_load(assignment: Assignment) -> int:
    return max(assignment.loads, default=0)


def objective(assignment: Assignment, lam: float) -> float:
    """lam * total coverage - maximum load; may be negative."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    return lam * total_coverage(assignment) - max_load(assignment)


def objective_exact(assignment: Assignment, lam: Fraction) -> Fraction:
    return lam * total_coverage_exact(assignment) - max_load(assignment)
