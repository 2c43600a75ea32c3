"""File formats, graph builders, and the synthetic instance generator.

Text formats are TAB-separated UTF-8 with ``#`` comment lines skipped:

  experts/tasks   id<TAB>skill,skill,...   (tasks need at least one skill)
  graph           id1<TAB>id2<TAB>weight
  pair counts     id1<TAB>id2<TAB>D        (positive integer co-occurrences)
  assignment      expert_id<TAB>task_id

Skills are interned in first-occurrence order while reading experts then
tasks; expert and task indices follow line order.
"""

from __future__ import annotations

import math

from .model import Expert, Instance, Task
from .rng import Rng64


class ParseError(ValueError):
    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


def _data_lines(path):
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield line_no, line


def _parse_entities(path, skill_ids: dict[str, int], require_skills: bool):
    ids: list[str] = []
    skill_sets: list[frozenset[int]] = []
    seen: dict[str, int] = {}
    for line_no, line in _data_lines(path):
        parts = line.split("\t")
        if len(parts) > 2:
            raise ParseError(path, line_no, f"expected 'id<TAB>skills', got {len(parts)} fields")
        name = parts[0].strip()
        if not name:
            raise ParseError(path, line_no, "empty id")
        if name in seen:
            raise ParseError(path, line_no, f"duplicate id {name!r} (first seen on line {seen[name]})")
        seen[name] = line_no
        raw_skills = parts[1].strip() if len(parts) == 2 else ""
        skills = [s.strip() for s in raw_skills.split(",") if s.strip()] if raw_skills else []
        if require_skills and not skills:
            raise ParseError(path, line_no, f"task {name!r} has no skills")
        resolved = set()
        for skill in skills:
            if skill not in skill_ids:
                skill_ids[skill] = len(skill_ids)
            resolved.add(skill_ids[skill])
        ids.append(name)
        skill_sets.append(frozenset(resolved))
    return ids, skill_sets


def parse_instance(experts_path, tasks_path) -> tuple[Instance, list[str], list[str]]:
    """Read expert and task files; returns (instance, expert_ids, task_ids)."""
    skill_ids: dict[str, int] = {}
    expert_ids, expert_skills = _parse_entities(experts_path, skill_ids, require_skills=False)
    task_ids, task_skills = _parse_entities(tasks_path, skill_ids, require_skills=True)
    if not expert_ids:
        raise ParseError(experts_path, 0, "instance requires n >= 1")
    if not task_ids:
        raise ParseError(tasks_path, 0, "instance requires m >= 1")
    skill_names = [None] * len(skill_ids)
    for name, sid in skill_ids.items():
        skill_names[sid] = name
    experts = [Expert(i, s) for i, s in enumerate(expert_skills)]
    tasks = [Task(j, s) for j, s in enumerate(task_skills)]
    return Instance(experts, tasks, skill_names), expert_ids, task_ids


def write_instance(instance: Instance, experts_path, tasks_path, expert_ids=None, task_ids=None):
    expert_ids = expert_ids or [f"e{i}" for i in range(instance.n)]
    task_ids = task_ids or [f"t{j}" for j in range(instance.m)]
    # skills sorted by name, so writing is stable under re-interning
    with open(experts_path, "w", encoding="utf-8") as handle:
        for name, expert in zip(expert_ids, instance.experts):
            skills = ",".join(sorted(instance.skill_names[s] for s in expert.skills))
            handle.write(f"{name}\t{skills}\n")
    with open(tasks_path, "w", encoding="utf-8") as handle:
        for name, task in zip(task_ids, instance.tasks):
            skills = ",".join(sorted(instance.skill_names[s] for s in task.skills))
            handle.write(f"{name}\t{skills}\n")


def parse_graph(path, expert_ids: list[str]) -> list[tuple[int, int, float]]:
    index = {name: i for i, name in enumerate(expert_ids)}
    edges = []
    for line_no, line in _data_lines(path):
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(path, line_no, "expected 'id1<TAB>id2<TAB>weight'")
        a, b, raw_w = (p.strip() for p in parts)
        if a not in index:
            raise ParseError(path, line_no, f"unknown expert id {a!r}")
        if b not in index:
            raise ParseError(path, line_no, f"unknown expert id {b!r}")
        try:
            w = float(raw_w)
        except ValueError:
            raise ParseError(path, line_no, f"bad weight {raw_w!r}") from None
        if w < 0:
            raise ParseError(path, line_no, f"negative weight {w}")
        edges.append((index[a], index[b], w))
    return edges


def write_graph(edges, expert_ids, path):
    with open(path, "w", encoding="utf-8") as handle:
        for i, j, w in edges:
            handle.write(f"{expert_ids[i]}\t{expert_ids[j]}\t{w!r}\n")


def parse_pair_counts(path, expert_ids: list[str]) -> list[tuple[int, int, int]]:
    index = {name: i for i, name in enumerate(expert_ids)}
    triples = []
    for line_no, line in _data_lines(path):
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(path, line_no, "expected 'id1<TAB>id2<TAB>count'")
        a, b, raw_d = (p.strip() for p in parts)
        if a not in index:
            raise ParseError(path, line_no, f"unknown expert id {a!r}")
        if b not in index:
            raise ParseError(path, line_no, f"unknown expert id {b!r}")
        try:
            d = int(raw_d)
        except ValueError:
            raise ParseError(path, line_no, f"bad count {raw_d!r}") from None
        if d <= 0:
            raise ParseError(path, line_no, f"count must be positive, got {d}")
        triples.append((index[a], index[b], d))
    return triples


def parse_assignment(path, expert_ids, task_ids) -> list[tuple[int, int]]:
    experts = {name: i for i, name in enumerate(expert_ids)}
    tasks = {name: j for j, name in enumerate(task_ids)}
    pairs = []
    for line_no, line in _data_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(path, line_no, "expected 'expert_id<TAB>task_id'")
        a, b = (p.strip() for p in parts)
        if a not in experts:
            raise ParseError(path, line_no, f"unknown expert id {a!r}")
        if b not in tasks:
            raise ParseError(path, line_no, f"unknown task id {b!r}")
        pairs.append((experts[a], tasks[b]))
    return pairs


def build_cooccurrence_graph(pair_counts, f: float = 0.1) -> list[tuple[int, int, float]]:
    """Edge weight exp(-f * D) for each co-occurrence count D > 0."""
    if f < 0:
        raise ValueError("f must be non-negative")
    edges = []
    for i, j, d in pair_counts:
        if d <= 0:
            raise ValueError(f"co-occurrence count must be positive, got {d} for ({i},{j})")
        edges.append((i, j, math.exp(-f * d)))
    return edges


def build_jaccard_graph(instance: Instance) -> list[tuple[int, int, float]]:
    """Complete graph weighted by Jaccard distance between skill sets.

    Two empty skill sets count as maximally unrelated (distance 1).
    """
    edges = []
    for i in range(instance.n):
        a = instance.experts[i].skills
        for j in range(i + 1, instance.n):
            b = instance.experts[j].skills
            union = len(a | b)
            if union == 0:
                w = 1.0
            else:
                w = 1.0 - len(a & b) / union
            edges.append((i, j, w))
    return edges


def generate_instance(
    n: int,
    m: int,
    num_skills: int,
    skills_per_expert: float,
    skills_per_task: float,
    seed: int,
    skill_zipf: float = 1.0,
) -> Instance:
    """Random instance with the given shape, deterministic per seed.

    Entity skill-set sizes hit the fractional averages in expectation
    (floor plus a Bernoulli on the fractional part; tasks are clamped to
    at least one skill). Skills are drawn without replacement with
    popularity weights (rank+1)^-skill_zipf; zero gives a uniform draw.
    """
    if n < 1 or m < 1 or num_skills < 1:
        raise ValueError("n, m and num_skills must be positive")
    if skills_per_task > num_skills or skills_per_expert > num_skills:
        raise ValueError("per-entity skill averages cannot exceed the universe size")
    if skills_per_task <= 0 or skills_per_expert < 0:
        raise ValueError("skill averages must be positive (experts may be 0)")
    rng = Rng64(seed)
    weights = [(rank + 1) ** (-skill_zipf) for rank in range(num_skills)]

    def draw_size(average, at_least_one):
        base = int(average)
        frac = average - base
        size = base + (1 if frac > 0 and rng.next_unit() < frac else 0)
        if at_least_one:
            size = max(1, size)
        return min(size, num_skills)

    expert_skills = []
    for _ in range(n):
        size = draw_size(skills_per_expert, at_least_one=False)
        expert_skills.append(rng.weighted_sample(weights, size) if size else [])
    task_skills = []
    for _ in range(m):
        size = draw_size(skills_per_task, at_least_one=True)
        task_skills.append(rng.weighted_sample(weights, size))

    experts = [Expert(i, frozenset(s)) for i, s in enumerate(expert_skills)]
    tasks = [Task(j, frozenset(s)) for j, s in enumerate(task_skills)]
    skill_names = [f"s{k}" for k in range(num_skills)]
    return Instance(experts, tasks, skill_names)
