"""Brute-force reference solvers for tiny instances.

These enumerate the full solution space and exist to check the real
solvers: tests and the acceptance suite compare against them, and the
CLI exposes them for spot audits. Size limits keep any single call fast;
exceeding them raises OracleSizeError rather than silently grinding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matching import CostMatrix
from .model import Assignment, Instance, from_pairs


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleLimits:
    max_pairs: int = 16
    max_matchings: int = 250_000


def _pair_list(instance: Instance) -> list[tuple[int, int]]:
    return [(i, j) for i in range(instance.n) for j in range(instance.m)]


def _check_size(instance: Instance, limits: OracleLimits):
    if instance.n * instance.m > limits.max_pairs:
        raise OracleSizeError(
            f"{instance.n}x{instance.m} exceeds the oracle limit of {limits.max_pairs} pairs"
        )


def _value(instance: Instance, pairs, lam: Fraction) -> Fraction:
    loads = [0] * instance.n
    masks = [0] * instance.m
    for i, j in pairs:
        masks[j] |= instance.expert_masks[i] & instance.task_masks[j]
        loads[i] += 1
    total = Fraction(0)
    for j, mask in enumerate(masks):
        if mask:
            total += Fraction(mask.bit_count(), instance.task_sizes[j])
    return lam * total - max(loads, default=0)


def brute_force_opt(
    instance: Instance, lam, limits: OracleLimits = OracleLimits()
) -> tuple[Assignment, float]:
    """Exhaustive maximizer of lam*C - Lmax over all 2^(n*m) assignments.

    Value ties go to the lexicographically smallest pair set. The empty
    assignment (value 0) is among the candidates.
    """
    _check_size(instance, limits)
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    all_pairs = _pair_list(instance)
    num = len(all_pairs)
    best_value = Fraction(0)
    best_key: tuple = ()
    for mask in range(1 << num):
        key = tuple(k for k in range(num) if mask & (1 << k))
        value = _value(instance, (all_pairs[k] for k in key), lam)
        if value > best_value or (value == best_value and key < best_key):
            best_value = value
            best_key = key
    chosen = [all_pairs[k] for k in best_key]
    return from_pairs(instance, chosen), float(best_value)


def brute_force_opt_value(
    instance: Instance, lam, limits: OracleLimits = OracleLimits(), order: str = "lex"
) -> Fraction:
    """Optimal objective as an exact rational.

    order="lex" recomputes each subset from scratch; order="gray" walks
    subsets in Gray-code order with incremental add/remove. The two are
    independent paths to the same number and tests assert they agree.
    """
    _check_size(instance, limits)
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    all_pairs = _pair_list(instance)
    num = len(all_pairs)
    best = Fraction(0)
    if order == "gray":
        assignment = Assignment(instance)
        prev_code = 0
        for k in range(1, 1 << num):
            code = k ^ (k >> 1)
            flipped = (code ^ prev_code).bit_length() - 1
            i, j = all_pairs[flipped]
            if code & (1 << flipped):
                assignment.add_pair(i, j)
            else:
                assignment.remove_pair(i, j)
            prev_code = code
            total = Fraction(0)
            for jj, count in enumerate(assignment.cover_counts):
                if count:
                    total += Fraction(count, instance.task_sizes[jj])
            value = lam * total - max(assignment.loads)
            if value > best:
                best = value
        return best
    if order != "lex":
        raise ValueError(f"unknown enumeration order {order!r}")
    for mask in range(1 << num):
        value = _value(
            instance, (all_pairs[k] for k in range(num) if mask & (1 << k)), lam
        )
        if value > best:
            best = value
    return best


def brute_force_coverage_opt(
    instance: Instance, tau: int, limits: OracleLimits = OracleLimits()
) -> Fraction:
    """Maximum total coverage over assignments with per-expert load <= tau."""
    _check_size(instance, limits)
    if tau < 0:
        raise ValueError("tau must be >= 0")
    all_pairs = _pair_list(instance)
    num = len(all_pairs)
    best = Fraction(0)
    for mask in range(1 << num):
        loads = [0] * instance.n
        cover = [0] * instance.m
        feasible = True
        for k in range(num):
            if mask & (1 << k):
                i, j = all_pairs[k]
                loads[i] += 1
                if loads[i] > tau:
                    feasible = False
                    break
                cover[j] |= instance.expert_masks[i] & instance.task_masks[j]
        if not feasible:
            continue
        total = Fraction(0)
        for j, cmask in enumerate(cover):
            if cmask:
                total += Fraction(cmask.bit_count(), instance.task_sizes[j])
        if total > best:
            best = total
    return best


def brute_force_teams_matching(
    cost: CostMatrix,
    membership: list,
    tau: int,
    limits: OracleLimits = OracleLimits(),
) -> Fraction:
    """Exact optimum of the team-to-task integer program: each task gets
    at most one team and every individual expert's load stays <= tau."""
    if tau < 0:
        raise ValueError("tau must be >= 0")
    members = [sorted(set(team)) for team in membership]
    if len(members) != cost.num_teams:
        raise ValueError("membership rows must match the cost matrix teams")
    num_experts = max((e for team in members for e in team), default=-1) + 1
    loads = [0] * num_experts
    budget = [limits.max_matchings]
    best = [0]

    def explore(j: int, scaled: int):
        budget[0] -= 1
        if budget[0] < 0:
            raise OracleSizeError("teams-matching enumeration exceeded max_matchings")
        if j == cost.num_tasks:
            if scaled > best[0]:
                best[0] = scaled
            return
        explore(j + 1, scaled)  # leave task j uncovered
        if tau == 0:
            return
        for k in range(cost.num_teams):
            if cost.scaled(k, j) <= 0:
                continue
            if all(loads[e] < tau for e in members[k]):
                for e in members[k]:
                    loads[e] += 1
                explore(j + 1, scaled + cost.scaled(k, j))
                for e in members[k]:
                    loads[e] -= 1

    explore(0, 0)
    return Fraction(best[0], cost.scale)
