"""Acceptance suite: one test per criterion, each printing a PASS line.

Criteria needing an optimum use an independent exhaustive enumerator
(Gray-code walk over all pair subsets, maintaining coverage and max load
incrementally) that is cross-checked against the oracle module.
"""

import math
import time
from fractions import Fraction

import pytest
from conftest import random_graph_edges, random_instance
from reference import naive_chain, naive_greedy_cover

from teambalance.baselines import BaselineConfig, no_update_greedy, task_greedy
from teambalance.cli import cli
from teambalance.graph import (
    candidate_teams_r,
    metric_closure,
    team_diameter,
    team_radius,
)
from teambalance.greedy import GreedyState, greedy_cover
from teambalance.io import generate_instance, write_instance
from teambalance.matching import (
    CostMatrix,
    assign_teams_exact,
    assign_teams_greedy,
    team_pruning,
)
from teambalance.model import Assignment, from_pairs, max_load, total_coverage_exact
from teambalance.network import NThresholdConfig, nthreshold
from teambalance.oracle import brute_force_opt_value
from teambalance.rng import Rng64
from teambalance.threshold import lambda_sweep, threshold_greedy

E_BOUND = 1 - 1 / math.e


def exhaustive_profile(instance):
    """Best exact coverage attainable at every exact max-load value,
    via a Gray-code walk with O(1)-ish incremental updates."""
    pairs = [(i, j) for i in range(instance.n) for j in range(instance.m)]
    num = len(pairs)
    assert num <= 16
    scale = math.lcm(*set(instance.task_sizes))
    weights = [scale // s for s in instance.task_sizes]
    members = [set() for _ in range(instance.m)]
    cover_mask = [0] * instance.m
    loads = [0] * instance.n
    load_count = [instance.n] + [0] * instance.m
    lmax = 0
    scaled_cov = 0
    best = [-1] * (instance.m + 1)
    best[0] = 0

    prev_code = 0
    for k in range(1, 1 << num):
        code = k ^ (k >> 1)
        flipped = (code ^ prev_code).bit_length() - 1
        prev_code = code
        i, j = pairs[flipped]
        relevant = instance.expert_masks[i] & instance.task_masks[j]
        if code & (1 << flipped):
            members[j].add(i)
            gained = (relevant & ~cover_mask[j]).bit_count()
            cover_mask[j] |= relevant
            scaled_cov += gained * weights[j]
            load_count[loads[i]] -= 1
            loads[i] += 1
            load_count[loads[i]] += 1
            if loads[i] > lmax:
                lmax = loads[i]
        else:
            members[j].remove(i)
            mask = 0
            for e in members[j]:
                mask |= instance.expert_masks[e]
            mask &= instance.task_masks[j]
            scaled_cov -= (cover_mask[j].bit_count() - mask.bit_count()) * weights[j]
            cover_mask[j] = mask
            load_count[loads[i]] -= 1
            loads[i] -= 1
            load_count[loads[i]] += 1
            if load_count[lmax] == 0 and lmax > 0:
                lmax -= 1
        if scaled_cov > best[lmax]:
            best[lmax] = scaled_cov
    return [Fraction(b, scale) if b >= 0 else None for b in best], scale


def opt_objective(profile, lam):
    """(optimal value, list of (coverage, lmax) pairs attaining it)."""
    lam = Fraction(lam)
    value = Fraction(0)
    attained = []
    for lmax, cov in enumerate(profile):
        if cov is None:
            continue
        f = lam * cov - lmax
        if f > value:
            value = f
            attained = [(cov, lmax)]
        elif f == value:
            attained.append((cov, lmax))
    if not attained:
        attained = [(Fraction(0), 0)]
    return value, attained


def test_criterion_1_and_2_bounds():
    """Theorem 3 objective bound and the per-cap coverage bound."""
    started = time.perf_counter()
    violations_obj = 0
    violations_cov = 0
    checked = 0
    for seed in range(200):
        inst = random_instance(seed, max_n=5, max_m=3, max_skills=6)
        profile, _scale = exhaustive_profile(inst)
        if seed < 10:  # dual-route integrity of the enumerator itself
            for lam in (Fraction(1, 2), 1, 2):
                assert opt_objective(profile, lam)[0] == brute_force_opt_value(inst, lam)
        chain_cov = {}
        state = GreedyState(inst)
        for tau in range(1, max(3, inst.m) + 1):
            state.extend()
            chain_cov[tau] = state.coverage_exact()
        for lam in (0.5, 1, 2):
            _a, trace = threshold_greedy(inst, lam)
            _value, attained = opt_objective(profile, Fraction(lam))
            for opt_cov, opt_lmax in attained:
                rhs = E_BOUND * lam * float(opt_cov) - opt_lmax
                if trace.best_objective < rhs - 1e-9:
                    violations_obj += 1
        for tau in (1, 2):
            achievable = [c for c in profile[: tau + 1] if c is not None]
            opt_tau = max(achievable) if achievable else Fraction(0)
            if float(chain_cov[min(tau, inst.m)]) < E_BOUND * float(opt_tau) - 1e-9:
                violations_cov += 1
        checked += 1
    elapsed = time.perf_counter() - started
    assert checked >= 200
    assert violations_obj == 0
    assert violations_cov == 0
    assert elapsed < 60
    print(f"\nACCEPTANCE 1 theorem-3 objective bound: PASS ({checked} instances, {elapsed:.1f}s)")
    print(f"ACCEPTANCE 2 lemma-1 coverage bound: PASS ({checked} instances)")


def test_criterion_3_unimodality_and_search_equivalence():
    instances = 0
    for seed in range(100):
        inst = random_instance(seed, max_n=6, max_m=6, max_skills=7)
        for lam in (0.5, 1, 2):
            _a, trace = threshold_greedy(inst, lam, search="full")
            values = [e.objective for e in trace.entries]
            assert len(values) == inst.m
            decreased = False
            for a, b in zip(values, values[1:]):
                if decreased:
                    assert b <= a + 1e-12, (seed, lam, values)
                if b < a:
                    decreased = True
            results = set()
            for search in ("linear", "exp_linear"):
                _a2, t2 = threshold_greedy(inst, lam, search=search)
                results.add((t2.best_tau, t2.best_objective))
            assert len(results) == 1, (seed, lam)
        instances += 1
    assert instances >= 100
    print(f"\nACCEPTANCE 3 unimodal traces, search modes agree: PASS ({instances} instances)")


def test_criterion_4_lambda_monotonicity():
    lambdas = [5, 2, 1, 0.5, 0.1]
    instances = 0
    for seed in range(100):
        inst = random_instance(seed, max_n=6, max_m=5, max_skills=7)
        report = lambda_sweep(inst, lambdas)
        taus = [row.best_tau for row in report.rows]
        for earlier, later in zip(taus, taus[1:]):
            assert earlier >= later, (seed, taus)
        for row in report.rows:
            _a, trace = threshold_greedy(inst, row.lam)
            assert row.best_tau == trace.best_tau, (seed, row.lam)
            assert row.objective == trace.best_objective, (seed, row.lam)
        instances += 1
    assert instances >= 100
    print(f"\nACCEPTANCE 4 lambda sweep monotone and exact: PASS ({instances} instances)")


def _random_cost(seed, max_teams=5, max_tasks=5):
    rng = Rng64(seed)
    t = 1 + rng.next_below(max_teams)
    m = 1 + rng.next_below(max_tasks)
    sizes = [1 + rng.next_below(6) for _ in range(m)]
    counts = [[rng.next_below(sizes[j] + 1) for j in range(m)] for _ in range(t)]
    return CostMatrix(counts, sizes)


def _enumerate_matching(cost, tau):
    best = [0]
    uses = [0] * cost.num_teams

    def explore(j, scaled):
        if j == cost.num_tasks:
            best[0] = max(best[0], scaled)
            return
        explore(j + 1, scaled)
        for k in range(cost.num_teams):
            if uses[k] < tau and cost.scaled(k, j) > 0:
                uses[k] += 1
                explore(j + 1, scaled + cost.scaled(k, j))
                uses[k] -= 1

    explore(0, 0)
    return best[0]


def test_criterion_5_matching_exactness():
    checked = 0
    for seed in range(200):
        cost = _random_cost(seed)
        for tau in (1, 2):
            exact = assign_teams_exact(cost, tau)
            assert exact.scaled_value == _enumerate_matching(cost, tau), (seed, tau)
            greedy = assign_teams_greedy(cost, tau)
            assert greedy.value * 2 >= exact.value, (seed, tau)
        checked += 1
    assert checked >= 200
    print(f"\nACCEPTANCE 5 matcher optimal, greedy within half: PASS ({checked} matrices)")


def test_criterion_6_feasibility_audit():
    rng = Rng64(20240810)
    instances = 0
    modes = [("R", "exact"), ("R", "greedy"), ("allr", "exact"), ("allr", "greedy")]
    for seed in range(100):
        n = 5 + rng.next_below(36)  # up to 40 experts
        m = 3 + rng.next_below(28)  # up to 30 tasks
        num_skills = 4 + rng.next_below(8)
        experts = [set(Rng64(seed * 997 + i).sample(num_skills, 1 + i % 3)) for i in range(n)]
        tasks = [
            set(Rng64(seed * 991 + 500 + j).sample(num_skills, 1 + j % 3))
            for j in range(m)
        ]
        from teambalance.model import make_instance

        inst = make_instance(experts, tasks, [f"s{k}" for k in range(num_skills)])
        graph = metric_closure(n, random_graph_edges(seed + 7000, n, edge_prob_pct=30))
        mode, matcher = modes[seed % len(modes)]
        r = (2 + rng.next_below(8)) / 10
        config = NThresholdConfig(radius=r, lam=2.0, candidate_mode=mode, k=3, matcher=matcher)
        assignment, trace = nthreshold(inst, graph, config)
        assert max_load(assignment) <= max(trace.best_tau, 0), seed
        for j in range(m):
            team = assignment.task_members[j]
            if team:
                radius, _c = team_radius(team, graph)
                assert radius <= r + 1e-12, (seed, j, radius, r)

        # pruning audit on a random overloaded assignment
        dense = Assignment(inst)
        for _ in range(n * 2):
            dense.add_pair(rng.next_below(n), rng.next_below(m))
        tau = 1 + rng.next_below(3)
        pruned = team_pruning(dense, tau, inst)
        assert pruned.pairs <= dense.pairs
        assert max_load(pruned) <= tau
        instances += 1
    assert instances >= 100
    print(f"\nACCEPTANCE 6 feasibility audit: PASS ({instances} instances)")


def test_criterion_7_lazy_equals_naive():
    checked = 0
    for seed in range(60):
        inst = random_instance(seed, max_n=20, max_m=20, max_skills=10)
        assert inst.n * inst.m <= 400
        tau_probe = 1 + seed % 3
        lazy = greedy_cover(inst, tau_probe, warm_start=False)
        naive = naive_greedy_cover(inst, tau_probe)
        assert lazy.pairs == naive.pairs, (seed, tau_probe)
        state = GreedyState(inst)
        for expected in naive_chain(inst, min(inst.m, 4)):
            state.extend()
            assert frozenset(state.assignment.pairs) == expected, seed
        checked += 1
    print(f"\nACCEPTANCE 7 lazy equals naive greedy: PASS ({checked} instances)")


def test_criterion_8_metric_properties():
    rng = Rng64(77)
    teams_checked = 0
    for seed in range(40):
        n = 4 + seed % 8
        graph = metric_closure(n, random_graph_edges(seed, n, edge_prob_pct=70))
        for _ in range(25):
            size = 1 + rng.next_below(n)
            members = set(rng.sample(n, size))
            radius, center = team_radius(members, graph)
            diameter = team_diameter(members, graph)
            assert center in members
            if math.isinf(diameter):
                assert math.isinf(radius) or radius <= diameter
            else:
                assert 0.5 * diameter <= radius + 1e-12
                assert radius <= diameter + 1e-12
            teams_checked += 1
        for r in (0.3, 0.7):
            for team in candidate_teams_r(graph, r):
                assert team.radius <= r + 1e-12
    assert teams_checked >= 1000
    print(f"\nACCEPTANCE 8 radius/diameter bounds: PASS ({teams_checked} teams)")


def test_criterion_9_cli_determinism(tmp_path):
    experts = tmp_path / "e.tsv"
    tasks = tmp_path / "t.tsv"
    inst = generate_instance(12, 10, 8, 2.2, 2.0, seed=5)
    write_instance(inst, experts, tasks)
    graph = tmp_path / "g.tsv"
    code = cli(
        ["build-graph", "--experts", str(experts), "--tasks", str(tasks),
         "--kind", "jaccard", "--out", str(graph)]
    )
    assert code == 0

    invocations = [
        ["solve-balanced", "--experts", str(experts), "--tasks", str(tasks),
         "--lambda", "1.5", "--seed", "3", "--out", None],
        ["solve-network", "--experts", str(experts), "--tasks", str(tasks),
         "--graph", str(graph), "--radius", "0.7", "--lambda", "1.5",
         "--seed", "3", "--out", None],
        ["lambda-sweep", "--experts", str(experts), "--tasks", str(tasks),
         "--lambdas", "5,2,0.5", "--seed", "3", "--out", None],
        ["baseline", "--experts", str(experts), "--tasks", str(tasks),
         "--algo", "task-greedy", "--beta", "0.1", "--seed", "3", "--out", None],
    ]
    for idx, argv in enumerate(invocations):
        blobs = []
        for attempt in ("x", "y"):
            prefix = str(tmp_path / f"run{idx}{attempt}")
            argv[-1] = prefix
            assert cli(list(argv)) == 0
            blob = (tmp_path / f"run{idx}{attempt}.csv").read_bytes()
            sidecar = tmp_path / f"run{idx}{attempt}.assignment.tsv"
            if sidecar.exists():
                blob += sidecar.read_bytes()
            blobs.append(blob)
        assert blobs[0] == blobs[1], argv[0]
    print("\nACCEPTANCE 9 CLI byte-identical reruns: PASS (4 subcommands)")


def test_criterion_10_desk_scale_benchmark():
    started = time.perf_counter()
    lam = 0.1
    inst = generate_instance(1000, 4000, 24, 2.2, 2.0, seed=2024)
    tg_assignment, _trace = threshold_greedy(inst, lam)
    tg_cov = total_coverage_exact(tg_assignment)
    tg_lmax = max_load(tg_assignment)
    tg_objective = lam * float(tg_cov) - tg_lmax

    grid = (0.0, 0.1, 0.2, 0.3, 0.5)
    lines = [
        f"threshold_greedy: objective={tg_objective:.2f} lmax={tg_lmax}"
    ]
    for name, algo in (("task_greedy", task_greedy), ("no_update_greedy", no_update_greedy)):
        best = None
        for beta in grid:
            assignment = algo(inst, BaselineConfig(beta=beta, seed=7))
            cov = total_coverage_exact(assignment)
            lmax = max_load(assignment)
            objective = lam * float(cov) - lmax
            if best is None or objective > best[1]:
                best = (beta, objective, lmax)
        beta, objective, lmax = best
        lines.append(f"{name}: best_beta={beta} objective={objective:.2f} lmax={lmax}")
        assert tg_objective >= objective, (name, tg_objective, objective)
        assert tg_lmax <= lmax, (name, tg_lmax, lmax)
    elapsed = time.perf_counter() - started
    assert elapsed < 600
    print(f"\nACCEPTANCE 10 desk-scale benchmark: PASS ({elapsed:.0f}s)")
    for line in lines:
        print("  " + line)
