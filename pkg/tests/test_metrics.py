import pytest
from conftest import random_graph_edges, random_instance

from teambalance.graph import metric_closure
from teambalance.metrics import team_characteristics
from teambalance.model import from_pairs, make_instance


def test_all_singletons():
    inst = make_instance([{0}, {1}], [{0}, {1}])
    graph = metric_closure(2, [(0, 1, 0.4)])
    a = from_pairs(inst, [(0, 0), (1, 1)])
    report = team_characteristics(a, inst, graph)
    assert report.avg_size == 1.0
    assert report.max_size == 1
    assert report.avg_radius == 0.0
    assert report.avg_density == 1.0
    assert report.avg_pairwise is None
    assert report.pairwise_excluded == 2


def test_adjacent_pair_team():
    inst = make_instance([{0}, {1}], [{0, 1}])
    graph = metric_closure(2, [(0, 1, 0.2)])
    a = from_pairs(inst, [(0, 0), (1, 0)])
    report = team_characteristics(a, inst, graph)
    row = report.rows[0]
    assert row.size == 2
    assert row.radius == pytest.approx(0.2)
    assert row.density == 2.0  # each member has induced degree 1
    assert row.pairwise == pytest.approx(0.2)


def test_non_adjacent_pair_team():
    # path 0-1-2: experts 0 and 2 are not adjacent, closure distance 0.5
    inst = make_instance([{0}, {1}, {2}], [{0, 2}])
    graph = metric_closure(3, [(0, 1, 0.2), (1, 2, 0.3)])
    a = from_pairs(inst, [(0, 0), (2, 0)])
    report = team_characteristics(a, inst, graph)
    row = report.rows[0]
    assert row.density == 1.0  # no induced edge
    assert row.pairwise == pytest.approx(0.5)


def test_density_floor_and_empty_teams_skipped():
    for seed in range(15):
        inst = random_instance(seed, max_n=6, max_m=5)
        graph = metric_closure(inst.n, random_graph_edges(seed, inst.n))
        from teambalance.rng import Rng64

        rng = Rng64(seed)
        pairs = [
            (rng.next_below(inst.n), rng.next_below(inst.m))
            for _ in range(inst.n + 2)
        ]
        a = from_pairs(inst, pairs)
        report = team_characteristics(a, inst, graph)
        nonempty = sum(1 for j in range(inst.m) if a.task_members[j])
        assert len(report.rows) == nonempty
        for row in report.rows:
            assert row.density >= 1.0
            induced_edges = any(
                b in graph.adjacency[x]
                for x in a.task_members[row.task]
                for b in a.task_members[row.task]
                if b != x
            )
            if row.density == 1.0:
                assert not induced_edges
            else:
                assert induced_edges


def test_empty_assignment_report(tiny):
    graph = metric_closure(tiny.n, [])
    report = team_characteristics(from_pairs(tiny, []), tiny, graph)
    assert report.rows == []
    assert report.max_size == 0
