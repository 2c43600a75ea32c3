import pytest

from teambalance.model import make_instance
from teambalance.rng import Rng64


@pytest.fixture
def tiny():
    """Three experts {a,b}, {c}, {a,c,d}; two tasks {a,b}, {c,d}."""
    return make_instance([{0, 1}, {2}, {0, 2, 3}], [{0, 1}, {2, 3}])


def random_instance(seed, max_n=5, max_m=3, max_skills=6, allow_empty_experts=True):
    """Small random instance for property sweeps, deterministic per seed."""
    rng = Rng64(seed)
    n = 1 + rng.next_below(max_n)
    m = 1 + rng.next_below(max_m)
    num_skills = 2 + rng.next_below(max_skills - 1)
    experts = []
    for _ in range(n):
        low = 0 if allow_empty_experts else 1
        size = low + rng.next_below(num_skills - low + 1)
        experts.append(set(rng.sample(num_skills, min(size, num_skills))))
    tasks = []
    for _ in range(m):
        size = 1 + rng.next_below(min(num_skills, 4))
        tasks.append(set(rng.sample(num_skills, size)))
    return make_instance(experts, tasks, [f"s{k}" for k in range(num_skills)])


def random_graph_edges(seed, n, edge_prob_pct=60, max_weight=1.0):
    """Random weighted undirected edge list on n nodes."""
    rng = Rng64(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next_below(100) < edge_prob_pct:
                edges.append((i, j, (1 + rng.next_below(1000)) / 1000 * max_weight))
    return edges
