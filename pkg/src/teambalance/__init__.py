"""Balanced-coverage team formation toolkit.

Solvers for assigning experts to tasks that trade total skill coverage
against the maximum expert workload, optionally constraining each task's
team to a radius bound on a coordination graph; plus baselines, exact
brute-force oracles for verification, metrics, generators and a CLI.
"""

from ._backend import extension_available
from .baselines import BaselineConfig, greedy_individual, no_update_greedy, task_greedy
from .graph import (
    CoordinationGraph,
    Team,
    candidate_teams_allr,
    candidate_teams_r,
    metric_closure,
    team_diameter,
    team_radius,
)
from .greedy import GreedyState, extend_capacity, greedy_cover
from .io import (
    build_cooccurrence_graph,
    build_jaccard_graph,
    generate_instance,
    parse_instance,
    write_instance,
)
from .matching import (
    CostMatrix,
    TeamTaskMatching,
    assign_teams_exact,
    assign_teams_greedy,
    build_cost_matrix,
    team_pruning,
)
from .metrics import TeamReport, team_characteristics
from .model import (
    Assignment,
    Expert,
    Instance,
    Task,
    coverage_of_task,
    from_pairs,
    make_instance,
    max_load,
    objective,
    total_coverage,
)
from .network import NThresholdConfig, nthreshold
from .oracle import (
    OracleLimits,
    OracleSizeError,
    brute_force_coverage_opt,
    brute_force_opt,
    brute_force_opt_value,
    brute_force_teams_matching,
)
from .rng import Rng64
from .threshold import (
    LambdaSweepReport,
    ThresholdTrace,
    lambda_sweep,
    realized_summary,
    threshold_greedy,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
