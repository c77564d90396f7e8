"""Tour search under racetrack acceleration constraints.

The vehicle moves on the integer lattice; each step changes its velocity
by at most one unit per axis and cost is counted in vectors.  This
package provides the vehicle model, exact configuration-space searches,
an admissible-estimate trajectory oracle, 2-opt tour search on top of
it, reductions to classical TSP variants, and a seeded experiment
harness with a CLI.
"""

from .configspace import (SearchBox, Tour, Trajectory, bfs_ordered,
                          bfs_two_point, brute_force_vtsp, make_search_box,
                          ordered_cost_from)
from .errors import (GuardError, InvalidInputError, TrajectoryNotFound,
                     VectorTspError)
from .estimate import (TurningPlan, estimate_remaining, leg_cost_from,
                       turning_points, unidim_cost)
from .harness import (ExperimentConfig, ExperimentRow, generate,
                      read_instance, render_svg, run_experiment, write_csv,
                      write_instance)
from .kinematics import (Configuration, Instance, SuccessorModel,
                         VisitParams, advance_visits, inverse,
                         is_valid_trajectory, reverse_step, segment_visits,
                         successors, time_reverse)
from .oracle import (SearchState, limited_view, multipoint_astar,
                     multipoint_astar_stats)
from .reductions import (AtspInstance, GtspInstance, StspInstance,
                         atsp_to_stsp, noon_bean, solve_atsp,
                         solve_gtsp_brute, solve_stsp, to_gtsp)
from .search import SolveReport, flip, flip_vtsp, held_karp_etsp, init_walk

__all__ = [
    "AtspInstance", "Configuration", "ExperimentConfig", "ExperimentRow",
    "GtspInstance", "GuardError", "Instance", "InvalidInputError",
    "SearchBox", "SearchState", "SolveReport", "StspInstance",
    "SuccessorModel", "Tour", "Trajectory", "TrajectoryNotFound",
    "TurningPlan", "VectorTspError", "VisitParams", "advance_visits",
    "atsp_to_stsp", "bfs_ordered", "bfs_two_point", "brute_force_vtsp",
    "estimate_remaining", "flip", "flip_vtsp", "generate", "held_karp_etsp",
    "init_walk", "inverse", "is_valid_trajectory", "leg_cost_from",
    "limited_view", "make_search_box", "multipoint_astar",
    "multipoint_astar_stats", "noon_bean", "ordered_cost_from",
    "read_instance", "render_svg", "reverse_step", "run_experiment",
    "segment_visits", "solve_atsp", "solve_gtsp_brute", "solve_stsp",
    "successors", "time_reverse", "to_gtsp", "turning_points", "unidim_cost",
    "write_csv", "write_instance",
]
