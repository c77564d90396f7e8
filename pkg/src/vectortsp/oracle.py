"""Trajectory oracle: best-first search over (configuration, visited)
states guided by the per-dimension projection bound, plus the
sliding-window variant that trades optimality for speed.

``multipoint_astar`` returns a provably minimum-cost trajectory for a
visit order (the estimate never overestimates, and a settled-state table
keyed by best known cost keeps the search sound even though the estimate
is not assumed consistent; re-openings are counted and surface in the
stats so tests can confirm they never fire).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .configspace import (SearchBox, Tour, Trajectory, _box_args, _model_arg,
                          _params_args, _path_to_trajectory)
from .errors import GuardError, InvalidInputError, TrajectoryNotFound
from .estimate import estimate_remaining
from .kinematics import (Configuration, Instance, advance_visits,
                         initial_visits)

_KEY_SPACE = 1 << 34  # state ids must fit the packed heap keys


@dataclass(frozen=True)
class SearchState:
    """A search node: where the vehicle is and how many ordered tour
    entries it has already collected."""

    config: Configuration
    visited: int


@dataclass(frozen=True)
class AstarStats:
    expanded: Tuple[SearchState, ...]
    reopened: int
    popped: int


def _as_tour(tour, instance: Instance) -> Tour:
    if isinstance(tour, Tour):
        return tour
    return Tour.closed(tuple(tour), instance.start)


def _run(instance: Instance, box: SearchBox, arr: np.ndarray,
         config: Configuration, consumed: int, anchor,
         fbound: int, collect: bool):
    if not box.contains(config):
        raise InvalidInputError("configuration outside the search box")
    m = arr.shape[0]
    if box.position_count * box.velocity_count * (m + 1) >= _KEY_SPACE:
        raise GuardError("search box too large for packed state ids")
    return _kernels.astar_ordered(
        *_box_args(box), _model_arg(instance), arr, *_params_args(instance),
        config.pos[0], config.pos[1], config.vel[0], config.vel[1], consumed,
        anchor[0], anchor[1], fbound, collect)


def _ordered_arrays(instance: Instance, tour: Tour):
    positions = tour.positions(instance)
    arr = np.array(positions, dtype=np.int64).reshape(len(positions), 2)
    consumed = initial_visits(instance.start_pos, positions, instance.params)
    return positions, arr, consumed


def multipoint_astar(instance: Instance, tour, box: SearchBox) -> Trajectory:
    """Optimal trajectory realizing ``tour``: starts and ends at the start
    city with zero velocity, collecting the tour cities in order."""
    t = _as_tour(tour, instance).validate(instance)
    _, arr, consumed = _ordered_arrays(instance, t)
    status, _, path, _, _, _ = _run(
        instance, box, arr, instance.start_config(), consumed,
        instance.start_pos, -1, False)
    if status != 0:
        raise TrajectoryNotFound("no realizing trajectory within the box")
    return _path_to_trajectory(path)


def multipoint_astar_stats(instance: Instance, tour,
                           box: SearchBox) -> Tuple[Trajectory, AstarStats]:
    """Same search, also reporting every settled state (for admissibility
    audits) and the re-opening counter."""
    t = _as_tour(tour, instance).validate(instance)
    _, arr, consumed = _ordered_arrays(instance, t)
    status, _, path, expanded, reopened, popped = _run(
        instance, box, arr, instance.start_config(), consumed,
        instance.start_pos, -1, True)
    if status != 0:
        raise TrajectoryNotFound("no realizing trajectory within the box")
    states = tuple(
        SearchState(Configuration((int(r[0]), int(r[1])),
                                  (int(r[2]), int(r[3]))), int(r[4]))
        for r in expanded)
    return _path_to_trajectory(path), AstarStats(states, int(reopened), int(popped))


def astar_cost_bounded(instance: Instance, tour, box: SearchBox,
                       bound: int) -> Optional[Trajectory]:
    """Optimal trajectory if its cost is below ``bound``, else None once
    the search proves no cheaper one exists."""
    t = _as_tour(tour, instance).validate(instance)
    _, arr, consumed = _ordered_arrays(instance, t)
    status, _, path, _, _, _ = _run(
        instance, box, arr, instance.start_config(), consumed,
        instance.start_pos, max(bound, 0), False)
    if status == 2:
        return None
    if status != 0:
        raise TrajectoryNotFound("no realizing trajectory within the box")
    return _path_to_trajectory(path)


def _at_rest_on(config: Configuration, pos) -> bool:
    return config.pos == tuple(pos) and all(v == 0 for v in config.vel)


def limited_view(instance: Instance, tour, box: SearchBox,
                 window: int, bound: Optional[int] = None) -> Optional[Trajectory]:
    """Sliding-window heuristic: plan over the next ``window`` tour
    cities, commit the leg to the next one, repeat from its endpoint.

    The last window runs to the true goal (all entries collected, parked
    on the start), so the end-state constraint is always planned for.
    The result realizes the tour but may cost more than the optimum.
    With ``bound``, returns None as soon as the accumulated cost proves
    the total will reach it.
    """
    if window < 2:
        raise InvalidInputError("window must be at least 2")
    t = _as_tour(tour, instance).validate(instance)
    positions, arr, k = _ordered_arrays(instance, t)
    m = len(positions)
    params = instance.params
    config = instance.start_config()
    if bound is not None and estimate_remaining(config, positions[k:], params) >= bound:
        return None
    configs = [config]

    def spent() -> int:
        return len(configs) - 1

    def run_to_goal(consumed: int):
        fb = -1 if bound is None else max(bound - spent(), 0)
        status, _, path, _, _, _ = _run(
            instance, box, arr, config, consumed, positions[-1], fb, False)
        if status == 2:
            return False
        if status != 0:
            raise TrajectoryNotFound("no realizing trajectory within the box")
        configs.extend(_path_to_trajectory(path).configurations[1:])
        return True

    while True:
        if bound is not None and spent() >= bound:
            return None
        if k >= m:
            if _at_rest_on(config, positions[-1]):
                break
            if not run_to_goal(m):
                return None
            break
        last = min(k - 1 + window, m - 1)
        if last == m - 1:
            if not run_to_goal(k):
                return None
            break
        sub = np.ascontiguousarray(arr[:last + 1])
        status, _, path, _, _, _ = _run(
            instance, box, sub, config, k, positions[last], -1, False)
        if status != 0:
            raise TrajectoryNotFound("no realizing trajectory within the box")
        wtraj = _path_to_trajectory(path).configurations
        cc = k
        cut = None
        for i in range(len(wtraj) - 1):
            cc += advance_visits(wtraj[i], wtraj[i + 1], positions[cc:], params)
            if cc > k:
                cut = i + 1
                break
        if cut is None:
            raise AssertionError("window search failed to collect its first city")
        configs.extend(wtraj[1:cut + 1])
        config = wtraj[cut]
        k = cc
    return Trajectory(tuple(configs))
