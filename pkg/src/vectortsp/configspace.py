"""Exact searches in the configuration graph.

Everything here is breadth-first (unit edge costs) over dense state
tables, which keeps the logic independent from the best-first trajectory
oracle so the two can check each other.  A ``SearchBox`` bounds the
explored positions and per-axis speeds; the default box inflates the
city bounding box far enough that braking overshoots past a boundary
city stay inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import GuardError, InvalidInputError, TrajectoryNotFound
from .estimate import unidim_cost
from .kinematics import (Configuration, Instance, Vec, initial_visits,
                         is_valid_trajectory, projection_param, segment_visits)

MAX_DENSE_STATES = 48_000_000  # cap for dense breadth-first tables


@dataclass(frozen=True)
class SearchBox:
    """Axis-aligned position window plus per-axis speed caps."""

    lo: Vec
    hi: Vec
    max_speed: Vec

    def __post_init__(self):
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise InvalidInputError("box lo must not exceed hi")
        if any(s < 1 for s in self.max_speed):
            raise InvalidInputError("max_speed must be positive")

    def contains(self, c: Configuration) -> bool:
        return (all(a <= p <= b for a, p, b in zip(self.lo, c.pos, self.hi))
                and all(abs(v) <= s for v, s in zip(c.vel, self.max_speed)))

    @property
    def position_count(self) -> int:
        out = 1
        for a, b in zip(self.lo, self.hi):
            out *= b - a + 1
        return out

    @property
    def velocity_count(self) -> int:
        out = 1
        for s in self.max_speed:
            out *= 2 * s + 1
        return out

    @property
    def area(self) -> int:
        out = 1
        for a, b in zip(self.lo, self.hi):
            out *= b - a
        return out


@dataclass(frozen=True)
class Trajectory:
    """A run of configurations, each a legal step from the previous;
    the cost is the vector count (one less than the length)."""

    configurations: Tuple[Configuration, ...]

    def __post_init__(self):
        if not self.configurations:
            raise InvalidInputError("a trajectory holds at least one configuration")

    @property
    def cost(self) -> int:
        return len(self.configurations) - 1

    def is_valid(self, model) -> bool:
        return is_valid_trajectory(self.configurations, model)


@dataclass(frozen=True)
class Tour:
    """A closed visit order: city indices starting and ending at the
    instance start, the interior being a permutation of the rest."""

    order: Tuple[int, ...]

    @classmethod
    def closed(cls, seq: Sequence[int], start: int) -> "Tour":
        seq = tuple(int(i) for i in seq)
        if not seq or seq[0] != start:
            raise InvalidInputError("tour must begin at the start city")
        if len(seq) == 1 or seq[-1] != start:
            seq = seq + (start,)
        return cls(seq)

    def validate(self, instance: Instance) -> "Tour":
        n = len(instance.cities)
        if len(self.order) != n + 1:
            raise InvalidInputError("tour must list every city once plus the return")
        if self.order[0] != instance.start or self.order[-1] != instance.start:
            raise InvalidInputError("tour must start and end at the start city")
        interior = self.order[1:-1]
        expected = set(range(n)) - {instance.start}
        if set(interior) != expected or len(interior) != len(expected):
            raise InvalidInputError("tour interior must permute the non-start cities")
        return self

    @property
    def n(self) -> int:
        return len(self.order) - 1

    def positions(self, instance: Instance) -> Tuple[Vec, ...]:
        return tuple(instance.cities[i] for i in self.order)

    def euclidean_length(self, instance: Instance) -> float:
        total = 0.0
        for a, b in zip(self.order, self.order[1:]):
            pa, pb = instance.cities[a], instance.cities[b]
            total += math.dist(pa, pb)
        return total


def _ceil_sqrt(w: int) -> int:
    r = math.isqrt(w)
    return r if r * r == w else r + 1


def make_search_box(instance: Instance, margin: Optional[int] = None) -> SearchBox:
    """Bounding box of the cities inflated on every side.

    The default margin is ceil(2*sqrt(L)) + 2 for L the largest per-axis
    city spread: a stopping overshoot past a boundary city at arrival
    speed s drifts at most s*(s+1)/2, and useful arrival speeds are
    O(sqrt(L)).  Per-axis speed caps are ceil(sqrt(width)) + 1 of the
    inflated width.
    """
    lo = tuple(min(c[d] for c in instance.cities) for d in range(instance.dim))
    hi = tuple(max(c[d] for c in instance.cities) for d in range(instance.dim))
    spread = max(b - a for a, b in zip(lo, hi))
    if margin is None:
        margin = unidim_cost(spread) + 2
    if margin < 0:
        raise InvalidInputError("margin must be non-negative")
    lo = tuple(a - margin for a in lo)
    hi = tuple(b + margin for b in hi)
    speed = tuple(_ceil_sqrt(b - a) + 1 for a, b in zip(lo, hi))
    return SearchBox(lo, hi, speed)


def _box_args(box: SearchBox):
    if len(box.lo) != 2:
        raise InvalidInputError("searches support 2D boxes only")
    return (box.lo[0], box.lo[1], box.hi[0], box.hi[1],
            box.max_speed[0], box.max_speed[1])


def _model_arg(instance: Instance) -> int:
    return 9 if instance.model.value == "succ9" else 5


def _params_args(instance: Instance):
    p = instance.params
    nu2 = -1 if p.nu is None else p.nu * p.nu
    return nu2, p.alpha * p.alpha, 1 if p.beta else 0


def _path_to_trajectory(path: np.ndarray) -> Trajectory:
    configs = tuple(
        Configuration((int(r[0]), int(r[1])), (int(r[2]), int(r[3])))
        for r in path)
    return Trajectory(configs)


def _check_dense(nstates: int, what: str):
    if nstates > MAX_DENSE_STATES:
        raise GuardError(
            f"{what} needs {nstates} dense states "
            f"(cap {MAX_DENSE_STATES}); shrink the box or instance")


def _tour_order(tour) -> Tuple[int, ...]:
    return tuple(getattr(tour, "order", tour))


def bfs_two_point(src: Configuration, dst: Configuration, box: SearchBox,
                  model) -> Trajectory:
    """Minimum-vector trajectory between two configurations inside the box."""
    for c in (src, dst):
        if not box.contains(c):
            raise InvalidInputError("configuration outside the search box")
    _check_dense(box.position_count * box.velocity_count, "two-point search")
    m = 9 if model.value == "succ9" else 5
    status, cost, path, _ = _kernels.bfs_config(
        *_box_args(box), m,
        src.pos[0], src.pos[1], src.vel[0], src.vel[1],
        dst.pos[0], dst.pos[1], dst.vel[0], dst.vel[1], True)
    if status != 0:
        raise TrajectoryNotFound("target configuration unreachable within the box")
    return _path_to_trajectory(path)


def config_distances_from(src: Configuration, box: SearchBox, model) -> np.ndarray:
    """Distance from ``src`` to every configuration in the box, -1 when
    unreachable, indexed by ``config_index``."""
    if not box.contains(src):
        raise InvalidInputError("configuration outside the search box")
    _check_dense(box.position_count * box.velocity_count, "distance sweep")
    m = 9 if model.value == "succ9" else 5
    z = src.pos
    _, _, _, dist = _kernels.bfs_config(
        *_box_args(box), m, z[0], z[1], src.vel[0], src.vel[1],
        z[0], z[1], 0, 0, False)
    return dist


def config_index(box: SearchBox, c: Configuration) -> int:
    """Dense index of a configuration, matching the kernel layout."""
    h = box.hi[1] - box.lo[1] + 1
    nvx = 2 * box.max_speed[0] + 1
    nvy = 2 * box.max_speed[1] + 1
    return (((c.pos[0] - box.lo[0]) * h + (c.pos[1] - box.lo[1])) * nvx * nvy
            + (c.vel[0] + box.max_speed[0]) * nvy + (c.vel[1] + box.max_speed[1]))


def _ordered_setup(instance: Instance, tour, box: SearchBox):
    order = _tour_order(tour)
    if not order or order[0] != instance.start:
        raise InvalidInputError("tour must begin at the start city")
    if len(order) > 1 and order[-1] != instance.start:
        raise InvalidInputError("tour must end at the start city")
    positions = tuple(instance.cities[i] for i in order)
    arr = np.array(positions, dtype=np.int64).reshape(len(positions), 2)
    sk = initial_visits(instance.start_pos, positions, instance.params)
    return positions, arr, sk


def bfs_ordered(instance: Instance, tour, box: SearchBox) -> Trajectory:
    """Ground-truth minimum-cost trajectory realizing a visit order:
    plain breadth-first layering over (configuration, visited) states."""
    positions, arr, sk = _ordered_setup(instance, tour, box)
    _check_dense(
        box.position_count * box.velocity_count * (len(positions) + 1),
        "ordered search")
    sp = instance.start_pos
    status, cost, path = _kernels.bfs_ordered(
        *_box_args(box), _model_arg(instance), arr, *_params_args(instance),
        sp[0], sp[1], 0, 0, sk, sp[0], sp[1])
    if status != 0:
        raise TrajectoryNotFound("no realizing trajectory within the box")
    return _path_to_trajectory(path)


class RemainingCosts:
    """Distance-to-goal lookup for every (configuration, visited) state
    of one ordered search, computed by one reverse breadth-first sweep."""

    def __init__(self, instance: Instance, tour, box: SearchBox):
        positions, arr, _ = _ordered_setup(instance, tour, box)
        self._m = len(positions)
        _check_dense(
            box.position_count * box.velocity_count * (self._m + 1),
            "remaining-cost sweep")
        self._box = box
        sp = instance.start_pos
        self._dist = _kernels.bfs_ordered_to_goal(
            *_box_args(box), _model_arg(instance), arr,
            *_params_args(instance), sp[0], sp[1])

    def cost_from(self, c: Configuration, visited: int) -> Optional[int]:
        """Remaining optimal cost, or None when the goal is unreachable."""
        if not self._box.contains(c) or not 0 <= visited <= self._m:
            raise InvalidInputError("state outside the searched space")
        d = int(self._dist[config_index(self._box, c) * (self._m + 1) + visited])
        return None if d < 0 else d


def ordered_cost_from(instance: Instance, tour, box: SearchBox,
                      c: Configuration, visited: int) -> Optional[int]:
    """Exact cost to finish the tour from an arbitrary mid-search state."""
    return RemainingCosts(instance, tour, box).cost_from(c, visited)


def _induced_order(instance: Instance, traj: Trajectory) -> Tour:
    """Visit order read off a trajectory: first-visit times, ties on one
    vector broken by projection along it, then by city index."""
    params = instance.params
    seen = [False] * len(instance.cities)
    order = [instance.start]
    seen[instance.start] = True
    for i, city in enumerate(instance.cities):
        if not seen[i] and initial_visits(traj.configurations[0].pos, [city], params):
            seen[i] = True
            order.append(i)
    for a, b in zip(traj.configurations, traj.configurations[1:]):
        hits = []
        for i, city in enumerate(instance.cities):
            if not seen[i] and segment_visits(a, b, city, params):
                t_n, t_d = projection_param(city, a.pos, b.pos)
                hits.append((t_n / t_d if t_d else 0.0, i))
        for _, i in sorted(hits):
            seen[i] = True
            order.append(i)
    return Tour.closed(order, instance.start)


def brute_force_vtsp(instance: Instance, box: SearchBox,
                     guard: int = 8) -> Tuple[Tour, Trajectory]:
    """Globally optimal unordered solution by breadth-first search over
    (configuration, visited-set) states; exponential in the city count,
    hence the size guard."""
    n = len(instance.cities)
    if n > guard:
        raise GuardError(f"brute force refused for {n} cities (guard {guard})")
    _check_dense(box.position_count * box.velocity_count * (1 << n),
                 "brute-force search")
    cities = np.array(instance.cities, dtype=np.int64).reshape(n, 2)
    smask = 0
    for i, city in enumerate(instance.cities):
        if initial_visits(instance.start_pos, [city], instance.params):
            smask |= 1 << i
    sp = instance.start_pos
    status, cost, path = _kernels.brute_mask(
        *_box_args(box), _model_arg(instance), cities,
        *_params_args(instance), sp[0], sp[1], smask)
    if status != 0:
        raise TrajectoryNotFound("no closed visiting trajectory within the box")
    traj = _path_to_trajectory(path)
    return _induced_order(instance, traj), traj
