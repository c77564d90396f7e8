"""High-level tour optimization.

``flip_vtsp`` adapts 2-opt local search to the acceleration model: tour
cost is measured by the trajectory oracle instead of Euclidean length,
the first improving flip is taken and the scan restarts, and the loop
ends at a tour no single flip improves.  Candidate evaluations are
bounded by the incumbent cost so losing candidates abort early, and
rejections are remembered (the incumbent only ever shrinks, so a tour
once proven non-improving stays non-improving).

``held_karp_etsp`` provides the exact Euclidean baseline tour by subset
dynamic programming, with deterministic lexicographic tie-breaking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .configspace import SearchBox, Tour, Trajectory
from .errors import GuardError, InvalidInputError
from .kinematics import Instance, Vec
from .oracle import astar_cost_bounded, limited_view, multipoint_astar

HELD_KARP_GUARD = 15


@dataclass(frozen=True)
class SolveReport:
    """What a flip run did: the tours, the certified trajectory, and how
    much oracle work it took."""

    initial_tour: Tour
    final_tour: Tour
    final_trajectory: Trajectory
    flips_applied: int
    oracle_calls: int
    etsp_cost: Optional[float] = None
    initial_cost: int = 0

    @property
    def final_cost(self) -> int:
        return self.final_trajectory.cost


def init_walk(instance: Instance) -> Tour:
    """Boustrophedon scan of the bounding box: rows bottom to top, even
    rows left to right and odd rows right to left, rotated so the start
    city leads."""
    if instance.dim != 2:
        raise InvalidInputError("init_walk supports 2D instances only")
    min_y = min(c[1] for c in instance.cities)

    def key(i: int):
        x, y = instance.cities[i]
        return (y, x if (y - min_y) % 2 == 0 else -x)

    walk = sorted(range(len(instance.cities)), key=key)
    at = walk.index(instance.start)
    return Tour.closed(walk[at:] + walk[:at], instance.start)


def flip(tour: Tour, i: int, j: int) -> Tour:
    """Reverse tour positions i..j (interior only; i == j is a no-op)."""
    n = tour.n
    if not (1 <= i <= j <= n - 1):
        raise InvalidInputError(f"flip indices must satisfy 1 <= i <= j <= {n - 1}")
    order = list(tour.order)
    order[i:j + 1] = order[i:j + 1][::-1]
    return Tour(tuple(order))


def _oracle(instance: Instance, tour: Tour, box: SearchBox,
            view: Optional[int], bound: Optional[int] = None):
    """Trajectory for a tour under the chosen oracle; None when a bound
    is given and the cost provably reaches it."""
    if view is None:
        if bound is None:
            return multipoint_astar(instance, tour, box)
        return astar_cost_bounded(instance, tour, box, bound)
    return limited_view(instance, tour, box, view, bound=bound)


def flip_vtsp(instance: Instance, box: SearchBox, view: Optional[int] = None,
              prefilter: Optional[float] = None,
              initial_tour: Optional[Tour] = None) -> SolveReport:
    """2-opt over oracle costs: scan flips in order, accept the first
    strict improvement, restart, stop when none improves.

    ``view`` selects the oracle (None = exact, an int = sliding window of
    that size).  ``prefilter`` skips flips whose Euclidean tour length
    exceeds the incumbent's by more than that fraction, saving oracle
    calls at the price of possibly missing improvements.
    """
    if initial_tour is None:
        tour = init_walk(instance)
    elif isinstance(initial_tour, Tour):
        tour = initial_tour
    else:
        tour = Tour.closed(tuple(initial_tour), instance.start)
    tour = tour.validate(instance)
    n = tour.n
    best_traj = _oracle(instance, tour, box, view)
    calls = 1
    best, cbest = tour, best_traj.cost
    initial_cost = cbest
    eu_best = tour.euclidean_length(instance)
    rejected = set()
    flips = 0
    improved = True
    while improved:
        improved = False
        for i in range(1, n):
            for j in range(i + 1, n):
                cand = flip(best, i, j)
                if cand.order in rejected:
                    continue
                if (prefilter is not None
                        and cand.euclidean_length(instance)
                        > eu_best * (1.0 + prefilter)):
                    continue
                res = _oracle(instance, cand, box, view, bound=cbest)
                calls += 1
                if res is None or res.cost >= cbest:
                    rejected.add(cand.order)
                    continue
                best, cbest, best_traj = cand, res.cost, res
                eu_best = cand.euclidean_length(instance)
                flips += 1
                improved = True
                break
            if improved:
                break
    return SolveReport(initial_tour=tour, final_tour=best,
                       final_trajectory=best_traj, flips_applied=flips,
                       oracle_calls=calls, initial_cost=initial_cost)


def held_karp_etsp(cities: Sequence[Vec], start: int = 0) -> Tuple[Tour, float]:
    """Exact minimum-length Euclidean closed tour by subset dynamic
    programming (refused above the guard; the table is O(n^2 2^n))."""
    n = len(cities)
    if n > HELD_KARP_GUARD:
        raise GuardError(f"Held-Karp refused for {n} cities (guard {HELD_KARP_GUARD})")
    if not 0 <= start < n:
        raise InvalidInputError("start index out of range")
    perm = [start] + sorted(i for i in range(n) if i != start)
    D = np.empty((n, n), dtype=np.float64)
    for a in range(n):
        for b in range(n):
            D[a, b] = math.dist(cities[perm[a]], cities[perm[b]])
    total, order = _kernels.held_karp_float(D)
    mapped = tuple(perm[int(i)] for i in order)
    return Tour(mapped), float(total)
