"""Reductions to classical TSP variants, verifiable at tiny scale.

The chain is: enumerate every in-box configuration whose incoming vector
collects a city, group those configurations by city (duplicating a
configuration that collects several), and weight node pairs by their
configuration-graph distance (GroupTSP).  Zero-cost intra-group cycles
with shifted outgoing arcs then yield an asymmetric TSP, and a 3-node
split per node a symmetric one.

Two completions of the sketched constructions are made explicit here:

* the start city's group is restricted to the standstill configuration
  at the start, which encodes the required zero-velocity endpoints;
* every inter-group arc carries an additive penalty M larger than any
  tour, forcing optimal asymmetric tours to traverse groups contiguously
  (reported optima subtract ``n_groups * M``).

Instance sizes explode quickly, hence the aggressive guards: these
reductions exist to be cross-checked against the exact search, not to
solve anything large.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .configspace import SearchBox, config_distances_from, config_index
from .errors import GuardError, InvalidInputError, TrajectoryNotFound
from .kinematics import Configuration, Instance, segment_visits
from . import _kernels
import numpy as np

_HK_INF = 1 << 50
_HK_GUARD = 18

Weights = Tuple[Tuple[Optional[int], ...], ...]


@dataclass(frozen=True)
class GtspInstance:
    """Group TSP over visiting configurations: pick one node per group,
    minimize the cycle of configuration-graph distances."""

    nodes: Tuple[Configuration, ...]
    groups: Tuple[Tuple[int, ...], ...]
    group_city: Tuple[int, ...]
    weights: Weights

    def to_json_dict(self) -> dict:
        return {
            "kind": "gtsp",
            "nodes": [[*c.pos, *c.vel] for c in self.nodes],
            "groups": [list(g) for g in self.groups],
            "group_city": list(self.group_city),
            "weights": [list(row) for row in self.weights],
        }


@dataclass(frozen=True)
class AtspInstance:
    """Asymmetric TSP with an explicit absent-arc sentinel (None) and the
    Noon-Bean bookkeeping needed to read optima back."""

    n: int
    weights: Weights
    penalty: int
    n_groups: int

    def adjusted(self, tour_cost: int) -> int:
        return tour_cost - self.n_groups * self.penalty

    def to_json_dict(self) -> dict:
        return {
            "kind": "atsp",
            "n": self.n,
            "penalty": self.penalty,
            "n_groups": self.n_groups,
            "weights": [list(row) for row in self.weights],
        }


@dataclass(frozen=True)
class StspInstance:
    """Symmetric TSP from the 3-node split of an asymmetric instance."""

    n: int
    weights: Weights
    penalty: int
    n_groups: int

    def adjusted(self, tour_cost: int) -> int:
        return tour_cost - self.n_groups * self.penalty

    def to_json_dict(self) -> dict:
        return {
            "kind": "stsp",
            "n": self.n,
            "penalty": self.penalty,
            "n_groups": self.n_groups,
            "weights": [list(row) for row in self.weights],
        }


def _visiting_configs(instance: Instance, box: SearchBox, city) -> List[Configuration]:
    """Configurations inside the box (incoming position included) whose
    incoming vector collects the city, in (pos, vel) lexicographic order."""
    out = []
    (lx, ly), (hx, hy) = box.lo, box.hi
    mx, my = box.max_speed
    for px in range(lx, hx + 1):
        for py in range(ly, hy + 1):
            for vx in range(-mx, mx + 1):
                ax = px - vx
                if ax < lx or ax > hx:
                    continue
                for vy in range(-my, my + 1):
                    ay = py - vy
                    if ay < ly or ay > hy:
                        continue
                    c = Configuration((px, py), (vx, vy))
                    prev = Configuration((ax, ay), (0, 0))
                    if segment_visits(prev, c, city, instance.params):
                        out.append(c)
    return out


def to_gtsp(instance: Instance, box: SearchBox) -> GtspInstance:
    """Reduce a guarded instance to GroupTSP (cities <= 4, box area <= 400)."""
    n = len(instance.cities)
    if n > 4:
        raise GuardError(f"GTSP reduction refused for {n} cities (guard 4)")
    if box.area > 400:
        raise GuardError(f"GTSP reduction refused for box area {box.area} (guard 400)")
    nodes: List[Configuration] = []
    groups: List[Tuple[int, ...]] = []
    start_rest = instance.start_config()
    for ci, city in enumerate(instance.cities):
        if ci == instance.start:
            members = [start_rest]
        else:
            members = _visiting_configs(instance, box, city)
        if not members:
            raise TrajectoryNotFound(f"city {ci} has no visiting configuration in the box")
        ids = []
        for c in members:
            ids.append(len(nodes))
            nodes.append(c)
        groups.append(tuple(ids))

    uniq = sorted(set(nodes))
    dist_rows = {}
    for c in uniq:
        dist_rows[c] = config_distances_from(c, box, instance.model)
    weights = []
    for u in nodes:
        row = dist_rows[u]
        out = []
        for v in nodes:
            d = int(row[config_index(box, v)])
            out.append(None if d < 0 else d)
        weights.append(tuple(out))
    return GtspInstance(tuple(nodes), tuple(groups),
                        tuple(range(n)), tuple(weights))


def noon_bean(g: GtspInstance) -> AtspInstance:
    """Shifted-arc transformation to asymmetric TSP: zero-cost cycles
    inside each group, inter-group arcs re-sourced to the cycle
    predecessor and raised by the contiguity penalty M."""
    for gi, members in enumerate(g.groups):
        if not members:
            raise InvalidInputError(f"group {gi} is empty")
    n = len(g.nodes)
    group_of = {}
    for gi, members in enumerate(g.groups):
        for u in members:
            group_of[u] = gi
    penalty = 1 + sum(g.weights[u][v] for u in range(n) for v in range(n)
                      if u != v and g.weights[u][v] is not None)
    w: List[List[Optional[int]]] = [[None] * n for _ in range(n)]
    for members in g.groups:
        k = len(members)
        for i in range(k):
            if k > 1:
                w[members[i]][members[(i + 1) % k]] = 0
            src = members[(i - 1) % k]
            u = members[i]
            for v in range(n):
                if group_of[v] == group_of[u] or g.weights[u][v] is None:
                    continue
                w[src][v] = g.weights[u][v] + penalty
    return AtspInstance(n, tuple(tuple(r) for r in w), penalty, len(g.groups))


def atsp_to_stsp(a: AtspInstance) -> StspInstance:
    """3-node split: i1-i2-i3 chained at cost zero, arcs (i, j) become
    undirected edges (i3, j1); everything else stays absent."""
    n = 3 * a.n
    w: List[List[Optional[int]]] = [[None] * n for _ in range(n)]
    for i in range(a.n):
        w[3 * i][3 * i + 1] = w[3 * i + 1][3 * i] = 0
        w[3 * i + 1][3 * i + 2] = w[3 * i + 2][3 * i + 1] = 0
        for j in range(a.n):
            if i == j or a.weights[i][j] is None:
                continue
            cost = a.weights[i][j]
            if w[3 * i + 2][3 * j] is None or cost < w[3 * i + 2][3 * j]:
                w[3 * i + 2][3 * j] = w[3 * j][3 * i + 2] = cost
    return StspInstance(n, tuple(tuple(r) for r in w), a.penalty, a.n_groups)


def solve_gtsp_brute(g: GtspInstance, node_guard: int = 2000) -> Tuple[int, Tuple[int, ...]]:
    """Optimal group tour: enumerate every group order, and for each pick
    the cheapest representatives by a layered shortest-path sweep."""
    k = len(g.groups)
    n = len(g.nodes)
    if n > node_guard:
        raise GuardError(f"GTSP enumeration refused for {n} nodes (guard {node_guard})")
    W = np.full((n, n), _HK_INF, dtype=np.int64)
    for u in range(n):
        for v in range(n):
            if g.weights[u][v] is not None:
                W[u, v] = g.weights[u][v]
    members = [np.array(m, dtype=np.int64) for m in g.groups]
    best = None
    best_order = None
    best_start = None
    for perm in itertools.permutations(range(1, k)):
        order = (0,) + perm
        layers = [members[gi] for gi in order]
        for x in layers[0]:
            v = np.zeros(1, dtype=np.int64)
            cur = np.array([x], dtype=np.int64)
            for nxt in layers[1:]:
                v = (v[:, None] + W[np.ix_(cur, nxt)]).min(axis=0)
                cur = nxt
            total = int((v + W[cur, x]).min())
            if total < _HK_INF // 2 and (best is None or total < best):
                best = total
                best_order = order
                best_start = int(x)
    if best is None:
        raise TrajectoryNotFound("no feasible group tour")
    # rebuild the witness cycle for the winning order and start node
    layers = [members[gi] for gi in best_order]
    tables = []
    v = np.zeros(1, dtype=np.int64)
    cur = np.array([best_start], dtype=np.int64)
    for nxt in layers[1:]:
        step = v[:, None] + W[np.ix_(cur, nxt)]
        v = step.min(axis=0)
        tables.append((cur, step))
        cur = nxt
    closing = v + W[cur, best_start]
    pick = int(np.argmin(closing))
    cycle = [int(cur[pick])]
    for prev, step in reversed(tables):
        pick = int(np.argmin(step[:, pick]))
        cycle.append(int(prev[pick]))
    cycle.reverse()
    return best, tuple(cycle)


def _hk_cost(weights: Weights) -> int:
    n = len(weights)
    if n > _HK_GUARD:
        raise GuardError(f"exact tour refused for {n} nodes (guard {_HK_GUARD})")
    D = np.full((n, n), _HK_INF, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i != j and weights[i][j] is not None:
                D[i, j] = weights[i][j]
    cost = int(_kernels.held_karp_int(D, _HK_INF))
    if cost < 0:
        raise TrajectoryNotFound("no feasible tour")
    return cost


def solve_atsp(a: AtspInstance) -> int:
    """Exact optimal directed tour cost (bitmask dynamic programming)."""
    return _hk_cost(a.weights)


def solve_stsp(s: StspInstance) -> int:
    """Exact optimal undirected tour cost (bitmask dynamic programming)."""
    return _hk_cost(s.weights)
