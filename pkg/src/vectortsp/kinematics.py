"""Vehicle model: configurations, successor rules, and visit semantics.

A configuration couples an integer lattice position with an integer
velocity.  In one time step the velocity may change by at most one unit
per axis (``NINE`` model) or on a single axis (``FIVE`` model), and the
new position is the old position displaced by the new velocity.

Visits are governed by three parameters: ``nu`` caps the speed at which
a city may be collected (``None`` means uncapped), ``alpha`` is the
maximum collection distance, and ``beta`` selects whether cities count
only at vector endpoints (``True``) or anywhere along a vector
(``False``).  All predicates compare squared integers, so there is no
floating point anywhere in the correctness-critical path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InvalidInputError

Vec = tuple  # integer lattice vector, one entry per dimension


class Configuration(NamedTuple):
    """Full vehicle state: where it is and how it is moving."""

    pos: Vec
    vel: Vec

    def inverse(self) -> "Configuration":
        """Same movement in the opposite direction."""
        return inverse(self)


class SuccessorModel(Enum):
    """Per-step velocity change rule."""

    NINE = "succ9"  # every component may change by +-1
    FIVE = "succ5"  # at most one component changes, by +-1


@dataclass(frozen=True)
class VisitParams:
    """Visit semantics (speed cap, collection radius, endpoint-only flag)."""

    nu: Optional[int] = None
    alpha: int = 0
    beta: bool = False

    def __post_init__(self):
        if self.nu is not None and self.nu < 0:
            raise InvalidInputError("nu must be None or a non-negative integer")
        if self.alpha < 0:
            raise InvalidInputError("alpha must be a non-negative integer")


@dataclass(frozen=True)
class Instance:
    """A problem instance: distinct cities, a start city, and model knobs."""

    cities: tuple
    start: int = 0
    params: VisitParams = field(default_factory=VisitParams)
    model: SuccessorModel = SuccessorModel.NINE

    def __post_init__(self):
        cities = tuple(tuple(int(x) for x in c) for c in self.cities)
        object.__setattr__(self, "cities", cities)
        if not cities:
            raise InvalidInputError("instance needs at least one city")
        dims = {len(c) for c in cities}
        if len(dims) != 1 or 0 in dims:
            raise InvalidInputError("cities must share one dimension (at least 1)")
        if len(set(cities)) != len(cities):
            raise InvalidInputError("cities must be pairwise distinct")
        if not 0 <= self.start < len(cities):
            raise InvalidInputError("start index out of range")

    @property
    def dim(self) -> int:
        return len(self.cities[0])

    @property
    def start_pos(self) -> Vec:
        return self.cities[self.start]

    def start_config(self) -> Configuration:
        zero = tuple(0 for _ in range(self.dim))
        return Configuration(self.start_pos, zero)


def successors(c: Configuration, model: SuccessorModel):
    """All configurations reachable from ``c`` in one step, in a fixed
    deterministic enumeration order (velocity deltas ascending per axis)."""
    d = len(c.pos)
    if model is SuccessorModel.NINE:
        deltas = itertools.product((-1, 0, 1), repeat=d)
    else:
        axis_deltas = [tuple([0] * d)]
        for axis in range(d):
            for step in (-1, 1):
                delta = [0] * d
                delta[axis] = step
                axis_deltas.append(tuple(delta))
        deltas = sorted(axis_deltas)
    out = []
    for delta in deltas:
        vel = tuple(v + dv for v, dv in zip(c.vel, delta))
        pos = tuple(p + v for p, v in zip(c.pos, vel))
        out.append(Configuration(pos, vel))
    return tuple(out)


def is_successor(c: Configuration, c_next: Configuration, model: SuccessorModel) -> bool:
    """Membership test equivalent to ``c_next in successors(c, model)``."""
    dv = tuple(b - a for a, b in zip(c.vel, c_next.vel))
    if any(abs(x) > 1 for x in dv):
        return False
    if model is SuccessorModel.FIVE and sum(1 for x in dv if x != 0) > 1:
        return False
    return all(p + v == q for p, v, q in zip(c.pos, c_next.vel, c_next.pos))


def inverse(c: Configuration) -> Configuration:
    """The same displacement in the opposite direction, reading the
    velocity as the move about to be made: ((pos+vel), -vel).  An
    involution.

    Note the asymmetry with ``successors``, where velocities are the move
    just made; ``reverse_step`` is the reversal map consistent with that
    reading, and ``time_reverse`` flips whole trajectories.
    """
    pos = tuple(p + v for p, v in zip(c.pos, c.vel))
    vel = tuple(-v for v in c.vel)
    return Configuration(pos, vel)


def reverse_step(c: Configuration) -> Configuration:
    """The arriving vector of ``c`` traversed backwards: ((pos-vel), -vel).
    Satisfies: c' in successors(c) iff reverse_step(c) in
    successors(reverse_step(c')).  An involution.
    """
    pos = tuple(p - v for p, v in zip(c.pos, c.vel))
    vel = tuple(-v for v in c.vel)
    return Configuration(pos, vel)


def time_reverse(traj: Sequence[Configuration]) -> tuple:
    """The trajectory traversed backwards: the reversed lattice path with
    negated arriving velocities.  Valid whenever the input is; reversing
    twice restores the position sequence (the first configuration's
    stored velocity is a boundary condition and may differ).
    """
    if len(traj) == 0:
        raise InvalidInputError("a trajectory holds at least one configuration")
    neg = lambda v: tuple(-x for x in v)
    out = [Configuration(traj[-1].pos, neg(traj[-1].vel))]
    for i in range(len(traj) - 1, 0, -1):
        out.append(Configuration(traj[i - 1].pos, neg(traj[i].vel)))
    return tuple(out)


def is_valid_trajectory(traj: Sequence[Configuration], model: SuccessorModel) -> bool:
    """True iff every consecutive pair is a legal step."""
    if len(traj) == 0:
        raise InvalidInputError("a trajectory holds at least one configuration")
    return all(is_successor(a, b, model) for a, b in zip(traj, traj[1:]))


def _sq(v: Iterable[int]) -> int:
    return sum(x * x for x in v)


def point_segment_dist_sq_le(p: Vec, a: Vec, b: Vec, limit: int) -> bool:
    """Exact test: squared Euclidean distance from point ``p`` to the closed
    segment ``[a, b]`` is at most ``limit``.

    Interior distances are the rational cross(ab, ap)^2 / |ab|^2, compared
    by cross-multiplying so everything stays in integers.  Only meaningful
    for 2D segments; degenerate segments fall back to the point distance.
    """
    ab = tuple(y - x for x, y in zip(a, b))
    ap = tuple(y - x for x, y in zip(a, p))
    ab2 = _sq(ab)
    if ab2 == 0:
        return _sq(ap) <= limit
    t = sum(x * y for x, y in zip(ap, ab))
    if t <= 0:
        return _sq(ap) <= limit
    if t >= ab2:
        return _sq(tuple(y - x for x, y in zip(b, p))) <= limit
    cross = ap[0] * ab[1] - ap[1] * ab[0]
    return cross * cross <= limit * ab2


def projection_param(p: Vec, a: Vec, b: Vec):
    """Position of the closest segment point, as the exact fraction
    (numerator, denominator) of the parameter in [0, 1]."""
    ab = tuple(y - x for x, y in zip(a, b))
    ab2 = _sq(ab)
    if ab2 == 0:
        return 0, 1
    t = sum((y - x) * z for x, y, z in zip(a, p, ab))
    return min(max(t, 0), ab2), ab2


def segment_visits(c: Configuration, c_next: Configuration, city: Vec,
                   params: VisitParams) -> bool:
    """Does the vector from ``c`` to ``c_next`` collect ``city``?

    Speed is the Euclidean norm of the arriving velocity; the distance is
    measured to the arrival position when ``beta`` is set, and to the full
    closed segment otherwise.
    """
    if params.nu is not None and _sq(c_next.vel) > params.nu * params.nu:
        return False
    limit = params.alpha * params.alpha
    if params.beta:
        return _sq(tuple(y - x for x, y in zip(c_next.pos, city))) <= limit
    return point_segment_dist_sq_le(city, c.pos, c_next.pos, limit)


def rest_visits(pos: Vec, city: Vec, params: VisitParams) -> bool:
    """Visit test for a vehicle standing still at ``pos`` (speed 0 always
    passes the speed cap; the segment degenerates to the point)."""
    return _sq(tuple(y - x for x, y in zip(pos, city))) <= params.alpha * params.alpha


def advance_visits(c: Configuration, c_next: Configuration,
                   tour_suffix: Sequence[Vec], params: VisitParams) -> int:
    """Number of cities consumed from the front of ``tour_suffix`` by this
    vector.

    Consumption is greedy: it stops at the first city the vector does not
    visit.  When ``beta`` is false, consumed cities must additionally sit in
    non-decreasing order of their (clamped) projection onto the segment, so
    a single vector cannot collect ordered cities it passes backwards.
    """
    count = 0
    prev = (0, 1)  # projection fraction of the last consumed city
    for city in tour_suffix:
        if not segment_visits(c, c_next, city, params):
            break
        if not params.beta:
            cur = projection_param(city, c.pos, c_next.pos)
            if cur[0] * prev[1] < prev[0] * cur[1]:
                break
            prev = cur
        count += 1
    return count


def initial_visits(pos: Vec, tour_positions: Sequence[Vec], params: VisitParams) -> int:
    """Cities consumed by the initial at-rest configuration at ``pos``."""
    count = 0
    for city in tour_positions:
        if not rest_visits(pos, city, params):
            break
        count += 1
    return count
