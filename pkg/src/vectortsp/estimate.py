"""Lower bounds on trajectory cost from per-dimension projections.

Covering ``d`` units on one axis from rest to rest takes exactly
``ceil(2*sqrt(d))`` vectors.  An ordered sequence of target coordinates
compresses into monotone legs separated by turning points, where the
axis velocity must pass through zero; summing the rest-to-rest cost of
every leg therefore lower-bounds the cost of any trajectory realizing
the sequence.  The first leg is special because the vehicle may start
with nonzero axis velocity; ``leg_cost_from`` handles the three cases
(moving away, braking past the target, heading for it).

The bound is evaluated per dimension and the maximum taken; it never
overestimates, which is what the trajectory search relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .kinematics import Configuration, Vec, VisitParams


def unidim_cost(d: int) -> int:
    """Vectors needed to cover ``d`` axis units from rest to rest:
    the least ``m`` with ``m*m >= 4*d`` (exact integer arithmetic)."""
    if d < 0:
        raise ValueError("distance must be non-negative")
    r = math.isqrt(4 * d)
    return r if r * r == 4 * d else r + 1


@dataclass(frozen=True)
class TurningPlan:
    """Monotone legs of a one-dimensional visit sequence.

    Legs are (from, to) coordinate pairs; consecutive legs alternate
    direction and every leg has nonzero length.  An empty plan means the
    sequence never leaves the start coordinate.
    """

    legs: Tuple[Tuple[int, int], ...]

    @property
    def distances(self) -> Tuple[int, ...]:
        return tuple(abs(b - a) for a, b in self.legs)


def turning_points(start: int, projected: Sequence[int]) -> TurningPlan:
    """Compress a coordinate sequence into maximal monotone legs.

    Running extremes become turning points, duplicates collapse, and the
    final coordinate always ends the last leg.
    """
    pts = [start]
    for q in projected:
        if q == pts[-1]:
            continue
        if len(pts) >= 2 and ((pts[-1] - pts[-2] > 0) == (q - pts[-1] > 0)):
            pts[-1] = q
        else:
            pts.append(q)
    return TurningPlan(tuple(zip(pts, pts[1:])))


def leg_cost_from(x: int, dx: int, p: int, is_final_leg: bool,
                  p_next: Optional[int] = None) -> Tuple[int, int]:
    """Lower bound for the first leg, which may start at speed ``dx``.

    Returns ``(cost, carry)`` where ``carry`` is the coordinate the next
    leg continues from: the target ``p`` itself, except when braking
    overshoots it, in which case it is the standstill coordinate beyond
    ``p`` (and the caller routes the following leg from there).  Exact
    when ``dx`` is zero, a lower bound otherwise.
    """
    if not is_final_leg and p_next is None:
        raise ValueError("interior legs need the next turning point")
    if p == x and dx == 0:
        return 0, p
    # Orient the axis so the leg runs in the positive direction.
    o = 1 if p > x else -1 if p < x else (-1 if dx > 0 else 1)
    xo, dxo, po = o * x, o * dx, o * p
    if dxo < 0:
        # Moving away: brake (|dx| vectors), then cover the gap from rest.
        stop = xo - dxo * (dxo + 1) // 2
        return -dxo + unidim_cost(po - stop), p
    overshoot = xo + dxo * (dxo - 1) // 2
    if dxo > 0 and overshoot > po:
        # Braking alone passes the target; stand still beyond it.
        cost = dxo
        if is_final_leg:
            cost += unidim_cost(overshoot - po)
        return cost, o * overshoot
    # Heading for the target: pretend the run started from rest at the
    # virtual launch point, minus the vectors already spent reaching x.
    virtual = xo - dxo * (dxo + 1) // 2
    return unidim_cost(po - virtual) - dxo, p


def _axis_cost(x: int, dx: int, plan: TurningPlan) -> int:
    if not plan.legs:
        if dx == 0:
            return 0
        # No axis movement required, but the axis velocity must still be
        # killed and the drift undone.
        a = abs(dx)
        return a + unidim_cost(a * (a - 1) // 2)
    first_to = plan.legs[0][1]
    p_next = plan.legs[1][1] if len(plan.legs) > 1 else None
    cost, carry = leg_cost_from(x, dx, first_to, len(plan.legs) == 1, p_next)
    cur = carry
    for _, b in plan.legs[1:]:
        cost += unidim_cost(abs(b - cur))
        cur = b
    return cost


def _final_anchor_cost(x: int, dx: int, p_final: int) -> int:
    cost, _ = leg_cost_from(x, dx, p_final, True)
    return cost


def estimate_remaining(c: Configuration, suffix: Sequence[Vec],
                       params: VisitParams = VisitParams()) -> int:
    """Admissible lower bound on the vectors still needed to visit
    ``suffix`` in order and stop on its last point.

    With a positive visit distance the turning-point argument no longer
    binds (cities may be collected from afar), so only the mandatory
    final stop is counted in that case.
    """
    if not suffix:
        return 0
    best = 0
    for d in range(len(c.pos)):
        x, dx = c.pos[d], c.vel[d]
        if params.alpha == 0:
            cost_d = _axis_cost(x, dx, turning_points(x, [q[d] for q in suffix]))
        else:
            cost_d = _final_anchor_cost(x, dx, suffix[-1][d])
        best = max(best, cost_d)
    return best
