import random
from collections import deque

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from vectortsp import (Configuration, Tour, estimate_remaining, leg_cost_from,
                       make_search_box, turning_points, unidim_cost)
from vectortsp import _kernels
from vectortsp.configspace import RemainingCosts
from tests.conftest import random_instance


def bfs_1d(src_pos: int, src_vel: int, lo: int, hi: int, vmax: int):
    """Independent 1D oracle: exact vector counts from (src_pos, src_vel)
    to every (pos, vel=0) state, speed changing by at most one per step."""
    dist = {}
    start = (src_pos, src_vel)
    dist[start] = 0
    q = deque([start])
    while q:
        pos, vel = q.popleft()
        d = dist[(pos, vel)]
        for dv in (-1, 0, 1):
            nv = vel + dv
            np_ = pos + nv
            if abs(nv) > vmax or np_ < lo or np_ > hi:
                continue
            if (np_, nv) not in dist:
                dist[(np_, nv)] = d + 1
                q.append((np_, nv))
    return dist


def test_unidim_cost_examples():
    assert unidim_cost(0) == 0
    assert unidim_cost(1) == 2
    assert unidim_cost(2) == 3
    assert unidim_cost(9) == 6
    assert unidim_cost(11) == 7
    assert unidim_cost(13) == 8


def test_unidim_cost_matches_1d_bfs():
    dist = bfs_1d(0, 0, -5, 520, 26)
    for d in range(0, 501):
        assert unidim_cost(d) == dist[(d, 0)], d


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_unidim_monotone_and_subadditive(a, b):
    assert unidim_cost(a) <= unidim_cost(a + b)
    assert unidim_cost(a + b) <= unidim_cost(a) + unidim_cost(b)


def test_turning_points_worked_example():
    plan = turning_points(5, [10, 14, 8, 3, 5])
    assert plan.legs == ((5, 14), (14, 3), (3, 5))
    assert plan.distances == (9, 11, 2)


def test_turning_points_monotone_and_constant():
    assert turning_points(0, [1, 2, 3]).legs == ((0, 3),)
    assert turning_points(4, [4, 4]).legs == ()
    assert turning_points(7, []).legs == ()


def test_turning_points_alternate():
    for start, seq in [(0, [5, 2, 9, 9, -1]), (3, [3, 1, 1, 8])]:
        legs = turning_points(start, seq).legs
        for (a1, b1), (a2, b2) in zip(legs, legs[1:]):
            assert b1 == a2
            assert (b1 - a1) * (b2 - a2) < 0
        assert all(a != b for a, b in legs)


def test_leg_cost_examples():
    assert leg_cost_from(0, 0, 13, True) == (8, 13)
    cost, carry = leg_cost_from(0, -2, 10, True)
    assert cost == 2 + unidim_cost(11) == 9 and carry == 10
    cost, carry = leg_cost_from(0, 3, 3, True)
    assert cost == unidim_cost(9) - 3 == 3 and carry == 3


def test_leg_cost_matches_1d_bfs_with_velocity():
    # moving away and overshooting cases against the exact 1D search
    dist = bfs_1d(0, -2, -40, 40, 12)
    assert leg_cost_from(0, -2, 10, True)[0] == dist[(10, 0)] == 9
    dist = bfs_1d(0, 3, -40, 40, 12)
    assert leg_cost_from(0, 3, 3, True)[0] == dist[(3, 0)] == 3
    dist = bfs_1d(0, 5, -60, 60, 12)
    cost, carry = leg_cost_from(0, 5, 1, False, p_next=-3)
    assert cost == 5 and carry == 0 + 5 * 4 // 2
    # lower bound: braking then returning can only be dearer in truth
    assert cost + unidim_cost(carry + 3) <= dist[(-3, 0)]


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_leg_cost_zero_speed_exact(x, p):
    assert leg_cost_from(x, 0, p, True) == (unidim_cost(abs(p - x)), p)


@settings(max_examples=40, deadline=None)
@given(st.integers(-15, 15), st.integers(-4, 4), st.integers(-15, 15))
def test_leg_cost_final_is_lower_bound(x, dx, p):
    dist = bfs_1d(x, dx, -200, 200, 22)
    assert leg_cost_from(x, dx, p, True)[0] <= dist[(p, 0)]


def test_estimate_worked_example():
    c = Configuration((5, 10), (0, 0))
    suffix = [(10, 12), (14, 7), (8, 1), (3, 5), (5, 10)]
    assert estimate_remaining(c, suffix) == 16
    x_plan = turning_points(5, [q[0] for q in suffix])
    assert x_plan.distances == (9, 11, 2)
    assert sum(unidim_cost(d) for d in x_plan.distances) == 16
    y_plan = turning_points(10, [q[1] for q in suffix])
    assert y_plan.distances == (2, 11, 9)
    assert sum(unidim_cost(d) for d in y_plan.distances) == 3 + 7 + 6 == 16


def test_estimate_single_target_and_empty():
    assert estimate_remaining(Configuration((0, 0), (0, 0)), [(13, 0)]) == 8
    assert estimate_remaining(Configuration((4, 7), (3, -2)), []) == 0


def test_estimate_spread_lower_bound():
    rng = random.Random(5)
    for _ in range(50):
        pts = [(rng.randint(0, 30), rng.randint(0, 30)) for _ in range(5)]
        c = Configuration(pts[0], (0, 0))
        est = estimate_remaining(c, pts[1:])
        for axis in range(2):
            vals = [p[axis] for p in pts]
            spread = max(vals) - min(vals)
            assert est >= unidim_cost(spread)


def test_kernel_estimate_matches_python():
    rng = random.Random(11)
    for _ in range(300):
        m = rng.randint(1, 7)
        pts = [(rng.randint(-12, 12), rng.randint(-12, 12)) for _ in range(m)]
        c = Configuration((rng.randint(-12, 12), rng.randint(-12, 12)),
                          (rng.randint(-5, 5), rng.randint(-5, 5)))
        arr = np.array(pts, dtype=np.int64)
        got = _kernels._h_state(c.pos[0], c.pos[1], c.vel[0], c.vel[1],
                                arr, 0, m, pts[-1][0], pts[-1][1], 1)
        assert int(got) == estimate_remaining(c, pts)


def ordered_1d_cost(x: int, dx: int, coords):
    """Exact 1D oracle: cheapest trajectory from (x, dx) that sweeps over
    the coordinates in order and stops on the last one.  Runs the 2D
    ordered search on a one-row box, where the y axis is pinned."""
    lo = min(coords + [x]) - 24
    hi = max(coords + [x]) + 24
    vmax = max(8, abs(dx) + 1)
    arr = np.array([[q, 0] for q in coords], dtype=np.int64)
    status, cost, _ = _kernels.bfs_ordered(
        lo, 0, hi, 0, vmax, 1, 9, arr, -1, 0, 0,
        x, 0, dx, 0, 0, coords[-1], 0)
    assert status == 0
    return int(cost)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_estimate_is_tight_lower_bound_in_1d(data):
    # the composed per-axis bound (turning decomposition + speed-aware
    # first leg) never exceeds the exact ordered 1D cost, even on
    # zig-zag sequences entered at speed
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    x = rng.randint(-10, 10)
    dx = rng.randint(-5, 5)
    coords = [rng.randint(-12, 12) for _ in range(rng.randint(1, 5))]
    truth = ordered_1d_cost(x, dx, coords)
    est = estimate_remaining(Configuration((x, 0), (dx, 0)),
                             [(q, 0) for q in coords])
    assert est <= truth
    if dx == 0:
        # from rest the leg decomposition is exactly achievable
        assert est == truth


def test_estimate_admissible_on_small_instances():
    # the load-bearing property: never above the exact remaining cost
    rng = random.Random(20)
    for _ in range(8):
        inst = random_instance(rng, rng.randint(2, 4), 10)
        tour = Tour.closed(
            [inst.start] + [i for i in range(len(inst.cities)) if i != inst.start],
            inst.start)
        box = make_search_box(inst)
        remaining = RemainingCosts(inst, tour, box)
        positions = tour.positions(inst)
        m = len(positions)
        for _ in range(120):
            c = Configuration(
                (rng.randint(box.lo[0], box.hi[0]), rng.randint(box.lo[1], box.hi[1])),
                (rng.randint(-3, 3), rng.randint(-3, 3)))
            k = rng.randint(0, m)
            truth = remaining.cost_from(c, k)
            if truth is None:
                continue
            assert estimate_remaining(c, positions[k:]) <= truth
