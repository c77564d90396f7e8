import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vectortsp import (Configuration, InvalidInputError, SuccessorModel,
                       VisitParams, advance_visits, inverse,
                       is_valid_trajectory, segment_visits, successors)
from vectortsp.kinematics import (is_successor, point_segment_dist_sq_le,
                                  reverse_step, time_reverse)

NINE = SuccessorModel.NINE
FIVE = SuccessorModel.FIVE

coords = st.integers(min_value=-20, max_value=20)
vels = st.integers(min_value=-6, max_value=6)
configs = st.builds(lambda a, b, c, d: Configuration((a, b), (c, d)),
                    coords, coords, vels, vels)


def test_successors_at_rest_nine():
    c = Configuration((0, 0), (0, 0))
    out = successors(c, NINE)
    assert len(out) == 9
    assert {s.vel for s in out} == set(itertools.product((-1, 0, 1), repeat=2))
    assert all(s.pos == s.vel for s in out)


def test_successors_at_rest_five():
    out = successors(Configuration((0, 0), (0, 0)), FIVE)
    assert len(out) == 5
    assert {s.vel for s in out} == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}


def test_successors_moving():
    out = successors(Configuration((5, 1), (3, -1)), NINE)
    assert len(out) == 9
    assert {s.pos[0] for s in out} == {7, 8, 9}
    assert {s.pos[1] for s in out} == {-1, 0, 1}
    for s in out:
        assert s.vel == (s.pos[0] - 5, s.pos[1] - 1)


@given(configs, st.sampled_from([NINE, FIVE]))
def test_successor_count(c, model):
    out = successors(c, model)
    assert len(out) == (9 if model is NINE else 5)
    assert len(set(out)) == len(out)
    assert all(is_successor(c, s, model) for s in out)


def test_inverse_examples():
    assert inverse(Configuration((0, 0), (2, 1))) == Configuration((2, 1), (-2, -1))
    assert inverse(Configuration((3, 4), (0, 0))) == Configuration((3, 4), (0, 0))


@given(configs)
def test_inverse_involution(c):
    assert inverse(inverse(c)) == c


@pytest.mark.parametrize("model", [NINE, FIVE])
def test_symmetry_exhaustive(model):
    # c' in succ(c) iff reverse_step(c) in succ(reverse_step(c')),
    # exhaustively over all small velocities and velocity deltas
    for vel in itertools.product(range(-5, 6), repeat=2):
        c = Configuration((0, 0), vel)
        for s in successors(c, model):
            assert is_successor(reverse_step(s), reverse_step(c), model)
        for dv in itertools.product((-2, -1, 0, 1, 2), repeat=2):
            cand = Configuration(
                tuple(p + v + d for p, v, d in zip(c.pos, c.vel, dv)),
                tuple(v + d for v, d in zip(c.vel, dv)))
            assert is_successor(c, cand, model) == is_successor(
                reverse_step(cand), reverse_step(c), model)


@given(configs)
def test_reverse_step_involution(c):
    assert reverse_step(reverse_step(c)) == c


def test_trajectory_validity():
    path = [Configuration((0, 0), (0, 0)), Configuration((1, 0), (1, 0)),
            Configuration((2, 0), (1, 0)), Configuration((2, 0), (0, 0)),
            Configuration((1, 0), (-1, 0)), Configuration((0, 0), (-1, 0)),
            Configuration((0, 0), (0, 0))]
    assert is_valid_trajectory(path, NINE)
    assert is_valid_trajectory([Configuration((3, 3), (1, -2))], NINE)
    assert not is_valid_trajectory(
        [Configuration((0, 0), (0, 0)), Configuration((2, 0), (2, 0))], NINE)


def test_trajectory_empty_rejected():
    with pytest.raises(InvalidInputError):
        is_valid_trajectory([], NINE)


@settings(max_examples=60)
@given(st.data())
def test_trajectory_reversal(data):
    model = data.draw(st.sampled_from([NINE, FIVE]))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    path = [Configuration((0, 0), (0, 0))]
    for _ in range(rng.randint(1, 12)):
        path.append(rng.choice(successors(path[-1], model)))
    assert is_valid_trajectory(path, model)
    back = time_reverse(path)
    assert is_valid_trajectory(back, model)
    assert [c.pos for c in back] == [c.pos for c in reversed(path)]


def test_time_reverse_round_trip_positions():
    path = [Configuration((0, 0), (0, 0)), Configuration((1, 0), (1, 0)),
            Configuration((2, 0), (1, 0)), Configuration((2, 0), (0, 0))]
    twice = time_reverse(time_reverse(path))
    assert is_valid_trajectory(twice, NINE)
    assert [c.pos for c in twice] == [c.pos for c in path]


def test_segment_visits_speed_and_distance():
    params = VisitParams(nu=None, alpha=2, beta=False)
    a = Configuration((0, 0), (6, 0))
    b = Configuration((7, 0), (7, 0))
    assert segment_visits(a, b, (4, -2), params)
    # the speed cap is inclusive: a speed-7 vector needs nu >= 7
    assert segment_visits(a, b, (4, -2), VisitParams(nu=7, alpha=2, beta=False))
    assert not segment_visits(a, b, (4, -2), VisitParams(nu=6, alpha=2, beta=False))
    assert not segment_visits(a, b, (4, -2), VisitParams(nu=None, alpha=1, beta=False))
    assert not segment_visits(a, b, (4, -2), VisitParams(nu=None, alpha=2, beta=True))


def test_segment_visits_zero_distance_endpoint():
    a = Configuration((3, 3), (1, 0))
    b = Configuration((4, 3), (1, 0))
    assert segment_visits(a, b, (4, 3), VisitParams(nu=None, alpha=0, beta=True))
    assert segment_visits(a, b, (3, 3), VisitParams(nu=None, alpha=5, beta=False))


def test_segment_start_counts_with_open_completion():
    # a city on the segment's first endpoint is collected when beta is unset
    a = Configuration((2, 2), (0, 0))
    b = Configuration((3, 2), (1, 0))
    assert segment_visits(a, b, (2, 2), VisitParams())
    assert not segment_visits(a, b, (2, 2), VisitParams(beta=True))


@given(st.tuples(coords, coords), st.tuples(coords, coords), st.tuples(coords, coords))
def test_point_on_segment_predicate(p, a, b):
    # alpha = 0, beta = False is exactly lattice point-on-segment membership
    hit = point_segment_dist_sq_le(p, a, b, 0)
    ab = (b[0] - a[0], b[1] - a[1])
    ap = (p[0] - a[0], p[1] - a[1])
    collinear = ab[0] * ap[1] - ab[1] * ap[0] == 0
    t = ap[0] * ab[0] + ap[1] * ab[1]
    within = 0 <= t <= ab[0] ** 2 + ab[1] ** 2
    expected = collinear and within if ab != (0, 0) else p == a
    assert hit == expected


def test_advance_visits_along_segment():
    a = Configuration((0, 0), (0, 0))
    b = Configuration((7, 0), (7, 0))
    assert advance_visits(a, b, [(3, 0), (5, 0)], VisitParams()) == 2
    assert advance_visits(a, b, [(5, 0), (3, 0)], VisitParams()) == 1
    assert advance_visits(a, b, [], VisitParams()) == 0


def test_advance_visits_stops_at_first_miss():
    a = Configuration((0, 0), (0, 0))
    b = Configuration((7, 0), (7, 0))
    # (9,0) is off the segment, so (5,0) behind it is never reached
    assert advance_visits(a, b, [(3, 0), (9, 0), (5, 0)], VisitParams()) == 1


def test_advance_visits_beta_has_no_ordering():
    params = VisitParams(nu=None, alpha=2, beta=True)
    a = Configuration((0, 0), (0, 0))
    b = Configuration((4, 0), (4, 0))
    assert advance_visits(a, b, [(5, 0), (3, 0)], params) == 2
