import random

import pytest

from vectortsp import Instance, VisitParams


@pytest.fixture
def fact2():
    """Three collinear cities one unit apart, start at the left end."""
    return Instance(cities=((0, 0), (1, 0), (2, 0)), start=0)


def random_instance(rng: random.Random, n: int, hi: int,
                    params: VisitParams = VisitParams()) -> Instance:
    cities = set()
    while len(cities) < n:
        cities.add((rng.randint(0, hi), rng.randint(0, hi)))
    return Instance(cities=tuple(sorted(cities)), start=rng.randrange(n),
                    params=params)
