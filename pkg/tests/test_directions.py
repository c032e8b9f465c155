import math
import random

from hyplat.directions import (
    angle_cmp,
    angle_float,
    angle_sort_key,
    quadrant,
    reduce_direction,
)
from hyplat.errors import DomainError

import pytest


def test_reduce_direction():
    assert reduce_direction(4, 6) == (2, 3)
    assert reduce_direction(-10, 5) == (-2, 1)
    assert reduce_direction(0, -7) == (0, -1)
    assert reduce_direction(3, 0) == (1, 0)


def test_reduce_rejects_origin():
    with pytest.raises(DomainError):
        reduce_direction(0, 0)


def test_quadrant_boundaries_open_forward():
    # each axis direction belongs to the quadrant it opens
    assert quadrant(1, 0) == 0
    assert quadrant(3, 1) == 0
    assert quadrant(0, 1) == 1
    assert quadrant(-2, 5) == 1
    assert quadrant(-1, 0) == 2
    assert quadrant(-1, -4) == 2
    assert quadrant(0, -1) == 3
    assert quadrant(2, -1) == 3


def test_angle_cmp_matches_atan2_on_random_directions():
    rng = random.Random(20240817)
    dirs = set()
    while len(dirs) < 400:
        x = rng.randint(-30, 30)
        y = rng.randint(-30, 30)
        if (x, y) != (0, 0):
            dirs.add((x, y))
    dirs = list(dirs)
    by_cmp = sorted(dirs, key=angle_sort_key)
    by_float = sorted(dirs, key=lambda v: (math.atan2(v[1], v[0]) % (2 * math.pi)))
    # equal angles (collinear directions) may differ in internal order, so
    # compare the angle sequences, not the tuples
    a = [math.atan2(y, x) % (2 * math.pi) for x, y in by_cmp]
    b = [math.atan2(y, x) % (2 * math.pi) for x, y in by_float]
    assert a == pytest.approx(b, abs=1e-12)


def test_angle_cmp_exact_on_collinear():
    assert angle_cmp((2, 3), (4, 6)) == 0
    assert angle_cmp((2, 3), (-4, -6)) != 0
    assert angle_cmp((1, 0), (1, 1)) == -1
    assert angle_cmp((1, 1), (1, 0)) == 1


def test_angle_float_range():
    assert angle_float(1, 0) == 0.0
    assert angle_float(0, 1) == pytest.approx(math.pi / 2)
    assert angle_float(-1, 0) == pytest.approx(math.pi)
    assert angle_float(1, -1) == pytest.approx(2 * math.pi - math.pi / 4)
    assert 0 <= angle_float(5, -1) < 2 * math.pi
