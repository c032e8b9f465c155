"""Exact ordering of integer directions by angle.

A direction is a nonzero integer pair (x, y) read as the ray through the
origin.  All comparisons are integer-only (quadrant index plus a cross
product), so sorting by angle never touches floating point.  Angles start at
the positive x-axis and increase counterclockwise through [0, 2*pi).
"""

from __future__ import annotations

import functools
import math

from .errors import DomainError


def reduce_direction(x: int, y: int) -> tuple[int, int]:
    """Divide out gcd(|x|, |y|), keeping the sign pattern (the ray)."""
    if x == 0 and y == 0:
        raise DomainError("the zero vector has no direction")
    g = math.gcd(abs(x), abs(y))
    return x // g, y // g


def quadrant(x: int, y: int) -> int:
    # Boundaries are attached to the quadrant they open: (1,0) -> 0,
    # (0,1) -> 1, (-1,0) -> 2, (0,-1) -> 3.
    if x > 0 and y >= 0:
        return 0
    if x <= 0 and y > 0:
        return 1
    if x < 0 and y <= 0:
        return 2
    if x >= 0 and y < 0:
        return 3
    raise DomainError("the zero vector has no quadrant")


def angle_cmp(u: tuple[int, int], v: tuple[int, int]) -> int:
    """Exact three-way comparison of two directions by angle in [0, 2*pi)."""
    qu, qv = quadrant(*u), quadrant(*v)
    if qu != qv:
        return -1 if qu < qv else 1
    # Same quadrant: angle difference is below pi/2, so the sign of the
    # cross product decides. cross > 0 means v lies counterclockwise of u.
    cross = u[0] * v[1] - v[0] * u[1]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


angle_sort_key = functools.cmp_to_key(angle_cmp)


def angle_float(x: int, y: int) -> float:
    """Direction angle as a float in [0, 2*pi)."""
    a = math.atan2(y, x)
    return a if a >= 0.0 else a + 2.0 * math.pi
