"""Modular-group matrices of fixed Frobenius norm and their orbit points.

A matrix [[a, b], [c, d]] with det 1 moves the point i of the upper half
plane to (x3 + i)/x2 where x3 = a*c + b*d and x2 = c^2 + d^2.  Mapped to the
unit disk (centered at i), that orbit point has direction (2*x3, x4) with
x4 = (a^2 + b^2) - (c^2 + d^2), a lattice point on the circle of squared
radius n^2 - 4 with even first coordinate, where n is the squared Frobenius
norm of the matrix.  This module enumerates matrices two ways (an
O(n^(3/2)) brute force and a two-circle composition) and checks the
orbit-circle correspondence exactly.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .directions import angle_sort_key
from .errors import CapacityError, DegenerateRadiusError, DomainError, VerificationError
from .zint import even_x_count, is_sum_two_squares, repr_two_squares

MAX_BRUTEFORCE_NORM = 10_000


@dataclass(frozen=True, order=True)
class ModularMatrix:
    """An element of PSL2(Z), stored as the representative whose first
    nonzero entry (reading a, b, c, d) is positive."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def canonical(cls, a: int, b: int, c: int, d: int) -> "ModularMatrix":
        if a * d - b * c != 1:
            raise DomainError(f"determinant of ({a},{b},{c},{d}) is not 1")
        for v in (a, b, c, d):
            if v != 0:
                if v < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        return cls(a, b, c, d)

    @property
    def norm_sq(self) -> int:
        return self.a**2 + self.b**2 + self.c**2 + self.d**2

    def column_forms(self) -> tuple[int, int, int, int]:
        """(x1, x2, x3, x4) = (|col1|^2-ish forms used by the disk map)."""
        x1 = self.a**2 + self.b**2
        x2 = self.c**2 + self.d**2
        x3 = self.a * self.c + self.b * self.d
        return x1, x2, x3, x1 - x2

    def y_quadruple(self) -> tuple[int, int, int, int]:
        """(a+d, b-c, b+c, a-d): the first pair lies on the circle of
        squared radius n+2, the second on n-2."""
        return (self.a + self.d, self.b - self.c, self.b + self.c, self.a - self.d)

    @classmethod
    def from_y_quadruple(cls, y1: int, y2: int, y3: int, y4: int) -> "ModularMatrix":
        if (y1 - y4) % 2 != 0 or (y2 - y3) % 2 != 0:
            raise DomainError("parity mismatch: y1 = y4 and y2 = y3 (mod 2) required")
        return cls.canonical(
            (y1 + y4) // 2, (y2 + y3) // 2, (y3 - y2) // 2, (y1 - y4) // 2
        )


def hyperbolic_distance(n: int) -> float:
    """Hyperbolic distance from i to any orbit point of squared norm n."""
    if n < 2:
        raise DomainError("squared Frobenius norms start at 2")
    return math.acosh(n / 2)


def norm_occurs(n: int) -> bool:
    """Whether some modular-group matrix has squared Frobenius norm n.

    Equivalent to n^2 - 4 being a sum of two squares; since n - 2 and n + 2
    share at most a factor 4 and primes 3 (mod 4) are odd, that in turn
    splits into both factors being sums of two squares, which is what gets
    checked.
    """
    if n < 2:
        raise DomainError("squared Frobenius norms start at 2")
    return is_sum_two_squares(n - 2) and is_sum_two_squares(n + 2)


def orbit_point(m: ModularMatrix) -> tuple[Fraction, Fraction]:
    """The image of i in the upper half plane, as exact rationals
    (real part, imaginary part) = (x3/x2, 1/x2)."""
    _, x2, x3, _ = m.column_forms()
    return Fraction(x3, x2), Fraction(1, x2)


def disk_point(m: ModularMatrix) -> tuple[int, int]:
    """Integer direction (2*x3, x4) of the orbit point seen from the disk
    center; lies on the circle of squared radius norm_sq^2 - 4."""
    if m.norm_sq == 2:
        raise DegenerateRadiusError("norm 2 maps to the disk center; no direction")
    _, _, x3, x4 = m.column_forms()
    return 2 * x3, x4


def matrices_with_norm_bruteforce(n: int) -> list[ModularMatrix]:
    """All PSL2(Z) matrices with squared Frobenius norm n, by exhausting
    a, b, c with d solved from the determinant.  Capped at 1e4."""
    if n < 2:
        raise DomainError("squared Frobenius norms start at 2")
    if n > MAX_BRUTEFORCE_NORM:
        raise CapacityError(f"brute force capped at {MAX_BRUTEFORCE_NORM}")
    s = math.isqrt(n)
    found: set[tuple[int, int, int, int]] = set()

    axis = np.arange(-s, s + 1, dtype=np.int64)
    bb, cc = np.meshgrid(axis, axis, indexing="ij")
    bc1 = 1 + bb * cc
    norm_bc = bb * bb + cc * cc
    for a in range(-s, s + 1):
        if a == 0:
            # bc = -1 forces (b, c) = (1, -1) or (-1, 1); d^2 fills the rest
            rem = n - 2
            d = math.isqrt(rem) if rem >= 0 else -1
            if d >= 0 and d * d == rem:
                for b, c in ((1, -1), (-1, 1)):
                    for dd in {d, -d}:
                        found.add(_canon_tuple(0, b, c, dd))
            continue
        rem_a = n - a * a
        mask = (bc1 % a == 0)
        dd = np.where(mask, bc1 // a, 0)
        ok = mask & (norm_bc + dd * dd == rem_a)
        for b, c, d in zip(bb[ok].tolist(), cc[ok].tolist(), dd[ok].tolist()):
            found.add(_canon_tuple(a, b, c, d))
    return [ModularMatrix(*t) for t in sorted(found)]


def _canon_tuple(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    for v in (a, b, c, d):
        if v != 0:
            if v < 0:
                return (-a, -b, -c, -d)
            break
    return (a, b, c, d)


def matrices_with_norm(n: int) -> list[ModularMatrix]:
    """Same set as the brute force, via the two-circle parametrization:
    pairs on the circles n + 2 and n - 2 with matching parities."""
    if n < 2:
        raise DomainError("squared Frobenius norms start at 2")
    if not norm_occurs(n):
        return []
    plus = repr_two_squares(n + 2)
    minus = repr_two_squares(n - 2)
    found: set[tuple[int, int, int, int]] = set()
    for y1, y2 in plus:
        for y3, y4 in minus:
            if (y1 - y4) % 2 != 0 or (y2 - y3) % 2 != 0:
                continue
            a = (y1 + y4) // 2
            b = (y2 + y3) // 2
            c = (y3 - y2) // 2
            d = (y1 - y4) // 2
            if a * d - b * c != 1:
                raise VerificationError("two-circle pair broke the determinant")
            found.add(_canon_tuple(a, b, c, d))
    return [ModularMatrix(*t) for t in sorted(found)]


def lattice_points_even_x(m: int) -> list[tuple[int, int]]:
    """Lattice points on x^2 + y^2 = m with x even, sorted by angle."""
    if m == 0:
        return [(0, 0)]
    pts = [(x, y) for x, y in repr_two_squares(m) if x % 2 == 0]
    pts.sort(key=angle_sort_key)
    return pts


def orbit_points(n: int) -> list[tuple[tuple[int, int], int]]:
    """Disk directions of the norm-n orbit with matrix multiplicities,
    sorted by angle.  Every point is expected to be hit exactly twice (the
    stabilizer of i has order two); callers check, not assume."""
    if n == 2:
        raise DegenerateRadiusError("norm 2 sits at the disk center")
    counts = Counter(disk_point(m) for m in matrices_with_norm(n))
    return sorted(counts.items(), key=lambda kv: angle_sort_key(kv[0]))


@dataclass(frozen=True)
class CorrespondenceReport:
    """Outcome of checking the orbit-vs-circle angle correspondence at n."""

    n: int
    matrix_count: int
    point_count: int
    expected_count: int
    missing: tuple[tuple[int, int], ...]
    extra: tuple[tuple[int, int], ...]
    bad_multiplicity: tuple[tuple[tuple[int, int], int], ...]
    fast_path_agrees: bool
    passed: bool


def verify_angle_correspondence(n: int) -> CorrespondenceReport:
    """Check, for one n, that brute-force orbit directions coincide with the
    even-x lattice points on the circle n^2 - 4, each hit by exactly two
    matrices, and that the fast enumeration reproduces the brute force."""
    if n < 3:
        raise DomainError("correspondence checks start at n = 3")
    if not norm_occurs(n):
        raise DomainError(f"{n} is not a realized squared norm")
    brute = matrices_with_norm_bruteforce(n)
    counts = Counter(disk_point(m) for m in brute)
    expected = lattice_points_even_x(n * n - 4)
    expected_set = set(expected)
    got_set = set(counts)
    missing = tuple(sorted(expected_set - got_set))
    extra = tuple(sorted(got_set - expected_set))
    bad_mult = tuple(sorted((pt, c) for pt, c in counts.items() if c != 2))
    fast_agrees = matrices_with_norm(n) == brute
    passed = (
        not missing
        and not extra
        and not bad_mult
        and fast_agrees
        and len(brute) == 2 * even_x_count(n * n - 4)
    )
    return CorrespondenceReport(
        n=n,
        matrix_count=len(brute),
        point_count=len(got_set),
        expected_count=len(expected),
        missing=missing,
        extra=extra,
        bad_multiplicity=bad_mult,
        fast_path_agrees=fast_agrees,
        passed=passed,
    )
