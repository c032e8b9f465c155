"""Limit density of orbit-point real parts mod 1, and empirical checks.

The real part of an orbit point is x3/x2; reduced mod 1, these values
approach a smooth density p(x) = (1/pi) * sum_k 1/(1 + (x+k)^2), which has
the closed form cosh(pi)*sinh(pi) / (cosh(pi)^2 - cos(pi*x)^2).  The series
route keeps an independent path for cross-checking the closed form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DomainError
from .hyperbolic import matrices_with_norm, norm_occurs

_COSH_PI = math.cosh(math.pi)
_SINH_PI = math.sinh(math.pi)
_COTH_PI = _COSH_PI / _SINH_PI


def density_closed(x: float) -> float:
    """Closed form of the density; periodic with period 1."""
    c = math.cos(math.pi * x)
    return _COSH_PI * _SINH_PI / (_COSH_PI * _COSH_PI - c * c)


def density_series(x: float, tol: float = 1e-12) -> float:
    """Series form: symmetric partial sums plus an integral tail estimate.

    The bare tail decays like 1/K, so the midpoint-rule value of the tail
    integral is added and only the midpoint error (< 1/(6*pi*(K-1)^3)) has
    to be pushed below tol.  Terms are combined with math.fsum, so roundoff
    is negligible and |density_series - density_closed| < 2*tol holds.
    """
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    k_terms = 1 + math.ceil((1.0 / (6.0 * math.pi * tol)) ** (1.0 / 3.0))
    k_terms = max(k_terms, 8)
    terms = [1.0 / (1.0 + (x + k) * (x + k)) for k in range(-k_terms, k_terms + 1)]
    # midpoint integral of both tails: arctan has the exact antiderivative
    terms.append(math.pi - math.atan(x + k_terms + 0.5) - math.atan(k_terms + 0.5 - x))
    return math.fsum(terms) / math.pi


def density_cdf(x: float) -> float:
    """Antiderivative of the closed form with F(0) = 0; F(x+1) = F(x)+1."""
    shift = math.floor(x)
    x -= shift
    if x == 0.0:
        return float(shift)
    if x == 0.5:
        return shift + 0.5
    val = math.atan(_COTH_PI * math.tan(math.pi * x)) / math.pi
    if x > 0.5:
        val += 1.0
    return shift + val


def density_grid(points: int, tol: float = 1e-12) -> list[tuple[float, float]]:
    """(x, p(x)) on the uniform grid of `points` nodes over [0, 1]."""
    if points < 2:
        raise DomainError("a grid needs at least two points")
    return [(i / (points - 1), density_closed(i / (points - 1))) for i in range(points)]


def real_parts_mod1(n: int) -> list[Fraction]:
    """Real parts x3/x2 mod 1 of the norm-n orbit, one per matrix, sorted.

    Defined for n >= 3; the degenerate n = 2 orbit is the center itself.
    """
    if n < 3:
        raise DomainError("real parts need n >= 3")
    if not norm_occurs(n):
        raise DomainError(f"{n} is not a realized squared norm")
    out = []
    for mat in matrices_with_norm(n):
        _, x2, x3, _ = mat.column_forms()
        out.append(Fraction(x3 % x2, x2))
    out.sort()
    return out


def real_parts_window(lo: int, hi: int) -> list[Fraction]:
    """Aggregated real parts mod 1 over all realized norms in [lo, hi]."""
    if lo > hi:
        raise DomainError("empty window")
    out: list[Fraction] = []
    for n in range(max(lo, 3), hi + 1):
        if norm_occurs(n):
            out.extend(real_parts_mod1(n))
    out.sort()
    return out


def ks_statistic(
    sample: Sequence[Fraction | float],
    cdf: Callable[[float], float] = density_cdf,
) -> float:
    """Two-sided Kolmogorov-Smirnov distance of a sample against a CDF."""
    if not sample:
        raise DomainError("KS statistic of an empty sample")
    xs = sorted(float(v) for v in sample)
    n = len(xs)
    worst = 0.0
    for i, x in enumerate(xs):
        f = cdf(x)
        worst = max(worst, f - i / n, (i + 1) / n - f)
    return worst
