"""Atomic angular measures on the circle and their Fourier analysis.

Measures are finite sets of reduced integer directions with positive
rational weights summing to 1.  Fourier coefficients are taken as
fourier(k) = sum_j w_j * exp(i*k*theta_j); for even k this is an exact
complex rational, since exp(i*k*theta) = (x+iy)^k / (x^2+y^2)^(k/2) for the
direction (x, y).  Odd coefficients vanish exactly for antipodally
symmetric measures (every atom paired with its negation at equal weight)
and are otherwise evaluated at 120-bit precision and flagged inexact.

Discrepancy against the uniform measure is the supremum over all closed
arcs (singletons and wrap-around included) of |mu(I) - |I|/2pi|; for an
atomic measure that supremum is attained using atom endpoints and equals
max_i(F(t_i) - t_i/2pi) - min_j(F(t_j-) - t_j/2pi), which is what gets
computed, with arc lengths carried at 120 bits (error well below 1e-18 per
arc) and masses exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import mpmath as mp

from .directions import angle_float, angle_sort_key, reduce_direction
from .errors import DegenerateRadiusError, DomainError, VerificationError
from .hyperbolic import lattice_points_even_x, norm_occurs, orbit_points
from .zint import (
    GaussInt,
    even_x_count,
    factor,
    is_primary,
    prime_above,
    repr_two_squares,
    two_squares_count,
)

ANGLE_PRECISION_BITS = 120


@dataclass(frozen=True)
class FourierCoefficient:
    """One coefficient sum_j w_j e^(i k theta_j); exact means the rational
    pair is the true value, not a 120-bit approximation."""

    k: int
    real: Fraction
    imag: Fraction
    exact: bool

    @property
    def value(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def magnitude(self) -> float:
        return math.hypot(float(self.real), float(self.imag))


_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class AngularMeasure:
    """Probability measure on the circle supported on finitely many
    integer directions.  Atoms are reduced, distinct, angle-sorted."""

    atoms: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_weighted_directions(
        cls,
        pairs: Iterable[tuple[tuple[int, int], Fraction]],
        normalize: bool = False,
    ) -> "AngularMeasure":
        merged: dict[tuple[int, int], Fraction] = {}
        for (x, y), w in pairs:
            w = Fraction(w)
            if w <= 0:
                raise DomainError("atom weights must be positive")
            d = reduce_direction(x, y)
            merged[d] = merged.get(d, _ZERO) + w
        if not merged:
            raise DomainError("a measure needs at least one atom")
        total = sum(merged.values())
        if normalize:
            merged = {d: w / total for d, w in merged.items()}
        elif total != 1:
            raise DomainError(f"weights sum to {total}, not 1")
        ordered = sorted(merged.items(), key=lambda kv: angle_sort_key(kv[0]))
        return cls(tuple(ordered))

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, int]]) -> "AngularMeasure":
        pts = list(points)
        if not pts:
            raise DomainError("a measure needs at least one atom")
        w = Fraction(1, len(pts))
        return cls.from_weighted_directions((p, w) for p in pts)

    def __len__(self) -> int:
        return len(self.atoms)

    def directions(self) -> list[tuple[int, int]]:
        return [d for d, _ in self.atoms]

    def weights(self) -> list[Fraction]:
        return [w for _, w in self.atoms]

    def is_antipodal(self) -> bool:
        table = dict(self.atoms)
        return all(table.get((-x, -y)) == w for (x, y), w in self.atoms)

    def fourier(self, k: int) -> FourierCoefficient:
        """fourier(k) = sum w_j e^(i k theta_j); exact whenever possible."""
        if k == 0:
            return FourierCoefficient(0, _ONE, _ZERO, True)
        if k % 2 == 0:
            re, im = _ZERO, _ZERO
            kk = abs(k)
            for (x, y), w in self.atoms:
                zp = GaussInt(x, y) ** kk
                den = (x * x + y * y) ** (kk // 2)
                re += w * Fraction(zp.re, den)
                im += w * Fraction(zp.im if k > 0 else -zp.im, den)
            return FourierCoefficient(k, re, im, True)
        if self.is_antipodal():
            # atoms pair as theta and theta+pi; odd k flips the sign, so the
            # pair cancels exactly
            return FourierCoefficient(k, _ZERO, _ZERO, True)
        with mp.workprec(ANGLE_PRECISION_BITS):
            c = mp.mpf(0)
            s = mp.mpf(0)
            for (x, y), w in self.atoms:
                t = mp.atan2(y, x) * k
                wf = _fraction_to_mpf(w)
                c += wf * mp.cos(t)
                s += wf * mp.sin(t)
            return FourierCoefficient(k, _mpf_to_fraction(c), _mpf_to_fraction(s), False)


# ---------------------------------------------------------------------------
# measures attached to orbits and circles


def orbit_angle_measure(n: int) -> AngularMeasure:
    """Angular measure of the norm-n orbit seen from the disk center,
    weighted by matrix multiplicity."""
    if n < 2:
        raise DomainError("squared Frobenius norms start at 2")
    if n == 2:
        raise DegenerateRadiusError("norm 2 sits at the disk center")
    if not norm_occurs(n):
        raise DomainError(f"{n} is not a realized squared norm")
    pts = orbit_points(n)
    total = sum(c for _, c in pts)
    return AngularMeasure.from_weighted_directions(
        (pt, Fraction(c, total)) for pt, c in pts
    )


def circle_angle_measure(m: int) -> AngularMeasure:
    """Uniform angular measure on the lattice points of x^2 + y^2 = m."""
    if m <= 0:
        raise DomainError("need a circle of positive squared radius")
    r = two_squares_count(m)
    if r == 0:
        raise DomainError(f"{m} is not a sum of two squares")
    return AngularMeasure.from_points(repr_two_squares(m))


# ---------------------------------------------------------------------------
# Fourier functionals on a fixed circle


def _circle_states(points: list[tuple[int, int]], k: int, m: int) -> tuple[Fraction, Fraction]:
    """sum over points of e^(i k theta), exact, for even k; all points lie
    on the circle of squared radius m, so one common denominator works."""
    kk = abs(k)
    den = m ** (kk // 2)
    re_num = 0
    im_num = 0
    for x, y in points:
        zp = GaussInt(x, y) ** kk
        re_num += zp.re
        im_num += zp.im
    if k < 0:
        im_num = -im_num
    return Fraction(re_num, den), Fraction(im_num, den)


def fourier_full(m: int, k: int) -> FourierCoefficient:
    """Average of e^(i k theta) over all lattice points of the circle m.

    Exactly zero unless 4 | k (quarter-turn symmetry of the full point
    set); odd k vanishes by the antipodal pairing.
    """
    r = two_squares_count(m)
    if m <= 0 or r == 0:
        raise DomainError(f"no lattice points on the circle {m}")
    if k % 2 != 0:
        return FourierCoefficient(k, _ZERO, _ZERO, True)
    re, im = _circle_states(repr_two_squares(m), k, m)
    return FourierCoefficient(k, re / r, im / r, True)


def fourier_even_x(m: int, k: int) -> FourierCoefficient:
    """Average of e^(i k theta) over the even-x lattice points of m.

    Real for all even k (the point set is closed under conjugation), zero
    for odd k (closed under negation).
    """
    rs = even_x_count(m)
    if m <= 0 or rs == 0:
        raise DomainError(f"no even-x lattice points on the circle {m}")
    if k % 2 != 0:
        return FourierCoefficient(k, _ZERO, _ZERO, True)
    re, im = _circle_states(lattice_points_even_x(m), k, m)
    if im != 0:
        raise VerificationError("even-x Fourier sum must be real")
    return FourierCoefficient(k, re / rs, im / rs, True)


def fourier_primary(m: int, k: int) -> FourierCoefficient:
    """Primary-point Fourier sum: (4 / r(m)) * sum over primary z with
    norm m of e^(i k theta).  Defined for even k; identically zero for even
    m, which has no primary points."""
    r = two_squares_count(m)
    if m <= 0 or r == 0:
        raise DomainError(f"no lattice points on the circle {m}")
    if k % 2 != 0:
        raise DomainError("primary Fourier sums are defined for even k")
    pts = [(x, y) for x, y in repr_two_squares(m) if is_primary(GaussInt(x, y))]
    if not pts:
        return FourierCoefficient(k, _ZERO, _ZERO, True)
    re, im = _circle_states(pts, k, m)
    if im != 0:
        raise VerificationError("primary Fourier sum must be real for even k")
    scale = Fraction(4, r)
    return FourierCoefficient(k, re * scale, im * scale, True)


def _split_prime_power_coeff(p: int, e: int, k: int) -> tuple[Fraction, Fraction]:
    # (1/(e+1)) * sum_{j=0..e} pi^(k j) * conj(pi)^(k (e-j)) / p^(k e / 2)
    pi = prime_above(p)
    kk = abs(k)
    a = pi**kk
    b = a.conj()
    acc = GaussInt(0, 0)
    for j in range(e + 1):
        acc = acc + (a**j) * (b ** (e - j))
    den = p ** (kk * e // 2) * (e + 1)
    im = acc.im if k > 0 else -acc.im
    return Fraction(acc.re, den), Fraction(im, den)


def fourier_full_multiplicative(m: int, k: int) -> FourierCoefficient:
    """fourier_full rebuilt from the factorization of m; needs 4 | k (unit
    rotations only average out to the same value then)."""
    if k % 4 != 0:
        raise DomainError("multiplicative evaluation needs 4 | k")
    r = two_squares_count(m)
    if m <= 0 or r == 0:
        raise DomainError(f"no lattice points on the circle {m}")
    re, im = _ONE, _ZERO
    for p, e in factor(m):
        if p == 2:
            z = GaussInt(1, 1) ** (abs(k) * e)
            den = 2 ** (abs(k) * e // 2)
            pre = Fraction(z.re, den)
            pim = Fraction(z.im if k > 0 else -z.im, den)
        elif p % 4 == 3:
            continue  # even exponent forced by r > 0; contributes 1
        else:
            pre, pim = _split_prime_power_coeff(p, e, k)
        re, im = re * pre - im * pim, re * pim + im * pre
    return FourierCoefficient(k, re, im, True)


def fourier_primary_multiplicative(m: int, k: int) -> FourierCoefficient:
    """fourier_primary rebuilt from the factorization of m (even k)."""
    if k % 2 != 0:
        raise DomainError("primary Fourier sums are defined for even k")
    r = two_squares_count(m)
    if m <= 0 or r == 0:
        raise DomainError(f"no lattice points on the circle {m}")
    if m % 2 == 0:
        return FourierCoefficient(k, _ZERO, _ZERO, True)
    re, im = _ONE, _ZERO
    for p, e in factor(m):
        if p % 4 == 3:
            continue
        pre, pim = _split_prime_power_coeff(p, e, k)
        re, im = re * pre - im * pim, re * pim + im * pre
    if im != 0:
        raise VerificationError("primary Fourier product must be real")
    return FourierCoefficient(k, re, im, True)


class PairingCheck(NamedTuple):
    holds: bool
    even_x_value: Fraction
    primary_value: Fraction


def reflection_pairing_check(m: int, k: int) -> PairingCheck:
    """Exact test of even_x = (-1)^(k/2) * primary on an odd circle m.

    The even-x points of an odd circle are the primary points rotated by
    multiplication with units and conjugation; pairing them off yields the
    sign (-1)^(k/2) for even k.
    """
    if m % 2 == 0:
        raise DomainError("the pairing identity lives on odd circles")
    if k % 2 != 0:
        raise DomainError("the pairing identity concerns even k")
    v = fourier_even_x(m, k).real
    w = fourier_primary(m, k).real
    sign = -1 if (k // 2) % 2 else 1
    return PairingCheck(v == sign * w, v, w)


# ---------------------------------------------------------------------------
# the chi2 character sum


def chi2_sum_direct(m: int) -> Fraction:
    """(1/2) * sum of (z/|z|)^2 over lattice points z of the circle m with
    even imaginary part.  Zero when no points qualify."""
    if m <= 0:
        raise DomainError("need a circle of positive squared radius")
    re_num = 0
    im_num = 0
    for x, y in repr_two_squares(m):
        if y % 2 == 0:
            re_num += x * x - y * y
            im_num += 2 * x * y
    if im_num != 0:
        raise VerificationError("chi2 sum must be real (conjugation symmetry)")
    return Fraction(re_num, 2 * m)


def chi2_sum_multiplicative(m: int) -> Fraction:
    """Same sum from the factorization: split primes contribute the
    Chebyshev value U_e(cos 2*theta_p) with cos 2*theta_p = (a^2-b^2)/p from
    the primary prime a+bi; inert primes contribute (1+(-1)^e)/2; any factor
    of 2 kills the sum."""
    if m <= 0:
        raise DomainError("need a circle of positive squared radius")
    out = _ONE
    for p, e in factor(m):
        if p == 2:
            return _ZERO
        if p % 4 == 3:
            if e % 2 == 1:
                return _ZERO
            continue
        pi = prime_above(p)
        c = Fraction(pi.re * pi.re - pi.im * pi.im, p)
        u_prev, u_cur = _ONE, 2 * c  # U_0, U_1
        if e == 0:
            continue
        for _ in range(e - 1):
            u_prev, u_cur = u_cur, 2 * c * u_cur - u_prev
        out *= u_cur
    return out


def chi2_sum(m: int, check: bool = True) -> Fraction:
    """The chi2 character sum, via the multiplicative closed form; with
    check=True the direct summation is recomputed and must agree exactly."""
    value = chi2_sum_multiplicative(m)
    if check:
        direct = chi2_sum_direct(m)
        if direct != value:
            raise VerificationError(
                f"chi2 paths disagree at {m}: direct {direct} vs closed form {value}"
            )
    return value


# ---------------------------------------------------------------------------
# discrepancy and the Fourier upper bound


def _fraction_to_mpf(fr: Fraction):
    return mp.mpf(fr.numerator) / fr.denominator


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mp.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    out = Fraction(man) * (Fraction(2) ** exp)
    return -out if sign else out


def discrepancy(measure: AngularMeasure) -> Fraction:
    """Supremum over closed arcs of |mu(I) - |I|/2pi|, as an exact rational
    carrying the 120-bit arc-length evaluation (error < 1e-30)."""
    best_hi = None
    best_lo = None
    with mp.workprec(ANGLE_PRECISION_BITS):
        two_pi = 2 * mp.pi
        cum = _ZERO
        for (x, y), w in measure.atoms:
            theta = mp.atan2(y, x)
            if theta < 0:
                theta += two_pi
            g = theta / two_pi
            h_minus = _fraction_to_mpf(cum) - g
            cum += w
            h_plus = _fraction_to_mpf(cum) - g
            if best_hi is None or h_plus > best_hi:
                best_hi = h_plus
            if best_lo is None or h_minus < best_lo:
                best_lo = h_minus
        out = best_hi - best_lo
    return _mpf_to_fraction(out)


def fourier_magnitudes(measure: AngularMeasure, k_max: int) -> list[float]:
    """[|fourier(k)| for k = 1..k_max], evaluated at 120 bits."""
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    with mp.workprec(ANGLE_PRECISION_BITS):
        thetas = [mp.atan2(y, x) for (x, y), _ in measure.atoms]
        ws = [_fraction_to_mpf(w) for _, w in measure.atoms]
        mags = []
        for k in range(1, k_max + 1):
            c = mp.mpf(0)
            s = mp.mpf(0)
            for t, w in zip(thetas, ws):
                c += w * mp.cos(k * t)
                s += w * mp.sin(k * t)
            mags.append(float(mp.sqrt(c * c + s * s)))
    return mags


def erdos_turan_bounds_upto(measure: AngularMeasure, k_max: int) -> list[float]:
    """Erdos-Turan bounds [bound(K) for K = 1..k_max] with the fixed
    constants (1, 3): bound(K) = 1/(K+1) + 3 * sum_{k<=K} |fourier(k)|/k."""
    mags = fourier_magnitudes(measure, k_max)
    out = []
    acc = 0.0
    for k in range(1, k_max + 1):
        acc += 3.0 * mags[k - 1] / k
        out.append(1.0 / (k + 1) + acc)
    return out


def erdos_turan_bound(measure: AngularMeasure, k_max: int) -> float:
    """Upper bound for discrepancy(measure) from the first k_max Fourier
    magnitudes; always >= the true discrepancy."""
    return erdos_turan_bounds_upto(measure, k_max)[-1]


class SymmetryDefect(NamedTuple):
    c2: FourierCoefficient
    quarter_defect: float


def symmetry_defect(measure: AngularMeasure, k_max: int = 12) -> SymmetryDefect:
    """(fourier(2), max |fourier(k)| over 1 <= k <= k_max with 4 not
    dividing k).  A quarter-turn invariant measure has defect exactly 0;
    fourier(2) != 0 witnesses angular asymmetry."""
    c2 = measure.fourier(2)
    worst = 0.0
    for k in range(1, k_max + 1):
        if k % 4 == 0:
            continue
        worst = max(worst, measure.fourier(k).magnitude())
    return SymmetryDefect(c2, worst)


def convolve(m1: AngularMeasure, m2: AngularMeasure) -> AngularMeasure:
    """Convolution on the circle: directions multiply as Gaussian integers,
    weights multiply, coinciding directions merge exactly.  Satisfies
    fourier(k) of the result = product of the factors' fourier(k)."""
    pairs: dict[tuple[int, int], Fraction] = {}
    for (x1, y1), w1 in m1.atoms:
        for (x2, y2), w2 in m2.atoms:
            d = reduce_direction(x1 * x2 - y1 * y2, x1 * y2 + y1 * x2)
            w = w1 * w2
            pairs[d] = pairs.get(d, _ZERO) + w
    return AngularMeasure.from_weighted_directions(pairs.items())


# ---------------------------------------------------------------------------
# serialization

CSV_HEADER = ["x", "y", "weight_num", "weight_den", "angle_float"]


def weighted_points_csv_rows(
    pairs: Iterable[tuple[tuple[int, int], Fraction]],
) -> list[list[str]]:
    rows = []
    for (x, y), w in pairs:
        rows.append([str(x), str(y), str(w.numerator), str(w.denominator), repr(angle_float(x, y))])
    return rows


def measure_to_csv(measure: AngularMeasure) -> str:
    lines = [",".join(CSV_HEADER)]
    for row in weighted_points_csv_rows(measure.atoms):
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def measure_to_json(measure: AngularMeasure) -> dict:
    return {
        "atoms": [
            {
                "x": x,
                "y": y,
                "weight_num": str(w.numerator),
                "weight_den": str(w.denominator),
                "angle_float": angle_float(x, y),
            }
            for (x, y), w in measure.atoms
        ]
    }


def measure_from_json(data: dict) -> AngularMeasure:
    try:
        atoms = [
            ((int(a["x"]), int(a["y"])), Fraction(int(a["weight_num"]), int(a["weight_den"])))
            for a in data["atoms"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed measure payload: {exc}") from exc
    return AngularMeasure.from_weighted_directions(atoms)
