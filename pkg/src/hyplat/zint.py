"""Exact arithmetic over Z and Z[i].

Deterministic factoring, sums of two squares, Gaussian primes with a fixed
choice of associate, and the angles attached to split primes.  Everything
here is exact integer/rational arithmetic; floats appear only in the angle
accessors, which are explicitly lossy views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CapacityError, DomainError, VerificationError

# Inputs wider than this are rejected up front: the deterministic factoring
# stack is only tuned (and tested) below this width.
MAX_INPUT_BITS = 126

# Witness set proving Miller-Rabin deterministic for n < 2^64; the extra
# witnesses keep the answer deterministic (and astronomically reliable)
# up to the width cap.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXTRA = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

_TRIAL_LIMIT = 10_000
_SQRT_M1_EXHAUSTIVE_LIMIT = 10_000

_small_prime_cache: list[int] = []


def primes_upto(n: int) -> list[int]:
    """Simple sieve of Eratosthenes, inclusive."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start:: p] = bytearray(len(range(start, n + 1, p)))
    return [i for i, alive in enumerate(sieve) if alive]


def _small_primes() -> list[int]:
    if not _small_prime_cache:
        _small_prime_cache.extend(primes_upto(_TRIAL_LIMIT))
    return _small_prime_cache


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin over the fixed witness set."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    witnesses = _MR_WITNESSES if n < (1 << 64) else _MR_WITNESSES + _MR_EXTRA
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of odd composite n.

    Brent's cycle variant with fixed start x0 = 2 and polynomial increment
    c = 1, 2, 3, ... — fully deterministic, no RNG.
    """
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r <<= 1
        if g == n:
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if g != n:
            return g
        c += 1  # rare: the whole sequence collapsed; restart with new c


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as a sorted tuple of (prime, exponent) pairs."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def __iter__(self):
        return iter(self.pairs)


def factor(n: int) -> Factorization:
    """Deterministic factorization of n >= 1.

    Trial division by primes below 1e4, then Miller-Rabin plus Brent's rho
    on what remains.  Same input, same output, every run.
    """
    if n <= 0:
        raise DomainError(f"factor() needs n >= 1, got {n}")
    if n.bit_length() > MAX_INPUT_BITS:
        raise CapacityError(f"{n.bit_length()}-bit input exceeds the {MAX_INPUT_BITS}-bit cap")
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(tuple(sorted(found.items())))


# ---------------------------------------------------------------------------
# sums of two squares


def two_squares_count(n: int) -> int:
    """Number of (x, y) in Z^2 with x^2 + y^2 = n. By convention 1 at n = 0."""
    if n < 0:
        raise DomainError("negative numbers are not sums of two squares")
    if n == 0:
        return 1
    count = 4
    for p, e in factor(n):
        if p % 4 == 1:
            count *= e + 1
        elif p % 4 == 3 and e % 2 == 1:
            return 0
    return count


def even_x_count(n: int) -> int:
    """Number of representations x^2 + y^2 = n with x even.

    Piecewise in n mod 4: half the count for odd n, zero for n = 2 (mod 4)
    (both coordinates are odd there), all of it for n = 0 (mod 4) (both are
    even).  n = 0 counts its single representation (0, 0).
    """
    if n < 0:
        raise DomainError("negative numbers are not sums of two squares")
    if n == 0:
        return 1
    r = two_squares_count(n)
    m = n % 4
    if m in (1, 3):
        return r // 2
    if m == 2:
        return 0
    return r


def is_sum_two_squares(n: int) -> bool:
    if n < 0:
        return False
    if n == 0:
        return True
    return all(e % 2 == 0 for p, e in factor(n) if p % 4 == 3)


def sqrt_minus_one(p: int) -> int:
    """The square root of -1 mod p with t <= p - t, for prime p = 1 (mod 4).

    Exhaustive search below 1e4; above that, deterministic exponentiation of
    candidate bases 2, 3, 5, ... until one lands on a genuine root.
    """
    if p % 4 != 1 or not is_prime(p):
        raise DomainError(f"{p} is not a prime congruent to 1 mod 4")
    if p < _SQRT_M1_EXHAUSTIVE_LIMIT:
        for t in range(2, p):
            if t * t % p == p - 1:
                return min(t, p - t)
        raise VerificationError(f"no root of -1 mod {p}")  # unreachable for genuine primes
    e = (p - 1) // 4
    q = 2
    while True:
        t = pow(q, e, p)
        if t * t % p == p - 1:
            return min(t, p - t)
        q += 1


# ---------------------------------------------------------------------------
# Gaussian integers


@dataclass(frozen=True)
class GaussInt:
    re: int
    im: int

    def __add__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __pow__(self, k: int) -> "GaussInt":
        if k < 0:
            raise DomainError("negative Gaussian powers are not integral")
        out = GaussInt(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def times_i(self) -> "GaussInt":
        return GaussInt(-self.im, self.re)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


ONE = GaussInt(1, 0)
UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


def _gauss_divmod(a: GaussInt, b: GaussInt) -> tuple[GaussInt, GaussInt]:
    # Round a/b to the nearest Gaussian integer; remainder norm < norm(b).
    nb = b.norm()
    t = a * b.conj()

    def _round_half(v: int) -> int:
        return (2 * v + nb) // (2 * nb) if v >= 0 else -((-2 * v + nb) // (2 * nb))

    q = GaussInt(_round_half(t.re), _round_half(t.im))
    return q, a - q * b


def gauss_gcd(a: GaussInt, b: GaussInt) -> GaussInt:
    while b.norm() != 0:
        _, r = _gauss_divmod(a, b)
        a, b = b, r
    return a


def is_primary(z: GaussInt) -> bool:
    """Primary associates: im even and re = 1 - im (mod 4). Needs odd norm."""
    return z.norm() % 2 == 1 and z.im % 2 == 0 and (z.re - (1 - z.im)) % 4 == 0


def primary_normalize(z: GaussInt) -> GaussInt:
    """The unique primary associate among z, iz, -z, -iz.

    Only elements of odd norm have one; even norm (or zero) is a domain
    error.
    """
    if z.norm() % 2 == 0:
        raise DomainError(f"no primary associate: norm of {z} is even")
    for u in UNITS:
        w = u * z
        if is_primary(w):
            return w
    raise DomainError(f"no primary associate found for {z}")  # unreachable for odd norm


def prime_above(p: int) -> GaussInt:
    """A Gaussian prime of norm p.

    For p = 1 (mod 4) returns the primary one with positive imaginary part;
    p = 2 returns 1 + i.  Inert primes (p = 3 mod 4) have no prime of norm p.
    """
    if p == 2:
        return GaussInt(1, 1)
    if p % 4 != 1 or not is_prime(p):
        raise DomainError(f"no Gaussian prime has norm {p}")
    t = sqrt_minus_one(p)
    g = gauss_gcd(GaussInt(p, 0), GaussInt(t, 1))
    if g.norm() != p:
        g = gauss_gcd(GaussInt(p, 0), GaussInt(p - t, 1))
    if g.norm() != p:
        raise DomainError(f"failed to split {p} in Z[i]")  # cannot happen for genuine primes
    g = primary_normalize(g)
    return g if g.im > 0 else primary_normalize(g.conj())


def _reps_from_pairs(
    pairs: tuple[tuple[int, int], ...],
    prime_cache: dict[int, GaussInt] | None = None,
) -> list[tuple[int, int]]:
    """All lattice points on the circle x^2 + y^2 = n, from a factorization.

    Composes Gaussian prime powers; returns [] when some prime 3 (mod 4)
    carries an odd exponent, and the single point (0, 0) for n = 0 by
    convention (callers pass the factorization of n >= 1 only).
    """
    base = ONE
    split: list[tuple[GaussInt, int]] = []
    for p, e in pairs:
        if p == 2:
            base = base * (GaussInt(1, 1) ** e)
        elif p % 4 == 3:
            if e % 2 == 1:
                return []
            base = base * GaussInt(p ** (e // 2), 0)
        else:
            if prime_cache is not None:
                pi = prime_cache.get(p)
                if pi is None:
                    pi = prime_cache[p] = prime_above(p)
            else:
                pi = prime_above(p)
            split.append((pi, e))
    combos = [base]
    for pi, e in split:
        pib = pi.conj()
        powers = [pi**j * pib ** (e - j) for j in range(e + 1)]
        combos = [z * w for z in combos for w in powers]
    out = []
    for z in combos:
        for u in UNITS:
            w = u * z
            out.append((w.re, w.im))
    out.sort()
    return out


def repr_two_squares(n: int) -> list[tuple[int, int]]:
    """All (x, y) in Z^2 with x^2 + y^2 = n, sorted lexicographically."""
    if n < 0:
        raise DomainError("negative numbers are not sums of two squares")
    if n == 0:
        return [(0, 0)]
    pts = _reps_from_pairs(factor(n).pairs)
    for x, y in pts:
        if x * x + y * y != n:
            raise VerificationError(f"composed point ({x},{y}) misses the circle {n}")
    return pts


class PrimeAngle(NamedTuple):
    angle: float
    prime: GaussInt


class FoldedAngle(NamedTuple):
    angle: float
    x: int
    y: int


def prime_angle(p: int) -> PrimeAngle:
    """Angle in (-pi, pi] of the primary prime of norm p with positive
    imaginary part, together with that prime exactly."""
    pi = prime_above(p)
    if p == 2:
        raise DomainError("p = 2 is ramified; no primary prime")
    return PrimeAngle(math.atan2(pi.im, pi.re), pi)


def prime_angle_folded(p: int) -> FoldedAngle:
    """Angle in [0, pi/4] of the representation p = x^2 + y^2, 0 <= y <= x."""
    pi = prime_above(p)
    if p == 2:
        raise DomainError("p = 2 is ramified")
    x, y = abs(pi.re), abs(pi.im)
    if y > x:
        x, y = y, x
    return FoldedAngle(math.atan2(y, x), x, y)


def omega_split(n: int) -> int:
    """Number of distinct primes = 1 (mod 4) dividing n."""
    return sum(1 for p, _ in factor(n) if p % 4 == 1)


def bigomega_split(n: int) -> int:
    """Total multiplicity of primes = 1 (mod 4) in n."""
    return sum(e for p, e in factor(n) if p % 4 == 1)
