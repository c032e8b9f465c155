"""Independent reference implementations used to pin expected values.

Everything here is deliberately brute force and shares no code with the
package: circle points come from a double loop, factorizations from trial
division, matrices from a quadruple loop, discrepancy from an O(N^2) sweep
over all arc endpoints.  Slow but obviously correct at small scale.
"""

import math
from fractions import Fraction


def circle_points(m):
    """All (x, y) with x^2 + y^2 = m, by exhaustive search."""
    if m == 0:
        return [(0, 0)]
    pts = []
    r = math.isqrt(m)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if x * x + y * y == m:
                pts.append((x, y))
    return pts


def two_squares_count(m):
    return len(circle_points(m))


def even_x_count(m):
    return sum(1 for x, _ in circle_points(m) if x % 2 == 0)


def is_sum_two_squares(m):
    return two_squares_count(m) > 0


def trial_factor(n):
    """Trial division; fine up to ~1e12 in test time."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_member(n):
    """n is a realized squared norm iff n -+ 2 are both sums of two squares."""
    return n >= 2 and is_sum_two_squares(n - 2) and is_sum_two_squares(n + 2)


def matrices_with_norm(n):
    """Integer matrices (a,b,c,d), det 1, a^2+b^2+c^2+d^2 = n, one
    representative per +-1 pair with the first nonzero entry positive."""
    out = set()
    r = math.isqrt(n)
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            if a * a + b * b > n:
                continue
            for c in range(-r, r + 1):
                s = a * a + b * b + c * c
                if s > n:
                    continue
                for d in range(-r, r + 1):
                    if s + d * d == n and a * d - b * c == 1:
                        quad = (a, b, c, d)
                        for v in quad:
                            if v > 0:
                                out.add(quad)
                                break
                            if v < 0:
                                out.add((-a, -b, -c, -d))
                                break
    return sorted(out)


def primary_associates(re, im):
    """The associate(s) of re + im*i satisfying the primary normalization
    (imaginary part even, real part = 1 - imag mod 4)."""
    assoc = [(re, im), (-im, re), (-re, -im), (im, -re)]
    return [
        (a, b) for a, b in assoc if b % 2 == 0 and (a - (1 - b)) % 4 == 0
    ]


def fourier_float(atoms, k):
    """Direct complex-exponential sum over weighted directions."""
    total = 0j
    for (x, y), w in atoms:
        theta = math.atan2(y, x)
        total += float(w) * complex(math.cos(k * theta), math.sin(k * theta))
    return total


def discrepancy_float(atoms):
    """Two-sided sup over all closed arcs with endpoints at atom angles,
    including singletons and wrap-around arcs.  O(N^2) floats."""
    pts = []
    for (x, y), w in atoms:
        theta = math.atan2(y, x) % (2 * math.pi)
        pts.append((theta, float(w)))
    pts.sort()
    n = len(pts)
    best = 0.0
    tau = 2 * math.pi
    for i in range(n):
        mass = 0.0
        for j in range(n):
            a = pts[i][0]
            b = pts[(i + j) % n][0]
            mass += pts[(i + j) % n][1]
            length = (b - a) % tau if j or b != a else 0.0
            # closed arc [a, b]
            best = max(best, abs(mass - length / tau))
            # arc missing one endpoint approximates the open complement
            best = max(best, abs((1.0 - mass) - (tau - length) / tau))
    return best


def chi2_sum_direct(m):
    """Sum of (x^2 - y^2)/m over even-y points, halved."""
    total = Fraction(0)
    for x, y in circle_points(m):
        if y % 2 == 0:
            total += Fraction(x * x - y * y, m)
    return total / 2


def density_partial(x, k_terms):
    """Bare symmetric partial sum of the density series, no tail estimate."""
    total = 0.0
    for k in range(-k_terms, k_terms + 1):
        total += 1.0 / (1.0 + (x + k) ** 2)
    return total / math.pi
