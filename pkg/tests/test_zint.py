import math

import pytest

from hyplat.errors import CapacityError, DomainError
from hyplat.zint import (
    GaussInt,
    bigomega_split,
    even_x_count,
    factor,
    gauss_gcd,
    is_primary,
    is_prime,
    is_sum_two_squares,
    omega_split,
    primary_normalize,
    prime_above,
    prime_angle,
    prime_angle_folded,
    primes_upto,
    repr_two_squares,
    sqrt_minus_one,
    two_squares_count,
)

import oracles


# --- primality and factoring ---

def test_primes_upto_small():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_upto(1) == []


def test_is_prime_against_sieve():
    flags = set(primes_upto(2000))
    for n in range(2000):
        assert is_prime(n) == (n in flags), n


def test_is_prime_large():
    assert is_prime(999999999989)
    assert not is_prime(999999999991)  # 13 * 17 * 19 * 238141833
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)  # Mersenne composite: 193707721 * 761838257287


def test_factor_matches_trial_division():
    for n in list(range(2, 600)) + [2**31 - 1, 600851475143, 999999999989]:
        assert factor(n).pairs == tuple(oracles.trial_factor(n)), n


def test_factor_frozen_examples():
    assert factor(12).pairs == ((2, 2), (3, 1))
    assert factor(1).pairs == ()
    assert factor(999999999989).pairs == ((999999999989, 1),)


def test_factor_reassembles():
    f = factor(2 * 3 * 3 * 999999999989)
    n = 1
    for p, e in f:
        n *= p**e
    assert n == f.n == 2 * 9 * 999999999989


def test_factor_domain_and_capacity():
    with pytest.raises(DomainError):
        factor(0)
    with pytest.raises(DomainError):
        factor(-5)
    with pytest.raises(CapacityError):
        factor(1 << 127)


# --- two-squares counting ---

def test_two_squares_count_against_bruteforce():
    for m in range(0, 500):
        assert two_squares_count(m) == oracles.two_squares_count(m), m


def test_two_squares_frozen():
    assert two_squares_count(0) == 1
    assert two_squares_count(1) == 4
    assert two_squares_count(25) == 12
    assert two_squares_count(45) == 8
    assert two_squares_count(3) == 0


def test_even_x_count_against_bruteforce():
    for m in range(0, 400):
        assert even_x_count(m) == oracles.even_x_count(m), m


def test_even_x_count_mod4_structure():
    # odd m: half the points have even x; m = 2 mod 4: none; m = 0 mod 4: all
    assert even_x_count(5) == 4 == two_squares_count(5) // 2
    assert even_x_count(2) == 0
    assert even_x_count(10) == 0
    assert even_x_count(4) == two_squares_count(4) == 4
    assert even_x_count(32) == 4
    assert even_x_count(0) == 1


def test_is_sum_two_squares():
    members = [m for m in range(60) if is_sum_two_squares(m)]
    assert members == [m for m in range(60) if oracles.is_sum_two_squares(m)]


def test_repr_two_squares_frozen_25():
    pts = repr_two_squares(25)
    assert len(pts) == 12
    assert set(pts) == {
        (5, 0), (-5, 0), (0, 5), (0, -5),
        (3, 4), (3, -4), (-3, 4), (-3, -4),
        (4, 3), (4, -3), (-4, 3), (-4, -3),
    }


def test_repr_two_squares_against_bruteforce():
    for m in range(0, 400):
        assert sorted(repr_two_squares(m)) == sorted(oracles.circle_points(m)), m


# --- square roots of -1 ---

@pytest.mark.parametrize("p", [5, 13, 17, 29, 97, 10009, 100049])
def test_sqrt_minus_one(p):
    t = sqrt_minus_one(p)
    assert (t * t + 1) % p == 0
    assert t <= p - t


def test_sqrt_minus_one_large():
    p = 1000000009  # prime, 1 mod 4
    t = sqrt_minus_one(p)
    assert (t * t + 1) % p == 0


def test_sqrt_minus_one_rejects():
    with pytest.raises(DomainError):
        sqrt_minus_one(7)
    with pytest.raises(DomainError):
        sqrt_minus_one(15)


# --- Gaussian integers ---

def test_gauss_arithmetic():
    a = GaussInt(2, 1)
    b = GaussInt(1, -3)
    assert a + b == GaussInt(3, -2)
    assert a - b == GaussInt(1, 4)
    assert a * b == GaussInt(5, -5)
    assert (-a) == GaussInt(-2, -1)
    assert a.conj() == GaussInt(2, -1)
    assert a.norm() == 5
    assert a.times_i() == GaussInt(-1, 2)
    assert a**3 == a * a * a
    assert a**0 == GaussInt(1, 0)
    assert complex(a) == 2 + 1j


def test_gauss_pow_rejects_negative():
    with pytest.raises(DomainError):
        GaussInt(2, 1) ** -1


def test_gauss_gcd():
    g = gauss_gcd(GaussInt(5, 0), GaussInt(2, 1))
    assert g.norm() == 5
    g2 = gauss_gcd(GaussInt(3, 0), GaussInt(7, 0))
    assert g2.norm() == 1


# --- primary normalization ---

def test_is_primary_examples():
    assert is_primary(GaussInt(-1, 2))
    assert not is_primary(GaussInt(2, 1))
    assert not is_primary(GaussInt(1, 2))
    assert is_primary(GaussInt(1, 0))
    assert is_primary(GaussInt(3, 2))


def test_primary_normalize_matches_associate_oracle():
    for re in range(-9, 10):
        for im in range(-9, 10):
            n = re * re + im * im
            if n % 2 == 0 or n == 0:
                continue
            expected = oracles.primary_associates(re, im)
            assert len(expected) == 1, (re, im)
            assert primary_normalize(GaussInt(re, im)) == GaussInt(*expected[0])


def test_primary_normalize_frozen():
    assert primary_normalize(GaussInt(2, 1)) == GaussInt(-1, 2)
    assert primary_normalize(GaussInt(1, 0)) == GaussInt(1, 0)


def test_primary_normalize_rejects_even_norm():
    with pytest.raises(DomainError):
        primary_normalize(GaussInt(1, 1))


def test_primary_closed_under_product():
    # the product of primaries is primary
    for a in (GaussInt(-1, 2), GaussInt(3, 2), GaussInt(1, 4)):
        for b in (GaussInt(-1, 2), GaussInt(3, 2)):
            assert is_primary(a * b), (a, b)


def test_prime_above():
    g5 = prime_above(5)
    assert g5 == GaussInt(-1, 2)
    assert g5.norm() == 5 and is_primary(g5) and g5.im > 0
    g13 = prime_above(13)
    assert g13.norm() == 13 and is_primary(g13) and g13.im > 0
    assert prime_above(2) == GaussInt(1, 1)
    with pytest.raises(DomainError):
        prime_above(7)
    with pytest.raises(DomainError):
        prime_above(9)


# --- prime angles ---

def test_prime_angle_5():
    pa = prime_angle(5)
    assert pa.prime == GaussInt(-1, 2)
    assert pa.angle == pytest.approx(math.atan2(2, -1))


def test_prime_angle_folded():
    fa = prime_angle_folded(101)
    assert (fa.x, fa.y) == (10, 1)
    assert fa.angle == pytest.approx(math.atan(1 / 10))
    assert 0 <= fa.angle <= math.pi / 4
    fa5 = prime_angle_folded(5)
    assert (fa5.x, fa5.y) == (2, 1)


# --- split-prime counting functions ---

def test_omega_split():
    assert omega_split(45) == 1  # 45 = 3^2 * 5
    assert bigomega_split(45) == 1
    assert omega_split(325) == 2  # 325 = 5^2 * 13
    assert bigomega_split(325) == 3
    assert omega_split(8) == 0
    assert bigomega_split(8) == 0
    assert omega_split(1) == 0
