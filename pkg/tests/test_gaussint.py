"""Z[i] arithmetic tests, with the biquadratic symbol checked against a
direct exponentiation oracle that never leaves the ring."""

from __future__ import annotations

import random

import pytest

from hassefail.arith import jacobi_symbol, primes_up_to, quartic_symbol
from hassefail.gaussint import (
    GaussianInt,
    QuarticUnit,
    UNITS,
    biquadratic_symbol,
    gaussian_gcd,
    lemma7_check,
    primary_associate,
    split_prime,
)


def symbol_by_ring_exponentiation(alpha: GaussianInt, pi: GaussianInt) -> QuarticUnit:
    # oracle: square-and-multiply inside Z[i], reducing mod pi by divmod
    exp = (pi.norm() - 1) // 4
    acc = GaussianInt(1, 0)
    base = alpha % pi
    while exp:
        if exp & 1:
            acc = (acc * base) % pi
        base = (base * base) % pi
        exp >>= 1
    for k, u in enumerate(UNITS):
        if (acc - u) % pi == GaussianInt(0, 0):
            return QuarticUnit(k)
    raise AssertionError(f"{acc} is not congruent to a unit mod {pi}")


def test_norm_multiplicative():
    rng = random.Random(2)
    for _ in range(300):
        g = GaussianInt(rng.randrange(-50, 51), rng.randrange(-50, 51))
        h = GaussianInt(rng.randrange(-50, 51), rng.randrange(-50, 51))
        assert (g * h).norm() == g.norm() * h.norm()


def test_divmod_euclidean_exhaustive():
    box = range(-6, 7)
    for gr in box:
        for gi in box:
            for hr in box:
                for hi in box:
                    h = GaussianInt(hr, hi)
                    if h.norm() == 0:
                        continue
                    g = GaussianInt(gr, gi)
                    q, r = divmod(g, h)
                    assert q * h + r == g
                    assert r.norm() < h.norm()


def test_gaussian_gcd_divides():
    rng = random.Random(4)
    for _ in range(200):
        g = GaussianInt(rng.randrange(-40, 41), rng.randrange(-40, 41))
        h = GaussianInt(rng.randrange(-40, 41), rng.randrange(-40, 41))
        if g.norm() == 0 or h.norm() == 0:
            continue
        d = gaussian_gcd(g, h)
        assert (g % d).norm() == 0
        assert (h % d).norm() == 0


def test_split_prime_examples():
    assert split_prime(5).norm() == 5
    assert split_prime(13).norm() == 13
    assert split_prime(73).norm() == 73
    assert {abs(split_prime(13).re), abs(split_prime(13).im)} == {3, 2}
    assert {abs(split_prime(73).re), abs(split_prime(73).im)} == {8, 3}


def test_split_prime_canonical_form():
    for p in primes_up_to(1000):
        if p % 4 != 1:
            continue
        pi = split_prime(p)
        assert pi.norm() == p
        if p % 8 == 1:
            assert pi.re % 4 == 1 and pi.im % 4 == 0
        else:
            assert pi.re % 2 == 1 and pi.re > 0


def test_split_prime_rejects():
    for p in (7, 11, 2):
        with pytest.raises(ValueError):
            split_prime(p)


def test_primary_associate_norm_17():
    for seed in (GaussianInt(4, 1), GaussianInt(-1, 4), GaussianInt(1, -4)):
        prim = primary_associate(seed)
        assert prim.im % 4 == 0 and prim.re % 4 == 1
        assert prim in (GaussianInt(1, 4), GaussianInt(1, -4))


def test_primary_associate_enumerates_associates():
    pi = split_prime(73)
    prim = primary_associate(pi)
    assert prim in tuple(pi * u for u in UNITS)
    assert prim.re % 4 == 1 and prim.im % 4 == 0


def test_primary_associate_rejects_5_mod_8():
    with pytest.raises(ValueError):
        primary_associate(GaussianInt(2, 1))  # norm 5


def test_biquadratic_symbol_trivial_and_homomorphic():
    rng = random.Random(6)
    primes = [p for p in primes_up_to(300) if p % 4 == 1]
    for _ in range(150):
        p = primes[rng.randrange(len(primes))]
        pi = split_prime(p)
        assert biquadratic_symbol(GaussianInt(1, 0), pi).k == 0
        alpha = GaussianInt(rng.randrange(-20, 21), rng.randrange(-20, 21))
        if (alpha % pi).norm() == 0:
            continue
        sq = biquadratic_symbol(alpha * alpha, pi)
        single = biquadratic_symbol(alpha, pi)
        assert sq == single * single


def test_biquadratic_symbol_matches_ring_oracle():
    rng = random.Random(8)
    primes = [p for p in primes_up_to(300) if p % 4 == 1]
    checked = 0
    while checked < 120:
        p = primes[rng.randrange(len(primes))]
        pi = split_prime(p)
        alpha = GaussianInt(rng.randrange(-30, 31), rng.randrange(-30, 31))
        if (alpha % pi).norm() == 0:
            continue
        assert biquadratic_symbol(alpha, pi) == symbol_by_ring_exponentiation(alpha, pi)
        checked += 1


def test_biquadratic_symbol_norm13_concrete():
    pi = split_prime(13)
    val = biquadratic_symbol(GaussianInt(2, 1), pi)
    assert val == symbol_by_ring_exponentiation(GaussianInt(2, 1), pi)


def test_biquadratic_on_rational_entries():
    # for rational a with (a/p) = +1 the symbol is +-1 and matches the
    # rational quartic symbol; conjugate-prime values multiply to 1
    for p in (17, 41, 73, 89, 97):
        pi = split_prime(p)
        for a in range(2, 25):
            if a % p == 0 or jacobi_symbol(a, p) != 1:
                continue
            s = biquadratic_symbol(GaussianInt(a, 0), pi)
            assert s.k in (0, 2)
            assert s.as_sign() == quartic_symbol(a, p)
        for a in range(2, 25):
            if a % p == 0:
                continue
            s1 = biquadratic_symbol(GaussianInt(a, 0), pi)
            s2 = biquadratic_symbol(GaussianInt(a, 0), pi.conjugate())
            assert (s1 * s2).k == 0


def test_quartic_unit_rejects_bad_exponent():
    with pytest.raises(ValueError):
        QuarticUnit(4)
    with pytest.raises(ValueError):
        QuarticUnit(1).as_sign()


def test_lemma7_examples():
    assert lemma7_check(17)
    assert lemma7_check(73)
    with pytest.raises(ValueError):
        lemma7_check(29)  # 29 = 5 mod 8
    with pytest.raises(ValueError):
        lemma7_check(41 + 2)  # not prime


def test_lemma7_up_to_2000():
    for p in primes_up_to(2000):
        if p % 8 == 1:
            assert lemma7_check(p), p
