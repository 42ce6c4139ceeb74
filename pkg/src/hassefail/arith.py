"""Exact integer arithmetic kernel.

Primality, factorization, residue symbols, modular square roots and
p-adic square tests.  Everything is deterministic and exact; sizes are
desk scale.  The deterministic primality test is certified below
``PRIMALITY_BOUND`` and larger inputs are rejected outright.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "PRIMALITY_BOUND",
    "REAL_PLACE",
    "Factorization",
    "divisors",
    "factorize",
    "is_prime",
    "is_square",
    "is_square_in_qp",
    "jacobi_symbol",
    "octic_symbol",
    "primes_up_to",
    "quartic_symbol",
    "sqrt_mod_prime",
    "squarefree_divisors",
    "squarefree_part",
    "valuation",
]

PRIMALITY_BOUND = 2**64

#: Name of the archimedean place wherever a prime is expected.
REAL_PLACE = "real"

# Witnesses certifying Miller-Rabin for every n < 3.3 * 10**24 > 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 10**6


def is_prime(n: int, *, bound: int = PRIMALITY_BOUND) -> bool:
    """Deterministic Miller-Rabin test, certified for 0 < n < bound."""
    if n >= bound:
        raise ValueError(f"primality certified only below {bound}, got {n}")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
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


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1; 0 iff gcd(a, n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive lower argument")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> int:
    """Square root of a quadratic residue a modulo an odd prime p.

    Tonelli-Shanks with the smallest positive nonresidue as auxiliary;
    the returned root is canonicalized to min(r, p - r).
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    a %= p
    if jacobi_symbol(a, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue modulo {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi_symbol(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def quartic_symbol(a: int, p: int) -> int:
    """Rational quartic residue symbol: sign of a^((p-1)/4) mod p.

    Defined for p = 1 (mod 4) and quadratic residues a; anything else is
    rejected because the power would land outside {1, -1}.
    """
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"quartic symbol needs a prime = 1 (mod 4), got {p}")
    if a % p == 0:
        raise ValueError(f"{a} is divisible by {p}")
    if jacobi_symbol(a, p) != 1:
        raise ValueError(f"({a}/{p}) = -1: the quartic symbol is imaginary")
    r = pow(a % p, (p - 1) // 4, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise ValueError(f"a^((p-1)/4) = {r} is not +-1 mod {p}")


def octic_symbol(a: int, p: int) -> int:
    """Sign of a^((p-1)/8) mod p, for p = 1 (mod 8).

    Meaningful when a is a quartic residue mod p, and for a = -4, which
    is a quartic residue for every p = 1 (mod 8).
    """
    if not is_prime(p) or p % 8 != 1:
        raise ValueError(f"octic symbol needs a prime = 1 (mod 8), got {p}")
    if a % p == 0:
        raise ValueError(f"{a} is divisible by {p}")
    if a != -4:
        quartic_symbol(a, p)  # validates quadratic/quartic residuosity
    r = pow(a % p, (p - 1) // 8, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise ValueError(f"a^((p-1)/8) = {r} is not +-1 mod {p}")


@dataclass(frozen=True)
class Factorization:
    """Certified factorization: value = sign * prod(p**e)."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def sign(self) -> int:
        return -1 if self.value < 0 else 1

    def __post_init__(self) -> None:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        if n != self.value:
            raise ValueError("factor list does not multiply back to the value")


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of an odd composite n, Brent's cycle variant.

    The parameter sweep is fixed, so results are reproducible.
    """
    for c in itertools.count(1):
        y, m = 2, 128
        g = r = q = 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise AssertionError("unreachable")


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factorize(n: int, *, max_abs: int = PRIMALITY_BOUND) -> Factorization:
    """Complete factorization of n != 0 with certified prime factors.

    Trial division up to 10**6, then deterministic Pollard-Brent.  The
    default size cap matches the primality certificate; raise max_abs
    only together with a primality bound you trust.
    """
    if n == 0:
        raise ValueError("0 has no factorization")
    if abs(n) > max_abs:
        raise ValueError(f"|n| exceeds the desk-scale bound {max_abs}")
    m = abs(n)
    counts: dict[int, int] = {}
    for p in (2, 3, 5):
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)  # mod-30 wheel starting at 7
    i = 0
    while d <= _TRIAL_LIMIT and d * d <= m:
        while m % d == 0:
            counts[d] = counts.get(d, 0) + 1
            m //= d
        d += wheel[i]
        i = (i + 1) % 8
    if m > 1:
        if d * d > m:
            counts[m] = counts.get(m, 0) + 1
        else:
            _factor_into(m, counts)
    return Factorization(n, tuple(sorted(counts.items())))


def divisors(n: int) -> list[int]:
    """Positive divisors of n != 0, ascending."""
    fac = factorize(n)
    divs = [1]
    for p, e in fac.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def squarefree_divisors(n: int) -> list[int]:
    """All signed squarefree divisors of n, ascending; closed under negation."""
    fac = factorize(n)
    primes = [p for p, _ in fac.factors]
    out = []
    for r in range(len(primes) + 1):
        for combo in itertools.combinations(primes, r):
            d = 1
            for p in combo:
                d *= p
            out.extend((d, -d))
    return sorted(out)


def squarefree_part(n: int) -> int:
    """The signed squarefree kernel: n = squarefree_part(n) * square."""
    fac = factorize(n)
    s = fac.sign
    for p, e in fac.factors:
        if e % 2:
            s *= p
    return s


def valuation(n: int, p: int) -> int:
    """Exponent of p in n != 0."""
    if n == 0:
        raise ValueError("0 has infinite valuation")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_square_in_qp(n: int | Fraction, place: int | str) -> bool:
    """Is n != 0 a square in the completion at `place`?

    Odd p: even valuation and unit part a residue.  p = 2: even
    valuation and unit part = 1 (mod 8).  Real place: n > 0.
    """
    n = Fraction(n)
    if n == 0:
        raise ValueError("0 is excluded")
    if place == REAL_PLACE:
        return n > 0
    p = place
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"place must be a prime or {REAL_PLACE!r}, got {place!r}")
    v = valuation(n.numerator, p) - valuation(n.denominator, p)
    if v % 2:
        return False
    unit = n / Fraction(p) ** v
    if p == 2:
        u = unit.numerator * pow(unit.denominator, -1, 8) % 8
        return u == 1
    u = unit.numerator * pow(unit.denominator, -1, p) % p
    return jacobi_symbol(u, p) == 1
