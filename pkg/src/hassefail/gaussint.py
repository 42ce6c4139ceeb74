"""Arithmetic in Z[i]: prime splitting, primary normalization, and the
biquadratic residue symbol."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime, octic_symbol, sqrt_mod_prime

__all__ = [
    "GaussianInt",
    "QuarticUnit",
    "biquadratic_symbol",
    "gaussian_gcd",
    "lemma7_check",
    "primary_associate",
    "split_prime",
]


def _round_half_to_zero(num: int, den: int) -> int:
    """Nearest integer to num/den, ties rounded toward zero."""
    if den < 0:
        num, den = -num, -den
    q, r = divmod(num, den)
    if 2 * r > den or (2 * r == den and q < 0):
        q += 1
    return q


@dataclass(frozen=True)
class GaussianInt:
    """An element re + im*i of Z[i]."""

    re: int
    im: int

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt | int) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __divmod__(self, other: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
        """Euclidean division; each quotient coordinate is rounded to the
        nearest integer with ties toward zero, so norm(r) < norm(other)."""
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[i]")
        t = self * other.conjugate()
        q = GaussianInt(_round_half_to_zero(t.re, n), _round_half_to_zero(t.im, n))
        return q, self - q * other

    def __floordiv__(self, other: GaussianInt) -> GaussianInt:
        return divmod(self, other)[0]

    def __mod__(self, other: GaussianInt) -> GaussianInt:
        return divmod(self, other)[1]

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self) -> str:
        return f"{self.re}{self.im:+}i"


ONE = GaussianInt(1, 0)
I_UNIT = GaussianInt(0, 1)
UNITS = (ONE, I_UNIT, -ONE, -I_UNIT)


@dataclass(frozen=True)
class QuarticUnit:
    """A fourth root of unity i**k, stored by its exponent k in 0..3."""

    k: int

    def __post_init__(self) -> None:
        if self.k not in (0, 1, 2, 3):
            raise ValueError(f"exponent must be in 0..3, got {self.k}")

    def __mul__(self, other: QuarticUnit) -> QuarticUnit:
        return QuarticUnit((self.k + other.k) % 4)

    def value(self) -> GaussianInt:
        return UNITS[self.k]

    def as_sign(self) -> int:
        """The unit as +-1; raises if it is +-i."""
        if self.k == 0:
            return 1
        if self.k == 2:
            return -1
        raise ValueError("unit is imaginary, not +-1")


def gaussian_gcd(g: GaussianInt, h: GaussianInt) -> GaussianInt:
    while h.norm():
        g, h = h, g % h
    return g


def split_prime(p: int) -> GaussianInt:
    """A Gaussian prime of norm p, for p = 1 (mod 4).

    Canonical form: the primary associate when p = 1 (mod 8), otherwise
    the associate with odd positive real part.
    """
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"{p} does not split in Z[i]")
    r = sqrt_mod_prime(p - 1, p)
    g = gaussian_gcd(GaussianInt(p, 0), GaussianInt(r, 1))
    if g.norm() != p:
        raise AssertionError(f"gcd lost the prime above {p}")
    if p % 8 == 1:
        return primary_associate(g)
    for u in UNITS:
        cand = g * u
        if cand.re % 2 == 1 and cand.re > 0:
            return cand
    raise AssertionError("no associate with odd positive real part")


def primary_associate(g: GaussianInt) -> GaussianInt:
    """The unit multiple of g with im = 0 (mod 4) and re = 1 (mod 4).

    Exists exactly when norm(g) is a prime = 1 (mod 8).
    """
    n = g.norm()
    if not is_prime(n):
        raise ValueError(f"norm {n} is not prime")
    for u in UNITS:
        cand = g * u
        if cand.im % 4 == 0 and cand.re % 4 == 1:
            return cand
    raise ValueError(f"no primary associate: norm {n} is not 1 mod 8")


def biquadratic_symbol(alpha: GaussianInt, pi: GaussianInt) -> QuarticUnit:
    """The fourth root of unity congruent to alpha^((N(pi)-1)/4) mod pi.

    Evaluated through the residue-field isomorphism Z[i]/(pi) = F_p with
    i mapped to the square root of -1 determined by pi, which avoids
    repeated Gaussian division.
    """
    p = pi.norm()
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"norm {p} is not an odd prime")
    j = -pi.re * pow(pi.im, -1, p) % p
    image = (alpha.re + alpha.im * j) % p
    if image == 0:
        raise ValueError("alpha is divisible by pi")
    val = pow(image, (p - 1) // 4, p)
    for k, unit_image in enumerate((1, j, p - 1, (p - j) % p)):
        if val == unit_image:
            return QuarticUnit(k)
    raise AssertionError(f"{val} is not a fourth root of unity mod {p}")


def lemma7_check(p: int) -> bool:
    """Check [pi/conj(pi)]_4 = (-4/p)_8 for the primary prime above p.

    The biquadratic symbol must land in {1, -1}; an imaginary value
    signals an internal inconsistency.
    """
    if not is_prime(p) or p % 8 != 1:
        raise ValueError(f"need a prime = 1 (mod 8), got {p}")
    pi = primary_associate(split_prime(p))
    sym = biquadratic_symbol(pi, pi.conjugate())
    if sym.k not in (0, 2):
        raise AssertionError(f"[pi/conj(pi)]_4 = i^{sym.k} is imaginary for p = {p}")
    return sym.as_sign() == octic_symbol(-4, p)
