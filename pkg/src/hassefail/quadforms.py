"""Binary quadratic forms and the obstruction groups built from them.

Class groups of negative discriminants via Gauss composition, genus
characters, ray class groups of the two class-number-one imaginary
fields used by the scans, fundamental units of real quadratic fields,
and the norm-power residue comparison lemma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd, isqrt, lcm

from .arith import factorize, is_prime, jacobi_symbol, sqrt_mod_prime
from .gaussint import split_prime

__all__ = [
    "ClassGroup",
    "FundamentalUnitData",
    "QuadForm",
    "RayClassGroup",
    "class_group",
    "class_order",
    "compose",
    "fundamental_unit",
    "genus_character_labels",
    "genus_characters",
    "is_fourth_power_class",
    "lemma5_check",
    "prime_form_class",
    "principal_form",
    "ray_class_group",
    "ray_class_order",
    "reduce_form",
    "represent_prime",
    "two_sylow_structure",
]


@dataclass(frozen=True, order=True)
class QuadForm:
    """The form a*X^2 + b*X*Y + c*Y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def inverse(self) -> QuadForm:
        return QuadForm(self.a, -self.b, self.c)


def principal_form(disc: int) -> QuadForm:
    if disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a discriminant")
    k = disc % 2
    return QuadForm(1, k, (k * k - disc) // 4)


def reduce_form(f: QuadForm) -> QuadForm:
    """Gauss reduction of a positive definite form; idempotent."""
    a, b, c = f.a, f.b, f.c
    if b * b - 4 * a * c >= 0:
        raise ValueError("reduction needs a negative discriminant")
    if a <= 0:
        raise ValueError("positive definite forms have a > 0")
    while not (abs(b) <= a <= c):
        if c < a:
            a, b, c = c, -b, a
        else:
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
    if b < 0 and (a == -b or a == c):
        b = -b
    return QuadForm(a, b, c)


def _hnf2(rows: list[tuple[int, int]]) -> tuple[int, int, int]:
    """Hermite form of a full 2D sublattice of Z^2 given by generators.

    Returns (n, s, k) with lattice basis (n, 0), (s, k); n, k > 0 and
    0 <= s < n.
    """
    rs = [list(r) for r in rows if r != (0, 0)]
    while True:
        idx = [i for i, r in enumerate(rs) if r[1] != 0]
        if len(idx) <= 1:
            break
        idx.sort(key=lambda i: abs(rs[i][1]))
        i0 = idx[0]
        for i in idx[1:]:
            q = rs[i][1] // rs[i0][1]
            rs[i][0] -= q * rs[i0][0]
            rs[i][1] -= q * rs[i0][1]
    ynz = [i for i, r in enumerate(rs) if r[1] != 0]
    if not ynz:
        raise ValueError("generators span a rank-deficient lattice")
    s, k = rs[ynz[0]]
    if k < 0:
        s, k = -s, -k
    n = 0
    for i, r in enumerate(rs):
        if i != ynz[0]:
            n = gcd(n, abs(r[0]))
    if n == 0:
        raise ValueError("generators span a rank-deficient lattice")
    return n, s % n, k


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss composition, reduced output.

    Computed through the corresponding ideals: the product lattice of
    [a, (-b + sqrt(D))/2] ideals is put in Hermite form, its integer
    content dropped, and the result mapped back to a form.
    """
    disc = f.disc
    if g.disc != disc:
        raise ValueError(f"discriminants differ: {disc} vs {g.disc}")
    if disc >= 0:
        raise ValueError("composition implemented for negative discriminants")
    if not f.is_primitive() or not g.is_primitive():
        raise ValueError("composition needs primitive forms")
    sigma = disc % 2
    q4 = (disc - sigma * sigma) // 4  # tau^2 = sigma*tau + q4
    t1 = (f.b + sigma) // 2
    t2 = (g.b + sigma) // 2
    rows = [
        (f.a * g.a, 0),
        (-f.a * t2, f.a),
        (-g.a * t1, g.a),
        (q4 + t1 * t2, sigma - t1 - t2),
    ]
    n, s, k = _hnf2(rows)
    if n % k or s % k:
        raise AssertionError("product lattice is not an ideal")
    m, s2 = n // k, s // k
    b3 = -(2 * s2 + sigma)
    num = b3 * b3 - disc
    if num % (4 * m):
        raise AssertionError("composition produced a non-integral form")
    out = QuadForm(m, b3, num // (4 * m))
    if not out.is_primitive():
        raise AssertionError("composition produced an imprimitive form")
    return reduce_form(out)


def _reduced_forms(disc: int) -> list[QuadForm]:
    """All reduced primitive forms of a negative discriminant."""
    forms = []
    b = disc % 2
    while b * b <= -disc // 3:
        m4 = b * b - disc
        m = m4 // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                f = QuadForm(a, b, c)
                if f.is_primitive():
                    forms.append(f)
                    if 0 < b < a < c:
                        forms.append(QuadForm(a, -b, c))
            a += 1
        b += 2
    return sorted(forms)


def _abelian_invariants(elements, op, identity) -> list[int]:
    """Invariant factors d1 | d2 | ... of a finite abelian group.

    Elements must be hashable and orderable.  Splits off a cyclic factor
    of maximal order and recurses on the quotient; group sizes here stay
    in the hundreds, so brute force cosets are fine.
    """
    if len(elements) == 1:
        return []

    def order_of(g):
        n, x = 1, g
        while x != identity:
            x = op(x, g)
            n += 1
        return n

    orders = {g: order_of(g) for g in elements}
    exponent = max(orders.values())
    if exponent != lcm(*orders.values()):
        raise AssertionError("element orders are inconsistent with an abelian group")
    gen = min(g for g, n in orders.items() if n == exponent)
    cyclic = [identity]
    x = gen
    while x != identity:
        cyclic.append(x)
        x = op(x, gen)
    coset_key: dict = {}
    for h in elements:
        if h in coset_key:
            continue
        coset = [op(h, s) for s in cyclic]
        key = min(coset)
        for y in coset:
            coset_key[y] = key
    quotient = sorted(set(coset_key.values()))
    rest = _abelian_invariants(
        quotient, lambda u, v: coset_key[op(u, v)], coset_key[identity]
    )
    return rest + [exponent]


@dataclass(frozen=True)
class ClassGroup:
    """The form class group of a negative discriminant."""

    disc: int
    classes: tuple[QuadForm, ...]
    invariant_factors: tuple[int, ...]
    _fourth_powers: frozenset[QuadForm] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.classes)

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1


def class_group(disc: int) -> ClassGroup:
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    forms = _reduced_forms(disc)
    identity = reduce_form(principal_form(disc))
    invariants = _abelian_invariants(forms, compose, identity)
    fourths = frozenset(compose(sq, sq) for sq in (compose(g, g) for g in forms))
    return ClassGroup(disc, tuple(forms), tuple(invariants), fourths)


def prime_form_class(disc: int, p: int) -> QuadForm:
    """The reduced class of a form (p, B, *) of discriminant disc.

    B is the smallest nonnegative square root of disc mod 4p.  The
    conjugate choice of root gives the inverse class; order and
    fourth-power membership do not see the difference.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if disc % p == 0:
        raise ValueError(f"{p} divides the discriminant")
    if p == 2:
        if disc % 8 != 1:
            raise ValueError(f"2 is inert for discriminant {disc}")
        best = 1
    else:
        if jacobi_symbol(disc, p) != 1:
            raise ValueError(f"{p} is inert for discriminant {disc}")
        r = sqrt_mod_prime(disc % p, p)
        candidates = []
        for c in (r, p - r):
            if (c - disc) % 2:
                c += p
            candidates.append(c % (2 * p))
        best = min(candidates)
    if (best * best - disc) % (4 * p):
        raise AssertionError("square root of disc mod 4p failed")
    return reduce_form(QuadForm(p, best, (best * best - disc) // (4 * p)))


def class_order(cg: ClassGroup, f: QuadForm) -> int:
    """Least n >= 1 with f^n principal."""
    if f.disc != cg.disc:
        raise ValueError("form does not belong to this discriminant")
    if not f.is_primitive():
        raise ValueError("order is defined for primitive forms")
    identity = reduce_form(principal_form(cg.disc))
    g = reduce_form(f)
    n, x = 1, g
    while x != identity:
        x = compose(x, g)
        n += 1
    return n


def is_fourth_power_class(cg: ClassGroup, f: QuadForm) -> bool:
    return reduce_form(f) in cg._fourth_powers


def two_sylow_structure(cg: ClassGroup) -> list[int]:
    """Invariant factors of the 2-Sylow subgroup, ascending."""
    out = []
    for d in cg.invariant_factors:
        two_part = d & -d
        if two_part > 1:
            out.append(two_part)
    return out


def genus_character_labels(disc: int) -> list[int]:
    """The assigned genus characters of a discriminant, as labels.

    An odd prime label q means the Legendre character (n/q); the labels
    -4, 8, -8 mean the characters n -> (-1/n), (2/n), (-2/n) given by
    n mod 4 resp. mod 8.  Which 2-adic characters are assigned depends
    on (-disc/4) mod 8 in the classical way.
    """
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    labels: list[int] = [p for p, _ in factorize(disc).factors if p % 2 == 1]
    if disc % 4 == 0:
        n = -disc // 4
        if n % 4 == 1:
            labels.append(-4)
        elif n % 8 == 2:
            labels.append(-8)
        elif n % 8 == 6:
            labels.append(8)
        elif n % 8 == 4:
            labels.append(-4)
        elif n % 8 == 0:
            labels.extend((-4, 8))
    return labels


def _represented_coprime_value(f: QuadForm, avoid: int) -> int:
    for size in (8, 16, 32, 64, 128, 256, 512):
        best = 0
        for x in range(-size, size + 1):
            for y in range(-size, size + 1):
                v = f(x, y)
                if v > 0 and gcd(v, avoid) == 1 and (best == 0 or v < best):
                    best = v
        if best:
            return best
    raise AssertionError(f"{f} represents nothing coprime to {avoid} in a huge box")


def _character_value(label: int, n: int) -> int:
    if label == -4:
        return 1 if n % 4 == 1 else -1
    if label == 8:
        return 1 if n % 8 in (1, 7) else -1
    if label == -8:
        return 1 if n % 8 in (1, 3) else -1
    return jacobi_symbol(n, label)


def genus_characters(disc: int, f: QuadForm) -> list[int]:
    """Assigned genus characters of disc evaluated on the class of f.

    Order matches genus_character_labels(disc).  The value is read off
    any represented integer coprime to 2*disc.
    """
    if f.disc != disc:
        raise ValueError("form does not belong to this discriminant")
    if not f.is_primitive():
        raise ValueError("genus characters need a primitive form")
    n = _represented_coprime_value(f, 2 * abs(disc))
    return [_character_value(lab, n) for lab in genus_character_labels(disc)]


def represent_prime(f: QuadForm, p: int, bound: int) -> tuple[int, int] | None:
    """First (x, y) with f(x, y) = p in a fixed scan order, or None."""
    for y in range(bound + 1):
        for x in range(bound + 1):
            for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                if (sx < 0 and x == 0) or (sy < 0 and y == 0):
                    continue
                if f(sx * x, sy * y) == p:
                    return (sx * x, sy * y)
    return None


# ---------------------------------------------------------------------------
# Ray class groups of Q(i) and Q(sqrt(-2))


class RayClassGroup:
    """(O/f)^x modulo the image of the unit group, for O = Z[i] or
    Z[sqrt(-2)].

    Residues are pairs (x, y) meaning x + y*omega; classes are canonical
    representatives (the least tuple among unit multiples).
    """

    def __init__(self, field_disc: int, modulus: tuple[int, int]):
        if field_disc not in (-4, -8):
            raise ValueError("only the class-number-one fields -4 and -8 are supported")
        if modulus == (0, 0):
            raise ValueError("modulus must be nonzero")
        self.field_disc = field_disc
        self.modulus = modulus
        self._d = 1 if field_disc == -4 else 2  # omega^2 = -d
        fx, fy = modulus
        n, s, k = _hnf2([(fx, fy), (-self._d * fy, fx)])
        self._basis = (n, s, k)
        norm = fx * fx + self._d * fy * fy
        if n * k != norm:
            raise AssertionError("modulus lattice has the wrong covolume")
        units = [(1, 0), (-1, 0)]
        if field_disc == -4:
            units += [(0, 1), (0, -1)]
        self._units = [self._reduce(u) for u in units]
        residues = [(x, y) for x in range(n) for y in range(k)]
        one = self._reduce((1, 0))
        invertible = [
            r for r in residues if any(self._mul(r, s_) == one for s_ in residues)
        ]
        self.element_index = {r: self._canon(r) for r in invertible}
        self._identity = self._canon(one)
        elements = sorted(set(self.element_index.values()))
        self.invariant_factors = tuple(
            _abelian_invariants(
                elements, lambda u, v: self._canon(self._mul(u, v)), self._identity
            )
        )
        self.order = len(elements)

    def _reduce(self, v: tuple[int, int]) -> tuple[int, int]:
        n, s, k = self._basis
        x, y = v
        t = y // k
        x, y = x - t * s, y - t * k
        return (x % n, y)

    def _mul(self, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        x = u[0] * v[0] - self._d * u[1] * v[1]
        y = u[0] * v[1] + u[1] * v[0]
        return self._reduce((x, y))

    def _canon(self, r: tuple[int, int]) -> tuple[int, int]:
        return min(self._mul(r, u) for u in self._units)

    def class_of(self, v: tuple[int, int]) -> tuple[int, int]:
        r = self._reduce(v)
        if r not in self.element_index:
            raise ValueError(f"{v} is not invertible modulo {self.modulus}")
        return self.element_index[r]

    def order_of(self, v: tuple[int, int]) -> int:
        g = self.class_of(v)
        n, x = 1, g
        while x != self._identity:
            x = self._canon(self._mul(x, g))
            n += 1
        return n

    def __repr__(self) -> str:
        return (
            f"RayClassGroup(field_disc={self.field_disc}, modulus={self.modulus}, "
            f"invariant_factors={list(self.invariant_factors)})"
        )


def ray_class_group(field_disc: int, modulus: int | tuple[int, int]) -> RayClassGroup:
    if isinstance(modulus, int):
        modulus = (modulus, 0)
    return RayClassGroup(field_disc, modulus)


def _split_in_zsqrtm2(p: int) -> tuple[int, int]:
    """(a, b) with a^2 + 2b^2 = p, smallest positive b; p = 1, 3 (mod 8)."""
    for b in range(1, isqrt(p // 2) + 1):
        a2 = p - 2 * b * b
        a = isqrt(a2)
        if a * a == a2:
            return (a, b)
    raise AssertionError(f"{p} did not split despite p mod 8 in (1, 3)")


def ray_class_order(rcg: RayClassGroup, p: int) -> int:
    """Order of the class of the canonical prime above p.

    The quotient absorbs unit multiples, and the conjugate prime lands
    in the inverse class, so the order does not depend on the choice.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fx, fy = rcg.modulus
    norm = fx * fx + (1 if rcg.field_disc == -4 else 2) * fy * fy
    if norm % p == 0:
        raise ValueError(f"{p} divides the modulus norm")
    if rcg.field_disc == -4:
        if p % 4 != 1:
            raise ValueError(f"{p} is inert or ramified in Q(i)")
        pi = split_prime(p)
        gen = (pi.re, pi.im)
    else:
        if p % 8 not in (1, 3):
            raise ValueError(f"{p} is inert or ramified in Q(sqrt(-2))")
        gen = _split_in_zsqrtm2(p)
    return rcg.order_of(gen)


# ---------------------------------------------------------------------------
# Fundamental units


@dataclass(frozen=True)
class FundamentalUnitData:
    """The fundamental unit of the maximal order of Q(sqrt(p)).

    The unit is (u + v*sqrt(p))/2 when half is true, else u + v*sqrt(p).
    """

    p: int
    u: int
    v: int
    half: bool
    norm: int

    def __post_init__(self) -> None:
        target = 4 * self.norm if self.half else self.norm
        if self.u * self.u - self.p * self.v * self.v != target:
            raise ValueError("unit data fails its Pell condition")


def _pell_fundamental(p: int) -> tuple[int, int]:
    """Least (x, y), y >= 1, with x^2 - p*y^2 = +-1, via the continued
    fraction of sqrt(p)."""
    a0 = isqrt(p)
    if a0 * a0 == p:
        raise ValueError(f"{p} is a square")
    m, d, a = 0, 1, a0
    h_prev, k_prev, h, k = 1, 0, a0, 1
    while h * h - p * k * k not in (1, -1):
        m = d * a - m
        d = (p - m * m) // d
        a = (a0 + m) // d
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
    return h, k


def _icbrt(n: int) -> int:
    if n < 0:
        raise ValueError
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def fundamental_unit(p: int) -> FundamentalUnitData:
    """Smallest unit > 1 of the maximal order of Q(sqrt(p)).

    The continued fraction of sqrt(p) gives the unit of Z[sqrt(p)]; for
    p = 1 (mod 4) the maximal-order unit is its exact cube root when one
    exists with half-integral coordinates.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x1, y1 = _pell_fundamental(p)
    n = x1 * x1 - p * y1 * y1
    if p % 4 == 1:
        # ((u + v*sqrt(p))/2)^3 = x1 + y1*sqrt(p) forces p*v^3 + 3*n*v = 2*y1.
        approx = _icbrt(max(2 * y1 // p, 1))
        for v in range(max(1, approx - 2), approx + 3):
            if p * v**3 + 3 * n * v == 2 * y1:
                u2 = p * v * v + 4 * n
                u = isqrt(u2)
                if u2 > 0 and u * u == u2 and u * (p * v * v + n) == 2 * x1:
                    if u % 2 == 0 and v % 2 == 0:
                        return FundamentalUnitData(p, u // 2, v // 2, False, n)
                    return FundamentalUnitData(p, u, v, True, n)
    return FundamentalUnitData(p, x1, y1, False, n)


# ---------------------------------------------------------------------------
# Residue comparison for (r + s*sqrt(p))^h - (r - s*sqrt(p))^h = 2*S*sqrt(p)


def lemma5_check(p: int, q: int, h: int, r2: int, s2: int) -> bool:
    """Check (S/q) = (s/q) for r^2 - p*s^2 = q^h with r = r2/2, s = s2/2.

    Denominators are cleared: with B the odd-index binomial sum for
    (r2 + s2*sqrt(p))^h one has B = 2^h * S, and h odd kills the
    surplus powers of (2/q), so the comparison is jacobi(B, q) against
    jacobi(s2, q), an exact integer identity.
    """
    if not is_prime(p) or not is_prime(q) or p % 2 == 0 or q % 2 == 0:
        raise ValueError("p and q must be odd primes")
    if h < 1 or h % 2 == 0:
        raise ValueError(f"h must be odd and positive, got {h}")
    if r2 * r2 - p * s2 * s2 != 4 * q**h:
        raise ValueError("(r2/2)^2 - p*(s2/2)^2 != q^h")
    if r2 % q == 0 or s2 % q == 0:
        raise ValueError("2r and 2s must avoid q")
    if jacobi_symbol(p, q) != 1:
        raise ValueError(f"(p/q) = ({p}/{q}) must be +1")
    big_s = sum(
        comb(h, j) * r2 ** (h - j) * s2**j * p ** ((j - 1) // 2)
        for j in range(1, h + 1, 2)
    )
    return jacobi_symbol(big_s, q) == jacobi_symbol(s2, q)
