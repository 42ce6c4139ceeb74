"""First 2-descent through a rational 2-isogeny.

Curves y^2 = x(x^2 + a*x + b) carry the 2-torsion point (0, 0); the
isogenous curve has coefficients (-2a, a^2 - 4b).  Torsors are indexed
by squarefree divisors of b, Selmer groups collect the everywhere
locally solvable ones, and the product of the two rational-point
subgroup orders is 2^(r + 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import divisors, factorize, is_square, squarefree_divisors, squarefree_part
from .localsolve import (
    UNDECIDED,
    TorsorPoint,
    TorsorSpec,
    UndecidedError,
    everywhere_locally_solvable,
)

__all__ = [
    "PHI",
    "PSI",
    "DescentReport",
    "IsogenyPair",
    "SelmerGroup",
    "TorsionSet",
    "full_descent",
    "isogenous_pair",
    "nagell_lutz_torsion",
    "rank_bounds",
    "selmer_group",
    "torsor_family",
    "torsor_point_search",
    "torsor_to_curve_point",
]

PHI = "phi"
PSI = "psi"

_SQUARES_MOD_64 = frozenset((x * x) & 63 for x in range(64))


@dataclass(frozen=True)
class IsogenyPair:
    """Coefficients of E: y^2 = x(x^2 + a*x + b) and its 2-isogenous curve."""

    a: int
    b: int

    @property
    def a_hat(self) -> int:
        return -2 * self.a

    @property
    def b_hat(self) -> int:
        return self.a * self.a - 4 * self.b


def isogenous_pair(a: int, b: int) -> IsogenyPair:
    if b * (a * a - 4 * b) == 0:
        raise ValueError(f"curve (a, b) = ({a}, {b}) is singular")
    return IsogenyPair(a, b)


def torsor_family(a: int, b: int) -> list[TorsorSpec]:
    """One torsor per signed squarefree divisor b1 of b, with b2 = b/b1."""
    if b == 0:
        raise ValueError("b must be nonzero")
    return [TorsorSpec(b1, a, b // b1) for b1 in squarefree_divisors(b)]


@dataclass(frozen=True)
class SelmerGroup:
    """Squarefree classes b1 whose torsor is everywhere locally solvable."""

    elements: frozenset[int]
    attached_isogeny: str

    @property
    def order(self) -> int:
        return len(self.elements)


def _sqf_product(x: int, y: int) -> int:
    return squarefree_part(x * y)


def _span_mod_squares(values) -> frozenset[int]:
    span = {1}
    for v in values:
        v = squarefree_part(v)
        if v not in span:
            span |= {_sqf_product(v, w) for w in span}
    return frozenset(span)


def selmer_group(a: int, b: int, isogeny: str) -> SelmerGroup:
    """Everywhere-locally-solvable torsor classes for one of the isogenies.

    The psi-side torsors carry (a, b) themselves; the phi-side torsors
    carry the isogenous coefficients.  The result is verified to be a
    group under multiplication modulo squares before it is returned.
    """
    pair = isogenous_pair(a, b)
    if isogeny == PSI:
        ca, cb = pair.a, pair.b
    elif isogeny == PHI:
        ca, cb = pair.a_hat, pair.b_hat
    else:
        raise ValueError(f"isogeny must be {PHI!r} or {PSI!r}, got {isogeny!r}")
    elements = []
    for spec in torsor_family(ca, cb):
        verdict, reports = everywhere_locally_solvable(spec)
        if verdict == UNDECIDED:
            place = next(r.place for r in reports if r.solvable == UNDECIDED)
            raise UndecidedError(spec, place)
        if verdict:
            elements.append(spec.b1)
    group = frozenset(elements)
    for x in group:
        for y in group:
            if _sqf_product(x, y) not in group:
                raise AssertionError(
                    f"Selmer set of ({a}, {b}) not closed: {x} * {y} escapes"
                )
    return SelmerGroup(group, isogeny)


def torsor_point_search(t: TorsorSpec, height: int) -> TorsorPoint | None:
    """First point with 0 <= e, M <= height in scan order (e, then M).

    The quartic is even in M and e separately, so nonnegative pairs
    suffice; (M, e) = (1, 0) is the chart at infinity.
    """
    if height < 1:
        raise ValueError("height bound must be positive")
    b1, a, b2 = t.b1, t.a, t.b2
    square_residues = _SQUARES_MOD_64
    for e in range(height + 1):
        e2 = e * e
        ae2 = a * e2
        b2e4 = b2 * e2 * e2
        for m in range(height + 1):
            if gcd(m, e) != 1:
                continue
            m2 = m * m
            v = m2 * (b1 * m2 + ae2) + b2e4
            if v < 0 or (v & 63) not in square_residues:
                continue
            n = isqrt(v)
            if n * n == v:
                return TorsorPoint(n, m, e)
    return None


def torsor_to_curve_point(
    t: TorsorSpec, pt: TorsorPoint
) -> tuple[Fraction, Fraction] | None:
    """Image of a torsor point on y^2 = x(x^2 + a*x + b1*b2).

    x = b1*M^2/e^2 and y = b1*M*N/e^3; e = 0 maps to the point at
    infinity, reported as None.
    """
    pt.check_on(t)
    if pt.e == 0:
        return None
    x = Fraction(t.b1 * pt.m * pt.m, pt.e * pt.e)
    y = Fraction(t.b1 * pt.m * pt.n, pt.e**3)
    if y * y != x * (x * x + t.a * x + t.b):
        raise AssertionError(f"image of {pt} missed the curve")
    return (x, y)


def rank_bounds(
    selmer_phi: SelmerGroup,
    selmer_psi: SelmerGroup,
    found_phi,
    found_psi,
) -> tuple[int, int]:
    """Mordell-Weil rank window from Selmer orders and found points.

    Upper bound log2|S_phi| + log2|S_psi| - 2; the lower bound replaces
    each Selmer group by the subgroup generated by classes with points.
    """
    sizes = []
    for group in (selmer_phi.elements, selmer_psi.elements):
        n = len(group)
        if n & (n - 1):
            raise AssertionError(f"Selmer order {n} is not a power of two")
        sizes.append(n.bit_length() - 1)
    upper = sizes[0] + sizes[1] - 2
    spans = [_span_mod_squares(found_phi), _span_mod_squares(found_psi)]
    lower = max(
        0, (len(spans[0]).bit_length() - 1) + (len(spans[1]).bit_length() - 1) - 2
    )
    return lower, upper


# ---------------------------------------------------------------------------
# Torsion


@dataclass(frozen=True)
class TorsionSet:
    """Affine torsion points; the point at infinity is always implied."""

    points: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return len(self.points) + 1


def _ec_add(P, Q, a: int, b: int):
    """Chord-tangent addition on y^2 = x^3 + a*x^2 + b*x, None = infinity."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + 2 * a * x1 + b) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - a - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def _is_torsion(P, a: int, b: int, cap: int = 16) -> bool:
    # Mazur's bound is 12; points not closing within the cap are free.
    acc = P
    for _ in range(cap):
        if acc is None:
            return True
        acc = _ec_add(acc, P, a, b)
    return False


def nagell_lutz_torsion(a: int, b: int) -> TorsionSet:
    """All torsion of y^2 = x(x^2 + a*x + b) on the integral model.

    Candidates have y = 0 or y^2 dividing the cubic discriminant
    b^2(a^2 - 4b); each is then certified by repeated addition.
    """
    disc = b * b * (a * a - 4 * b)
    if disc == 0:
        raise ValueError("singular curve")
    found = set()

    def cubic_roots(rhs_shift: int) -> list[int]:
        # integer roots of x^3 + a*x^2 + b*x - rhs_shift
        roots = []
        if rhs_shift == 0:
            roots.append(0)
            d2 = a * a - 4 * b
            if is_square(d2):
                s = isqrt(d2)
                for num in (-a + s, -a - s):
                    if num % 2 == 0:
                        roots.append(num // 2)
        else:
            for r in divisors(rhs_shift):
                for x in (r, -r):
                    if x**3 + a * x * x + b * x == rhs_shift:
                        roots.append(x)
        return roots

    for x in cubic_roots(0):
        found.add((x, 0))
    square_part = 1
    for p, e in factorize(disc).factors:
        square_part *= p ** (e // 2)
    for y in divisors(square_part):
        for x in cubic_roots(y * y):
            pt = (Fraction(x), Fraction(y))
            if _is_torsion(pt, a, b):
                found.add((x, y))
                found.add((x, -y))
    return TorsionSet(tuple(sorted(found)))


# ---------------------------------------------------------------------------
# Full descent


@dataclass(frozen=True)
class DescentReport:
    pair: IsogenyPair
    selmer_phi: SelmerGroup
    selmer_psi: SelmerGroup
    found_phi: frozenset[int]
    found_psi: frozenset[int]
    height: int
    rank_lower: int
    rank_upper: int
    sha_candidates: frozenset[tuple[str, int]]
    points: dict[tuple[str, int], TorsorPoint]


def full_descent(a: int, b: int, height: int = 200) -> DescentReport:
    """Selmer groups, point searches, rank window, and the leftover
    locally-solvable-but-pointless classes.

    A class lands in sha_candidates when its torsor is everywhere
    locally solvable but no point of height <= height was found and the
    class is outside the subgroup generated by classes with points;
    that is a candidate flag, not a proof.
    """
    pair = isogenous_pair(a, b)
    selmers = {
        PHI: selmer_group(a, b, PHI),
        PSI: selmer_group(a, b, PSI),
    }
    coeffs = {PHI: (pair.a_hat, pair.b_hat), PSI: (pair.a, pair.b)}
    found: dict[str, set[int]] = {PHI: set(), PSI: set()}
    points: dict[tuple[str, int], TorsorPoint] = {}
    for iso, sel in selmers.items():
        ca, cb = coeffs[iso]
        for b1 in sorted(sel.elements, key=lambda v: (abs(v), v < 0)):
            pt = torsor_point_search(TorsorSpec(b1, ca, cb // b1), height)
            if pt is not None:
                found[iso].add(b1)
                points[(iso, b1)] = pt
    lower, upper = rank_bounds(
        selmers[PHI], selmers[PSI], found[PHI], found[PSI]
    )
    sha = set()
    for iso, sel in selmers.items():
        span = _span_mod_squares(found[iso])
        sha.update((iso, b1) for b1 in sel.elements if b1 not in span)
    return DescentReport(
        pair=pair,
        selmer_phi=selmers[PHI],
        selmer_psi=selmers[PSI],
        found_phi=frozenset(found[PHI]),
        found_psi=frozenset(found[PSI]),
        height=height,
        rank_lower=lower,
        rank_upper=upper,
        sha_candidates=frozenset(sha),
        points=points,
    )
