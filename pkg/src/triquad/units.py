"""Units of real quadratic and biquadratic fields.

The fundamental unit of Q(sqrt(m)) comes from the continued fraction of
sqrt(m); for m = 1 mod 4 the half-integer unit of the maximal order is
recovered, when it exists, as the exact cube root of the Z[sqrt(m)] unit
(the index of unit groups divides 3), so no floating point is involved.

Squareness of unit products in a real biquadratic field Q(sqrt(m1),
sqrt(m2)) is decided by a numeric candidate square root (mpmath, with a
doubling precision ladder) followed by exact verification: the candidate
coordinates are rounded to small rationals and re-squared in exact
arithmetic.  A result of True therefore never rests on floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from mpmath import mp

from .arith import FactoredOdd, jacobi, squarefree_kernel
from .errors import Inconclusive, NotApplicable, UnknownCase

MAX_DENOMINATOR = 16  # coordinates of integral elements have denominator <= 4


@dataclass(frozen=True)
class FundUnit:
    """Fundamental unit (x + y*sqrt(m))/denom > 1; x^2 - m*y^2 = norm*denom^2."""

    x: int
    y: int
    denom: int
    norm: int

    def verify(self, m: int) -> bool:
        return self.x * self.x - m * self.y * self.y == self.norm * self.denom * self.denom


@dataclass(frozen=True)
class EpsDecomposition:
    """Square-free kernels of x+1 and x-1 for a norm +1 unit x + y*sqrt(m)."""

    sf_plus: int
    cof_plus: int
    sf_minus: int
    cof_minus: int


@dataclass(frozen=True)
class UnitIndex:
    value: int
    basis_tag: str


def _pell_unit(m: int) -> tuple[int, int, int]:
    """Minimal (x, y, x^2 - m*y^2) with y >= 1, |x^2 - m*y^2| = 1 (unit of Z[sqrt m])."""
    a0 = isqrt(m)
    if a0 * a0 == m:
        raise ValueError(f"{m} is a perfect square")
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    P, Q = a0, m - a0 * a0
    while Q != 1:
        a = (a0 + P) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        P = a * Q - P
        Q = (m - P * P) // Q
    n = p * p - m * q * q
    assert n in (1, -1)
    return p, q, n


def _icbrt(n: int) -> int:
    """Floor cube root of n >= 0."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def fundamental_unit(m: int) -> FundUnit:
    """Fundamental unit > 1 of the maximal order of Q(sqrt(m)), m > 1 square-free."""
    if m <= 1:
        raise ValueError(f"m must be a square-free integer > 1, got {m}")
    x, y, n = _pell_unit(m)
    if m % 4 == 1:
        # (t + s*sqrt(m))/2 cubes to x + y*sqrt(m) iff t^3 - 3nt = 2x.
        r = _icbrt(2 * x)
        for t in range(max(r - 2, 1), r + 3):
            if t * t * t - 3 * n * t != 2 * x:
                continue
            s2, rem = divmod(t * t - 4 * n, m)
            if rem:
                break
            s = isqrt(s2)
            if s * s == s2 and t % 2 == 1 and s % 2 == 1:
                unit = FundUnit(x=t, y=s, denom=2, norm=n)
                assert unit.verify(m)
                return unit
            break
    unit = FundUnit(x=x, y=y, denom=1, norm=n)
    assert unit.verify(m)
    return unit


def eps_decomposition(m: int, unit: FundUnit | None = None) -> EpsDecomposition:
    """Square-free kernels of x+1 and x-1 for the unit of Q(sqrt(m)).

    Only defined for norm +1 units with integer coordinates; these kernels
    locate the multiquadratic fields containing sqrt(eps) via
    eps = ((sqrt(x+1) + sqrt(x-1))/sqrt(2))^2.
    """
    if unit is None:
        unit = fundamental_unit(m)
    if unit.norm != 1 or unit.denom != 1:
        raise NotApplicable("decomposition needs norm +1 and integer coordinates")
    sf_p, cof_p = squarefree_kernel(unit.x + 1)
    sf_m, cof_m = squarefree_kernel(unit.x - 1)
    return EpsDecomposition(sf_plus=sf_p, cof_plus=cof_p, sf_minus=sf_m, cof_minus=cof_m)


class BiquadField:
    """Exact arithmetic in Q(sqrt(m1), sqrt(m2)).

    Elements are 4-tuples of Fractions over the basis
    (1, sqrt(m1), sqrt(m2), sqrt(m3)) with m3 the square-free kernel of
    m1*m2.
    """

    def __init__(self, m1: int, m2: int):
        if m1 <= 1 or m2 <= 1 or m1 == m2:
            raise ValueError("need distinct square-free integers > 1")
        g = gcd(m1, m2)
        self.m1 = m1
        self.m2 = m2
        self.g = g
        self.m3 = (m1 // g) * (m2 // g)
        self.subfields = (m1, m2, self.m3)

    def zero(self):
        return (Fraction(0), Fraction(0), Fraction(0), Fraction(0))

    def one(self):
        return (Fraction(1), Fraction(0), Fraction(0), Fraction(0))

    def from_rational(self, r) -> tuple:
        return (Fraction(r), Fraction(0), Fraction(0), Fraction(0))

    def from_quadratic(self, m: int, x, y, denom=1) -> tuple:
        """Embed (x + y*sqrt(m))/denom for m one of the three subfields."""
        coords = [Fraction(x, denom), Fraction(0), Fraction(0), Fraction(0)]
        slot = {self.m1: 1, self.m2: 2, self.m3: 3}[m]
        coords[slot] = Fraction(y, denom)
        return tuple(coords)

    def mul(self, a: tuple, b: tuple) -> tuple:
        x0, x1, x2, x3 = a
        y0, y1, y2, y3 = b
        m1, m2, m3, g = self.m1, self.m2, self.m3, self.g
        return (
            x0 * y0 + m1 * x1 * y1 + m2 * x2 * y2 + m3 * x3 * y3,
            x0 * y1 + x1 * y0 + (m2 // g) * (x2 * y3 + x3 * y2),
            x0 * y2 + x2 * y0 + (m1 // g) * (x1 * y3 + x3 * y1),
            x0 * y3 + x3 * y0 + g * (x1 * y2 + x2 * y1),
        )

    def neg(self, a: tuple) -> tuple:
        return tuple(-c for c in a)

    def embed(self, a: tuple, s1: int, s2: int):
        """Real embedding determined by the signs of sqrt(m1), sqrt(m2)."""
        r1 = s1 * mp.sqrt(self.m1)
        r2 = s2 * mp.sqrt(self.m2)
        r3 = s1 * s2 * mp.sqrt(self.m3)
        x0, x1, x2, x3 = a
        return (
            mp.mpf(x0.numerator) / x0.denominator
            + r1 * mp.mpf(x1.numerator) / x1.denominator
            + r2 * mp.mpf(x2.numerator) / x2.denominator
            + r3 * mp.mpf(x3.numerator) / x3.denominator
        )


def _coeff_bits(elem) -> int:
    return max(abs(c.numerator).bit_length() + c.denominator.bit_length() for c in elem)


def _round_fraction(x, tol, max_den=MAX_DENOMINATOR):
    for d in range(1, max_den + 1):
        n = int(mp.nint(x * d))
        if abs(x - mp.mpf(n) / d) < tol:
            return Fraction(n, d)
    return None


_EMBED_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _try_sqrt(field: BiquadField, t: tuple) -> tuple | str:
    """One precision level: exact square root of t, or 'negative' / 'retry' / 'no'."""
    eps_zero = mp.mpf(2) ** (-mp.prec // 2)
    emb = [field.embed(t, s1, s2) for s1, s2 in _EMBED_SIGNS]
    for v in emb:
        if abs(v) < eps_zero:
            return "retry"  # cannot certify the sign at this precision
        if v < 0:
            return "negative"
    roots = [mp.sqrt(v) for v in emb]
    tol = mp.mpf(2) ** (-mp.prec // 3)
    d1 = mp.sqrt(field.m1)
    d2 = mp.sqrt(field.m2)
    d3 = mp.sqrt(field.m3)
    for signs in itertools.product((1, -1), repeat=3):
        v = [roots[0]] + [s * r for s, r in zip(signs, roots[1:])]
        x0 = (v[0] + v[1] + v[2] + v[3]) / 4
        x1 = (v[0] + v[1] - v[2] - v[3]) / (4 * d1)
        x2 = (v[0] - v[1] + v[2] - v[3]) / (4 * d2)
        x3 = (v[0] - v[1] - v[2] + v[3]) / (4 * d3)
        coords = [_round_fraction(x, tol) for x in (x0, x1, x2, x3)]
        if any(c is None for c in coords):
            continue
        cand = tuple(coords)
        if any(cand) and field.mul(cand, cand) == t:
            return cand
    return "no"


def sqrt_in_biquad(field: BiquadField, t: tuple, max_prec: int | None = None) -> tuple | None:
    """Exact square root of t in the field, or None.

    Raises Inconclusive only if an embedding's sign cannot be certified at
    the precision ceiling; a plain failure to reconstruct returns None.
    """
    bits = _coeff_bits(t)
    prec = max(192, 2 * bits + 64)
    ceiling = max_prec if max_prec is not None else max(8192, 8 * bits)
    while True:
        with mp.workprec(prec):
            res = _try_sqrt(field, t)
        if isinstance(res, tuple):
            return res
        if res == "negative":
            return None
        if prec >= ceiling:
            if res == "retry":
                raise Inconclusive(f"cannot certify embedding signs at precision {prec}")
            return None
        prec = min(2 * prec, ceiling)


def unit_product(m1: int, m2: int, exps: tuple[int, int, int], factor: int = 1) -> tuple:
    """eps_{m1}^i * eps_{m2}^j * eps_{m3}^k times a rational factor, exactly."""
    field = BiquadField(m1, m2)
    out = field.from_rational(factor)
    for m, e in zip(field.subfields, exps):
        if e == 0:
            continue
        u = fundamental_unit(m)
        x, y = u.x, u.y
        if e < 0:
            # eps^-1 = norm * conjugate
            x, y = u.norm * u.x, -u.norm * u.y
        elem = field.from_quadratic(m, x, y, u.denom)
        for _ in range(abs(e)):
            out = field.mul(out, elem)
    return out


def is_square_in_biquad(candidate, m1: int, m2: int, max_prec: int | None = None) -> bool:
    """True iff the candidate is a square in Q(sqrt(m1), sqrt(m2)).

    ``candidate`` is either an exponent triple for
    (eps_{m1}, eps_{m2}, eps_{m1*m2}) or an exact element (4 Fractions in
    the basis (1, sqrt(m1), sqrt(m2), sqrt(m3))).  Totally non-positive
    candidates are rejected outright; True always means the exact
    re-squaring check passed.
    """
    field = BiquadField(m1, m2)
    if isinstance(candidate, tuple) and len(candidate) == 3 and all(isinstance(c, int) for c in candidate):
        elem = unit_product(m1, m2, candidate)
    else:
        elem = tuple(Fraction(c) for c in candidate)
    return sqrt_in_biquad(field, elem, max_prec) is not None


_PRODUCT_EXPS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1))


def _f2_rank(masks) -> int:
    pivots: dict[int, int] = {}
    for v in masks:
        while v:
            hb = v.bit_length() - 1
            if hb in pivots:
                v ^= pivots[hb]
            else:
                pivots[hb] = v
                break
    return len(pivots)


def unit_index_biquad(m1: int, m2: int) -> UnitIndex:
    """q = [E_K : <-1, eps_{m1}, eps_{m2}, eps_{m3}>] for K = Q(sqrt m1, sqrt m2).

    Tests all seven nontrivial unit products (sign-normalized) for
    squareness; the squares form an F2-subspace and q = 2^rank.
    """
    field = BiquadField(m1, m2)
    square_masks = []
    tags = []
    for exps in _PRODUCT_EXPS:
        u = unit_product(m1, m2, exps)
        found = sqrt_in_biquad(field, u) is not None
        if not found:
            # a totally negative product can still have -u square
            found = sqrt_in_biquad(field, field.neg(u)) is not None
        if found:
            square_masks.append(exps[0] | exps[1] << 1 | exps[2] << 2)
            tags.append(
                "*".join(f"eps_{m}" for m, e in zip(field.subfields, exps) if e)
            )
    rank = _f2_rank(square_masks)
    assert len(square_masks) == 2**rank - 1, "squares must form a subgroup"
    value = 2**rank
    tag = "adjoined sqrt of: " + (", ".join(tags) if tags else "nothing")
    return UnitIndex(value=value, basis_tag=tag)


def _residues(d: FactoredOdd) -> tuple[tuple[int, int], ...]:
    return tuple((p, r8) for p, r8, _ in d.factors)


def q_index_Ld(d: FactoredOdd) -> UnitIndex:
    """Unit index q(L) for L = Q(zeta_8, sqrt(d)) in the pinned case shapes.

    Pinned: d = q1*q2 with q1 = q2 = 3 (mod 8) or q1 = q2 = 7 (mod 8)
    (q = 4), and d = q*p with q = 3, p = 1 (mod 8), (p/q) = -1 (q = 8).
    Everything else (notably d = p1*p2 with p_i = 5 mod 8) is UnknownCase.
    """
    res = _residues(d)
    if len(res) == 2:
        (a, ra), (b, rb) = res
        if ra == rb == 3:
            return UnitIndex(4, f"zeta_8, eps_2, eps_{d.value}, sqrt(eps_{2 * d.value})")
        if ra == rb == 7:
            return UnitIndex(
                4, f"zeta_8, eps_2, eps_{d.value}, sqrt(eps_{2 * d.value}) or sqrt(eps_{d.value}*eps_{2 * d.value})"
            )
        pairs = {(3, 1): (a, b), (1, 3): (b, a)}
        if (ra % 8, rb % 8) in pairs:
            q, p = pairs[(ra % 8, rb % 8)]
            if p % 8 == 1 and jacobi(p, q) == -1:
                return UnitIndex(8, f"zeta_8, eps_2, sqrt(eps_{d.value}), sqrt(eps_{2 * d.value})")
    raise UnknownCase(f"q(L_d) not pinned for d = {d}")


def hasse_Q_Ld(d: FactoredOdd, case: str | None = None) -> UnitIndex:
    """Hasse unit index Q_L for L = Q(zeta_8, sqrt(d)) where pinned (always 1)."""
    res = _residues(d)
    if len(res) == 1 and res[0][1] == 1:
        return UnitIndex(1, "Q_L = 1 for d a prime = 1 mod 8")
    if len(res) == 2:
        (a, ra), (b, rb) = res
        pairs = {(3, 1): (a, b), (1, 3): (b, a)}
        if (ra, rb) in pairs:
            q, p = pairs[(ra, rb)]
            if jacobi(p, q) == -1:
                return UnitIndex(1, "Q_L = 1 for d = q*p, (p/q) = -1")
    raise UnknownCase(f"Hasse index not pinned for d = {d}")
