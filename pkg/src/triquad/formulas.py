"""Class-number routes for the degree-8 field L_d = Q(zeta_8, sqrt(d)).

h2(L_d) is never computed by ideal arithmetic in the octic field; it is
assembled from 2-class numbers of quadratic subfields through exact
product formulas.  Two independent exact routes exist on overlapping case
shapes (one through the full multiquadratic unit index, one through
CM-extension class number formulas); when both apply they must agree, and
a disagreement is raised as IntegrityError rather than masked.  Case
shapes with no exact route degrade to divisibility certificates.

All evaluation is exact rational arithmetic; a non-integral intermediate
value is an integrity failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import FactoredOdd, jacobi, quartic_symbol, quartic_symbol_mod2
from .errors import IntegrityError, RouteUnavailable, UnknownCase
from .quadforms import h2_quadratic
from .units import hasse_Q_Ld, q_index_Ld, unit_index_biquad

EXACT = "exact"
LOWER_BOUND = "lower_bound"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class H2Result:
    """h2(L_d), either exactly or as a power-of-2 lower bound (divisor)."""

    kind: str  # EXACT, LOWER_BOUND or UNKNOWN
    value: int | None
    route: str

    def __str__(self) -> str:
        if self.kind == EXACT:
            return f"h2 = {self.value} [{self.route}]"
        if self.kind == LOWER_BOUND:
            return f"{self.value} | h2 [{self.route}]"
        return "h2 unknown"


def _exact_power_of_2(x: Fraction, context: str) -> int:
    if x.denominator != 1:
        raise IntegrityError(f"non-integral 2-class number in {context}: {x}")
    v = int(x)
    if v <= 0 or v & (v - 1):
        raise IntegrityError(f"2-class number must be a power of 2 in {context}: {v}")
    return v


def h2_real_biquad(m: int, ceiling: int | None = None) -> int:
    """2-class number of Q(sqrt(2), sqrt(m)) for odd square-free m > 1.

    Degree-4 real multiquadratic formula: h = (1/4) q(K) h(2) h(m) h(2m),
    taken on 2-parts (the unit index q is itself a power of 2).
    """
    if m <= 1 or m % 2 == 0:
        raise ValueError(f"m must be odd square-free > 1, got {m}")
    q = unit_index_biquad(2, m).value
    val = Fraction(q) * h2_quadratic(2, ceiling) * h2_quadratic(m, ceiling) * h2_quadratic(2 * m, ceiling) / 4
    return _exact_power_of_2(val, f"h2(Q(sqrt2, sqrt{m}))")


def h2_Ld_via_wada(d: FactoredOdd, ceiling: int | None = None) -> H2Result:
    """Exact h2(L_d) through the degree-8 multiquadratic formula.

    h2(L_d) = (1/2^5) q(L_d) h2(d) h2(-d) h2(2d) h2(-2d); the three
    remaining subfields (2, -2, -1) all have h2 = 1.  Available only where
    q(L_d) is pinned.
    """
    try:
        q = q_index_Ld(d).value
    except UnknownCase as exc:
        raise RouteUnavailable(str(exc)) from exc
    n = d.value
    val = (
        Fraction(q)
        * h2_quadratic(n, ceiling)
        * h2_quadratic(-n, ceiling)
        * h2_quadratic(2 * n, ceiling)
        * h2_quadratic(-2 * n, ceiling)
        / 32
    )
    return H2Result(EXACT, _exact_power_of_2(val, f"h2(L_{n}) multiquadratic"), "multiquadratic-unit-index")


def h2_Ld_via_cm(d: FactoredOdd, ceiling: int | None = None) -> H2Result:
    """Exact h2(L_d) through CM-extension formulas over Q(sqrt(2)).

    For d = p (prime, p = 1 mod 8):   h2 = (1/4) h2(L+) h2(-p) h2(-2p).
    For d = q*p (q=3, p=1 mod 8, (p/q)=-1, where the Hasse index is 1):
                                       h2 = (Q/4) h2(L+) h2(-2d) h2(-d).
    """
    n = d.value
    res8 = d.residues8
    if len(d.factors) == 1 and res8[0] == 1:
        hplus = h2_real_biquad(n, ceiling)
        val = Fraction(hplus) * h2_quadratic(-n, ceiling) * h2_quadratic(-2 * n, ceiling) / 4
        return H2Result(EXACT, _exact_power_of_2(val, f"h2(L_{n}) CM"), "cm-over-sqrt2")
    if len(d.factors) == 2 and sorted(res8) == [1, 3]:
        try:
            Q = hasse_Q_Ld(d).value
        except UnknownCase as exc:
            raise RouteUnavailable(str(exc)) from exc
        hplus = h2_real_biquad(n, ceiling)
        val = Fraction(Q) * hplus * h2_quadratic(-2 * n, ceiling) * h2_quadratic(-n, ceiling) / 4
        return H2Result(EXACT, _exact_power_of_2(val, f"h2(L_{n}) CM"), "cm-over-sqrt2")
    raise RouteUnavailable(f"CM route does not cover d = {d}")


def _type222_p1p2_criterion(d: FactoredOdd) -> bool:
    """d = p1*p2, p1 = 5, p2 = 1 (mod 8), (2/p2)_4 != (p2/2)_4, (p2/p1) = -1."""
    if len(d.factors) != 2 or sorted(d.residues8) != [1, 5]:
        return False
    by_res = {r: p for p, r, _ in d.factors}
    p1, p2 = by_res[5], by_res[1]
    return quartic_symbol(2, p2) != quartic_symbol_mod2(p2) and jacobi(p2, p1) == -1


def h2_Ld_via_classification(d: FactoredOdd) -> H2Result:
    """Exact h2 = 8 straight from the classification criterion.

    Only needed for the d = p1*p2 (5, 1 mod 8) shape, where neither the
    unit-index route nor the CM route applies but the elementary-type
    criterion pins the group to (2,2,2), hence order 8.
    """
    if _type222_p1p2_criterion(d):
        return H2Result(EXACT, 8, "type-(2,2,2)-criterion")
    raise RouteUnavailable(f"classification route does not cover d = {d}")


def divisibility_certificate(d: FactoredOdd) -> H2Result | None:
    """Power-of-2 lower bound on h2(L_d) from the factorization shape of d.

    Returns None when no known shape matches.
    """
    res = sorted((r, p) for p, r, _ in d.factors)
    res8 = [r for r, _ in res]
    if len(res) == 1 and res8 == [1]:
        p = res[0][1]
        s2p = quartic_symbol(2, p)
        sp2 = quartic_symbol_mod2(p)
        if s2p == sp2 == 1:
            return H2Result(LOWER_BOUND, 16, "16 | h2: d = p, (2/p)_4 = (p/2)_4 = 1")
        if s2p == sp2 == -1:
            return H2Result(LOWER_BOUND, 16, "16 | h2: d = p, (2/p)_4 = (p/2)_4 = -1")
        return None
    if len(res) == 2:
        if res8 == [5, 5]:
            return H2Result(LOWER_BOUND, 16, "16 | h2: d = p1*p2, both 5 mod 8")
        if res8 == [7, 7]:
            return H2Result(LOWER_BOUND, 32, "32 | h2: d = q1*q2, both 7 mod 8")
        if res8 == [1, 5]:
            p2, p1 = res[0][1], res[1][1]
            if jacobi(p2, p1) == 1:
                return H2Result(LOWER_BOUND, 32, "32 | h2: d = p1*p2 (5,1 mod 8), (p2/p1) = 1")
            return None
    if len(res) == 3:
        if res8 == [3, 3, 5]:
            return H2Result(LOWER_BOUND, 32, "32 | h2: d = q1*q2*p (3,3,5 mod 8)")
        if res8 == [3, 5, 5]:
            return H2Result(LOWER_BOUND, 32, "32 | h2: d = q*p1*p2 (3,5,5 mod 8)")
    return None


def h2_Ld(d: FactoredOdd, ceiling: int | None = None) -> H2Result:
    """Best available h2(L_d): all applicable exact routes (which must
    agree), else the strongest certificate, else unknown."""
    exact: list[H2Result] = []
    for route in (h2_Ld_via_wada, h2_Ld_via_cm):
        try:
            exact.append(route(d, ceiling))
        except RouteUnavailable:
            pass
    try:
        exact.append(h2_Ld_via_classification(d))
    except RouteUnavailable:
        pass
    if exact:
        values = {r.value for r in exact}
        if len(values) != 1:
            detail = "; ".join(f"{r.route}={r.value}" for r in exact)
            raise IntegrityError(f"exact routes disagree for d = {d}: {detail}")
        cert = divisibility_certificate(d)
        if cert is not None and exact[0].value % cert.value != 0:
            raise IntegrityError(
                f"certificate {cert.value} does not divide exact h2 = {exact[0].value} for d = {d}"
            )
        route = " & ".join(r.route for r in exact)
        return H2Result(EXACT, exact[0].value, route)
    cert = divisibility_certificate(d)
    if cert is not None:
        return cert
    return H2Result(UNKNOWN, None, "no applicable route")
