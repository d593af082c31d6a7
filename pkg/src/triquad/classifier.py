"""Decision procedures for the 2-class group of L_d = Q(zeta_8, sqrt(d)).

The rank of Cl_2(L_d) is 2 or 3 exactly on two finite lists of case
shapes of d; within those, elementary-symbol criteria decide whether the
group is (2,4) (rank 2, order 8) or (2,2,2) (rank 3, order 8).  Every
criterion verdict is cross-checked against the formula-route value of
h2(L_d) whenever one exists; disagreement is an IntegrityError, never a
silent preference.  Every symbol evaluation feeding a verdict is logged
so a classification can be audited after the fact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .arith import (
    FactoredOdd,
    factor_squarefree,
    jacobi,
    kaplan_parameters,
    quartic_symbol,
    quartic_symbol_mod2,
    represent_u2_minus_2v2,
)
from .errors import IntegrityError, SearchExhausted
from .formulas import EXACT, LOWER_BOUND, H2Result, h2_Ld


class GroupType(enum.Enum):
    TYPE_2_4 = "(2,4)"
    TYPE_2_2_2 = "(2,2,2)"
    NOT_OF_TARGET_TYPE = "not_of_target_type"
    OUT_OF_SCOPE = "out_of_scope"


@dataclass(frozen=True)
class RankCase:
    rank: int
    case_id: int
    description: str
    witnesses: tuple[tuple[str, int], ...]


@dataclass
class SymbolLog:
    """Audit trail of every residue-symbol evaluation behind a verdict."""

    entries: list[tuple[str, tuple[int, ...], int]] = field(default_factory=list)

    def jacobi(self, a: int, n: int) -> int:
        v = jacobi(a, n)
        self.entries.append(("jacobi", (a, n), v))
        return v

    def quartic(self, a: int, p: int) -> int:
        v = quartic_symbol(a, p)
        self.entries.append(("quartic", (a, p), v))
        return v

    def quartic_mod2(self, a: int) -> int:
        v = quartic_symbol_mod2(a)
        self.entries.append(("quartic_mod2", (a,), v))
        return v


@dataclass(frozen=True)
class Verdict:
    d: int
    rank_case: RankCase | None
    group_type: GroupType
    h2: H2Result
    annotations: tuple[str, ...]
    symbols: tuple[tuple[str, tuple[int, ...], int], ...]


def _as_factored(d) -> FactoredOdd:
    return d if isinstance(d, FactoredOdd) else factor_squarefree(d)


def rank2_case(d, log: SymbolLog | None = None) -> RankCase | None:
    """Case shape of d giving 2-rank 2, or None."""
    d = _as_factored(d)
    log = log if log is not None else SymbolLog()
    res = sorted((r, p) for p, r, _ in d.factors)
    res8 = [r for r, _ in res]
    prim = [p for _, p in res]
    if res8 == [3, 3]:
        return RankCase(2, 1, "d = q1*q2, q1 = q2 = 3 (mod 8)", (("q1", prim[0]), ("q2", prim[1])))
    if res8 == [5, 5]:
        return RankCase(2, 2, "d = p1*p2, p1 = p2 = 5 (mod 8)", (("p1", prim[0]), ("p2", prim[1])))
    if res8 == [3, 7]:
        return RankCase(2, 3, "d = q1*q2, q1 = 3, q2 = 7 (mod 8)", (("q1", prim[0]), ("q2", prim[1])))
    if res8 == [5, 7]:
        return RankCase(2, 4, "d = p*q, p = 5, q = 7 (mod 8)", (("p", prim[0]), ("q", prim[1])))
    if res8 == [1]:
        p = prim[0]
        if p % 16 == 9 or log.quartic(2, p) != log.quartic_mod2(p):
            return RankCase(
                2, 5, "d = p = 1 (mod 8), p = 9 (mod 16) or (2/p)_4 != (p/2)_4", (("p", p),)
            )
    return None


def rank3_case(d, log: SymbolLog | None = None) -> RankCase | None:
    """Case shape of d giving 2-rank 3, or None."""
    d = _as_factored(d)
    log = log if log is not None else SymbolLog()
    res = sorted((r, p) for p, r, _ in d.factors)
    res8 = [r for r, _ in res]
    prim = [p for _, p in res]
    if res8 == [1]:
        p = prim[0]
        if log.quartic(2, p) == 1 and log.quartic_mod2(p) == 1:
            return RankCase(3, 1, "d = p = 1 (mod 8), (2/p)_4 = (p/2)_4 = 1", (("p", p),))
    if res8 == [7, 7]:
        return RankCase(3, 2, "d = q1*q2, q1 = q2 = 7 (mod 8)", (("q1", prim[0]), ("q2", prim[1])))
    if res8 == [1, 3]:
        p, q = prim[0], prim[1]
        if log.quartic(2, p) == -1:
            return RankCase(3, 3, "d = q*p, q = 3, p = 1 (mod 8), (2/p)_4 = -1", (("q", q), ("p", p)))
    if res8 == [1, 5]:
        p2, p1 = prim[0], prim[1]
        if log.quartic(2, p2) != log.quartic_mod2(p2):
            return RankCase(
                3, 4, "d = p1*p2, p1 = 5, p2 = 1 (mod 8), (2/p2)_4 != (p2/2)_4", (("p1", p1), ("p2", p2))
            )
    if res8 == [3, 3, 5]:
        return RankCase(
            3, 5, "d = q1*q2*p, q1 = q2 = 3, p = 5 (mod 8)",
            (("q1", prim[0]), ("q2", prim[1]), ("p", prim[2])),
        )
    if res8 == [3, 5, 5]:
        return RankCase(
            3, 6, "d = q*p1*p2, q = 3, p1 = p2 = 5 (mod 8)",
            (("q", prim[0]), ("p1", prim[1]), ("p2", prim[2])),
        )
    return None


def _criterion_24(d: FactoredOdd, log: SymbolLog, search_bound: int | None = None):
    """Decides the (2,4) criterion; returns (matched, reason)."""
    res = sorted((r, p) for p, r, _ in d.factors)
    res8 = [r for r, _ in res]
    if res8 == [1]:
        p = res[0][1]
        if p % 16 != 9:
            return False, f"p = {p} is not 9 mod 16"
        if log.quartic(2, p) == log.quartic_mod2(p):
            return False, "(2/p)_4 = (p/2)_4"
        rep = represent_u2_minus_2v2(p)
        if log.quartic(rep.u, p) != -1:
            return False, f"(u/p)_4 = +1 for u = {rep.u}"
        return True, f"p = 9 mod 16, (2/p)_4 != (p/2)_4, (u/p)_4 = -1 with (u, v) = ({rep.u}, {rep.v})"
    if res8 == [3, 3]:
        a, b = res[0][1], res[1][1]
        q1, q2 = (a, b) if jacobi(a, b) == 1 else (b, a)
        log.jacobi(q1, q2)
        kp = kaplan_parameters(q1, q2, search_bound)
        if log.jacobi(-2, kp.criterion_arg) != -1:
            return False, f"(-2/|k^2X+lY|) = +1 with {kp}"
        return True, f"(q1/q2) = 1 and (-2/|k^2X+lY|) = -1 with {kp}"
    return False, "d is not of a (2,4)-candidate shape"


def _criterion_222(d: FactoredOdd, log: SymbolLog):
    """Decides the (2,2,2) criterion; returns (matched, reason)."""
    res = sorted((r, p) for p, r, _ in d.factors)
    res8 = [r for r, _ in res]
    if res8 == [1, 5]:
        p2, p1 = res[0][1], res[1][1]
        if log.quartic(2, p2) == log.quartic_mod2(p2):
            return False, "(2/p2)_4 = (p2/2)_4"
        if log.jacobi(p2, p1) != -1:
            return False, "(p2/p1) = +1"
        return True, f"d = p1*p2 = {p1}*{p2}, (2/p2)_4 != (p2/2)_4, (p2/p1) = -1"
    if res8 == [1, 3]:
        p, q = res[0][1], res[1][1]
        if log.quartic(2, p) != -1:
            return False, "(2/p)_4 = +1"
        if log.jacobi(p, q) != -1:
            return False, "(p/q) = +1"
        return True, f"d = q*p = {q}*{p}, (2/p)_4 = -1, (p/q) = -1"
    return False, "d is not of a (2,2,2)-candidate shape"


def _crosscheck(d: FactoredOdd, matched: bool, h2: H2Result, target: str):
    if h2.kind == EXACT and matched != (h2.value == 8):
        raise IntegrityError(
            f"criterion/oracle mismatch for d = {d}: {target} criterion says {matched}, h2 = {h2.value}"
        )
    if h2.kind == LOWER_BOUND and matched and h2.value > 8:
        raise IntegrityError(
            f"criterion/certificate clash for d = {d}: {target} matched but {h2.value} | h2"
        )


def classify_24(d, ceiling: int | None = None, search_bound: int | None = None) -> Verdict:
    """Apply the (2,4) criterion to d, cross-checked against the h2 routes."""
    d = _as_factored(d)
    log = SymbolLog()
    rc = rank2_case(d, log)
    try:
        matched, reason = _criterion_24(d, log, search_bound)
    except SearchExhausted as exc:
        return Verdict(
            d.value, rc, GroupType.OUT_OF_SCOPE, H2Result("unknown", None, "search exhausted"),
            (f"parametrization search exhausted: {exc}",), tuple(log.entries),
        )
    h2 = h2_Ld(d, ceiling)
    _crosscheck(d, matched, h2, "(2,4)")
    gtype = GroupType.TYPE_2_4 if matched else GroupType.NOT_OF_TARGET_TYPE
    return Verdict(d.value, rc, gtype, h2, (reason,), tuple(log.entries))


def classify_222(d, ceiling: int | None = None) -> Verdict:
    """Apply the (2,2,2) criterion to d, cross-checked against the h2 routes."""
    d = _as_factored(d)
    log = SymbolLog()
    rc = rank3_case(d, log)
    matched, reason = _criterion_222(d, log)
    h2 = h2_Ld(d, ceiling)
    _crosscheck(d, matched, h2, "(2,2,2)")
    gtype = GroupType.TYPE_2_2_2 if matched else GroupType.NOT_OF_TARGET_TYPE
    return Verdict(d.value, rc, gtype, h2, (reason,), tuple(log.entries))


def _annotations(d: FactoredOdd, log: SymbolLog) -> list[str]:
    notes = []
    res8 = sorted(d.residues8)
    if res8 == [1]:
        p = d.primes[0]
        if log.quartic(2, p) == -1 and log.quartic_mod2(p) == -1:
            notes.append("4-rank of Cl_2(L_d) = 1")
            notes.append("8-rank of Cl_2(L_d) = 1")
    if res8 == [3, 3]:
        notes.append(f"h2(L_d) = h2({-2 * d.value})")
    return notes


def classify(d, ceiling: int | None = None, search_bound: int | None = None) -> Verdict:
    """Full verdict for an odd square-free d > 1.

    OutOfScope means d matches neither rank-2 nor rank-3 case list (ranks
    other than 2 and 3 are not characterized here).
    """
    d = _as_factored(d)
    log = SymbolLog()
    r2 = rank2_case(d, log)
    r3 = rank3_case(d, log)
    if r2 is not None and r3 is not None:
        raise IntegrityError(f"rank case lists overlap at d = {d}: {r2} vs {r3}")
    if r2 is None and r3 is None:
        h2 = h2_Ld(d, ceiling)
        return Verdict(
            d.value, None, GroupType.OUT_OF_SCOPE, h2,
            ("d is outside the classified rank-2 and rank-3 shapes",), tuple(log.entries),
        )
    if r2 is not None:
        verdict = classify_24(d, ceiling, search_bound)
    else:
        verdict = classify_222(d, ceiling)
    notes = list(verdict.annotations) + _annotations(d, log)
    if verdict.h2.kind == LOWER_BOUND:
        notes.append(f"certificate: {verdict.h2.route}")
    return Verdict(
        d.value,
        r2 if r2 is not None else r3,
        verdict.group_type,
        verdict.h2,
        tuple(notes),
        tuple(log.entries) + verdict.symbols,
    )
