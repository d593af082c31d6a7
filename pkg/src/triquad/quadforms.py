"""Class groups of quadratic fields via binary quadratic forms.

Imaginary fields: every class has a unique reduced representative, so the
group is enumerated outright and its abelian structure resolved by
counting p-power torsion (no subexponential tricks; the target scale is
|D| <= 10^7).  Real fields: the narrow class number is the number of
cycles of reduced indefinite forms under the rho operator, and the wide
class number follows from the norm of the fundamental unit (h = h+ when
N(eps) = -1, h = h+/2 otherwise).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import gcd, isqrt

from . import units
from .arith import factorize, is_squarefree
from .errors import RangeExceeded

DEFAULT_DISC_CEILING = 4 * 10**7


@dataclass(frozen=True)
class QForm:
    """Binary quadratic form a*x^2 + b*xy + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def inverse(self) -> "QForm":
        return QForm(self.a, -self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


@dataclass(frozen=True)
class AbelianStructure:
    """Elementary divisors d1 | d2 | ... | dr, each > 1 (empty = trivial)."""

    divisors: tuple[int, ...]

    def __post_init__(self):
        for d1, d2 in zip(self.divisors, self.divisors[1:]):
            assert d2 % d1 == 0, f"not a divisor chain: {self.divisors}"

    @property
    def order(self) -> int:
        n = 1
        for d in self.divisors:
            n *= d
        return n

    def p_rank(self, p: int) -> int:
        return sum(1 for d in self.divisors if d % p == 0)

    def p_part(self, p: int) -> "AbelianStructure":
        parts = []
        for d in self.divisors:
            q = 1
            while d % p == 0:
                q *= p
                d //= p
            if q > 1:
                parts.append(q)
        return AbelianStructure(tuple(parts))

    @property
    def two_part_order(self) -> int:
        return self.p_part(2).order

    def __str__(self) -> str:
        if not self.divisors:
            return "trivial"
        return "(" + ", ".join(str(d) for d in self.divisors) + ")"


def fundamental_discriminant(m: int) -> int:
    """D = m if m = 1 mod 4 else 4m, for square-free m not in {0, 1}."""
    if m in (0, 1):
        raise ValueError("m must differ from 0 and 1")
    if not is_squarefree(m):
        raise ValueError(f"{m} is not square-free")
    return m if m % 4 == 1 else 4 * m


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def _check_ceiling(D: int, ceiling: int | None):
    lim = DEFAULT_DISC_CEILING if ceiling is None else ceiling
    if abs(D) > lim:
        raise RangeExceeded(f"|D| = {abs(D)} exceeds enumeration ceiling {lim}")


def reduce_form(f: QForm) -> QForm:
    """Gauss-reduce a positive definite form (disc < 0, a > 0)."""
    a, b, c = f.a, f.b, f.c
    if f.disc >= 0:
        raise ValueError("reduce_form requires negative discriminant; use rho cycles instead")
    if a <= 0:
        raise ValueError("positive definite form needs a > 0")
    while True:
        if not (-a < b <= a):
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QForm(a, b, c)


def principal_form(D: int) -> QForm:
    if D % 4 == 0:
        return QForm(1, 0, -D // 4)
    return QForm(1, 1, (1 - D) // 4)


def _solve_mod(a: int, b: int, m: int) -> tuple[int, int]:
    """Solutions of a*x = b (mod m) as x = s + t*k; assumes solvability."""
    if m == 0:
        return 0, 1
    a %= m
    b %= m
    g = gcd(a, m)
    if b % g != 0:
        raise ValueError("congruence has no solution")
    if g == 1:
        return b * pow(a, -1, m) % m, m
    m2 = m // g
    s = (b // g) * pow(a // g, -1, m2) % m2
    return s, m2


def compose(f: QForm, g: QForm) -> QForm:
    """Gauss composition; returns the reduced representative of the product class."""
    if f.disc != g.disc:
        raise ValueError("forms must share a discriminant")
    f = reduce_form(f)
    g = reduce_form(g)
    if f == g:
        return _square(f)
    a1, b1, c1 = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    gg = (b2 + b1) // 2
    h = (b2 - b1) // 2
    w = gcd(gcd(a1, a2), gg)
    s = a1 // w
    t = a2 // w
    u = gg // w
    k0, per = _solve_mod(t * u, h * u + s * c1, s * t)
    n, _ = _solve_mod(t * per, h - t * k0, s)
    k = k0 + per * n
    l = (t * k - h) // s
    m = (t * u * k - h * u - s * c1) // (s * t)
    a3 = s * t
    b3 = w * u - (k * t + l * s)
    c3 = k * l - w * m
    return reduce_form(QForm(a3, b3, c3))


def _square(f: QForm) -> QForm:
    a1, b1, c1 = f.a, f.b, f.c
    w = gcd(a1, b1)
    s = a1 // w
    t = s
    u = b1 // w
    k0, per = _solve_mod(t * u, s * c1, s * t)
    n, _ = _solve_mod(t * per, -t * k0, s)
    k = k0 + per * n
    m = (t * u * k - s * c1) // (s * t)
    l = (t * m + c1) // u if u != 0 else (t * k) // s
    a3 = s * t
    b3 = w * u - (k * t + l * s)
    c3 = k * l - w * m
    return reduce_form(QForm(a3, b3, c3))


def form_pow(f: QForm, n: int) -> QForm:
    D = f.disc
    if n < 0:
        f, n = f.inverse, -n
    acc = principal_form(D)
    base = reduce_form(f)
    while n:
        if n & 1:
            acc = compose(acc, base)
        base = compose(base, base)
        n >>= 1
    return acc


def reduced_forms_imaginary(D: int, ceiling: int | None = None) -> list[QForm]:
    """All reduced positive definite forms of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"invalid negative discriminant {D}")
    _check_ceiling(D, ceiling)
    forms = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        four_a = 4 * a
        for b in range(-a + 1, a + 1):
            if (b * b - D) % four_a:
                continue
            c = (b * b - D) // four_a
            if c < a:
                continue
            if b < 0 and (a == c or a == -b):
                continue
            forms.append(QForm(a, b, c))
    return forms


def _p_part_structure(forms: list[QForm], identity: QForm, p: int, e: int) -> list[int]:
    """Exponent partition (a_1 >= a_2 >= ...) of the p-Sylow subgroup.

    Counts N_k = #{g : g^(p^k) = 1}; the jumps v_p(N_k/N_{k-1}) are the
    conjugate partition.
    """
    counts = [1]
    for k in range(1, e + 1):
        q = p**k
        n = sum(1 for f in forms if form_pow(f, q) == identity)
        counts.append(n)
        if n == counts[-2]:
            break
    lam = []
    for prev, cur in zip(counts, counts[1:]):
        step = 0
        ratio = cur // prev
        while ratio > 1:
            ratio //= p
            step += 1
        lam.append(step)
    if not lam:
        return []
    r = lam[0]
    return [sum(1 for x in lam if x >= i) for i in range(1, r + 1)]


_class_group_cache: dict[int, AbelianStructure] = {}
_narrow_cache: dict[int, int] = {}
_cache_lock = threading.Lock()


def imaginary_class_group(D: int, ceiling: int | None = None) -> AbelianStructure:
    """Elementary-divisor structure of Cl(D) for fundamental D < 0."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant (non-maximal orders rejected)")
    with _cache_lock:
        cached = _class_group_cache.get(D)
    if cached is not None:
        return cached
    forms = reduced_forms_imaginary(D, ceiling)
    h = len(forms)
    identity = principal_form(D)
    per_prime: dict[int, list[int]] = {}
    for p, e in factorize(h).items():
        part = _p_part_structure(forms, identity, p, e)
        assert sum(part) == e, f"p-part mismatch for D={D}, p={p}"
        per_prime[p] = part
    r = max((len(v) for v in per_prime.values()), default=0)
    divisors = []
    for i in range(r):  # i-th largest cyclic factor across all primes
        d = 1
        for p, part in per_prime.items():
            if i < len(part):
                d *= p ** part[i]
        divisors.append(d)
    structure = AbelianStructure(tuple(sorted(divisors)))
    assert structure.order == h
    with _cache_lock:
        _class_group_cache[D] = structure
    return structure


def _rho(D: int, root: int, f: QForm) -> QForm:
    """Reduction-cycle step on reduced indefinite forms."""
    a2 = f.c
    two_c = 2 * abs(f.c)
    t = (-f.b) % two_c
    # largest b' = t (mod 2|c|) with b' <= isqrt(D)
    b2 = t + two_c * ((root - t) // two_c)
    c2 = (b2 * b2 - D) // (4 * a2)
    return QForm(a2, b2, c2)


def reduced_forms_real(D: int, ceiling: int | None = None) -> list[QForm]:
    """All reduced indefinite forms: 0 < b < sqrt(D), sqrt(D)-b < 2|a| < sqrt(D)+b."""
    if D <= 0 or D % 4 not in (0, 1):
        raise ValueError(f"invalid positive discriminant {D}")
    _check_ceiling(D, ceiling)
    root = isqrt(D)
    if root * root == D:
        raise ValueError("discriminant must not be a square")
    forms = []
    for b in range(2 - (D % 2), root + 1, 2):
        num = b * b - D  # = 4ac < 0
        a_lo = max(root - b + 1, 1)  # 2|a| > sqrt(D) - b
        a_hi = root + b  # 2|a| < sqrt(D) + b
        for aa in range((a_lo + 1) // 2, a_hi // 2 + 1):
            if num % (4 * aa):
                continue
            c = num // (4 * aa)
            forms.append(QForm(aa, b, c))
            forms.append(QForm(-aa, b, -c))
    return forms


def narrow_class_number(D: int, ceiling: int | None = None) -> int:
    """h+(D): number of rho-cycles of reduced indefinite forms."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant (non-maximal orders rejected)")
    with _cache_lock:
        cached = _narrow_cache.get(D)
    if cached is not None:
        return cached
    forms = reduced_forms_real(D, ceiling)
    root = isqrt(D)
    seen: set[QForm] = set()
    cycles = 0
    for f in forms:
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = _rho(D, root, g)
        assert g == f, "rho orbit left its cycle"
    with _cache_lock:
        _narrow_cache[D] = cycles
    return cycles


def _two_part(n: int) -> int:
    return n & -n


def class_number_real(m: int, ceiling: int | None = None) -> int:
    """Wide class number of Q(sqrt(m)), m > 1 square-free."""
    D = fundamental_discriminant(m)
    hplus = narrow_class_number(D, ceiling)
    if units.fundamental_unit(m).norm == -1:
        return hplus
    assert hplus % 2 == 0, f"h+({D}) must be even when N(eps) = +1"
    return hplus // 2


def h2_quadratic(m: int, ceiling: int | None = None) -> int:
    """2-part of the (wide) class number of Q(sqrt(m))."""
    if m in (0, 1):
        raise ValueError("m must differ from 0 and 1")
    D = fundamental_discriminant(m)
    if m < 0:
        return imaginary_class_group(D, ceiling).two_part_order
    return _two_part(class_number_real(m, ceiling))


def sylow2_type(m: int, ceiling: int | None = None) -> AbelianStructure:
    """Elementary divisors of the 2-Sylow subgroup of Cl(Q(sqrt(m))), m < 0."""
    if m >= 0:
        raise ValueError("sylow2_type is for imaginary fields (m < 0)")
    D = fundamental_discriminant(m)
    return imaginary_class_group(D, ceiling).p_part(2)


def clear_caches():
    with _cache_lock:
        _class_group_cache.clear()
        _narrow_cache.clear()


def cache_snapshot() -> tuple[dict[int, AbelianStructure], dict[int, int]]:
    with _cache_lock:
        return dict(_class_group_cache), dict(_narrow_cache)


def cache_preload(imaginary: dict[int, AbelianStructure], narrow: dict[int, int]):
    with _cache_lock:
        _class_group_cache.update(imaginary)
        _narrow_cache.update(narrow)
