"""Exact integer arithmetic primitives.

Primality and factorization are deterministic at the supported scale
(inputs up to 2**64 for primality; factorization is trial division plus
Pollard rho and reports failure instead of running unbounded).  On top of
those sit the residue symbols (Jacobi, rational quartic) and the two
Diophantine parametrizations consumed by the classification criteria:
p = u^2 - 2v^2 with u normalized to 1 mod 8, and the five-parameter
representation 2*q2 = k^2 X^2 + 2lXY + 2mY^2, q1 = l^2 - 2k^2 m.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import (
    FactorBoundExceeded,
    NotQuadraticResidue,
    NotSquarefree,
    RangeExceeded,
    SearchExhausted,
)

PRIMALITY_WIDTH = 2**64

# SPRP witnesses proven sufficient below 3.3 * 10^24, well past the width.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 10_000
_DEFAULT_FACTOR_DIGITS = 40


@dataclass(frozen=True)
class FactoredOdd:
    """An odd square-free positive integer with per-prime residue data.

    ``factors`` is sorted ascending; each entry is (prime, prime % 8,
    prime % 16).
    """

    value: int
    factors: tuple[tuple[int, int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _, _ in self.factors)

    @property
    def residues8(self) -> tuple[int, ...]:
        return tuple(r for _, r, _ in self.factors)

    def __str__(self) -> str:
        return "*".join(str(p) for p in self.primes)


@dataclass(frozen=True)
class UVRep:
    """Solution of p = u^2 - 2v^2 with u sign-normalized to 1 mod 8."""

    u: int
    v: int

    @property
    def prime(self) -> int:
        return self.u * self.u - 2 * self.v * self.v


@dataclass(frozen=True)
class KaplanParams:
    """Integers with 2*q2 = k^2 X^2 + 2lXY + 2mY^2 and q1 = l^2 - 2k^2 m."""

    X: int
    Y: int
    k: int
    l: int
    m: int

    @property
    def q1(self) -> int:
        return self.l * self.l - 2 * self.k * self.k * self.m

    @property
    def two_q2(self) -> int:
        k2 = self.k * self.k
        return k2 * self.X * self.X + 2 * self.l * self.X * self.Y + 2 * self.m * self.Y * self.Y

    @property
    def criterion_arg(self) -> int:
        """|k^2 X + l Y|, the odd modulus fed to the (-2/.) symbol."""
        return abs(self.k * self.k * self.X + self.l * self.Y)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64 (Miller-Rabin, fixed witnesses)."""
    if n < 2:
        return False
    if n >= PRIMALITY_WIDTH:
        raise RangeExceeded(f"primality test supported only below 2**64, got {n}")
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise FactorBoundExceeded(f"pollard rho failed on {n}")


def factorize(n: int, max_digits: int = _DEFAULT_FACTOR_DIGITS) -> dict[int, int]:
    """Full prime factorization of n > 0 as {prime: exponent}.

    Cofactors with more than ``max_digits`` digits abort with
    FactorBoundExceeded rather than looping for an unbounded time.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < _TRIAL_BOUND:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += wheel[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < _TRIAL_BOUND * _TRIAL_BOUND or is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        if len(str(m)) > max_digits:
            raise FactorBoundExceeded(f"refusing to factor {len(str(m))}-digit cofactor")
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def squarefree_kernel(n: int, max_digits: int = _DEFAULT_FACTOR_DIGITS) -> tuple[int, int]:
    """Write |n| = s * c^2 with s square-free; returns (sign(n)*s, c)."""
    if n == 0:
        raise ValueError("n must be nonzero")
    sign = -1 if n < 0 else 1
    s, c = 1, 1
    for p, e in factorize(abs(n), max_digits=max_digits).items():
        if e % 2:
            s *= p
        c *= p ** (e // 2)
    return sign * s, c


def is_squarefree(n: int) -> bool:
    if n in (0,):
        return False
    _, c = squarefree_kernel(abs(n))
    return c == 1


def factor_squarefree(n: int) -> FactoredOdd:
    """Factor an odd square-free n > 1, recording residues mod 8 and 16."""
    if n <= 1 or n % 2 == 0:
        raise ValueError(f"expected odd integer > 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        raise NotSquarefree(f"{n} is not square-free")
    factors = tuple((p, p % 8, p % 16) for p in sorted(fac))
    return FactoredOdd(value=n, factors=factors)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    a %= n
    t = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def quartic_symbol(a: int, p: int) -> int:
    """Rational quartic residue symbol (a/p)_4 = a^((p-1)/4) mod p in {+-1}.

    Defined for primes p = 1 mod 4 and quadratic residues a mod p.
    """
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"p must be a prime congruent to 1 mod 4, got {p}")
    a %= p
    if a == 0 or pow(a, (p - 1) // 2, p) != 1:
        raise NotQuadraticResidue(f"{a} is not a quadratic residue mod {p}")
    t = pow(a, (p - 1) // 4, p)
    if t == 1:
        return 1
    if t == p - 1:
        return -1
    raise AssertionError("quartic symbol of a quadratic residue must be +-1")


def quartic_symbol_mod2(a: int) -> int:
    """(a/2)_4 = (-1)^((a-1)/8) for a = 1 mod 8: +1 iff a = 1 mod 16."""
    if a % 8 != 1:
        raise ValueError(f"a must be 1 mod 8, got {a}")
    return 1 if a % 16 == 1 else -1


def _signed_range(bound: int):
    """0, 1, -1, 2, -2, ... out to +-bound."""
    yield 0
    for i in range(1, bound + 1):
        yield i
        yield -i


def represent_u2_minus_2v2(p: int, search_bound: int | None = None) -> UVRep:
    """Solve p = u^2 - 2v^2 for a prime p = 1 mod 8.

    Returns the solution with minimal v > 0 among those whose
    sign-normalized u is 1 mod 8; u itself may be negative.
    """
    if p % 8 != 1 or not is_prime(p):
        raise ValueError(f"p must be a prime congruent to 1 mod 8, got {p}")
    if search_bound is None:
        search_bound = 10 * p
    for v in range(1, search_bound + 1):
        u2 = p + 2 * v * v
        u = isqrt(u2)
        if u * u != u2:
            continue
        if u % 8 == 1:
            return UVRep(u=u, v=v)
        if u % 8 == 7:
            return UVRep(u=-u, v=v)
    raise SearchExhausted(f"no u = 1 mod 8 with u^2 - 2v^2 = {p} for v <= {search_bound}")


def kaplan_parameters(q1: int, q2: int, search_bound: int | None = None) -> KaplanParams:
    """Find (X, Y, k, l, m) with 2*q2 = k^2X^2 + 2lXY + 2mY^2, q1 = l^2 - 2k^2m
    and |k^2 X + l Y| odd.

    Requires q1 = q2 = 3 mod 8 and (q1/q2) = 1.  The search runs in
    increasing max-norm order (ties broken 0, 1, -1, 2, ... per variable),
    so the returned solution is deterministic.  Both identities are
    re-verified exactly before returning.
    """
    if q1 % 8 != 3 or q2 % 8 != 3 or not (is_prime(q1) and is_prime(q2)):
        raise ValueError("q1 and q2 must be primes congruent to 3 mod 8")
    if jacobi(q1, q2) != 1:
        raise ValueError(f"({q1}/{q2}) must be +1; swap the roles of q1 and q2")
    if search_bound is None:
        search_bound = 10 * q2
    for bound in range(1, search_bound + 1):
        for k in range(1, bound + 1):
            k2 = k * k
            for l in _signed_range(bound):
                num = l * l - q1
                if num % (2 * k2) != 0:
                    continue
                m = num // (2 * k2)
                if abs(m) > bound:
                    continue
                # With m fixed, k^2*X + l*Y = +-s where s^2 = q1*Y^2 + 2*k^2*q2.
                for Y in _signed_range(bound):
                    s2 = q1 * Y * Y + 2 * k2 * q2
                    s = isqrt(s2)
                    if s * s != s2 or s % 2 == 0:
                        continue
                    for sgn in (1, -1):
                        num_x = -l * Y + sgn * s
                        if num_x % k2 != 0:
                            continue
                        X = num_x // k2
                        if abs(X) > bound:
                            continue
                        if max(k, abs(l), abs(m), abs(X), abs(Y)) != bound:
                            continue  # found at an earlier bound already
                        sol = KaplanParams(X=X, Y=Y, k=k, l=l, m=m)
                        assert sol.q1 == q1 and sol.two_q2 == 2 * q2
                        assert sol.criterion_arg % 2 == 1
                        return sol
    raise SearchExhausted(f"no Kaplan parameters for ({q1}, {q2}) within max-norm {search_bound}")
