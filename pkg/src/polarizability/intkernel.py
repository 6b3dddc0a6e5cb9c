"""Exact integer primitives: factorization, prime powers, Kronecker symbol.

Everything here works on Python ints and is exact.  Factoring strips small
primes with the compiled (or fallback) trial-division kernel and finishes with
Brent's variant of Pollard rho backed by Miller-Rabin.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from . import _backend
from .errors import DomainError, NotPrimePowerError

TRIAL_BOUND = 10**6

# deterministic for n < 3.3e24 (Sorenson & Webster); extra bases beyond that
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_EXTRA = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(p**e for p, e in factors)``."""

    unit: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.unit
        for p, e in self.factors:
            n *= p**e
        return n

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@dataclass(frozen=True)
class PrimePower:
    p: int
    m: int

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_square(self) -> bool:
        return self.m % 2 == 0

    def __str__(self) -> str:
        return f"{self.q}" if self.m == 1 else f"{self.p}^{self.m}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    bases = _MR_BASES if n < _MR_DETERMINISTIC_LIMIT else _MR_BASES + _MR_EXTRA
    for a in bases:
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


def _brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, 200):
        y, r, g = 2, 1, 1
        x = ys = y
        f = lambda v: (v * v + c) % n  # noqa: E731
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                prod = 1
                for _ in range(min(128, r - k)):
                    y = f(y)
                    prod = prod * abs(x - y) % n
                g = gcd(prod, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _large_prime_factors(n: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m)
        stack += [d, m // d]


def factorize(n: int) -> Factorization:
    """Factor a nonzero integer as sign times increasing prime powers.

    >>> factorize(84)
    Factorization(unit=1, factors=((2, 2), (3, 1), (7, 1)))
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    unit = -1 if n < 0 else 1
    small, rest = _backend.trial_divide(abs(n), TRIAL_BOUND)
    counts = dict(small)
    if rest > 1:
        _large_prime_factors(rest, counts)
    return Factorization(unit, tuple(sorted(counts.items())))


def prime_power_decompose(q: int) -> PrimePower:
    if q < 2:
        raise NotPrimePowerError(f"{q} is not a prime power")
    f = factorize(q)
    if len(f.factors) != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")
    p, m = f.factors[0]
    return PrimePower(p, m)


def kronecker_symbol(a: int, n: int) -> int:
    if a == 0 and n == 0:
        raise DomainError("Kronecker symbol (0|0) is undefined")
    return _backend.kronecker(a, n)


def integer_sqrt_floor(n: int) -> tuple[int, bool]:
    """Return ``(s, is_square)`` with s the largest integer such that s*s <= n."""
    if n < 0:
        raise DomainError("square root of a negative integer")
    s = isqrt(n)
    return s, s * s == n


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = d0 * c**2`` with d0 squarefree carrying the sign of n."""
    if n == 0:
        raise DomainError("0 has no squarefree part")
    f = factorize(n)
    d0, c = f.unit, 1
    for p, e in f.factors:
        c *= p ** (e // 2)
        if e % 2:
            d0 *= p
    return d0, c


def valuation(p: int, n: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise DomainError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def prime_divisors(n: int) -> tuple[int, ...]:
    """Primes dividing |n|; empty for n = +-1."""
    return factorize(n).primes
