"""Maximal orders of quadratic fields, their primes, and relative splitting.

Elements of Q(sqrt(D0)) integral over Z are stored as ``(x + y sqrt(D0)) / 2``.
Internally most work happens in the Z-basis {1, w} of the maximal order, with
w = sqrt(D0) when D0 = 2, 3 mod 4 and w = (1 + sqrt(D0)) / 2 when D0 = 1 mod 4.
Since the maximal order equals Z[w], a prime over ell with g(r) = 0 mod ell
(g the minimal polynomial of w) is (ell, w - r), and reduction modulo it sends
w to r.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from math import isqrt
from typing import Iterable

from .errors import DegenerateExtensionError, DomainError
from .intkernel import is_prime, kronecker_symbol, squarefree_decompose


@dataclass(frozen=True)
class QuadField:
    """Q(sqrt(D0)) for a squarefree D0 other than 0 and 1."""

    D0: int

    def __post_init__(self):
        if self.D0 in (0, 1) or squarefree_decompose(self.D0)[1] != 1:
            raise DomainError(f"D0 = {self.D0} is not a squarefree integer != 0, 1")

    @property
    def disc(self) -> int:
        return self.D0 if self.D0 % 4 == 1 else 4 * self.D0

    @property
    def min_poly(self) -> tuple[int, int]:
        """(g1, g0) with g(t) = t^2 + g1 t + g0 the minimal polynomial of w."""
        if self.D0 % 4 == 1:
            return (-1, -(self.D0 - 1) // 4)
        return (0, -self.D0)

    def element(self, x: int, y: int = 0) -> "QuadElement":
        return QuadElement(self, x, y)

    def from_int(self, n: int) -> "QuadElement":
        return QuadElement(self, 2 * n, 0)

    def from_coords(self, u: int, v: int) -> "QuadElement":
        """The element u + v w."""
        if self.D0 % 4 == 1:
            return QuadElement(self, 2 * u + v, v)
        return QuadElement(self, 2 * u, 2 * v)

    @property
    def w(self) -> "QuadElement":
        return self.from_coords(0, 1)

    @property
    def sqrt_d0(self) -> "QuadElement":
        return QuadElement(self, 0, 2)


@dataclass(frozen=True)
class RealQuadField(QuadField):
    def __post_init__(self):
        super().__post_init__()
        if self.D0 <= 1:
            raise DomainError(f"D0 = {self.D0} does not give a real quadratic field")


@dataclass(frozen=True)
class QuadElement:
    field: QuadField
    x: int
    y: int

    def __post_init__(self):
        D0 = self.field.D0
        if D0 % 4 == 1:
            ok = (self.x - self.y * D0) % 2 == 0
        else:
            ok = self.x % 2 == 0 and self.y % 2 == 0
        if not ok:
            raise DomainError(f"({self.x} + {self.y}*sqrt({D0}))/2 is not integral")

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if other.field.D0 != self.field.D0:
            raise DomainError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return QuadElement(self.field, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.field, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        D0 = self.field.D0
        X = (self.x * other.x + D0 * self.y * other.y) // 2
        Y = (self.x * other.y + self.y * other.x) // 2
        return QuadElement(self.field, X, Y)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self.field.from_int(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "QuadElement":
        return QuadElement(self.field, self.x, -self.y)

    def norm(self) -> int:
        return (self.x * self.x - self.field.D0 * self.y * self.y) // 4

    def trace(self) -> int:
        return self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def coords(self) -> tuple[int, int]:
        """(u, v) with self = u + v w."""
        if self.field.D0 % 4 == 1:
            return ((self.x - self.y) // 2, self.y)
        return (self.x // 2, self.y // 2)

    def divisible_by(self, n: int) -> bool:
        u, v = self.coords()
        return u % n == 0 and v % n == 0

    def exact_div(self, n: int) -> "QuadElement":
        u, v = self.coords()
        if u % n or v % n:
            raise DomainError(f"{self} is not divisible by {n}")
        return self.field.from_coords(u // n, v // n)

    def embedding_signs(self) -> tuple[int, int]:
        """Signs of the two real embeddings, +sqrt(D0) first."""
        if self.field.D0 < 0:
            raise DomainError("imaginary quadratic fields have no real embeddings")
        return (_sign_surd(self.x, self.y, self.field.D0),
                _sign_surd(self.x, -self.y, self.field.D0))

    def is_square(self) -> bool:
        return square_root(self) is not None

    def __str__(self) -> str:
        u, v = self.coords()
        if v == 0:
            return str(u)
        if self.x % 2 == 0:
            return f"{self.x // 2} + {self.y // 2}*sqrt({self.field.D0})"
        return f"({self.x} + {self.y}*sqrt({self.field.D0}))/2"


def _sign_surd(x: int, y: int, D: int) -> int:
    """Sign of x + y sqrt(D), D > 0 not a square."""
    if x >= 0 and y >= 0:
        return 0 if x == 0 and y == 0 else 1
    if x <= 0 and y <= 0:
        return -1
    lhs, rhs = x * x, D * y * y
    if x > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


def square_root(d: QuadElement) -> QuadElement | None:
    """An integral s with s*s == d, or None."""
    if d.is_zero():
        return d
    n = d.norm()
    if n < 0:
        return None
    r = isqrt(n)
    if r * r != n:
        return None
    D0 = d.field.D0
    # s = (u + v sqrt(D0))/2: u^2 + D0 v^2 = 2x, u^2 - D0 v^2 = +-4r
    for sgn in (1, -1):
        u2 = d.x + 2 * sgn * r
        dv2 = d.x - 2 * sgn * r
        if u2 < 0 or dv2 % D0:
            continue
        v2 = dv2 // D0
        if v2 < 0:
            continue
        u, v = isqrt(u2), isqrt(v2)
        if u * u != u2 or v * v != v2:
            continue
        for su in (u, -u):
            for sv in (v, -v):
                try:
                    s = QuadElement(d.field, su, sv)
                except DomainError:
                    continue
                if s * s == d:
                    return s
    return None


class PrimeKind(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of the maximal order over the rational prime ell.

    ``r`` is a root of the minimal polynomial of w modulo ell for split and
    ramified primes (the prime is then (ell, w - r)); None for inert primes.
    """

    field: QuadField
    ell: int
    kind: PrimeKind
    r: int | None

    @property
    def e(self) -> int:
        return 2 if self.kind is PrimeKind.RAMIFIED else 1

    @property
    def f(self) -> int:
        return 2 if self.kind is PrimeKind.INERT else 1

    def residue(self, alpha: QuadElement) -> int:
        """Image in F_ell of alpha modulo a degree-one prime."""
        if self.r is None:
            raise DomainError("inert primes have residue field F_ell^2")
        u, v = alpha.coords()
        return (u + v * self.r) % self.ell

    def label(self) -> str:
        if self.kind is PrimeKind.SPLIT:
            return f"P{self.ell}[split,r={self.r}]"
        return f"P{self.ell}[{self.kind.value}]"

    __str__ = label


def _g_value(field: QuadField, t: int) -> int:
    g1, g0 = field.min_poly
    return t * t + g1 * t + g0


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of a modulo the odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise DomainError(f"{a} is not a square modulo {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def rational_prime_splitting(F: QuadField, ell: int) -> list[PrimeIdeal]:
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    D0 = F.D0
    if F.disc % ell == 0:
        if D0 % 4 == 1:
            r = (ell + 1) // 2  # double root 1/2 of t^2 - t - (D0-1)/4
        elif ell == 2:
            r = D0 % 2
        else:
            r = 0
        return [PrimeIdeal(F, ell, PrimeKind.RAMIFIED, r)]
    if kronecker_symbol(F.disc, ell) == -1:
        return [PrimeIdeal(F, ell, PrimeKind.INERT, None)]
    if ell == 2:
        roots = [0, 1]
    else:
        s = sqrt_mod_prime(D0, ell)
        if D0 % 4 == 1:
            half = (ell + 1) // 2
            roots = sorted({(1 + s) * half % ell, (1 - s) * half % ell})
        else:
            roots = sorted({s, ell - s})
    return [PrimeIdeal(F, ell, PrimeKind.SPLIT, r) for r in roots]


def primes_above(F: QuadField, ells: Iterable[int]) -> list[PrimeIdeal]:
    out = []
    for ell in sorted(set(ells)):
        out += rational_prime_splitting(F, ell)
    return out


def _strip(P: PrimeIdeal, alpha: QuadElement) -> tuple[int, QuadElement]:
    k = 0
    while alpha.divisible_by(P.ell):
        alpha = alpha.exact_div(P.ell)
        k += 1
    return k, alpha


def _vell(ell: int, n: int) -> int:
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def ideal_valuation(P: PrimeIdeal, x: QuadElement) -> int:
    if x.is_zero():
        raise DomainError("valuation of 0")
    k, rest = _strip(P, x)
    base = k * P.e
    if P.kind is PrimeKind.INERT:
        return base
    if P.kind is PrimeKind.RAMIFIED:
        return base + (1 if rest.norm() % P.ell == 0 else 0)
    # split: rest is not divisible by both P and its conjugate
    if P.residue(rest) != 0:
        return base
    return base + _vell(P.ell, rest.norm())


def _fq2_pow(c: tuple[int, int], n: int, g: tuple[int, int], ell: int):
    g1, g0 = g

    def mul(s, t):
        a0, a1 = s
        b0, b1 = t
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a1 * b1
        # t^2 = -g1 t - g0
        return ((c0 - g0 * c2) % ell, (c1 - g1 * c2) % ell)

    result = (1, 0)
    while n:
        if n & 1:
            result = mul(result, c)
        c = mul(c, c)
        n >>= 1
    return result


def residue_is_square(P: PrimeIdeal, u: QuadElement) -> bool:
    """Whether u mod P is a nonzero square in the residue field (ell odd)."""
    if P.ell == 2:
        raise DomainError("use local_square_class_over_2 for primes over 2")
    if ideal_valuation(P, u) != 0:
        raise DomainError("u is not a unit at P")
    ell = P.ell
    if P.f == 1:
        return kronecker_symbol(P.residue(u), ell) == 1
    g1, g0 = P.field.min_poly
    c = tuple(t % ell for t in u.coords())
    return _fq2_pow(c, (ell * ell - 1) // 2, (g1 % ell, g0 % ell), ell) == (1, 0)


def _uniformizer(P: PrimeIdeal) -> QuadElement:
    """w - r~ with v_P = 1 (N(w - t) = g(t)); for split P a unit at the conjugate."""
    r = P.r
    if P.kind is PrimeKind.SPLIT and _g_value(P.field, r) % (P.ell * P.ell) == 0:
        r += P.ell
    return P.field.w - r


def unit_part(P: PrimeIdeal, delta: QuadElement, v: int) -> QuadElement:
    """A P-unit in O in the same local square class as delta / pi_P^v (v even)."""
    if v % 2:
        raise DomainError("unit part is only taken for even valuations")
    if P.kind is PrimeKind.INERT:
        return delta.exact_div(P.ell**v)
    # delta/pi^v = delta * conj(pi)^v / N(pi)^v with N(pi) = ell * (ell-unit),
    # and the rational unit cofactor enters to an even power
    return (delta * _uniformizer(P).conj() ** v).exact_div(P.ell**v)


@functools.lru_cache(maxsize=4096)
def _squares_mod(P: PrimeIdeal, n: int) -> tuple[int, frozenset]:
    """(ell^k, coordinates mod ell^k of every element congruent to a square mod P^n)."""
    k = -(-n // P.e)  # ell^k O is contained in P^n
    mod = P.ell**k
    F = P.field
    cells = [(a, b) for a in range(mod) for b in range(mod)]
    ideal = [(a, b) for a, b in cells
             if (a, b) == (0, 0) or ideal_valuation(P, F.from_coords(a, b)) >= n]
    squares = set()
    for a, b in cells:
        s = F.from_coords(a, b)
        u, v = (s * s).coords()
        squares.add((u % mod, v % mod))
    return mod, frozenset(((u + z0) % mod, (v + z1) % mod)
                          for u, v in squares for z0, z1 in ideal)


def _congruent_to_square(P: PrimeIdeal, u: QuadElement, n: int) -> bool:
    """Whether v_P(u - s^2) >= n for some s in O."""
    mod, table = _squares_mod(P, n)
    a, b = u.coords()
    return (a % mod, b % mod) in table


def local_square_class_over_2(P: PrimeIdeal, u: QuadElement) -> PrimeKind:
    """Behaviour of P | 2 in K+(sqrt(u)) for a P-unit u."""
    if P.ell != 2:
        raise DomainError("prime does not lie over 2")
    e = P.e
    if not _congruent_to_square(P, u, 2 * e):
        return PrimeKind.RAMIFIED
    if _congruent_to_square(P, u, 2 * e + 1):
        return PrimeKind.SPLIT
    return PrimeKind.INERT


def relative_prime_splitting(P: PrimeIdeal, delta: QuadElement) -> PrimeKind:
    """Behaviour of P in the quadratic extension K+(sqrt(delta))."""
    if delta.is_zero() or delta.is_square():
        raise DegenerateExtensionError(f"{delta} is zero or a square in Q(sqrt({P.field.D0}))")
    v = ideal_valuation(P, delta)
    if v % 2:
        return PrimeKind.RAMIFIED
    u = unit_part(P, delta, v)
    if P.ell == 2:
        return local_square_class_over_2(P, u)
    return PrimeKind.SPLIT if residue_is_square(P, u) else PrimeKind.INERT


def artin_symbol(ideal: Iterable[tuple[PrimeIdeal, int]], delta: QuadElement) -> int:
    """psi(I) in {+1, -1}: split primes map to +1, inert primes to -1.

    The sign is a convention: it fixes which element of Gal(K/K+) is called -1.
    """
    value = 1
    for P, k in ideal:
        kind = relative_prime_splitting(P, delta)
        if kind is PrimeKind.RAMIFIED:
            raise DomainError(f"Artin symbol undefined at ramified prime {P}")
        if kind is PrimeKind.INERT and k % 2:
            value = -value
    return value
