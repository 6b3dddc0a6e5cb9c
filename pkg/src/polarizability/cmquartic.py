"""CM-field data of an irreducible Weil quartic and the ramification tests.

For a root pi of f, beta = pi + q/pi is a root of the real Weil polynomial
t^2 + a t + (b - 2q), so K+ = Q(beta) = Q(sqrt(D0)) with D = D0 c^2, and
K = K+(sqrt(delta)) with delta = beta^2 - 4q = (pi - conj(pi))^2.

A prime P of K+ that is unramified in K divides pi - conj(pi) exactly when
v_P(delta) >= 2: above P the ideal (pi - conj(pi)) is the square root of
(delta), so its valuation is v_P(delta) / 2.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

from .errors import DomainError
from .intkernel import factorize, integer_sqrt_floor, squarefree_decompose
from .quadring import (
    PrimeIdeal,
    PrimeKind,
    QuadElement,
    RealQuadField,
    ideal_valuation,
    primes_above,
    relative_prime_splitting,
)
from .weilpoly import SurfaceClass, on_circle_valid, real_weil


class Theorem22Outcome(enum.Enum):
    PP_BY_TOTAL_REALITY = "PP_by_total_reality"
    PP_BY_RAMIFICATION = "PP_by_ramification"
    PP_BY_INERT_DIVISOR = "PP_by_inert_divisor"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CMData:
    cls: SurfaceClass
    D: int
    irreducible: bool
    D0: int | None = None
    field: RealQuadField | None = None
    beta: QuadElement | None = None
    delta: QuadElement | None = None
    totally_negative_delta: bool = False

    def conjugate(self) -> "CMData":
        """The same data with beta replaced by its Galois conjugate."""
        if not self.irreducible:
            return self
        beta = self.beta.conj()
        return CMData(self.cls, self.D, True, self.D0, self.field, beta,
                      beta * beta - 4 * self.cls.q, self.totally_negative_delta)


def quartic_is_square(s: SurfaceClass) -> bool:
    """f = (x^2 + (a/2) x + e q)^2 for e = +1 or -1, by coefficient matching."""
    if s.a % 2:
        return False
    h = s.a // 2
    q = s.q
    for e in (1, -1):
        # (x^2 + h x + e q)^2 = x^4 + 2h x^3 + (h^2 + 2eq) x^2 + 2heq x + q^2
        if 2 * h * e * q == s.a * q and h * h + 2 * e * q == s.b:
            return True
    return False


def _has_rational_root(s: SurfaceClass) -> bool:
    # rational roots of a Weil polynomial have absolute value sqrt(q)
    r, square = integer_sqrt_floor(s.q)
    if not square:
        return False
    for x in (r, -r):
        if sum(c * x ** (4 - i) for i, c in enumerate(s.coefficients())) == 0:
            return True
    return False


def is_irreducible(s: SurfaceClass) -> bool:
    if _has_rational_root(s) or quartic_is_square(s):
        return False
    return not integer_sqrt_floor(real_weil(s).D)[1]


def cm_data(s: SurfaceClass) -> CMData:
    if not on_circle_valid(s):
        raise DomainError(f"{s} is not a Weil polynomial")
    rw = real_weil(s)
    if not is_irreducible(s):
        return CMData(s, rw.D, False)
    D0, c = squarefree_decompose(rw.D)
    F = RealQuadField(D0)
    beta = QuadElement(F, -s.a, c)  # (-a + c sqrt(D0)) / 2, the root with positive surd part
    delta = beta * beta - 4 * s.q
    neg = delta.embedding_signs() == (-1, -1)
    return CMData(s, rw.D, True, D0, F, beta, delta, neg)


def _require_irreducible(c: CMData) -> None:
    if not c.irreducible:
        raise DomainError(f"{c.cls} has a reducible Weil polynomial")


def _candidate_primes(c: CMData) -> list[PrimeIdeal]:
    # the relative discriminant divides 4 delta
    ells = set(factorize(2 * c.delta.norm()).primes)
    return primes_above(c.field, ells)


@functools.lru_cache(maxsize=1024)
def relative_splitting_table(c: CMData) -> tuple[tuple[PrimeIdeal, int, PrimeKind], ...]:
    """(P, v_P(delta), behaviour in K/K+) for every P over a prime of 2 N(delta)."""
    _require_irreducible(c)
    return tuple((P, ideal_valuation(P, c.delta), relative_prime_splitting(P, c.delta))
            for P in _candidate_primes(c))


def finite_ramified_primes(c: CMData) -> list[PrimeIdeal]:
    return [P for P, _, kind in relative_splitting_table(c) if kind is PrimeKind.RAMIFIED]


def inert_divisors_of_pi_minus_pibar(c: CMData) -> list[PrimeIdeal]:
    return [P for P, v, kind in relative_splitting_table(c)
            if kind is PrimeKind.INERT and v >= 2]


def split_hypothesis_check(c: CMData) -> bool:
    """No finite ramification and every P dividing pi - conj(pi) splits."""
    for P, v, kind in relative_splitting_table(c):
        if kind is PrimeKind.RAMIFIED:
            return False
        if v >= 2 and kind is not PrimeKind.SPLIT:
            return False
    return True


def theorem22_decision(c: CMData) -> Theorem22Outcome:
    """Sufficient conditions for a principally polarized member of the class."""
    if not c.irreducible:
        # degree <= 2 field: totally real when pi = +-sqrt(q); decided by the caller otherwise
        if c.cls.a == 0 and c.cls.b == -2 * c.cls.q:
            return Theorem22Outcome.PP_BY_TOTAL_REALITY
        return Theorem22Outcome.INCONCLUSIVE
    table = relative_splitting_table(c)
    if any(kind is PrimeKind.RAMIFIED for _, _, kind in table):
        return Theorem22Outcome.PP_BY_RAMIFICATION
    if any(kind is PrimeKind.INERT and v >= 2 for _, v, kind in table):
        return Theorem22Outcome.PP_BY_INERT_DIVISOR
    return Theorem22Outcome.INCONCLUSIVE
