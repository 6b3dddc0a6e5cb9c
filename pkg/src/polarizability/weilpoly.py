"""Candidate Weil polynomials x^4 + a x^3 + b x^2 + a q x + q^2.

A class is named by ``SurfaceClass(qp, a, b)``.  Validity means all four
complex roots lie on the circle |x| = sqrt(q); it is decided with integer
inequalities only.  Writing f(x) = x^2 h(x + q/x) with the real Weil
polynomial h(t) = t^2 + a t + (b - 2q), the roots lie on the circle exactly
when both roots of h are real and lie in [-2 sqrt(q), 2 sqrt(q)].
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _backend
from .errors import DomainError
from .intkernel import PrimePower, integer_sqrt_floor, valuation


@dataclass(frozen=True)
class SurfaceClass:
    qp: PrimePower
    a: int
    b: int

    @property
    def q(self) -> int:
        return self.qp.q

    @property
    def p(self) -> int:
        return self.qp.p

    def coefficients(self) -> tuple[int, int, int, int, int]:
        """Coefficients from x^4 down to x^0."""
        q = self.q
        return (1, self.a, self.b, self.a * q, q * q)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}) over F_{self.q}"


@dataclass(frozen=True)
class RealWeil:
    """h(t) = t^2 + a t + c with c = b - 2q and discriminant D = a^2 - 4c."""

    a: int
    c: int
    D: int


class NewtonType(enum.Enum):
    ORDINARY = "ordinary"
    MIXED = "mixed"
    SUPERSINGULAR = "supersingular"
    NONSYMMETRIC = "nonsymmetric"


_NEWTON_CODES = {
    0: NewtonType.ORDINARY,
    1: NewtonType.MIXED,
    2: NewtonType.SUPERSINGULAR,
    3: NewtonType.NONSYMMETRIC,
}


def on_circle_valid(s: SurfaceClass) -> bool:
    return bool(_backend.on_circle(s.q, s.a, s.b))


def _require_valid(s: SurfaceClass) -> None:
    if not on_circle_valid(s):
        raise DomainError(f"{s} is not a Weil polynomial (roots off |x| = sqrt(q))")


def real_weil(s: SurfaceClass) -> RealWeil:
    c = s.b - 2 * s.q
    return RealWeil(s.a, c, s.a * s.a - 4 * c)


def newton_type(s: SurfaceClass) -> NewtonType:
    _require_valid(s)
    return _NEWTON_CODES[_backend.newton_code(s.qp.p, s.qp.m, s.a, s.b)]


def newton_slopes(s: SurfaceClass) -> list[tuple[int, int]]:
    """Root valuations of the quartic as sorted (numerator, denominator) pairs.

    Slow path used for reporting; ``newton_type`` goes through the kernel.
    """
    from fractions import Fraction

    p, m = s.qp.p, s.qp.m
    pts = [(0, 2 * m), (4, 0)]
    if s.a:
        pts += [(1, valuation(p, s.a) + m), (3, valuation(p, s.a))]
    if s.b:
        pts.append((2, valuation(p, s.b)))
    pts.sort()
    hull = [pts[0]]
    slopes = []
    while hull[-1][0] < 4:
        x0, y0 = hull[-1]
        cand = [(Fraction(y - y0, x - x0), x, y) for x, y in pts if x > x0]
        best = min(cand, key=lambda t: (t[0], -t[1]))
        slopes += [-best[0]] * (best[1] - x0)
        hull.append((best[1], best[2]))
    return sorted((f.numerator, f.denominator) for f in slopes)


def elliptic_split(s: SurfaceClass) -> tuple[int, int] | None:
    """Integer roots s1 <= s2 of h when f = (x^2 - s1 x + q)(x^2 - s2 x + q)."""
    _require_valid(s)
    rw = real_weil(s)
    r, square = integer_sqrt_floor(rw.D)
    if not square:
        return None
    # D = a^2 - 4c is congruent to a^2 mod 4, so r and a share parity
    return ((-s.a - r) // 2, (-s.a + r) // 2)


def trace_zero_class(aE: int, qp: PrimePower) -> SurfaceClass:
    """Class of the trace-zero surface of an elliptic curve with trace aE."""
    if aE * aE > 4 * qp.q:
        raise DomainError(f"|{aE}| exceeds the Weil bound 2 sqrt({qp.q})")
    return SurfaceClass(qp, aE, aE * aE - qp.q)


def res_quadratic_class(bE: int, qp: PrimePower) -> SurfaceClass:
    """Class of res(F_{q^2}/F_q, E) for E of trace bE over F_{q^2}."""
    if bE * bE > 4 * qp.q * qp.q:
        raise DomainError(f"|{bE}| exceeds the Weil bound 2q over F_{{q^2}}")
    return SurfaceClass(qp, 0, bE)


def elliptic_trace_admissible(t: int, qp: PrimePower) -> bool:
    """Whether some elliptic curve over F_q has trace of Frobenius t (Waterhouse)."""
    p, m, q = qp.p, qp.m, qp.q
    if t * t > 4 * q:
        return False
    if t % p:
        return True
    if m % 2 == 0:
        r = integer_sqrt_floor(q)[0]
        if abs(t) == 2 * r:
            return True
        if abs(t) == r:
            return p % 3 != 1
        if t == 0:
            return p % 4 != 1
        return False
    if t == 0:
        return True
    if p in (2, 3):
        r, square = integer_sqrt_floor(p * q)
        return square and abs(t) == r
    return False
