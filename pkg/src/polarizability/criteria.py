"""Decision procedures for principal polarizability.

``main_criterion`` is the closed-form verdict and is authoritative for every
class.  The CM-field tests (ramification / inert divisors, the Artin symbol
of the polarization ideal for the (0, -q) family) are run as independent
evidence wherever their hypotheses hold; ``cross_check`` compares the routes.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .cmquartic import (
    CMData,
    Theorem22Outcome,
    cm_data,
    finite_ramified_primes,
    inert_divisors_of_pi_minus_pibar,
    quartic_is_square,
    relative_splitting_table,
    split_hypothesis_check,
    theorem22_decision,
)
from .errors import DomainError, InapplicableError
from .intkernel import (
    PrimePower,
    factorize,
    integer_sqrt_floor,
    kronecker_symbol,
    prime_power_decompose,
)
from .quadring import (
    PrimeIdeal,
    PrimeKind,
    artin_symbol,
    ideal_valuation,
    rational_prime_splitting,
    relative_prime_splitting,
)
from .weilpoly import (
    NewtonType,
    SurfaceClass,
    elliptic_split,
    elliptic_trace_admissible,
    newton_type,
    on_circle_valid,
    trace_zero_class,
)

PP_REASONS = {
    Theorem22Outcome.PP_BY_TOTAL_REALITY,
    Theorem22Outcome.PP_BY_RAMIFICATION,
    Theorem22Outcome.PP_BY_INERT_DIVISOR,
}


def _all_primes_one_mod_three(n: int) -> bool:
    return all(p % 3 == 1 for p in factorize(n).primes)


def main_criterion(s: SurfaceClass) -> bool:
    """True when the class is principally polarizable.

    Not principally polarizable exactly when a^2 - b = q, b < 0 and every
    prime divisor of b is 1 mod 3 (vacuously so for b = -1).
    """
    if not on_circle_valid(s):
        raise DomainError(f"{s} is not a Weil polynomial")
    a, b = s.a, s.b
    if a * a - b == s.q and b < 0 and _all_primes_one_mod_three(b):
        return False
    return True


def trace_zero_criterion(aE: int, qp: PrimePower) -> bool:
    """Principal polarizability of the trace-zero surface of a curve with trace aE."""
    q = qp.q
    if aE * aE > 4 * q:
        raise DomainError(f"|{aE}| exceeds the Weil bound 2 sqrt({q})")
    gap = q - aE * aE
    if gap > 0 and _all_primes_one_mod_three(gap):
        return False
    return True


# -- Table 1 ---------------------------------------------------------------


@dataclass(frozen=True)
class Table1Reason:
    kind: str  # "ramified" or "inert_divisor"
    primes: tuple[int, ...]  # rational primes below the witnessing primes of K+

    def text(self) -> str:
        ells = ", ".join(map(str, self.primes))
        if self.kind == "ramified":
            return f"K/K+ ramified over {ells}"
        return f"pi - conj(pi) divisible by inert prime over {ells}"


@dataclass(frozen=True)
class Table1Row:
    index: int
    shape: str
    conditions: str
    printed: Table1Reason | None

    def matches(self, qp: PrimePower) -> bool:
        p, sq = qp.p, qp.is_square
        return {
            1: p % 3 == 1 and not sq,
            2: p % 12 == 7 and sq,
            3: p % 4 == 1 and not sq,
            4: p % 8 == 5 and sq,
            5: p % 3 == 1 and not sq,
            6: p % 5 != 1 and sq,
            7: p == 5 and not sq,
            8: p == 2 and not sq,
        }[self.index]

    def classes(self, qp: PrimePower) -> list[SurfaceClass]:
        if not self.matches(qp):
            return []
        q = qp.q
        if self.index in (1, 2):
            pairs = [(0, -q)]
        elif self.index in (3, 4):
            pairs = [(0, 0)]
        elif self.index == 5:
            pairs = [(0, q)]
        else:
            radicand, b = {6: (q, q), 7: (5 * q, 3 * q), 8: (2 * q, q)}[self.index]
            r = integer_sqrt_floor(radicand)[0]
            pairs = [(-r, b), (r, b)]
        return [SurfaceClass(qp, a, b) for a, b in pairs]


TABLE1 = (
    Table1Row(1, "(0,-q)", "p = 1 mod 3, q nonsquare", None),
    Table1Row(2, "(0,-q)", "p = 7 mod 12, q square", None),
    Table1Row(3, "(0,0)", "p = 1 mod 4, q nonsquare", Table1Reason("ramified", (2,))),
    Table1Row(4, "(0,0)", "p = 5 mod 8, q square", Table1Reason("ramified", (2,))),
    Table1Row(5, "(0,q)", "p = 1 mod 3, q nonsquare", Table1Reason("ramified", (3,))),
    Table1Row(6, "(+-sqrt(q),q)", "p != 1 mod 5, q square", Table1Reason("ramified", (5,))),
    Table1Row(7, "(+-sqrt(5q),3q)", "p = 5, q nonsquare", Table1Reason("ramified", (5,))),
    Table1Row(8, "(+-sqrt(2q),q)", "p = 2, q nonsquare", Table1Reason("inert_divisor", (2,))),
)


def has_no_isogeny_class(s: SurfaceClass) -> bool:
    """(0, -q) with q square and p = 1 mod 12: no isogeny class has this polynomial."""
    return s.a == 0 and s.b == -s.q and s.qp.is_square and s.p % 12 == 1


def table1_row(s: SurfaceClass) -> Table1Row | None:
    for row in TABLE1:
        if s in row.classes(s.qp):
            return row
    return None


def _reason_from_cm(c: CMData) -> Table1Reason | None:
    outcome = theorem22_decision(c)
    if outcome is Theorem22Outcome.PP_BY_RAMIFICATION:
        ells = sorted({P.ell for P in finite_ramified_primes(c)})
        return Table1Reason("ramified", tuple(ells))
    if outcome is Theorem22Outcome.PP_BY_INERT_DIVISOR:
        ells = sorted({P.ell for P in inert_divisors_of_pi_minus_pibar(c)})
        return Table1Reason("inert_divisor", tuple(ells))
    return None


def table1_reason(s: SurfaceClass) -> Table1Reason | None:
    """Recompute the reason column for a listed simple supersingular family."""
    if has_no_isogeny_class(s):
        raise DomainError(f"{s}: no isogeny class has Weil polynomial x^4 - q x^2 + q^2 here")
    if table1_row(s) is None:
        raise DomainError(f"{s} is not a listed simple supersingular family")
    return _reason_from_cm(cm_data(s))


# -- Artin symbol of the polarization ideal --------------------------------


@dataclass(frozen=True)
class ArtinTrace:
    """The (0, -q) pipeline: K+, the ideal over 3, its splitting, psi."""

    cls: SurfaceClass
    D0: int
    delta: str
    ideal: PrimeIdeal
    ideal_kind_in_kplus: PrimeKind
    valuation_of_delta: int
    relative_kind: PrimeKind
    psi: int
    # 3 ramifies in Q(sqrt(-3)) and is inert in Q(sqrt(-q)) when q = 1 mod 3
    kronecker_minus3_at_3: int
    kronecker_minus_q_at_3: int

    @property
    def principally_polarizable(self) -> bool:
        return self.psi == 1


def artin_applicable(s: SurfaceClass) -> bool:
    try:
        _artin_checks(s)
    except InapplicableError:
        return False
    return True


def _artin_checks(s: SurfaceClass) -> CMData:
    if not (s.a == 0 and s.b == -s.q):
        raise InapplicableError(f"{s} is not the (0, -q) family")
    if not on_circle_valid(s):
        raise InapplicableError(f"{s} is not a Weil polynomial")
    p = s.p
    if p % 3 != 1 or (s.qp.is_square and p % 4 != 3):
        raise InapplicableError(
            f"{s}: the degree-9 polarization needs p = 1 mod 3, and p = 3 mod 4 when q is square"
        )
    c = cm_data(s)
    if not c.irreducible or not split_hypothesis_check(c):
        raise InapplicableError(f"{s}: hypotheses fail; use theorem22_decision")
    return c


def artin_trace(s: SurfaceClass) -> ArtinTrace:
    c = _artin_checks(s)
    over3 = rational_prime_splitting(c.field, 3)
    if len(over3) != 1:
        raise InapplicableError(f"{s}: 3 is split in K+, no unique prime over 3")
    A = over3[0]
    kind = relative_prime_splitting(A, c.delta)
    psi = artin_symbol([(A, 1)], c.delta)
    return ArtinTrace(
        cls=s,
        D0=c.D0,
        delta=str(c.delta),
        ideal=A,
        ideal_kind_in_kplus=A.kind,
        valuation_of_delta=ideal_valuation(A, c.delta),
        relative_kind=kind,
        psi=psi,
        kronecker_minus3_at_3=kronecker_symbol(-3, 3),
        kronecker_minus_q_at_3=kronecker_symbol(-s.q, 3),
    )


# -- decision records --------------------------------------------------------


@dataclass
class Evidence:
    reason: str | None = None
    ramified_primes: list[str] = field(default_factory=list)
    inert_divisor_primes: list[str] = field(default_factory=list)
    artin_symbol: int | None = None


@dataclass
class DecisionRecord:
    cls: SurfaceClass
    valid: bool
    admissibility: str
    newton: NewtonType | None
    shape: str | None
    pp: bool | None
    path: list[str]
    evidence: Evidence

    def to_dict(self) -> dict:
        s = self.cls
        return {
            "q": s.q,
            "p": s.qp.p,
            "m": s.qp.m,
            "a": s.a,
            "b": s.b,
            "valid": self.valid,
            "admissibility": self.admissibility,
            "newton": self.newton.value if self.newton else None,
            "shape": self.shape,
            "principally_polarizable": self.pp,
            "path": list(self.path),
            "evidence": {
                "reason": self.evidence.reason,
                "ramified_primes": list(self.evidence.ramified_primes),
                "inert_divisor_primes": list(self.evidence.inert_divisor_primes),
                "artin_symbol": self.evidence.artin_symbol,
            },
        }

    def evidence_says_pp(self) -> bool | None:
        """Verdict implied by the independent evidence alone, if any."""
        if self.evidence.artin_symbol is not None:
            return self.evidence.artin_symbol == 1
        if any(step.startswith(("split_product", "res_scalars")) for step in self.path):
            return True
        if self.evidence.reason in {o.value for o in PP_REASONS}:
            return True
        return None

    def agrees(self) -> bool:
        implied = self.evidence_says_pp()
        return implied is None or implied == self.pp


def shape_of(s: SurfaceClass) -> str:
    split = elliptic_split(s)
    if quartic_is_square(s) or (split is not None and split[0] == split[1]):
        return "square"
    if split is not None:
        return "split_pair"
    return "irreducible"


def _qp_squared(qp: PrimePower) -> PrimePower:
    return PrimePower(qp.p, 2 * qp.m)


def decide(s: SurfaceClass, evidence: bool = True) -> DecisionRecord:
    """Full verdict for one class; ``evidence=False`` skips the CM-field work."""
    if not on_circle_valid(s):
        return DecisionRecord(s, False, "unchecked", None, None, None, ["invalid"], Evidence())
    newton = newton_type(s)
    shape = shape_of(s)
    pp = main_criterion(s)
    path = [f"main_criterion:{'pp' if pp else 'not_pp'}"]
    ev = Evidence()
    certified = False

    row = table1_row(s)
    if row is not None:
        certified = True
    if shape != "irreducible":
        split = elliptic_split(s)
        if split is not None:
            if all(elliptic_trace_admissible(t, s.qp) for t in split):
                certified = True
                path.append(f"split_product:{split[0]},{split[1]}")
        elif s.a == 0 and s.b == -2 * s.q and evidence:
            ev.reason = Theorem22Outcome.PP_BY_TOTAL_REALITY.value
            path.append(f"theorem22:{ev.reason}")
    if s.a == 0 and elliptic_trace_admissible(s.b, _qp_squared(s.qp)):
        certified = True
        path.append("res_scalars")

    if evidence and shape == "irreducible":
        c = cm_data(s)
        outcome = theorem22_decision(c)
        ev.reason = outcome.value
        table = relative_splitting_table(c)
        ev.ramified_primes = [P.label() for P, _, k in table if k is PrimeKind.RAMIFIED]
        ev.inert_divisor_primes = [
            P.label() for P, v, k in table if k is PrimeKind.INERT and v >= 2
        ]
        path.append(f"theorem22:{outcome.value}")
        if row is not None:
            reason = _reason_from_cm(c)
            path.append(f"table1:{reason.text() if reason else '---'}")
        if artin_applicable(s):
            psi = artin_trace(s).psi
            ev.artin_symbol = psi
            path.append(f"artin:psi={psi:+d}")

    admissibility = "certified" if certified else "unchecked"
    if has_no_isogeny_class(s):
        admissibility = "excluded"
    return DecisionRecord(s, True, admissibility, newton, shape, pp, path, ev)


def artin_decision(s: SurfaceClass) -> DecisionRecord:
    """Decide the (0, -q) family from the Artin symbol of the ideal over 3 alone."""
    t = artin_trace(s)
    ev = Evidence(artin_symbol=t.psi)
    path = [f"artin:psi={t.psi:+d}"]
    return DecisionRecord(s, True, "certified", newton_type(s), "irreducible",
                          t.principally_polarizable, path, ev)


# -- cross-check -------------------------------------------------------------


def prime_powers(limit: int, start: int = 2) -> Iterator[PrimePower]:
    for q in range(start, limit + 1):
        f = factorize(q)
        if len(f.factors) == 1:
            p, m = f.factors[0]
            yield PrimePower(p, m)


@dataclass
class CrossCheckReport:
    q_max: int
    checked: int = 0
    excluded: int = 0
    by_row: dict[int, int] = field(default_factory=dict)
    not_pp: list[tuple[int, int, int]] = field(default_factory=list)
    disagreements: list[str] = field(default_factory=list)

    def merge(self, other: "CrossCheckReport") -> None:
        self.checked += other.checked
        self.excluded += other.excluded
        for k, v in other.by_row.items():
            self.by_row[k] = self.by_row.get(k, 0) + v
        self.not_pp += other.not_pp
        self.disagreements += other.disagreements

    @property
    def ok(self) -> bool:
        return not self.disagreements


def _cross_check_q(q: int) -> CrossCheckReport:
    qp = prime_power_decompose(q)
    rep = CrossCheckReport(q)
    orphan = SurfaceClass(qp, 0, -q)
    if has_no_isogeny_class(orphan):
        rep.excluded += 1
        if table1_row(orphan) is not None:
            rep.disagreements.append(f"{orphan}: class without an isogeny class listed in Table 1")
    for row in TABLE1:
        for s in row.classes(qp):
            rep.checked += 1
            rep.by_row[row.index] = rep.by_row.get(row.index, 0) + 1
            rec = decide(s)
            main = main_criterion(s)
            if not rec.agrees():
                rep.disagreements.append(f"{s}: evidence contradicts verdict ({rec.path})")
            reason = table1_reason(s)
            if row.printed is not None:
                if reason is None or not main:
                    rep.disagreements.append(f"{s}: row {row.index} expects PP, main={main}, reason={reason}")
                elif reason != row.printed:
                    rep.disagreements.append(
                        f"{s}: row {row.index} reason {reason.text()!r} != {row.printed.text()!r}"
                    )
            else:
                if reason is not None:
                    rep.disagreements.append(f"{s}: row {row.index} expects no reason, got {reason.text()}")
                art = artin_decision(s)
                if art.pp is not False or main:
                    rep.disagreements.append(f"{s}: artin pp={art.pp}, main pp={main}")
                else:
                    rep.not_pp.append((q, s.a, s.b))
    # the trace-zero family holds every candidate for a negative verdict
    r = integer_sqrt_floor(4 * q)[0]
    for aE in range(-r, r + 1):
        s = trace_zero_class(aE, qp)
        if table1_row(s) is not None or not on_circle_valid(s):
            continue
        rep.checked += 1
        rec = decide(s)
        if not rec.agrees():
            rep.disagreements.append(f"{s}: evidence contradicts verdict ({rec.path})")
        if trace_zero_criterion(aE, qp) != rec.pp:
            rep.disagreements.append(f"{s}: trace-zero criterion disagrees")
    return rep


def resolve_jobs(jobs: int | None) -> int:
    env = os.environ.get("POLARIZABILITY_JOBS")
    if env:
        return max(1, int(env))
    return max(1, jobs or 1)


def cross_check(q_max: int, jobs: int | None = None) -> CrossCheckReport:
    if q_max < 2:
        raise DomainError("q_max must be at least 2")
    qs = [qp.q for qp in prime_powers(q_max)]
    report = CrossCheckReport(q_max)
    n = resolve_jobs(jobs)
    if n == 1:
        for part in map(_cross_check_q, qs):
            report.merge(part)
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            for part in pool.map(_cross_check_q, qs, chunksize=8):
                report.merge(part)
    report.q_max = q_max
    return report
