"""Enumeration of every candidate class over F_q and batch reports."""
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterator

from . import _backend
from .criteria import DecisionRecord, decide, resolve_jobs
from .intkernel import PrimePower, factorize, integer_sqrt_floor
from .weilpoly import SurfaceClass

SCHEMA_VERSION = 1

RECORD_COLUMNS = (
    "q", "p", "m", "a", "b", "valid", "admissibility", "newton", "shape",
    "principally_polarizable", "path",
    "reason", "ramified_primes", "inert_divisor_primes", "artin_symbol",
)


def enumerate_valid(qp: PrimePower) -> Iterator[SurfaceClass]:
    """All valid (a, b), a ascending then b ascending."""
    for a, b in _backend.scan_valid(qp.q):
        yield SurfaceClass(qp, a, b)


@dataclass
class CensusReport:
    q: int
    p: int
    m: int
    records: list[DecisionRecord] = field(repr=False)
    evidence: bool = False
    timestamp: str | None = None

    @property
    def total_valid(self) -> int:
        return len(self.records)

    @property
    def non_pp(self) -> list[DecisionRecord]:
        return [r for r in self.records if r.pp is False]

    def counts(self) -> dict[str, dict[str, int]]:
        # always derived from the records
        newton = Counter(r.newton.value for r in self.records)
        shape = Counter(r.shape for r in self.records)
        adm = Counter(r.admissibility for r in self.records)
        pp = Counter("pp" if r.pp else "not_pp" for r in self.records)
        return {
            "newton": dict(sorted(newton.items())),
            "shape": dict(sorted(shape.items())),
            "admissibility": dict(sorted(adm.items())),
            "verdict": dict(sorted(pp.items())),
        }

    def to_dict(self) -> dict:
        from . import __version__, _backend as backend

        return {
            "schema_version": SCHEMA_VERSION,
            "generator": {
                "name": "polarizability",
                "version": __version__,
                "backend": backend.BACKEND,
                "evidence": self.evidence,
                "timestamp": self.timestamp,
            },
            "q": self.q,
            "p": self.p,
            "m": self.m,
            "total_valid": self.total_valid,
            "counts": self.counts(),
            "non_pp": [r.to_dict() for r in self.non_pp],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RECORD_COLUMNS)
        for r in self.records:
            w.writerow(record_row(r))
        return buf.getvalue()


def record_row(r: DecisionRecord) -> list:
    d = r.to_dict()
    ev = d.pop("evidence")
    d["path"] = ";".join(d["path"])
    d.update(ev)
    d["ramified_primes"] = ";".join(ev["ramified_primes"])
    d["inert_divisor_primes"] = ";".join(ev["inert_divisor_primes"])
    return [_cell(d[c]) for c in RECORD_COLUMNS]


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def _column(args: tuple[PrimePower, int, bool]) -> list[DecisionRecord]:
    qp, a, evidence = args
    lo, hi = _backend.valid_b_range(qp.q, a)
    return [decide(SurfaceClass(qp, a, b), evidence=evidence) for b in range(lo, hi + 1)]


def census_report(qp: PrimePower, evidence: bool = False, jobs: int | None = None,
                  timestamp: bool = False) -> CensusReport:
    """Decide every valid class over F_q.

    CM-field evidence is off by default since it dominates the running time;
    the verdicts themselves do not depend on it.  The timestamp is opt-in so
    that reports are reproducible byte for byte.
    """
    amax = integer_sqrt_floor(16 * qp.q)[0]
    work = [(qp, a, evidence) for a in range(-amax, amax + 1)]
    n = resolve_jobs(jobs)
    if n == 1:
        columns = map(_column, work)
        records = [r for col in columns for r in col]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            records = [r for col in pool.map(_column, work, chunksize=4) for r in col]
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None
    return CensusReport(qp.q, qp.p, qp.m, records, evidence, stamp)


def expected_non_pp(qp: PrimePower) -> list[tuple[int, int]]:
    """(a, a^2 - q) with a^2 < q and all primes of q - a^2 congruent to 1 mod 3."""
    q = qp.q
    r = integer_sqrt_floor(q)[0]
    out = []
    for a in range(-r, r + 1):
        b = a * a - q
        if b < 0 and all(p % 3 == 1 for p in factorize(b).primes):
            out.append((a, b))
    return out
