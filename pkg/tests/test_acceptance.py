"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line with its timing; the lines are
collected again at the end of the session (see conftest.py).
"""
import os
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import test_cmquartic
import test_criteria
import test_intkernel
import test_quadring
import test_weilpoly
from polarizability.census import census_report
from polarizability.criteria import TABLE1, artin_trace, decide, main_criterion, prime_powers, table1_reason
from polarizability.intkernel import prime_power_decompose
from polarizability.quadring import PrimeKind
from polarizability.tzmodel import tz_summary
from polarizability.weilpoly import SurfaceClass

RESULTS = []


@contextmanager
def criterion(n, title, limit=None):
    t0 = time.perf_counter()
    ok, note = False, ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        note = f" ({str(exc).splitlines()[0] if str(exc) else 'assertion failed'})"
        raise
    finally:
        dt = time.perf_counter() - t0
        if ok and limit is not None and dt >= limit:
            ok, note = False, f" (over the {limit:g} s limit)"
        budget = f" / {limit:g} s" if limit is not None else ""
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  [{dt:.2f} s{budget}]{note}"
        RESULTS.append(line)
        print(line)
    assert ok, line


def test_criterion_1_closed_form_on_supersingular_families():
    with criterion(1, "(0,-q) not PP exactly on rows 1-2, other supersingular families PP, q <= 10^4", 30):
        not_pp = pp = 0
        for qp in prime_powers(10**4):
            for row in TABLE1:
                for s in row.classes(qp):
                    rec = decide(s)
                    assert rec.agrees(), (qp.q, s.a, s.b)
                    verdict = rec.pp
                    if row.index in (1, 2):
                        assert verdict is False, (qp.q, s.a, s.b)
                        not_pp += 1
                    else:
                        assert verdict is True, (qp.q, s.a, s.b)
                        pp += 1
        assert not_pp > 100 and pp > 100


def _three_smallest(row):
    out = []
    for qp in prime_powers(10**4):
        if row.classes(qp):
            out.append(qp)
            if len(out) == 3:
                return out
    return out


def test_criterion_2_table1_reasons():
    with criterion(2, "Table 1 reasons for the three smallest instances of rows 3-8", 5):
        for row in TABLE1[2:]:
            instances = _three_smallest(row)
            assert len(instances) == 3, row.index
            for qp in instances:
                for s in row.classes(qp):
                    assert table1_reason(s) == row.printed, (row.index, qp.q, s.a, s.b)
                    assert main_criterion(s)


def test_criterion_3_artin_pipeline():
    with criterion(3, "Artin pipeline for q = 7 and q = 49"):
        t = artin_trace(SurfaceClass(prime_power_decompose(7), 0, -7))
        assert t.D0 == 21
        assert t.ideal.ell == 3 and t.ideal_kind_in_kplus is PrimeKind.RAMIFIED
        assert t.relative_kind is PrimeKind.INERT
        assert t.psi == -1 and not t.principally_polarizable
        t = artin_trace(SurfaceClass(prime_power_decompose(49), 0, -49))
        assert t.psi == -1 and not t.principally_polarizable


def test_criterion_4_tzmodel():
    with criterion(4, "degree 9 polarization and its kernel", 1):
        s = tz_summary(prime_power_decompose(7))
        c, k = s.commutant, s.kernel_b
        assert s.zeta_identities
        assert c.rank == 4 and c.basis_saturated and c.closed_under_multiplication and c.omega_relation
        assert s.degree_b == 9
        assert k.order == 9 and k.cyclic_over_O and k.annihilator_square_is_ellO


def test_criterion_5_census_counts():
    with criterion(5, "census non-PP classes for q = 7, 11, 13"):
        for q, want in ((7, [(0, -7)]), (11, [(-2, -7), (2, -7)]), (13, [(0, -13)])):
            rep = census_report(prime_power_decompose(q))
            assert [(r.cls.a, r.cls.b) for r in rep.non_pp] == want, q


PROPERTY_SUITES = [
    ("factorization round-trip", test_intkernel.test_factorize_roundtrip_10k),
    ("Kronecker multiplicativity in a", test_intkernel.test_kronecker_multiplicative_in_a),
    ("Kronecker multiplicativity in n", test_intkernel.test_kronecker_multiplicative_in_n),
    ("on-circle test vs root oracle, q <= 200", test_weilpoly.test_on_circle_matches_float_roots_q_le_200),
    ("square-class invariance", test_quadring.test_square_class_invariance),
    ("delta totally negative, q <= 200", test_cmquartic.test_delta_totally_negative_q_le_200),
    ("beta-conjugate invariance", test_cmquartic.test_beta_conjugate_invariance),
    ("mixed iff p !| a and p | b, q <= 500", test_weilpoly.test_newton_mixed_ordinary_exhaustive_q_le_500),
    ("trace-zero equivalence, q <= 500", test_criteria.test_trace_zero_equivalence_exhaustive_q_le_500),
]


@pytest.mark.slow
def test_criterion_6_property_suites():
    with criterion(6, f"{len(PROPERTY_SUITES)} property suites"):
        for name, fn in PROPERTY_SUITES:
            t0 = time.perf_counter()
            try:
                fn()
            except AssertionError as exc:
                raise AssertionError(f"{name}: {exc}") from exc
            print(f"    {name}: ok [{time.perf_counter() - t0:.1f} s]")


@pytest.mark.slow
def test_criterion_7_crosscheck_cli():
    env = {k: v for k, v in os.environ.items() if k != "POLARIZABILITY_JOBS"}
    with criterion(7, "crosscheck --qmax 1000 with 4 workers", 60):
        r = subprocess.run([sys.executable, "-m", "polarizability", "crosscheck", "--qmax", "1000", "--jobs", "4"],
                           capture_output=True, text=True, env=env)
        assert r.returncode == 0, r.stdout + r.stderr
        assert "disagreements: 0" in r.stdout
