"""Command-line interface: ``polarizability <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time

from .census import census_report
from .criteria import (
    TABLE1,
    artin_decision,
    artin_trace,
    cross_check,
    decide,
    main_criterion,
    has_no_isogeny_class,
    table1_reason,
)
from .errors import DomainError
from .intkernel import PrimePower, prime_power_decompose
from .weilpoly import SurfaceClass

EXIT_PP = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_NOT_PP = 3


def _qp(q: int) -> PrimePower:
    return prime_power_decompose(q)


def _print_record_text(d: dict) -> None:
    print(f"class      ({d['a']}, {d['b']}) over F_{d['q']}  (p = {d['p']}, m = {d['m']})")
    print(f"valid      {d['valid']}")
    if not d["valid"]:
        return
    verdict = "principally polarizable" if d["principally_polarizable"] else "NOT principally polarizable"
    print(f"verdict    {verdict}")
    print(f"newton     {d['newton']}")
    print(f"shape      {d['shape']}")
    print(f"admissible {d['admissibility']}")
    print(f"path       {' > '.join(d['path'])}")
    ev = d["evidence"]
    if ev["reason"] is not None:
        print(f"reason     {ev['reason']}")
    if ev["ramified_primes"]:
        print(f"ramified   {', '.join(ev['ramified_primes'])}")
    if ev["inert_divisor_primes"]:
        print(f"inert div  {', '.join(ev['inert_divisor_primes'])}")
    if ev["artin_symbol"] is not None:
        print(f"psi        {ev['artin_symbol']:+d}")


def cmd_decide(args) -> int:
    rec = decide(SurfaceClass(_qp(args.q), args.a, args.b))
    d = rec.to_dict()
    if args.format == "json":
        print(json.dumps(d, indent=2))
    else:
        _print_record_text(d)
    if not rec.valid:
        return EXIT_INVALID
    return EXIT_PP if rec.pp else EXIT_NOT_PP


def cmd_census(args) -> int:
    rep = census_report(_qp(args.q), evidence=args.evidence, jobs=args.jobs,
                        timestamp=args.timestamp)
    sys.stdout.write(rep.to_json() if args.format == "json" else rep.to_csv())
    return 0


def cmd_table1(args) -> int:
    qp = _qp(args.q)
    status = 0
    shown = 0
    orphan = SurfaceClass(qp, 0, -qp.q)
    if has_no_isogeny_class(orphan):
        print(f"excluded  {orphan}: not the polynomial of any isogeny class")
        shown += 1
    for row in TABLE1:
        for s in row.classes(qp):
            shown += 1
            if row.printed is None:
                art = artin_decision(s)
                ok = art.pp is False and not main_criterion(s)
                computed = f"not PP (psi = {art.evidence.artin_symbol:+d})"
                expected = "not PP"
            else:
                reason = table1_reason(s)
                ok = reason == row.printed and main_criterion(s)
                computed = reason.text() if reason else "no reason found"
                expected = row.printed.text()
            print(f"row {row.index}  {row.shape:<16} ({s.a}, {s.b})  computed: {computed}"
                  f" | table: {expected}  {'PASS' if ok else 'FAIL'}")
            if not ok:
                status = EXIT_FAIL
    if not shown:
        print(f"no Table 1 family is instantiable at q = {qp.q}")
    return status


def cmd_artin(args) -> int:
    qp = _qp(args.q)
    t = artin_trace(SurfaceClass(qp, 0, -qp.q))
    print(f"class      (0, {-qp.q}) over F_{qp.q}")
    print(f"K+         Q(sqrt({t.D0}))")
    print(f"delta      {t.delta}")
    print(f"ideal      {t.ideal.label()}  ({t.ideal_kind_in_kplus.value} in K+ over Q)")
    print(f"v(delta)   {t.valuation_of_delta}")
    print(f"in K/K+    {t.relative_kind.value}")
    print(f"(-3|3) = {t.kronecker_minus3_at_3}, (-q|3) = {t.kronecker_minus_q_at_3}")
    print(f"psi        {t.psi:+d}")
    verdict = "principally polarizable" if t.principally_polarizable else "NOT principally polarizable"
    print(f"verdict    {verdict}")
    return EXIT_PP if t.principally_polarizable else EXIT_NOT_PP


def cmd_tzmodel(args) -> int:
    from .tzmodel import tz_summary

    s = tz_summary(_qp(args.q))
    c, k = s.commutant, s.kernel_b
    print(f"q                      {s.q}")
    print(f"zeta^3 = I, zeta^2+zeta+I = 0   {s.zeta_identities}")
    print(f"commutant Z-rank       {c.rank}")
    print(f"  basis I, wI, zeta, w zeta: in commutant {c.basis_in_commutant}, "
          f"saturated {c.basis_saturated}, closed {c.closed_under_multiplication}")
    print(f"  omega^2 = -omega - 1 {c.omega_relation}")
    print(f"b fixed by dagger      {s.b_dagger_fixed}")
    print(f"b leading minors       {s.b_leading_minors[0]}, {s.b_leading_minors[1]}")
    print(f"deg lambda             {s.degree_b}")
    print(f"ker lambda order       {k.order}")
    print(f"cyclic over O          {k.cyclic_over_O}")
    print(f"[O : Ann]              {k.annihilator_index}")
    print(f"Ann^2 = 3 O            {k.annihilator_square_is_ellO}")
    ok = (s.zeta_identities and c.rank == 4 and s.degree_b == 9 and k.order == 9
          and k.cyclic_over_O and k.annihilator_square_is_ellO)
    return 0 if ok else EXIT_FAIL


def cmd_crosscheck(args) -> int:
    t0 = time.perf_counter()
    rep = cross_check(args.qmax, jobs=args.jobs)
    dt = time.perf_counter() - t0
    print(f"q <= {rep.q_max}: {rep.checked} classes checked, {rep.excluded} excluded")
    for row in sorted(rep.by_row):
        print(f"  Table 1 row {row}: {rep.by_row[row]}")
    print(f"not PP confirmed by psi = -1: {len(rep.not_pp)}")
    print(f"disagreements: {len(rep.disagreements)}")
    for line in rep.disagreements:
        print(f"  {line}")
    print(f"elapsed {dt:.1f} s")
    return 0 if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polarizability",
        description="Principal polarizability of isogeny classes of abelian surfaces over F_q.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide one class (a, b) over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("census", help="decide every valid class over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--evidence", action="store_true", help="also run the CM-field tests")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--timestamp", action="store_true", help="stamp the report with the current time")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("table1", help="recompute the Table 1 reasons at q")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("artin", help="Artin symbol pipeline for (0, -q)")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_artin)

    p = sub.add_parser("tzmodel", help="checks on the degree-9 polarization")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_tzmodel)

    p = sub.add_parser("crosscheck", help="compare the closed form with the CM-field tests")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_crosscheck)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
