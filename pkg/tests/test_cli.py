import csv
import io
import json
import subprocess
import sys

import pytest

from polarizability.census import RECORD_COLUMNS
from polarizability.cli import EXIT_INVALID, EXIT_NOT_PP, EXIT_PP, main

DECISION_KEYS = ["q", "p", "m", "a", "b", "valid", "admissibility", "newton", "shape",
                 "principally_polarizable", "path", "evidence"]


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("q, a, b, code", [
    (7, 0, -7, EXIT_NOT_PP),
    (11, 2, -7, EXIT_NOT_PP),
    (5, 0, -5, EXIT_PP),
    (7, 1, 7, EXIT_PP),
    (7, 0, 100, EXIT_INVALID),
    (12, 0, 0, EXIT_INVALID),
])
def test_decide_exit_codes(capsys, q, a, b, code):
    got, out, _ = run(capsys, "decide", "--q", q, "--a", a, "--b", b)
    assert got == code
    if q != 12:
        assert list(json.loads(out)) == DECISION_KEYS


def test_decide_json_schema(capsys):
    _, out, _ = run(capsys, "decide", "--q", 7, "--a", 0, "--b", -7, "--format", "json")
    d = json.loads(out)
    assert d["principally_polarizable"] is False and d["newton"] == "supersingular"
    assert list(d["evidence"]) == ["reason", "ramified_primes", "inert_divisor_primes", "artin_symbol"]
    assert d["evidence"]["artin_symbol"] == -1


def test_decide_text(capsys):
    code, out, _ = run(capsys, "decide", "--q", 7, "--a", 0, "--b", -7, "--format", "text")
    assert code == EXIT_NOT_PP and "NOT principally polarizable" in out


def test_census_json_and_csv(capsys):
    code, out, _ = run(capsys, "census", "--q", 11)
    assert code == 0
    d = json.loads(out)
    assert [(r["a"], r["b"]) for r in d["non_pp"]] == [(-2, -7), (2, -7)]
    code, out, _ = run(capsys, "census", "--q", 11, "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == RECORD_COLUMNS and len(rows) == d["total_valid"] + 1


def test_census_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("POLARIZABILITY_JOBS", "2")
    code, out, _ = run(capsys, "census", "--q", 7, "--jobs", "1")
    assert code == 0 and json.loads(out)["total_valid"] > 0


@pytest.mark.parametrize("q", [5, 7, 8, 49, 169])
def test_table1(capsys, q):
    code, out, _ = run(capsys, "table1", "--q", q)
    assert code == 0 and "FAIL" not in out
    if q == 169:
        assert "excluded" in out


def test_artin(capsys):
    code, out, _ = run(capsys, "artin", "--q", 7)
    assert code == EXIT_NOT_PP
    assert "Q(sqrt(21))" in out and "inert" in out and "psi        -1" in out
    code, _, err = run(capsys, "artin", "--q", 5)
    assert code == EXIT_INVALID and err.startswith("error:")


def test_tzmodel(capsys):
    code, out, _ = run(capsys, "tzmodel", "--q", 7)
    assert code == 0 and "ker lambda order       9" in out
    code, _, _ = run(capsys, "tzmodel", "--q", 5)
    assert code == EXIT_INVALID


def test_crosscheck(capsys, monkeypatch):
    monkeypatch.setenv("POLARIZABILITY_JOBS", "1")
    code, out, _ = run(capsys, "crosscheck", "--qmax", 60, "--jobs", 4)
    assert code == 0 and "disagreements: 0" in out


def test_crosscheck_nonzero_on_disagreement(capsys, monkeypatch):
    from polarizability import cli
    from polarizability.criteria import CrossCheckReport

    monkeypatch.setattr(cli, "cross_check",
                        lambda q, jobs=None: CrossCheckReport(q, 1, 0, {}, [], ["(7, 0, -7): forced"]))
    code, out, _ = run(capsys, "crosscheck", "--qmax", 7)
    assert code != 0 and "forced" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "polarizability", "decide", "--q", "13", "--a", "0", "--b", "-13"],
                       capture_output=True, text=True)
    assert r.returncode == EXIT_NOT_PP
    assert json.loads(r.stdout)["q"] == 13


def test_bad_arguments():
    with pytest.raises(SystemExit) as e:
        main(["decide", "--q", "7"])
    assert e.value.code == 2
