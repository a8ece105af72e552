import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from unipotent_classes.cli import classify_report, parse_config, run
from unipotent_classes.reports import BruteForceReport, ClassifyReport, VerifyReport, poly_from_json, poly_to_json
from unipotent_classes.vpoly import ClassCountPolynomial, parse_vpoly

GOLDEN = Path(__file__).parent / "golden"


def _run(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("key", ["B2", "G2", "B3", "C3"])
def test_roots_command_matches_golden(key):
    code, text = _run("roots", key[0], key[1])
    assert code == 0
    assert text == (GOLDEN / f"roots_{key}.txt").read_text(encoding="utf-8")


def test_classify_analyze_json(tmp_path):
    path = tmp_path / "c3.json"
    code, text = _run("classify", "C", "3", "2", "--analyze", "--json", str(path))
    assert code == 0
    assert "k(U) = 2v^4+19v^3+25v^2+9v+1" in text
    report = ClassifyReport.from_json(path.read_text(encoding="utf-8"))
    assert report.k_poly == [1, 9, 25, 19, 2]
    assert report.mass_formula is True
    assert report.manual_families == []


def test_classify_json_to_stdout():
    code, text = _run("classify", "B", "2", "2", "--json", "-")
    assert code == 0
    body = text[: text.rindex("}") + 1]
    assert json.loads(body)["type_label"] == "B"


def test_bruteforce_command():
    code, text = _run("bruteforce", "B", "2", "4", "--profile")
    assert code == 0
    assert "B2, q = 4: 58 classes" in text
    assert "|U| = 256" in text


def test_verify_exit_codes():
    assert _run("verify", "B", "2", "2", "--q", "2,4")[0] == 0
    code, text = _run("verify", "G", "2", "2", "--q", "2")
    # the printed G2 rows at p = 2 disagree with enumeration
    assert code == 1
    assert "MISMATCH" in text and text.rstrip().endswith("FAILED")


@pytest.mark.parametrize("argv", [
    ["roots", "E", "6"],
    ["classify", "B", "2", "4"],
    ["bruteforce", "B", "2", "6"],
    ["verify", "B", "2", "2", "--q", "3"],
    ["verify", "B", "2", "2"],
    ["tables", "--type", "D4"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, capsys):
    assert _run(*argv)[0] == 2
    assert "usage:" in capsys.readouterr().err


def test_enumeration_ceiling_is_a_usage_error():
    assert _run("bruteforce", "D", "4", "4")[0] == 2


def test_tables_command():
    code, text = _run("tables", "--type", "G2")
    assert code == 0
    assert "5 | − | x_5(a_5) | v | q^5" in text.splitlines()
    code, text = _run("tables")
    assert text.count("Conjugacy classes of U for type") == 4


def test_parse_config():
    cfg = parse_config(["verify", "B", "3", "2", "--q", "2,4"])
    assert cfg.q_list == (2, 4)
    assert cfg.rank == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unipotent_classes", "roots", "B", "2"],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "roots_B2.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize("key", [("B", 2, 2), ("G", 2, 3), ("C", 3, 2)])
@pytest.mark.parametrize("analyze", [False, True])
def test_classify_report_round_trip(key, analyze):
    report = classify_report(*key, analyze)
    assert ClassifyReport.from_json(report.to_json()) == report


@given(st.lists(st.fractions(max_denominator=6), max_size=6))
def test_poly_json_round_trip(coeffs):
    poly = ClassCountPolynomial(tuple(coeffs))
    assert poly_from_json(json.loads(json.dumps(poly_to_json(poly)))) == poly


def test_poly_json_is_ascending():
    assert poly_to_json(parse_vpoly("5v^2+4v+1")) == [1, 4, 5]


@given(st.text(min_size=1, max_size=2), st.integers(1, 8), st.integers(2, 64), st.integers(0, 10**6),
       st.dictionaries(st.integers(1, 10**9).map(str), st.integers(0, 10**6)))
def test_bruteforce_report_round_trip(t, r, q, total, hist):
    report = BruteForceReport(t, r, q, total, hist)
    assert BruteForceReport.from_json(report.to_json()) == report


@given(st.dictionaries(st.integers(2, 64).map(str), st.integers(0, 10**6)),
       st.lists(st.text(max_size=30), max_size=3), st.integers(0, 100))
def test_verify_report_round_trip(counts, problems, checked):
    report = VerifyReport("G", 2, 3, counts, dict(counts), checked, problems)
    back = VerifyReport.from_json(report.to_json())
    assert back == report
    assert back.ok == (not problems)
