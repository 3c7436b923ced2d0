import csv
import io
import json
import math

import numpy as np
import pytest

from rho_jmatrix import cli
from rho_jmatrix.verify import (
    CSV_HEADER,
    SuiteConfig,
    VerificationReport,
    build_table,
    emit_table,
    parse_complex,
    report_from_json,
    report_to_csv,
    report_to_json,
    run_suite,
)


@pytest.mark.parametrize("text,expected", [("0.3+0.2i", 0.3 + 0.2j), ("-0.2i", -0.2j), ("0.5", 0.5), (" 1 - 2j ", 1 - 2j)])
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


def test_report_status():
    assert VerificationReport("x", {}, 1e-12, 1e-10).passed
    assert not VerificationReport("x", {}, 1e-9, 1e-10).passed
    assert not VerificationReport("x", {}, math.nan, 1.0).passed
    assert not VerificationReport("x", {}, math.inf, 1.0).passed


def test_tridiag_suite_single_case_passes():
    rows = run_suite("tridiag", SuiteConfig(ell=1, omega=1.0))
    assert rows and all(r.passed for r in rows)
    assert {r.check for r in rows} >= {"tridiag.off_band", "tridiag.diagonal", "tridiag.offdiagonal"}


def test_offdiagonal_notes_show_rejected_variant():
    rows = [r for r in run_suite("tridiag", SuiteConfig(ell=0, omega=1.0)) if r.check == "tridiag.offdiagonal"]
    assert all("rejected" in r.notes for r in rows)


def test_rows_sorted_canonically():
    rows = run_suite("coherent", SuiteConfig(seed=3))
    names = [r.check for r in rows]
    assert names == sorted(names)


def test_bad_B_becomes_failed_row():
    rows = run_suite("landau", SuiteConfig(B=0.4))
    assert len(rows) == 1 and rows[0].check == "landau.config" and not rows[0].passed
    assert "DomainError" in rows[0].notes


def test_unknown_suite_row():
    rows = run_suite("nope")
    assert rows[0].check == "config" and not rows[0].passed


def test_tol_override_applies():
    rows = run_suite("coherent", SuiteConfig(tol=1e-30))
    assert all(r.tolerance == 1e-30 for r in rows)
    assert not all(r.passed for r in rows)


def test_json_roundtrip_and_determinism():
    cfg = SuiteConfig(seed=7)
    a = report_to_json(run_suite("coherent", cfg))
    b = report_to_json(run_suite("coherent", cfg))
    assert a == b
    data = report_from_json(a)
    assert data and set(data[0]) == {"check", "params", "residual", "tolerance", "status", "notes"}


def test_json_encodes_infinite_residual():
    data = report_from_json(report_to_json([VerificationReport("x", {"z": 0.1 + 0.2j}, math.inf, 1.0)]))
    assert data[0]["residual"] == "inf"
    assert data[0]["params"]["z"] == {"re": 0.1, "im": 0.2}


def test_csv_layout():
    rows = run_suite("coherent", SuiteConfig())
    parsed = list(csv.reader(io.StringIO(report_to_csv(rows))))
    assert parsed[0] == CSV_HEADER
    assert len(parsed) == len(rows) + 1
    assert float(parsed[1][2]) == rows[0].residual
    assert json.loads(parsed[1][1]) is not None


def test_coefficient_table_identity_at_origin():
    rows = build_table("coefficients", SuiteConfig(z=0.0, nmax=5))
    for row in rows:
        assert row["gamma"] == pytest.approx(1.0 if row["n"] == row["m"] else 0.0, abs=1e-15)


def test_gram_table_within_tolerance():
    rows = build_table("gram", SuiteConfig(nmax=6))
    assert all(row["within"] and row["deviation"] <= row["tolerance"] for row in rows)


def test_wavefunction_table_columns_agree():
    rows = build_table("wavefunction", SuiteConfig(nmax=2))
    assert max(abs(r["closed"] - r["series"]) for r in rows) < 1e-8


def test_landau_table_origin_values():
    rows = build_table("landau-basis", SuiteConfig(B=1.75))
    origin = [r for r in rows if r["z"] == 0]
    assert all(r["value"] == pytest.approx(1.0 if r["j"] == 0 else 0.0) for r in origin)


def test_unknown_table_kind():
    with pytest.raises(ValueError):
        build_table("other")


def test_table_csv_splits_complex(tmp_path):
    path = tmp_path / "t.csv"
    emit_table("coefficients", SuiteConfig(nmax=2), "csv", str(path))
    parsed = list(csv.reader(path.open()))
    assert parsed[0] == ["n", "m", "gamma_re", "gamma_im"]
    assert len(parsed) == 10


def test_cli_verify_exit_zero(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--suite", "coherent", "--out", str(out)]) == 0
    assert all(r["status"] == "pass" for r in json.loads(out.read_text()))
    assert "checks passed" in capsys.readouterr().err


def test_cli_bare_flags_mean_verify(capsys):
    assert cli.main(["--suite", "landau", "--B", "0.4", "--format", "csv"]) == 1
    assert capsys.readouterr().out.startswith(",".join(CSV_HEADER))


def test_cli_exit_counts_failures(capsys):
    rows = run_suite("coherent", SuiteConfig(tol=1e-30))
    failures = sum(not r.passed for r in rows)
    assert cli.main(["verify", "--suite", "coherent", "--tol", "1e-30"]) == failures
    capsys.readouterr()


def test_cli_io_error(tmp_path, capsys):
    bad = tmp_path / "missing" / "r.json"
    assert cli.main(["verify", "--suite", "coherent", "--out", str(bad)]) == cli.EX_IOERR
    assert "I/O error" in capsys.readouterr().err


def test_cli_table_stdout(capsys):
    assert cli.main(["table", "--kind", "coefficients", "--z", "0", "--nmax", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data) == 4


def test_cli_table_config_error(capsys):
    assert cli.main(["table", "--kind", "landau-basis", "--B", "0.3"]) == cli.EX_CONFIG
    capsys.readouterr()


def test_cli_rejects_bad_complex():
    with pytest.raises(SystemExit):
        cli.main(["verify", "--z", "abc"])
