"""Command-line behaviour: outputs, schemas, and exit codes."""

import csv
import io
import json

from ducci_lab.cli import EXIT_MISMATCH, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


# ------------------------------------------------------------------- period


def test_period_command_human():
    code, text = run_cli("period", "10", "4")
    assert code == EXIT_OK
    assert "period=4" in text and "pre_period=4" in text


def test_period_command_json():
    code, text = run_cli("period", "10", "4", "--json")
    doc = json.loads(text)
    assert code == EXIT_OK
    assert doc["m"] == 10 and doc["n"] == 4
    assert doc["period"] == 4 and doc["pre_period"] == 4
    assert set(doc) == {"m", "n", "period", "pre_period", "method", "flags"}


def test_period_crosscheck_agrees():
    code, text = run_cli("period", "16", "3", "--method", "crosscheck", "--json")
    assert code == EXIT_OK
    assert json.loads(text)["period"] == 6


def test_period_brute_vanishing():
    code, text = run_cli("period", "2", "2", "--method", "brute", "--json")
    assert code == EXIT_OK
    assert json.loads(text)["period"] == 1


def test_period_budget_exit_code(monkeypatch):
    monkeypatch.setenv("DUCCI_STEP_BUDGET", "3")
    code, _ = run_cli("period", "10", "4", "--method", "brute")
    assert code == EXIT_RESOURCE
    monkeypatch.setenv("DUCCI_STEP_BUDGET", "not-a-number")
    code, _ = run_cli("period", "10", "4")
    assert code == EXIT_USAGE


def test_period_crosscheck_disagreement_exits_three(monkeypatch):
    from ducci_lab import cli
    from ducci_lab.errors import CrosscheckMismatch
    from ducci_lab.periods import PeriodRecord

    a = PeriodRecord(6, 2, 3, 0, "structural", 0.0)
    b = PeriodRecord(6, 2, 2, 0, "brute", 0.0)

    def explode(*args, **kwargs):
        raise CrosscheckMismatch("period", a, b)

    monkeypatch.setattr(cli, "period", explode)
    code, _ = run_cli("period", "6", "2", "--method", "crosscheck")
    assert code == EXIT_MISMATCH


def test_period_corrupt_cache_exits_two(tmp_path):
    path = tmp_path / "period-cache.json"
    path.write_text("{ not json")
    code, _ = run_cli("period", "5", "4", "--cache", str(path))
    assert code == EXIT_RESOURCE
    assert path.read_text() == "{ not json"  # refused, never overwritten


def test_period_cache_round_trip(tmp_path):
    path = str(tmp_path / "period-cache.json")
    code, first = run_cli("period", "5", "4", "--cache", path, "--json")
    assert code == EXIT_OK
    code, second = run_cli("period", "5", "4", "--cache", path, "--json")
    assert code == EXIT_OK
    assert json.loads(first) == json.loads(second)
    doc = json.loads(open(path).read())
    assert "5:4" in doc["entries"]


# -------------------------------------------------------------------- table


def test_table_csv_schema():
    code, text = run_cli("table", "--m-max", "10", "--n-max", "6")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["m", "n", "period", "pre_period", "method"]
    assert len(rows) == 1 + 9 * 6
    by_key = {(row[0], row[1]): row for row in rows[1:]}
    assert by_key[("10", "4")][2] == "4"
    assert by_key[("10", "4")][3] == "4"
    assert by_key[("3", "1")][2] == "2"


def test_table_csv_and_json_encode_identical_data(tmp_path):
    code, csv_text = run_cli("table", "--m-max", "8", "--n-max", "4")
    assert code == EXIT_OK
    out = tmp_path / "table.json"
    code, _ = run_cli("table", "--m-max", "8", "--n-max", "4", "--format", "json", "--out", str(out))
    assert code == EXIT_OK
    records = json.loads(out.read_text())
    csv_rows = list(csv.reader(io.StringIO(csv_text)))[1:]
    assert len(csv_rows) == len(records)
    for row, rec in zip(csv_rows, records):
        assert row[0] == str(rec["m"]) and row[1] == str(rec["n"])
        assert row[2] == str(rec["period"])
        assert row[3] == ("" if rec["pre_period"] is None else str(rec["pre_period"]))
        assert row[4] == rec["method"]


def test_table_cache_reuse_is_identical(tmp_path):
    path = str(tmp_path / "period-cache.json")
    code, first = run_cli("table", "--m-max", "6", "--n-max", "4", "--cache", path)
    assert code == EXIT_OK
    code, second = run_cli("table", "--m-max", "6", "--n-max", "4", "--cache", path)
    assert code == EXIT_OK
    assert first == second
    doc = json.loads(open(path).read())
    assert len(doc["entries"]) >= 5 * 4


def test_table_empty_grid_has_header_only():
    code, text = run_cli("table", "--m-max", "1", "--n-max", "4")
    assert code == EXIT_OK
    assert text.strip() == "m,n,period,pre_period,method"


def test_table_unwritable_path():
    code, _ = run_cli("table", "--m-max", "4", "--n-max", "2", "--out", "/nonexistent/x.csv")
    assert code == EXIT_USAGE


# ------------------------------------------------------------------- verify


def test_verify_small_campaign_json():
    code, text = run_cli(
        "verify", "--campaign", "closed-forms", "--primes", "2,3", "--n-max", "10", "--json"
    )
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["campaign"] == "closed-forms"
    assert doc["summary"]["failed"] == 0
    for inst in doc["instances"]:
        assert set(inst) == {"claim", "params", "expected", "observed", "pass", "skipped"}


def test_verify_unknown_campaign():
    code, _ = run_cli("verify", "--campaign", "nope")
    assert code == EXIT_USAGE


def test_verify_n3_formula_always_exits_zero():
    code, text = run_cli("verify", "--campaign", "n3-formula", "--p-max", "13", "--json")
    assert code == EXIT_OK
    doc = json.loads(text)
    assert any("discrepancy" in note for note in doc["notes"])


def test_verify_reports_are_deterministic():
    args = ("verify", "--campaign", "membership", "--primes", "2", "--space-limit", "64", "--json")
    assert run_cli(*args) == run_cli(*args)


def test_verify_failed_campaign_exits_three(monkeypatch):
    from ducci_lab import cli
    from ducci_lab.verification import Instance, VerificationReport

    broken = VerificationReport("membership")
    broken.instances.append(Instance("fake-claim", {"p": 2}, 1, 2, passed=False))
    monkeypatch.setattr(cli, "run_campaign", lambda name, **opts: broken)
    code, text = run_cli("verify", "--campaign", "membership")
    assert code == EXIT_MISMATCH
    assert "[FAIL]" in text


# ------------------------------------------------------------------- orbits


def test_orbits_command():
    code, text = run_cli("orbits", "2", "3")
    assert code == EXIT_OK
    assert json.loads(text) == {"m": 2, "n": 3, "census": {"1": 1, "3": 1}, "total": 4}
    code, text = run_cli("orbits", "2", "4")
    assert json.loads(text)["census"] == {"1": 1}
    code, text = run_cli("orbits", "3", "3")
    assert json.loads(text)["total"] == 27


def test_orbits_guard_exit_code():
    code, _ = run_cli("orbits", "10", "10")
    assert code == EXIT_RESOURCE


# -------------------------------------------------------------- cycle-check


def test_cycle_check_command():
    code, text = run_cli("cycle-check", "10", "4", "2,4,6,4", "--json")
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["in_cycle"] is True
    assert doc["tuple"] == "10:4:2,4,6,4"
    code, text = run_cli("cycle-check", "5", "3", "1,0,0")
    assert code == EXIT_OK and "rule=all_tuples_odd_odd" in text


def test_cycle_check_usage_errors():
    assert run_cli("cycle-check", "10", "4", "1,2,3")[0] == EXIT_USAGE
    assert run_cli("cycle-check", "10", "4", "1,2,3,x")[0] == EXIT_USAGE


# ----------------------------------------------------------- wieferich-scan


def test_wieferich_scan_output():
    code, text = run_cli("wieferich-scan", "--limit", "5000")
    assert code == EXIT_OK
    assert text.split() == ["1093", "3511"]
    code, text = run_cli("wieferich-scan", "--limit", "5000", "--json")
    assert json.loads(text) == [1093, 3511]


# -------------------------------------------------------------------- usage


def test_usage_errors_exit_one():
    assert main(["period", "ten", "4"], out=io.StringIO()) == EXIT_USAGE
    assert main(["no-such-command"], out=io.StringIO()) == EXIT_USAGE
    assert main([], out=io.StringIO()) == EXIT_USAGE
    assert main(["period", "1", "4"], out=io.StringIO()) == EXIT_USAGE
