import csv
import io
import json
import subprocess
import sys

import pytest

from cubic48 import cli
from cubic48.report import Report


def run_cli(*args):
    out = io.StringIO()
    code = None
    sys_stdout = sys.stdout
    sys.stdout = out
    try:
        code = cli.main(list(args))
    finally:
        sys.stdout = sys_stdout
    return code, out.getvalue()


def strip_timing(d):
    d = dict(d)
    d.pop("timestamp", None)
    d["claims"] = [{**c, "elapsed_ms": None} for c in d["claims"]]
    return d


def test_valuation_json():
    code, text = run_cli("valuation", "--max-n", "30", "--format", "json")
    assert code == 0
    d = json.loads(text)
    assert d["summary"] == "pass" and d["claims"][0]["id"] == "valuation-law"
    assert set(d) >= {"version", "parameters", "claims", "summary"}
    assert set(d["claims"][0]) == {"id", "anchor", "status", "witness", "elapsed_ms"}


def test_no_timing_is_byte_identical():
    args = ("search", "br", "--max-exp", "2", "--bound", "30", "--format", "json", "--no-timing")
    assert run_cli(*args) == run_cli(*args)
    args = ("heights", "--format", "json", "--no-timing")
    assert run_cli(*args) == run_cli(*args)


def test_deterministic_modulo_timestamp():
    a = json.loads(run_cli("valuation", "--max-n", "20", "--format", "json")[1])
    b = json.loads(run_cli("valuation", "--max-n", "20", "--format", "json")[1])
    assert "timestamp" in a
    assert strip_timing(a) == strip_timing(b)


def test_json_round_trip():
    _, text = run_cli("search", "cubic", "--bound", "100", "--format", "json")
    report = Report.from_json(text)
    assert Report.from_json(report.to_json()) == report
    assert report.to_json() == text


def test_table_formats():
    _, text = run_cli("table", "--format", "json")
    rows = json.loads(text)["rows"]
    assert len(rows) == 13
    row = next(r for r in rows if (r["N"], r["b"]) == (8, 0))
    assert (row["x_num"], row["x_den"]) == ("292913655316492", "69305008951369")
    assert (row["alpha"], row["beta"]) == ("8324963", "73228413829123")
    _, text = run_cli("table", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["verdict"] for r in rows].count("survived") == 1
    _, text = run_cli("table")
    assert "(12,1)  x = 44507186275594022064781897173121/871004453785806995703095216400" in text


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    code, text = run_cli("heights", "--format", "json", "--out", str(target))
    assert code == 0 and text == ""
    assert json.loads(target.read_text())["summary"] == "pass"


def test_global_flags_before_subcommand():
    code, text = run_cli("--format", "csv", "valuation", "--max-n", "5")
    assert code == 0 and text.startswith("id,anchor,status")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["search", "br", "--bound", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 2


def test_failing_claim_exit_code(monkeypatch):
    def failing(max_n, report):
        report.add("valuation-law", "forced", False, {"n": 1})
        return report

    monkeypatch.setattr(cli, "run_valuation_check", failing)
    code, text = run_cli("valuation")
    assert code == 1 and "[FAIL]" in text


def test_duplicate_claim_ids_rejected():
    r = Report()
    r.add("a", "x", True)
    with pytest.raises(ValueError):
        r.add("a", "y", True)


def test_big_integers_serialize_as_strings():
    r = Report()
    r.add("big", "x", True, {"n": 3**100, "small": 7})
    d = json.loads(r.to_json())
    assert d["claims"][0]["witness"] == {"n": str(3**100), "small": 7}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubic48", "valuation", "--max-n", "9"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "summary: pass" in proc.stdout
