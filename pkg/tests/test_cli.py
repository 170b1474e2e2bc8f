"""CLI contract: subcommands, exit codes, JSON schema, determinism."""

import json
import subprocess
import sys


from macforge.cli import main
from macforge.report import Report


def run_cli(*argv):
    import io
    from contextlib import redirect_stdout, redirect_stderr

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_exit_codes():
    code, out, _ = run_cli("oracle", "--group", "Q16")
    assert code == 0 and "coset_count" in out
    code, _, err = run_cli("oracle", "--group", "nonsense[1]")
    assert code == 2
    code, _, err = run_cli("oddp", "--p", "3", "--m", "1", "--ell", "2", "--range", "2")
    assert code == 2 and "hypothesis" in err
    code, _, err = run_cli("aut", "--family", "J", "--m", "3")
    assert code == 2  # heavy run gated behind --full
    code, _, _ = run_cli("nope")
    assert code == 2


def test_oracle_resource_cap(monkeypatch):
    monkeypatch.setenv("MACFORGE_MAX_COSETS", "300")
    code, _, err = run_cli("oracle", "--group", "J[2,1]")
    assert code == 2 and "resource limit" in err
    monkeypatch.delenv("MACFORGE_MAX_COSETS")


def test_oracle_from_file(tmp_path):
    path = tmp_path / "q16.txt"
    path.write_text("# quaternion of order 16, in the A/B/C alphabet\nA^4 b^2\nb A B A\nA^8\n")
    code, out, _ = run_cli("oracle", "--file", str(path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"][0]["actual"] == 16


def test_aut_command_and_filtration():
    code, out, _ = run_cli("aut", "--family", "J", "--m", "2", "--filtration", "--json")
    assert code == 0
    doc = json.loads(out)
    rows = {c["name"]: c["actual"] for c in doc["checks"]}
    assert rows["aut_order"] == 32768
    assert rows["filtration_level_1"] == 16
    assert rows["filtration_level_2"] == 256
    assert rows["filtration_level_3"] == 2048
    assert rows["filtration_inn_aut_3"] == 8192
    assert rows["filtration_level_4"] == 16384
    assert rows["filtration_level_5"] == 32768
    code, out, _ = run_cli("aut", "--family", "J", "--m", "1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert {c["name"]: c["actual"] for c in doc["checks"]}["aut_order"] == 32


def test_verify_formulas_command():
    code, out, _ = run_cli("verify-formulas", "--family", "K", "--m", "2",
                           "--exhaustive", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    names = [c["name"] for c in doc["checks"]]
    assert "mul_agreement" in names and "central_series_orders" in names


def test_verify_formulas_h2_includes_fixture():
    code, out, _ = run_cli("verify-formulas", "--family", "H", "--m", "2",
                           "--exhaustive", "--json")
    assert code == 0
    doc = json.loads(out)
    rows = {c["name"]: c for c in doc["checks"]}
    assert rows["fixture_AB_pow5"]["actual"] == [5, 5, 2]
    assert rows["fixture_comm_AB_B"]["actual"] == [0, 4, 1]


def test_json_determinism_same_seed(tmp_path):
    def strip(doc):
        for c in doc["checks"]:
            c["elapsed_ms"] = 0.0
        return doc

    a = run_cli("verify-formulas", "--family", "K", "--m", "2",
                "--samples", "2000", "--seed", "7", "--json")[1]
    b = run_cli("verify-formulas", "--family", "K", "--m", "2",
                "--samples", "2000", "--seed", "7", "--json")[1]
    assert json.dumps(strip(json.loads(a))) == json.dumps(strip(json.loads(b)))


def test_report_roundtrip(tmp_path):
    out_path = tmp_path / "rep.json"
    code, _, _ = run_cli("oracle", "--group", "K[2,1]", "--json", "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    rep = Report.from_dict(doc)
    assert rep.to_dict() == doc  # lossless round trip
    code, out, _ = run_cli("report", "--from", str(out_path), "--json")
    assert code == 0
    assert json.loads(out) == doc
    code, out, _ = run_cli("report", "--from", str(out_path))
    assert code == 0 and "overall: PASS" in out


def test_report_empty_checks():
    rep = Report(params={})
    assert rep.passed is True
    assert Report.from_json(rep.to_json()).to_dict() == rep.to_dict()


def test_failure_exit_code(tmp_path):
    rep = Report(params={})
    rep.add("doomed", 1, 2)
    path = tmp_path / "bad.json"
    path.write_text(rep.to_json())
    code, out, _ = run_cli("report", "--from", str(path))
    assert code == 1 and "FAIL" in out


def test_console_script_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "macforge", "oracle", "--group", "K[1,1]"],
        capture_output=True, text=True, timeout=300,
    )
    assert proc.returncode == 0
    assert "coset_count" in proc.stdout
