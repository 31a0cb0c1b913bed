import json
import subprocess
import sys

import pytest

from odeq.cli import REPORT_VERSION, run

STANDARD = "S^2 - (T-1)*(T-2)*(T-3)*(T-4)*(T-5)*(T-6)"
DISGUISED = "(z*S + T)^2 - (z*T-1)*(z*T-2)*(z*T-3)*(z*T-4)*(z*T-5)*(z*T-6)"


def call(capsys, *argv):
    code = run([*argv, "--json", "--deterministic"])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_report_header(capsys):
    code, rep, _ = call(capsys, "parse", "y' - y^3 - z")
    assert code == 0
    assert list(rep)[:3] == ["version", "command", "input"]
    assert rep["version"] == REPORT_VERSION and "timing" not in rep
    assert rep["equation"] == "S - T^3 - z"


def test_timing_present_without_deterministic(capsys):
    run(["genus", "S^2 - T^3 - 1", "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert rep["genus"] == 1 and rep["timing"]["seconds"] >= 0


def test_deterministic_output_is_stable(capsys):
    outs = []
    for _ in range(2):
        run(["equiv", STANDARD, DISGUISED, "--json", "--deterministic"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


@pytest.mark.parametrize("argv, code", [
    (["parse", "S + * T"], 1),
    (["parse", "(S - T)^2"], 1),
    (["parse", "T^2 - z"], 1),
    (["genus", "S^2 - 2*T^2"], 1),
    (["local", "S - T^3", "--at", "z"], 1),
    (["verify", "/nonexistent/report.json"], 1),
])
def test_input_errors(capsys, argv, code):
    assert run(argv) == code
    assert "odeq: error" in capsys.readouterr().err


def test_unsupported_exit_code(capsys):
    code, rep, _ = call(capsys, "pp", "S^2 - (T^3 + z*T)")
    assert code == 2 and rep["verdict"] == "Unsupported"


def test_file_input_with_comments(tmp_path, capsys):
    path = tmp_path / "eq.ode"
    path.write_text("# cubic\nS - T^3  # y' = y^3\n - z\n", encoding="utf-8")
    code, rep, _ = call(capsys, "local", str(path), "--at", "oo")
    assert code == 0
    assert [(p["exponent"], p["constraint"]) for p in rep["leads"]] == [("-1/3", "X**3 + 1")]


@pytest.mark.parametrize("argv", [
    ["equiv", STANDARD, DISGUISED],
    ["equiv", "S - T^5", "16*S - T^5"],
    ["semi-autonomous", DISGUISED],
    ["alg-solutions", "S - T^5"],
    ["alg-solutions", "S - T"],
    ["autonomize", "S^2 - T^6 + 1", "--generator", "y"],
    ["genus", "S^2 - T^6 + 1"],
    ["pp", "S - T^3 - z"],
    ["local", "S - T^3 - z", "--at", "0"],
    ["disguise", STANDARD, "--factor", "1/z"],
])
def test_verify_round_trip(tmp_path, capsys, argv):
    code, rep, _ = call(capsys, *argv)
    assert code in (0, 2)
    path = tmp_path / "report.json"
    path.write_text(json.dumps(rep), encoding="utf-8")
    code, out, _ = call(capsys, "verify", str(path))
    assert code == 0 and out["verified"] is True


def test_verify_detects_tampering(tmp_path, capsys):
    _, rep, _ = call(capsys, "equiv", STANDARD, DISGUISED)
    rep["witness"]["lambda"] = "2/z"
    path = tmp_path / "report.json"
    path.write_text(json.dumps(rep), encoding="utf-8")
    code, out, _ = call(capsys, "verify", str(path))
    assert code == 1 and out["verified"] is False


def test_command_results(capsys):
    assert call(capsys, "equiv", STANDARD, DISGUISED)[1]["verdict"] == "CertifiedYes"
    assert call(capsys, "alg-solutions", "S - T^5")[1]["t"] == "-1/(4*v**4)"
    assert call(capsys, "disguise", STANDARD)[1]["equation"] == call(capsys, "parse", DISGUISED)[1]["equation"]
    rep = call(capsys, "pair", "S - T^5")[1]
    assert rep["divisor"] == [{"point": "0", "order": 5}, {"point": "oo", "order": -3}]


def test_text_output(capsys):
    assert run(["genus", "S^2 - T^6 + 1", "--deterministic"]) == 0
    out = capsys.readouterr().out
    assert "genus: 2" in out and "version" not in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "odeq.cli", "pp", "S - T^2 - z", "--json", "--deterministic"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "PP"
