import json
import subprocess
import sys

import pytest

from logconcavity.cli import main


def run(capsys, *argv):
    code = main(["--quiet", *argv])
    out = capsys.readouterr().out
    return code, out


def test_coeffs_csv(capsys):
    code, out = run(capsys, "coeffs", "--family", "sigma", "--kind", "geo", "--d", "0", "--n", "6", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,num,den"
    assert lines[-2:] == ["5,43,1", "6,108,1"]


def test_coeffs_text(capsys):
    assert run(capsys, "coeffs", "--family", "psi", "--kind", "exp", "--d", "0", "--n", "3") == (0, "1,1,1,1\n")
    assert run(capsys, "coeffs", "--family", "sigma", "--kind", "exp", "--d", "1", "--n", "6")[1] == "1,1,2,3,5,7,11\n"
    assert run(capsys, "coeffs", "--family", "sigma", "--kind", "exp", "--d", "0", "--n", "2")[1] == "1,1,3/2\n"


def test_coeffs_json_schema(capsys):
    _, out = run(capsys, "coeffs", "--family", "sigma", "--kind", "exp", "--d", "0", "--n", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["family"] == "sigma" and doc["kind"] == "exp"
    assert doc["d_range"] == [0, 0] and doc["n_range"] == [0, 4]
    assert doc["coeffs"][4] == {"num": "59", "den": "24"}


@pytest.mark.parametrize(
    "argv",
    [
        ["coeffs", "--family", "zeta", "--kind", "geo", "--d", "0", "--n", "3"],
        ["coeffs", "--family", "psi", "--kind", "geo", "--d", "-1", "--n", "3"],
        ["coeffs", "--family", "psi", "--d", "0", "--n", "3"],
        ["verify", "--family", "psi", "--n-from", "2", "--n-to", "4"],
        ["verify", "--family", "psi", "--n-from", "5", "--n-to", "4"],
        ["oracle", "--check", "composition", "--n-max", "25"],
        ["landscape", "--family", "psi", "--kind", "geo", "--max-n", "0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 2


def test_exceptions_command(capsys):
    code, out = run(capsys, "exceptions", "--family", "sigma", "--kind", "exp", "--d", "2", "--max-n", "100")
    assert (code, out) == (0, "1 3 5 7 9 11\n")
    _, out = run(capsys, "exceptions", "--family", "psi", "--kind", "geo", "--d", "0", "--max-n", "50", "--format", "json")
    assert json.loads(out)["exceptions"] == [1]


def test_landscape_tiny(capsys):
    code, out = run(capsys, "landscape", "--family", "psi", "--kind", "exp", "--max-n", "1", "--max-d", "0")
    assert code == 0
    assert out.splitlines()[-1] == "  1|"


def test_verify_reports(capsys):
    code, out = run(capsys, "verify", "--family", "sigma", "--n-from", "5", "--n-to", "5", "--probes", "2")
    assert code == 0
    (report,) = json.loads(out)["report"]
    assert report["probe_degrees"] == [71, 72]
    assert report["verdict"] == "pass"
    assert report["D_value"] == pytest.approx(70.18, abs=0.005)
    assert 0 < report["D_error_bound"] < 2**-64


def test_bounds_command(capsys):
    code, out = run(capsys, "bounds", "--family", "psi", "--n-from", "3", "--n-to", "12")
    doc = json.loads(out)
    assert code == 0
    assert doc["growth"] == {"r": "1/2", "verified_up_to": 200}
    assert all(row["agree"] for row in doc["report"])


def test_oracle_command(capsys):
    assert run(capsys, "oracle", "--check", "composition", "--n-max", "10", "--d-max", "2")[0] == 0
    assert run(capsys, "oracle", "--check", "lemma2", "--n-max", "20", "--d-max", "3")[0] == 0
    assert run(capsys, "oracle", "--check", "lemma1", "--n-max", "9")[0] == 0
    code, out = run(capsys, "oracle", "--check", "lemma1")
    assert code == 1
    assert json.loads(out)["failure"].startswith("n=10")


def test_challenges_small(capsys, tmp_path):
    cache = str(tmp_path / "c.bin")
    code, out = run(capsys, "challenge", "--id", "1", "--max-n", "200", "--cache", cache)
    assert code == 0
    assert json.loads(out)["missing"] == [] and json.loads(out)["unexpected"] == []
    assert run(capsys, "challenge", "--id", "1", "--max-n", "200") == (code, out)
    assert run(capsys, "challenge", "--id", "1", "--max-n", "200", "--cache", cache) == (code, out)
    code, out = run(capsys, "challenge", "--id", "2", "--max-n", "100")
    doc = json.loads(out)
    assert code == 0 and doc["psi0_exceptions"] == [1] and doc["psi1_exceptions"] == [1]
    assert doc["psi2_exceptions"] and doc["psi2_non_exception_count"] > 0
    code, out = run(capsys, "challenge", "--id", "3", "--max-n", "101", "--jobs", "2")
    assert code == 0 and json.loads(out)["sigma5_exception_at_10"]


def test_unusable_cache_falls_back(capsys, tmp_path):
    code = main(["--quiet", "coeffs", "--family", "psi", "--kind", "geo", "--d", "1", "--n", "4", "--cache", str(tmp_path)])
    captured = capsys.readouterr()
    assert code == 0 and captured.out == "1,1,3,8,21\n"
    assert "warning" in captured.err


def test_deterministic_output_and_banner():
    cmd = [sys.executable, "-m", "logconcavity.cli", "landscape", "--family", "sigma", "--kind", "geo", "--max-n", "6", "--max-d", "4"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True)
    b = subprocess.run(cmd + ["--jobs", "2"], capture_output=True, text=True, check=True)
    assert a.stdout == b.stdout
    assert a.stderr.startswith("logconcavity ")
    quiet = subprocess.run([cmd[0], cmd[1], cmd[2], "-q", *cmd[3:]], capture_output=True, text=True, check=True)
    assert quiet.stderr == "" and quiet.stdout == a.stdout
