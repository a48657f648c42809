import json
import subprocess
import sys
from pathlib import Path

import pytest

import psad.bench.harness as harness
from psad.adcore import ExtendedFunction, log
from psad.bench.cli import main
from psad.problems import ProblemSpec

GOLDEN = Path(__file__).with_name("golden")
GOLDEN_ARGS = ["--problems", "diag,arrowhead,quartic-chain,solid-fuel-like",
               "--sizes", "20,50", "--ops-only", "--seed", "7", "--serial"]


def _strip_environment(text):
    doc = json.loads(text)
    doc["environment"] = {}
    return doc


@pytest.mark.parametrize("fmt", ["table", "csv", "json"])
def test_golden_outputs(fmt, tmp_path):
    out = tmp_path / f"report.{fmt}"
    assert main(GOLDEN_ARGS + ["--format", fmt, "--out", str(out)]) == 0
    expected = (GOLDEN / f"ops_only.{fmt}").read_text()
    if fmt == "json":
        assert _strip_environment(out.read_text()) == json.loads(expected)
    else:
        assert out.read_text() == expected


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("PSAD_SEED", "7")
    out = tmp_path / "r.csv"
    args = [a for a in GOLDEN_ARGS if a not in ("--seed", "7")]
    assert main(args + ["--format", "csv", "--out", str(out)]) == 0
    assert out.read_text() == (GOLDEN / "ops_only.csv").read_text()


def test_stdout_report(capsys):
    assert main(["--problems", "diag", "--sizes", "10", "--ops-only"]) == 0
    assert "ops_kappa1" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main(["--problems", "nope"]) == 2
    assert "unknown problem" in capsys.readouterr().err
    assert main(["--trials", "2", "--problems", "diag"]) == 2
    assert main(["--sizes", "ten"]) == 2
    assert main(["--format", "xml"]) == 2
    assert main(["--help"]) == 0


def test_bad_env_seed(monkeypatch):
    monkeypatch.setenv("PSAD_SEED", "abc")
    assert main(["--problems", "diag", "--sizes", "5", "--ops-only"]) == 2


def test_unwritable_output():
    assert main(["--problems", "diag", "--sizes", "5", "--ops-only",
                 "--out", "/nonexistent-dir/report.csv"]) == 3


def _broken(n):
    # log of a shifted variable fails at the standard start
    return ExtendedFunction(n, lambda x: log(x - 10.0), n, name="broken")


def test_numerical_failure_keeps_partial_json(tmp_path, monkeypatch):
    real = harness.get_problem
    diag = real("diag")
    broken = ProblemSpec("arrowhead", "structural", 1, diag.size, _broken,
                         diag.reference_pattern, diag.standard_start)
    monkeypatch.setattr(harness, "get_problem",
                        lambda name: broken if name == "arrowhead" else real(name))
    out = tmp_path / "partial.json"
    code = main(["--problems", "diag,arrowhead", "--sizes", "8", "--ops-only",
                 "--format", "json", "--out", str(out), "--serial"])
    assert code == 4
    doc = json.loads(out.read_text())
    assert [r["problem"] for r in doc["records"]] == ["diag"]
    assert "arrowhead" in doc["errors"][0]

    csv_out = tmp_path / "partial.csv"
    assert main(["--problems", "diag,arrowhead", "--sizes", "8", "--ops-only",
                 "--format", "csv", "--out", str(csv_out), "--serial"]) == 4
    assert json.loads(Path(str(csv_out) + ".partial.json").read_text())["records"]


def test_plots_flag(tmp_path):
    out = tmp_path / "bench.json"
    assert main(["--problems", "diag,arrowhead", "--sizes", "10", "--ops-only",
                 "--format", "json", "--out", str(out), "--plots"]) == 0
    assert (tmp_path / "bench_kappa.png").exists()
    assert (tmp_path / "bench_quartiles.png").exists()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "psad.bench", "--problems", "diag",
                           "--sizes", "5", "--ops-only", "--format", "csv"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout.startswith("problem,n,rho_max")
