import json
import subprocess
import sys
from pathlib import Path

import pytest

from ptasynth import jsonio

GATE = """clocks: x
params: p
loc q0 init inv: true
loc q1 inv: true
edge q0 -> q1 : x >= 2 & x <= p ; a ;
"""


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "gate.pta").write_text(GATE)
    (tmp_path / "ef.prop").write_text("EF q1\n")
    (tmp_path / "empty.prop").write_text("EF (q1 && x <= 1)\n")
    (tmp_path / "bad.pta").write_text("clocks: x\nloc q0 init inv: true\nedge q0 -> q9 : true ; a ;\n")
    (tmp_path / "run0.txt").write_text("0\n")
    return tmp_path


def cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "ptasynth.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


def test_parse_ok_and_error_exit_codes(workdir):
    ok = cli("parse", "--model", str(workdir / "gate.pta"))
    assert ok.returncode == 0
    assert "parametric clocks: x" in ok.stdout
    bad = cli("parse", "--model", str(workdir / "bad.pta"))
    assert bad.returncode == 2
    assert "q9" in bad.stderr


def test_check_verdicts(workdir):
    sat = cli("check", "--model", str(workdir / "gate.pta"), "--prop",
              str(workdir / "ef.prop"), "--set", "p=5")
    assert sat.returncode == 0 and "verdict: sat" in sat.stdout
    unsat = cli("check", "--model", str(workdir / "gate.pta"), "--prop",
                str(workdir / "ef.prop"), "--set", "p=1")
    assert unsat.returncode == 0 and "verdict: unsat" in unsat.stdout


def test_synth_region_and_empty_exit(workdir):
    out = workdir / "region.json"
    res = cli("synth", "--model", str(workdir / "gate.pta"), "--prop",
              str(workdir / "ef.prop"), "--out", str(out))
    assert res.returncode == 0
    payload = json.loads(out.read_text())
    jsonio.validate(payload, jsonio.load_schema("region"))
    assert payload["empty"] is False

    res2 = cli("synth", "--model", str(workdir / "gate.pta"), "--prop",
               str(workdir / "empty.prop"), "--out", str(out))
    assert res2.returncode == 3
    payload2 = json.loads(out.read_text())
    jsonio.validate(payload2, jsonio.load_schema("region"))
    assert payload2["empty"] is True


def test_synth_output_bytes_are_stable(workdir):
    args = ("synth", "--model", str(workdir / "gate.pta"), "--prop",
            str(workdir / "ef.prop"))
    first, second = cli(*args), cli(*args)
    assert first.stdout == second.stdout


def test_oracle_json_schema(workdir):
    out = workdir / "oracle.json"
    res = cli("oracle", "--model", str(workdir / "gate.pta"), "--prop",
              str(workdir / "ef.prop"), "--grid", "p=0..5", "--time", "nat",
              "--out", str(out))
    assert res.returncode == 0
    payload = json.loads(out.read_text())
    jsonio.validate(payload, jsonio.load_schema("oracle"))
    verdicts = [pt["satisfied"] for pt in payload["points"]]
    assert verdicts == [False, False, True, True, True, True]


def test_check_json_schema(workdir):
    out = workdir / "check.json"
    res = cli("check", "--model", str(workdir / "gate.pta"), "--prop",
              str(workdir / "ef.prop"), "--set", "p=5", "--out", str(out))
    assert res.returncode == 0
    jsonio.validate(json.loads(out.read_text()), jsonio.load_schema("check"))


def test_feasible_and_runs(workdir):
    res = cli("feasible", "--model", str(workdir / "gate.pta"), "--run",
              str(workdir / "run0.txt"), "--set", "p=5")
    assert res.returncode == 0
    assert "feasible: True" in res.stdout
    assert "witness replays: True" in res.stdout
    res2 = cli("runs", "--model", str(workdir / "gate.pta"), "--max-len", "1")
    assert res2.stdout.splitlines() == ["-  (q0)", "0  (q0 -> q1)"]


def test_missing_set_is_usage_error(workdir):
    res = cli("check", "--model", str(workdir / "gate.pta"), "--prop",
              str(workdir / "ef.prop"))
    assert res.returncode == 2


def test_selftest_quick_deterministic():
    a = cli("selftest", "--seed", "42", "--quick")
    b = cli("selftest", "--seed", "42", "--quick")
    assert a.returncode == 0, a.stdout + a.stderr
    assert a.stdout == b.stdout
    assert "selftest: PASS" in a.stdout


def test_analyze2_probe_schema(tmp_path):
    from importlib import resources
    base = resources.files("ptasynth").joinpath("data/twoone")
    out = tmp_path / "probe.json"
    res = cli("analyze2", "--model", str(base / "m03_even_pacer.pta"),
              "--prop", str(base / "m03_even_pacer.prop"), "--out", str(out))
    assert res.returncode == 0
    assert "EXPERIMENTAL" in res.stdout
    jsonio.validate(json.loads(out.read_text()), jsonio.load_schema("probe"))
