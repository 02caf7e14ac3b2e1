import json
import subprocess
import sys

import pytest

from shortpivot import formats
from shortpivot.cli import main
from shortpivot.model import CanonicalLP


@pytest.fixture
def lp22_file(tmp_path):
    path = tmp_path / "lp22.json"
    path.write_text(formats.dump_instance(CanonicalLP([[2, 1], [1, 2]], [3, 3], [3, 3])))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_is_deterministic_and_round_trips(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "gen", "--m", "3", "--n", "4", "--seed", "9", "--output", str(a))[0] == 0
    assert run(capsys, "gen", "--m", "3", "--n", "4", "--seed", "9", "--output", str(b))[0] == 0
    assert a.read_text() == b.read_text()
    lp = formats.load_instance(a.read_text())
    assert formats.dump_instance(lp) == a.read_text()
    assert lp.m == 3 and lp.n == 4 and lp.x_star is not None


def test_gen_needs_sizes(capsys):
    assert run(capsys, "gen", "--m", "0", "--n", "2")[0] == 2


def test_solve(lp22_file, tmp_path, capsys):
    out_path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "solve", "--input", lp22_file, "--output", str(out_path), "--verbose")
    assert code == 0
    assert "objective: 6" in out and "R+ = {1,2}" in out and "phase=" in out
    assert json.loads(out_path.read_text())["objective"] == "6"


def test_decompose_worked_instance(lp22_file, tmp_path, capsys):
    trace_path = tmp_path / "trace.json"
    code, out, _ = run(capsys, "decompose", "--input", lp22_file, "--output", str(trace_path))
    assert code == 0
    assert "r = 2" in out and "pivots: (2,1) (1,2)" in out
    text = trace_path.read_text()
    assert formats.dump_trace(formats.load_trace(text)) == text


def test_decompose_statuses(tmp_path, capsys):
    infeasible = tmp_path / "inf.json"
    infeasible.write_text(formats.dump_instance(CanonicalLP([[-1]], [1], [1])))
    code, out, _ = run(capsys, "decompose", "--input", str(infeasible))
    assert code == 3 and "status: primal_infeasible" in out
    unbounded = tmp_path / "unb.json"
    unbounded.write_text(formats.dump_instance(CanonicalLP([[1]], [1], [-1])))
    assert run(capsys, "decompose", "--input", str(unbounded))[0] == 4
    origin = tmp_path / "origin.json"
    origin.write_text(formats.dump_instance(CanonicalLP([[1]], [-1], [1])))
    code, out, _ = run(capsys, "decompose", "--input", str(origin))
    assert code == 0 and "r = 0" in out


def test_game_command(tmp_path, capsys):
    pennies = tmp_path / "pennies.txt"
    pennies.write_text("1 -1\n-1 1\n")
    code, out, _ = run(capsys, "game", "--input", str(pennies), "--direction", "dec")
    assert code == 0 and "gamma sequence: (-1, 0)" in out
    trace_path = tmp_path / "gt.json"
    code, out, _ = run(capsys, "game", "--input", str(pennies), "--direction", "inc", "--output", str(trace_path))
    assert code == 0 and "gamma sequence: (1, 0)" in out
    text = trace_path.read_text()
    assert formats.dump_game_trace(formats.load_game_trace(text)) == text
    single = tmp_path / "one.txt"
    single.write_text("5\n")
    code, out, _ = run(capsys, "game", "--input", str(single), "--direction", "inc")
    assert code == 0 and "gamma sequence: (-5)" in out
    assert run(capsys, "game", "--input", str(pennies))[0] == 2


def test_verify_sweep(tmp_path, capsys):
    report = tmp_path / "sweep.json"
    code, out, _ = run(capsys, "verify", "--count", "25", "--seed", "3", "--output", str(report))
    assert code == 0 and "passed: 25" in out
    obj = json.loads(report.read_text())
    assert obj["instances"] == 25 and obj["failed"] == []


def test_verify_detects_corrupted_trace(lp22_file, tmp_path, capsys):
    trace_path = tmp_path / "trace.json"
    run(capsys, "decompose", "--input", lp22_file, "--output", str(trace_path))
    assert run(capsys, "verify", "--input", lp22_file, "--input", str(trace_path))[0] == 0
    obj = json.loads(trace_path.read_text())
    obj["levels"][0]["objective"] = "8"
    trace_path.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", "--input", lp22_file, "--input", str(trace_path))
    assert code == 5 and "FAIL" in out
    obj["levels"][0]["objective"] = "9"
    obj["pivots"] = [[1, 1], [2, 2]]
    trace_path.write_text(json.dumps(obj))
    assert run(capsys, "verify", "--input", lp22_file, "--input", str(trace_path))[0] == 5


def test_verify_cap_refused(capsys):
    code, _, err = run(capsys, "verify", "--cap", "7")
    assert code == 2 and "refused" in err


def test_parse_and_io_errors(tmp_path, capsys):
    assert run(capsys, "solve", "--input", str(tmp_path / "missing.json"))[0] == 7
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "solve", "--input", str(bad))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--bogus"])
    assert exc.value.code == 2


def test_module_entry_point(lp22_file):
    proc = subprocess.run(
        [sys.executable, "-m", "shortpivot", "decompose", "--input", lp22_file],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "pivots: (2,1) (1,2)" in proc.stdout
