import json
import subprocess
import sys

import pytest

from parabolic_r.cli import main
from oracles import expand_sympy

EXAMPLE = ["--u", "416273859", "--v", "671489253", "--excluded", "3..5"]
EXPECTED9 = expand_sympy(1, [[1, -1]] * 3 + [[1, 0, -1], [1, -1, 1]])


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_both_agree(capsys):
    code, out, _ = run(capsys, "compute", "--n", "9", *EXAMPLE, "--method", "both")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("recursion: ") and lines[1].startswith("closed: ")
    assert lines[0].split(":", 1)[1].strip() == lines[1].split(":", 1)[1].strip()
    assert lines[2] == "AGREE"


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", *EXAMPLE, "--method", "both", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["recursion"] == d["closed"] == EXPECTED9
    assert d["agree"] is True and d["excluded"] == "3..5" and d["x"] == "q"
    assert d["J"] == [1, 2, 6, 7, 8]


def test_compute_minus_one_json(capsys):
    code, out, _ = run(capsys, "compute", "--u", "123", "--v", "231", "--J", "2",
                       "--x", "-1", "--format", "json")
    assert code == 0
    assert json.loads(out)["recursion"] == [0, -1, 1]


@pytest.mark.parametrize("u,v,text", [("123", "123", "1"), ("231", "123", "0"), ("123", "231", "1 - q")])
def test_compute_text(capsys, u, v, text):
    code, out, _ = run(capsys, "compute", "--u", u, "--v", v, "--J", "2")
    assert code == 0
    assert out.strip() == text


def test_compute_closed_needs_interval(capsys):
    code, _, err = run(capsys, "compute", "--u", "1234", "--v", "1234", "--J", "2",
                       "--method", "closed")
    assert code == 1
    assert "S minus" in err


@pytest.mark.parametrize("argv", [
    ["compute", "--u", "132", "--v", "231", "--J", "2"],
    ["compute", "--u", "12x", "--v", "231", "--J", "2"],
    ["compute", "--n", "4", "--u", "123", "--v", "231", "--J", "2"],
    ["compute", "--u", "123", "--v", "231", "--excluded", "3..1"],
    ["stats", "--u", "213", "--v", "231", "--excluded", "2"],
    ["verify", "--suite", "family", "--n", "4"],
    ["verify", "--suite", "conjecture", "--n", "4", "--sample", "oops"],
])
def test_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_usage_error_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--u", "123"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", *EXAMPLE)
    assert code == 0
    d = json.loads(out)
    assert d["A"] == [5]
    assert d["B"] == [1, 2, 3, 5]
    assert d["a"] == [0, 0, 1, 0, 1, 1, 2, 1, 1]
    assert d["D"] == [3, 7, 9]


def test_enumerate_lines_and_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--J", "2")
    assert code == 0
    assert out.splitlines() == ["1,2,3\t0", "2,1,3\t1", "2,3,1\t2"]
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--excluded", "1..3", "--format", "json")
    d = json.loads(out)
    assert len(d["elements"]) == 24 and d["J"] == []


def test_enumerate_round_trip(capsys):
    _, out, _ = run(capsys, "enumerate", "--n", "4", "--excluded", "2")
    for line in out.splitlines():
        perm, length = line.split("\t")
        code, res, _ = run(capsys, "compute", "--u", perm, "--v", perm, "--excluded", "2")
        assert code == 0 and res.strip() == "1"


def test_verify_out_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, err = run(capsys, "verify", "--suite", "family", "--family", "double",
                         "--n", "5", "--out", str(path))
    assert code == 0 and out == ""
    assert err.startswith("PASS")
    d = json.loads(path.read_text())
    assert d["pass"] is True and d["family"] == "double"


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "duality", "--n", "4"],
    ["verify", "--suite", "duality", "--n", "4", "--J", ""],
    ["verify", "--suite", "descent", "--n", "4", "--excluded", "2..3"],
    ["verify", "--suite", "overlap", "--n", "5"],
    ["verify", "--suite", "conjecture", "--n", "5", "--sample", "1:50"],
    ["verify", "--suite", "family", "--family", "conjecture", "--n", "5", "--excluded", "1..3"],
    ["verify", "--suite", "family", "--family", "triple", "--n", "9", "--i", "5",
     "--pair", "416273859:671489253"],
])
def test_verify_suites(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_failure_exit_2(capsys, monkeypatch):
    from parabolic_r import verify
    from parabolic_r.polynomial import ZERO
    monkeypatch.setattr(verify, "_closed_value", lambda *a: ZERO)
    code, out, err = run(capsys, "verify", "--suite", "family", "--family", "single", "--n", "3")
    assert code == 2
    assert err.startswith("FAIL")
    assert json.loads(out)["mismatch_total"] > 0


def test_disagreement_exit_2(capsys, monkeypatch):
    from parabolic_r import cli
    from parabolic_r.polynomial import ZERO
    monkeypatch.setattr(cli, "r_closed", lambda *a: ZERO)
    code, out, _ = run(capsys, "compute", *EXAMPLE, "--method", "both")
    assert code == 2
    assert out.splitlines()[-1] == "DISAGREE"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "parabolic_r", "compute", *EXAMPLE, "--method", "closed",
         "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["closed"] == EXPECTED9
