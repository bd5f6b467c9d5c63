import json

import pytest

from basketcalc.cli import main

D10_BASKET = [[1, 2, 5], [3, 7, 1], [2, 5, 3], [1, 3, 3], [3, 11, 1]]


@pytest.fixture
def d10_file(tmp_path):
    p = tmp_path / "b.json"
    p.write_text(json.dumps({"pairs": D10_BASKET}))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_eval(capsys, d10_file):
    code, out = run(capsys, "eval", "--basket", d10_file, "--chi", "2")
    data = json.loads(out)
    assert code == 0
    assert data["k3"] == "3/770" and data["sigma"] == 20
    assert data["chi_start"] == 2
    assert data["chi"][24 - 2] == 8 and data["chi"][10 - 2] == 1


def test_eval_csv(capsys, d10_file):
    code, out = run(capsys, "eval", "--basket", d10_file, "--chi", "2", "--upto", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "m,chi_m" and len(out.splitlines()) == 4


def test_out_file(capsys, tmp_path):
    dest = tmp_path / "f.json"
    code, out = run(capsys, "farey", "--level", "5", "--rmax", "7", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["fractions"][:3] == ["1/2", "2/5", "1/3"]


def test_canon(capsys, tmp_path):
    p = tmp_path / "b.json"
    p.write_text('{"pairs": [[3, 7, 1]]}')
    code, out = run(capsys, "canon", "--basket", str(p), "--upto", "8")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert lines[0]["basket"] == [[1, 2, 2], [1, 3, 1]]
    assert lines[-1]["stabilization_level"] == 7


def test_invert(capsys, tmp_path):
    p = tmp_path / "cv.json"
    vals = [0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 3, 2]
    p.write_text(json.dumps({"chi": 1, "values": vals}))
    code, out = run(capsys, "invert", "--chi-vector", str(p))
    data = json.loads(out)
    assert code == 0 and data["sigma"] == 10 and data["n0"]["2"] == 6


def test_wps(capsys):
    code, out = run(capsys, "wps", "--weights", "4,5,6,7,23", "--degree", "46", "--upto", "10")
    data = json.loads(out)
    assert code == 0
    assert data["volume"] == "1/420"
    assert data["plurigenera"] == [0, 0, 0, 1, 1, 1, 1, 1, 1, 2]


def test_wps_recover(capsys):
    code, out = run(capsys, "wps", "--weights", "4,5,6,7,23", "--degree", "46", "--recover-chi", "1")
    data = json.loads(out)
    assert code == 0 and "1/420" in [f["k3"] for f in data["recovered"]]


def test_verify_pass(capsys):
    code, out = run(capsys, "verify", "p12", "--chi-max", "3")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_counterexample(capsys):
    code, out = run(capsys, "verify", "p12", "--no-eps6", "--chi-max", "2")
    assert code == 1 and json.loads(out)["violations"]


def test_enumerate_with_constraints_file(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"chi_min": 2, "chi_max": 2, "fixed": {str(m): 0 for m in range(2, 14)}}))
    code, out = run(capsys, "enumerate", "--constraints", str(p))
    assert code == 0 and json.loads(out)["candidate_count"] == 0


@pytest.mark.parametrize("argv", [
    ["eval", "--chi", "2"],
    ["eval", "--basket", "x", "--chi", "2", "--bogus"],
    ["nosuch"],
    [],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"pairs": [[3, 5, 1]]}')
    assert main(["eval", "--basket", str(bad), "--chi", "2"]) == 3
    assert main(["eval", "--basket", str(tmp_path / "missing.json"), "--chi", "2"]) == 3
    bad.write_text("{not json")
    assert main(["canon", "--basket", str(bad)]) == 3
    assert main(["wps", "--weights", "8,10,12,14,46", "--degree", "92"]) == 3
    c = tmp_path / "c.json"
    c.write_text('{"unknown": 1}')
    assert main(["enumerate", "--constraints", str(c)]) == 3
