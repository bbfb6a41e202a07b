import json
import subprocess
import sys
from pathlib import Path

import pytest

from geompoly.cli import main

GOLDEN = Path(__file__).parent / "golden"
CYCLIC3 = {"n": 3, "rows": [["0", "1", "0"], ["0", "0", "1"], ["1", "0", "0"]]}

GOLDEN_CASES = {
    "minors_A3": ["minors", "--type", "A3"],
    "hilbert_perm3": ["hilbert", "--matrix", "{perm3}", "--dmax", "6"],
    "geometric_A2_x1sq": ["geometric", "--type", "A2", "--poly", "x1^2"],
    "volpoly_A2_root": ["volpoly", "--type", "A2", "--normalization", "root"],
    "facevol_A3_13": ["facevol", "--type", "A3", "--subset", "1,3"],
    "orbit_B2": ["orbit", "--type", "B2"],
    "basis_A2": ["basis", "--type", "A2", "--dmax", "3"],
}


@pytest.fixture
def perm3(tmp_path):
    path = tmp_path / "perm3.json"
    path.write_text(json.dumps(CYCLIC3))
    return path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fill(argv, perm3):
    return [a.format(perm3=perm3) for a in argv]


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, perm3, capsys):
    code, out, _ = run(fill(GOLDEN_CASES[name], perm3), capsys)
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_minors_contents(capsys):
    payload = json.loads(run(["minors", "--type", "A3"], capsys)[1])
    assert len(payload["minors"]) == 7
    assert payload["all_positive"] and payload["witness"] is None


def test_hilbert_contents(perm3, capsys):
    payload = json.loads(run(["hilbert", "--matrix", perm3, "--dmax", "6"], capsys)[1])
    assert payload["dims_primal"] == [1, 3, 3, 3, 3, 3, 3]
    assert payload["minors_nonzero"] is False and payload["witness"] == [1]


def test_geometric_contents(capsys):
    payload = json.loads(run(["geometric", "--type", "A2", "--poly", "x1^2"], capsys)[1])
    assert payload["status"] == "NotInSpace" and payload["witness"]["i"] == 1


def test_geometric_poly_file(tmp_path, capsys):
    f = tmp_path / "p.txt"
    f.write_text("3/2*x1^2 + 6*x1*x2 + 3/2*x2^2 + 5\n")
    payload = json.loads(run(["geometric", "--type", "A2", "--poly-file", f], capsys)[1])
    assert payload["status"] == "Geometric"
    assert payload["coefficients"] == {"[]": "5", "[1]": "0", "[2]": "0", "[1,2]": "1"}


def test_volume(capsys):
    payload = json.loads(run(["volume", "--type", "G2", "--weight", "1,2"], capsys)[1])
    assert payload["volume"] == "63"


def test_no_floats_anywhere(perm3, capsys):
    for argv in GOLDEN_CASES.values():
        out = run(fill(argv, perm3), capsys)[1]

        def walk(x):
            assert not isinstance(x, float)
            if isinstance(x, dict):
                [walk(v) for v in x.values()]
            elif isinstance(x, list):
                [walk(v) for v in x]
        walk(json.loads(out))


@pytest.mark.parametrize("argv", [
    ["minors"],
    ["minors", "--type", "A3", "--matrix", "m.json"],
    ["minors", "--type", "Q7"],
    ["hilbert", "--matrix", "/nonexistent.json"],
    ["hilbert", "--type", "A2", "--dmax", "-1"],
    ["geometric", "--type", "A2", "--poly", "x1^"],
    ["geometric", "--type", "A2", "--poly", "x3"],
    ["volpoly", "--type", "A5"],
    ["facevol", "--type", "A3", "--subset", "1,4"],
    ["facevol", "--type", "A3", "--subset", "a"],
    ["volume", "--type", "A2", "--weight", "1"],
    ["orbit", "--type", "A4", "--orbit-cap", "10"],
    ["volpoly", "--type", "A2", "--normalization", "lattice"],
    ["verify", "--include", "E8"],
    ["verify", "--only", "AC-10"],
    ["frobnicate"],
])
def test_input_errors(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == "" and err


def test_malformed_matrix_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["minors", "--matrix", bad], capsys)[0] == 2
    ragged = tmp_path / "ragged.json"
    ragged.write_text(json.dumps({"n": 2, "rows": [["1", "2"], ["3"]]}))
    assert run(["minors", "--matrix", ragged], capsys)[0] == 2
    nonsquare = tmp_path / "ns.json"
    nonsquare.write_text(json.dumps({"n": 1, "rows": [["1", "2"]]}))
    assert run(["hilbert", "--matrix", nonsquare], capsys)[0] == 2


def test_verify_subset_deterministic(capsys):
    argv = ["verify", "--only", "AC-6,AC-9", "--seed", "42"]
    code1, out1, err1 = run(argv, capsys)
    code2, out2, _ = run(argv, capsys)
    assert code1 == code2 == 0 and out1 == out2
    report = json.loads(out1)
    assert report["seed"] == 42 and [c["criterion"] for c in report["criteria"]] == ["AC-6", "AC-9"]
    assert "PASS" in err1


def test_module_entry_point(perm3):
    cmd = [sys.executable, "-m", "geompoly", "hilbert", "--matrix", str(perm3), "--dmax", "6"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b == (GOLDEN / "hilbert_perm3.json").read_text()
