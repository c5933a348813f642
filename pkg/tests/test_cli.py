import json
import subprocess
import sys

import pytest

from invar.cli import GALLERY, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_toric_hilbert_basis(capsys):
    doc = run_json(capsys, "toric", "--factors", "2", "--xw", "1", "--ww", "1", "hilbert-basis")
    assert doc["schema_version"] == "1"
    mons = {g["symbol"]: g["monomial"] for g in doc["result"]["generators"]}
    assert mons == {"A": "X^2", "B": "W^2", "C": "X*W"}
    assert doc["result"]["relations"] == ["C^2 - A*B"]


def test_sym3_min_generators(capsys):
    doc = run_json(capsys, "builtin", "sym3", "min-generators")
    gens = doc["result"]["generators"]
    assert [g["bidegree"] for g in gens] == [[1, 0], [2, 0], [3, 0]]


def test_cyclic_pi1(capsys):
    doc = run_json(capsys, "builtin", "cyclic", "--k", "4", "--weights", "2,1", "--rho", "1", "pi1")
    assert doc["result"]["total"]["order"] == 4
    assert doc["result"]["base"]["order"] == 2


def test_text_rendering(capsys):
    code, out, _ = run(capsys, "builtin", "sym3", "--rho", "sign", "algebra")
    assert code == 0
    assert "A = X + Y + Z" in out
    assert "relations:" in out


def test_file_source(capsys):
    doc = run_json(capsys, "file", "tests/data/cyclic4.inv", "algebra")
    assert len(doc["result"]["generators"]) == 9
    assert doc["result"]["variables"] == ["X1", "X2", "W"]
    doc = run_json(capsys, "file", "tests/data/s3_sign.inv", "molien", "--trunc", "3")
    assert doc["result"]["coefficients"]["0,2"] == 1


def test_level_flag(capsys):
    doc = run_json(capsys, "builtin", "cyclicone", "--k", "2", "--l", "1", "group", "--level", "3")
    assert doc["result"]["level"] == 6


def test_fiber_and_singularities(capsys):
    doc = run_json(capsys, "builtin", "toric11.1", "fiber", "--point", "0,0")
    assert doc["result"]["reduced"] is False
    assert doc["result"]["nilpotency_oracle"]["nonreduced"] is True
    doc = run_json(capsys, "builtin", "cyclic4reflection", "singularities", "--point", "2,0", "--vpoint", "0")
    assert doc["result"]["vpoint_singular"] is True
    doc = run_json(capsys, "builtin", "klein", "--variant", "1", "singularities")
    assert len(doc["result"]["fixed_spaces"]) == 3


def test_other_commands(capsys):
    assert run_json(capsys, "builtin", "sym3", "--rho", "sign", "compare-sym", "--caps", "4,2")["result"]["hilbert_ok"]
    assert run_json(capsys, "builtin", "s3-reflection", "reflections")["result"]["beta"]["reflection_group"]
    doc = run_json(capsys, "builtin", "sym3", "invariants", "--degree", "2")
    assert doc["result"]["dimension"] == 2
    doc = run_json(capsys, "builtin", "cyclicone", "--k", "3", "--l", "1", "character-decomp", "--caps", "3,3")
    assert len(doc["result"]["pieces"]) == 3
    doc = run_json(capsys, "toric", "--factors", "2", "--xw", "1", "--ww", "1", "--ww2", "1", "check-normalization")
    assert doc["result"]["is_normalization"]
    doc = run_json(capsys, "builtin", "toric11.1", "covariants")
    assert doc["result"]["generators"] == [["X"], ["Y"]]
    doc = run_json(capsys, "smith", "2,0;0,3")
    assert doc["invariant_factors"] == [6]
    doc = run_json(capsys, "diagnose-fiberflat", "--rank", "1", "--mu", "2", "--dim", "3",
                   "--isolated-nonfree-locus", "--sym-irreducible")
    assert doc["verdict"] == "not fiberflat"


@pytest.mark.parametrize("argv", [
    ["builtin", "nosuch", "group"],
    ["builtin", "cyclicone", "--k", "3", "group"],
    ["builtin", "sym3", "fiber", "--point", "1,2,3"],
    ["builtin", "sym3", "hilbert-basis"],
    ["toric", "--factors", "2", "--xw", "1", "fiber", "--point", "1,2"],
    ["file", "does/not/exist.inv", "group"],
    ["toric", "--factors", "2,2", "--xw", "1", "group"],
    ["builtin", "sym3", "nosuchcommand"],
])
def test_validation_exit_code(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "toric", "--factors", "97", "--xw", "1", "--ww", "1", "hilbert-basis")
    assert code == 3
    assert "budget" in err


def test_determinism():
    argv = [sys.executable, "-m", "invar.cli", "builtin", "sym3", "--rho", "sign", "algebra", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_gallery_listing(capsys):
    code, out, _ = run(capsys, "gallery")
    assert code == 0
    assert len(out.strip().splitlines()) == len(GALLERY) >= 12
