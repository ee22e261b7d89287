import json
import subprocess
import sys

import pytest

from artifact.cli import main

C3 = '{"op": "cayley", "n": 3}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_reports_rank(capsys):
    code, out, _ = run(capsys, "build", C3)
    assert code == 0 and json.loads(out)["rank"] == 3


def test_table_has_expected_size(capsys):
    code, out, _ = run(capsys, "table", '{"op": "laurent", "r": 1}')
    data = json.loads(out)
    assert code == 0 and len(data["entries"]) == 9
    assert all(e["coeff"]["re"] == "1" for e in data["entries"])


def test_verify_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify", C3, "--identity", "alternative", "--box", "1", "--samples", "0")
    assert code == 0 and json.loads(out)["passed"]
    bad = '{"op": "mutate", "A": %s, "l": [1, 0, 0], "m": [0, 1, 0]}' % C3
    code, out, _ = run(capsys, "verify", bad, "--identity", "alternative", "--box", "1", "--samples", "0")
    assert code == 1 and json.loads(out)["violations"]


def test_verify_is_deterministic(capsys):
    args = ("verify", C3, "--identity", "structurable", "--samples", "30", "--seed", "5")
    first = run(capsys, *args)
    assert first == run(capsys, *args)
    assert json.loads(first[1])["seed"] == 5


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", '{"op": "a_herm", "variant": "quaternion"}', "--format", "text")
    assert code == 0
    assert out.strip() == "class III; subclass IIIc; model quaternion_model; 15 points (3 of order 2), 29 lines"


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", C3)
    data = json.loads(out)
    assert code == 0
    alpha = {tuple(map(tuple, k)): v for k, v in data["alpha"]}
    assert alpha[((1, 0, 0), (0, 1, 0), (0, 0, 1))] == -1
    assert alpha[((0, 0, 0), (0, 1, 0), (0, 0, 1))] == 1


@pytest.mark.parametrize("argv,expected", [
    (("build", "{not json"), 2),
    (("build", '{"op": "nope"}'), 2),
    (("verify", C3, "--identity", "bogus"), 2),
    (("verify", C3), 2),
    (("build", '{"op": "cayley", "n": 7}'), 3),
    (("invariants", '{"op": "a_herm", "variant": "quaternion"}'), 3),
])
def test_exit_codes(capsys, argv, expected):
    code, _, err = run(capsys, *argv)
    assert code == expected
    assert err


def test_recipe_from_file_and_stdin(tmp_path, capsys):
    p = tmp_path / "r.json"
    p.write_text(C3)
    assert run(capsys, "build", str(p))[0] == 0
    r = subprocess.run([sys.executable, "-m", "artifact", "build", "-"], input=C3,
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["rank"] == 3
