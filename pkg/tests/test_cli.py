import json
import subprocess
import sys

import pytest

from skeintl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


@pytest.fixture
def form_file(tmp_path):
    def write(data, name="form.json"):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(p)
    return write


def test_bracket_unknot(capsys):
    assert run_json(capsys, "bracket", "-e", "@unknot") == {"bracket": {"2": -1, "-2": -1}}


def test_bracket_with_oracle_and_framing(capsys):
    out = run_json(capsys, "bracket", "-e", "@trefoil", "--oracle", "--normalize-framing")
    assert out["agree"] is True
    assert out["writhe"] == 3
    assert out["kink_unit"] == {"3": -1}


def test_bracket_at_point(capsys):
    out = run_json(capsys, "bracket", "-e", "@hopf", "--at", "1")
    assert out["bracket"] == "4"


def test_bracket_pretty(capsys):
    code, out, _ = run(capsys, "bracket", "-e", "@unknot", "--pretty")
    assert code == 0 and "A" in out


def test_normalize(capsys):
    out = run_json(capsys, "normalize", "-e", "x+")
    assert out["source"] == 2 and out["target"] == 2
    assert len(out["terms"]) == 2


def test_eval_with_generated_form(capsys, form_file):
    form = run_json(capsys, "repgen", "--rank", "3")
    assert len(form["matrix"]) == 3
    path = form_file(form)
    out = run_json(capsys, "eval", "-e", "@unknot", "--form", path)
    assert out["rank"] == 3 and out["shape"] == [1, 1]


def test_forms_solve(capsys):
    out = run_json(capsys, "forms", "solve", "--rank", "3", "--delta", "7")
    (sol,) = out["solutions"]
    assert [b["variant"] for b in sol] == ["Gamma", "H"]


def test_forms_equiv(capsys, form_file):
    a = form_file({"ring": "rational", "matrix": [[0, 1], [2, 0]]}, "a.json")
    b = form_file({"ring": "rational", "matrix": [["0", "1"], ["1/2", "0"]]}, "b.json")
    c = form_file({"ring": "rational", "matrix": [[0, 1], [3, 0]]}, "c.json")
    assert run_json(capsys, "forms", "equiv", "--left", a, "--right", b) == {"equivalent": True}
    assert run_json(capsys, "forms", "equiv", "--left", a, "--right", c) == {"equivalent": False}


def test_unitary_check(capsys, form_file):
    path = form_file({"ring": "rational", "matrix": [[1, 0], [0, 1]]})
    out = run_json(capsys, "unitary", "check", "--form", path, "--at", "i")
    assert out["unitary"] is True
    assert out["bound"] == {"lhs": 4.0, "rhs": 4}


@pytest.mark.parametrize("theta,feasible", [("pi/2", True), ("0.25pi", False), ("0", True)])
def test_unitary_bound(capsys, theta, feasible):
    assert run_json(capsys, "unitary", "bound", "--n", "2", "--theta", theta)["feasible"] is feasible


def test_selftest(capsys):
    out = run_json(capsys, "selftest", "--corpus", "20")
    assert out["failed"] == 0


@pytest.mark.parametrize("argv,code", [
    (["bracket"], 1),
    (["unitary", "bound", "--n", "1", "--theta", "0"], 1),
    (["unitary", "bound", "--n", "2", "--theta", "abc"], 1),
    (["forms", "solve", "--rank", "2", "--delta", "x"], 1),
    (["bracket", "-e", "cup ; ; cap"], 2),
    (["bracket", "-e", "cap ; cap"], 2),
    (["bracket", "-e", "x+"], 2),
    (["bracket", "-e", "@unknot", "--at", "zz"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_bad_form_files(capsys, form_file, tmp_path):
    missing = str(tmp_path / "missing.json")
    assert run(capsys, "eval", "-e", "@unknot", "--form", missing)[0] == 3
    assert run(capsys, "eval", "-e", "@unknot", "--form", form_file("{not json"))[0] == 3
    ragged = form_file({"ring": "rational", "matrix": [[1, 0]]})
    assert run(capsys, "eval", "-e", "@unknot", "--form", ragged)[0] == 3
    wrong_delta = form_file({"ring": "laurent", "matrix": [[1, 0], [0, 1]]})
    code, _, err = run(capsys, "eval", "-e", "@unknot", "--form", wrong_delta)
    assert code == 3 and "error:" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skeintl", "bracket", "-e", "@unknot"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"bracket": {"2": -1, "-2": -1}}
