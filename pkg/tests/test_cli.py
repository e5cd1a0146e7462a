import json
import subprocess
import sys

import pytest

from hardunknots.cli import EXIT_LIMIT, EXIT_NO, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.mark.parametrize("argv, text", [
    (["cf", "eval", "[2,-2,3]"], "7/5"),
    (["cf", "canon", "[2,-2]"], "[1,1,1]"),
    (["cf", "matrix", "[1,2,3]"], "[[10,3],[7,2]]"),
    (["cf", "convergent", "[1,2,3]"], "[1,2] = 3/2"),
    (["tangle", "frac", "([3]*(1/[-2]))+[2]"], "7/5"),
    (["tangle", "frac", "1/([-1]+1/[-3])"], "-3/4"),
    (["sum", "sharp", "--a", "[1,2]", "--b", "[1,2,3]"], "[2,2,2,3] = 41/17"),
    (["farey", "series", "6"], "1/5 1/4 1/3 2/5 1/2 3/5 2/3 3/4 4/5 1/1"),
    (["farey", "path", "7/5"], "RLLR"),
    (["farey", "path", "RRLL"], "7/3"),
    (["farey", "franel", "6"], "11/30"),
])
def test_text_outputs(capsys, argv, text):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK and out.strip() == text


def test_classify(capsys):
    code, out, _ = run(capsys, "sum", "classify", "--a", "[1,4]", "--b", "-[1,3]")
    assert code == EXIT_OK and "unknot=true" in out
    code, data = js(capsys, "sum", "classify", "--a", "-3/4", "--b", "2/3", "--expect-unknot")
    assert code == EXIT_OK and data["is_unknot"] and data["closure_fraction"] == "-1/1"
    code, _, _ = run(capsys, "sum", "classify", "--a", "[3]", "--b", "[0]", "--expect-unknot")
    assert code == EXIT_NO


def test_json_everywhere(capsys):
    for argv in (["cf", "eval", "[1,2]"], ["tangle", "parse", "[1,2]"], ["farey", "ford", "1/2"],
                 ["hard", "check", "--fixture", "H"], ["diagram", "moves", "--fixture", "decoy"],
                 ["recomb", "run", "--O", "[0,-3]", "--I", "[0]", "--n", "3"],
                 ["hard", "enumerate", "--max", "8"]):
        code, data = js(capsys, *argv)
        assert code == EXIT_OK and isinstance(data, dict)


def test_tangle_non_rational(capsys):
    code, data = js(capsys, "tangle", "parse", "[1/2]+[1/3]")
    assert code == EXIT_OK and data["rational"] is False
    # without --strict the formal sum of fractions is reported
    assert run(capsys, "tangle", "frac", "[1/2]+[1/3]")[1].strip() == "5/6"
    code, _, _ = run(capsys, "tangle", "frac", "[1/2]+[1/3]", "--strict")
    assert code == EXIT_NO


def test_hard_commands(capsys):
    code, data = js(capsys, "hard", "tuck", "--a", "[1,3]", "--b", "-[1,2]", "--flip-b")
    assert code == EXIT_OK and data["crossings"] == 10 and data["hard"] and data["moves"] == []
    assert run(capsys, "hard", "check", "--fixture", "culprit")[0] == EXIT_OK
    assert run(capsys, "hard", "check", "--fixture", "decoy")[0] == EXIT_NO
    code, data = js(capsys, "hard", "enumerate", "--max", "9", "--mirrors")
    assert data["count"] == 8


def test_pd_input(capsys, tmp_path):
    code, data = js(capsys, "diagram", "build", "--tangle", "[3]")
    path = tmp_path / "trefoil.json"
    assert data["format"] == "hardunknots-pd"
    path.write_text(json.dumps(data))
    code, data = js(capsys, "diagram", "moves", "--pd", str(path))
    assert code == EXIT_OK and data["crossings"] == 3
    path.write_text("{not json")
    assert run(capsys, "diagram", "moves", "--pd", str(path))[0] == EXIT_USAGE


def test_render(capsys):
    code, out, _ = run(capsys, "diagram", "render", "--tangle", "[3]", "--format", "svg")
    assert code == EXIT_OK and out.count('class="crossing"') == 3
    again = run(capsys, "diagram", "render", "--tangle", "[3]", "--format", "svg")[1]
    assert again == out


def test_search(capsys):
    code, data = js(capsys, "search", "recalcitrance", "--fixture", "H", "--cap", "11")
    assert code == EXIT_OK and data["top"] == 10 and data["recalcitrance"] == "10/9"
    code, data = js(capsys, "search", "unknot", "--fixture", "goeritz", "--budget", "100")
    assert code == EXIT_LIMIT and data["status"] == "cap_hit"
    code, data = js(capsys, "search", "unknot", "--fixture", "H", "--cap", "9")
    assert code == EXIT_NO and data["status"] == "exhausted"
    code, out, err = run(capsys, "search", "unknot", "--fixture", "H", "--progress")
    assert code == EXIT_OK and all(json.loads(line) for line in err.splitlines())


def test_recomb_tsv(capsys):
    code, out, _ = run(capsys, "recomb", "run", "--O", "[1,1,1,1]", "--I", "[-1,-1,-1]", "--n", "2..4")
    rows = [line.split("\t") for line in out.splitlines() if not line.startswith("#")]
    assert rows[0][0] == "n" and [r[2] for r in rows[1:]] == ["[1,1,1,1,2]", "[1,1,1,2,2]", "[1,1,1,3,2]"]


def test_pick_file(capsys, tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("0 0\n1 0\n0 1\n")
    code, data = js(capsys, "farey", "pick", str(p))
    assert code == EXIT_OK and (data["area"], data["interior"], data["boundary"]) == ("1/2", 0, 3)


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["cf", "eval", "[1,,2]"], ["cf", "convergent", "[3]"],
    ["farey", "series", "1"], ["hard", "check"], ["hard", "check", "--fixture", "nope"],
    ["search", "unknot", "--fixture", "H", "--cap", "3"], ["farey", "path", "0/1"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_seed_ignored_and_deterministic(capsys):
    a = run(capsys, "--seed", "1", "hard", "enumerate", "--max", "9")[1]
    b = run(capsys, "hard", "enumerate", "--max", "9", "--seed", "99")[1]
    assert a == b


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "hardunknots", "cf", "eval", "[1,2,4]"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "13/9"
