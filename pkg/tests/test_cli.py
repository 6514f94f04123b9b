import json
import subprocess
import sys

import pytest

from semicalc.cli import main
from semicalc.elements import element_from_json, ge_compose
from semicalc.trees import parse_tree

X0 = json.dumps({"domain_tree": "(0 (0 . .) .)", "range_tree": "(0 . (0 . .))",
                 "perm": [0, 1, 2], "twists": [0, 0, 0]})


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


def test_reduce(capsys):
    assert run(capsys, "reduce", "--system", "r2", "CAB") == (0, "BAc")
    assert run(capsys, "reduce", "--system", "r2hat", "aA") == (0, "1")
    assert run(capsys, "reduce", "--n", "3", "CB") == (0, "BBBC")


def test_parse_errors_exit_two(capsys):
    assert run(capsys, "reduce", "--system", "r2", "CxB")[0] == 2
    assert run(capsys, "tree", "range", "(0 .)")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_tree_verbs(capsys):
    assert run(capsys, "tree", "range", "--n", "2", "(0 (0 . .) .)") == (0, "-1 0")
    assert run(capsys, "tree", "leaves", "(0 (1 (-1 . .) .) .)") == (0, "ACAcA ACAcB ACB B")
    assert run(capsys, "tree", "partition", "(0 . .)") == (0, "[0,1/2) [1/2,1)")
    assert run(capsys, "tree", "equiv", "(0 . .)", "(1 . .)") == (1, "false")
    code, out = run(capsys, "tree", "moves", "(2 (4 (0 (-1 . .) (3 . .)) .) .)")
    assert code == 0 and "L down (2 (3 (0 . .) (0 (2 . .) .)) .)" in out.splitlines()


def test_cutset(capsys):
    code, out = run(capsys, "cutset", "--n", "2")
    assert code == 0
    assert set(out.splitlines()) == {"C * AA = A * C^1", "C * AB = BA * C^-1",
                                     "C * B = BB * C^1"}
    assert run(capsys, "cutset", "--n", "4", "--max-steps", "100000") == (1, "STEP_LIMIT")


def test_rewriting_reports(capsys):
    code, out = run(capsys, "soundness", "--system", "r3hat")
    assert code == 0 and out.endswith("0 unsound")
    assert run(capsys, "confluence", "--system", "r2")[0] == 0
    code, out = run(capsys, "confluence", "--system", "r2hat")
    assert code == 1 and out.splitlines()[0] == "112 critical pairs, 6 not joinable"
    assert run(capsys, "npc", "CAAc") == (1, "false")
    assert run(capsys, "complete", "c") == (0, "BA AB 1")


def test_expansion_verbs(capsys):
    assert run(capsys, "push", "--n", "2", "C", "A") == (0, "AA -> A\nAB -> BA")
    assert run(capsys, "asclink", "(1 (0 . .) .)") == (0, "0 1/2 1")
    assert run(capsys, "vleq", "(0 . .)", "(1 (0 . .) .)") == (0, "true")
    assert run(capsys, "vleq", "(0 . .)", "(1 . .)") == (1, "false")
    code, out = run(capsys, "upper", "--n", "3", "(0 . .)", "(1 . .)")
    tree = parse_tree(out.splitlines()[0])
    assert code == 0 and str(tree) == out.splitlines()[0]


def test_element_verbs(capsys):
    assert run(capsys, "elt", "eval", "--n", "2", X0, "1/4") == (0, "1/3")
    assert run(capsys, "elt", "flavor", X0) == (0, "F")
    assert run(capsys, "elt", "equal", X0, X0) == (0, "true")
    code, out = run(capsys, "elt", "compose", X0, X0)
    g = element_from_json(X0, 2)
    assert code == 0 and element_from_json(out, 2) == ge_compose(g, g)
    code, out = run(capsys, "elt", "invert", X0)
    assert json.loads(out)["domain_tree"] == "(0 . (0 . .))"
    assert run(capsys, "elt", "eval", X0)[0] == 2


def test_sample_is_reproducible(capsys):
    first = run(capsys, "sample", "--seed", "7", "--n", "3")
    assert first == run(capsys, "sample", "--seed", "7", "--n", "3")
    element_from_json(first[1], 3)


def test_json_mode(capsys):
    code, out = run(capsys, "reduce", "--json", "--system", "r2", "CAB")
    assert code == 0 and json.loads(out) == {"command": "reduce", "result": "BAc"}
    code, out = run(capsys, "tree", "range", "--json", "(0 (0 . .) .)")
    assert json.loads(out) == {"command": "tree range", "result": [-1, 0]}
    code, out = run(capsys, "cutset", "--json", "--n", "5")
    assert code == 1 and json.loads(out)["result"]["status"] == "STEP_LIMIT"
    code, out = run(capsys, "reduce", "--json", "CxB")
    assert code == 2 and "error" in json.loads(out)


@pytest.mark.parametrize("variant", ["2", "3"])
def test_module_entry_point(variant):
    proc = subprocess.run([sys.executable, "-m", "semicalc", "tree", "range", "--n", variant,
                           "(0 . .)"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "0 0"
