import io
import json
import subprocess
import sys

import pytest
from conftest import two_vertex

from genuszero.cli import main
from genuszero.mgt import closure
from genuszero.strata import build_poset, export_json


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_strata_profile():
    assert run("strata", "4") == (0, "codim: [1, 3] total: 4\n")
    assert run("strata", "5", "--profile") == (0, "codim: [1, 10, 15] total: 26\n")
    assert run("strata", "3") == (0, "codim: [1] total: 1\n")


def test_strata_dot_and_json():
    code, dot = run("strata", "4", "--dot")
    assert code == 0 and dot.count("->") == 3
    code, text = run("strata", "5", "--json")
    assert code == 0
    assert text.strip() == export_json(build_poset(5))
    assert run("strata", "5", "--json") == (0, text)


def test_strata_out_of_range(capsys):
    assert run("strata", "2")[0] == 1
    assert run("strata", "9", "--max-n", "8")[0] == 1
    assert "error:" in capsys.readouterr().err


def test_mgt_order_and_elements():
    assert run("mgt", "5") == (0, "20\n")
    assert run("mgt", "12", "--order") == (0, "48\n")
    code, text = run("mgt", "3", "--elements")
    lines = text.splitlines()
    assert code == 0 and len(lines) == 6
    assert lines == sorted(lines, key=json.loads)
    assert {tuple(json.loads(l)) for l in lines} == {e.table for e in closure(3)}


def test_mgt_project():
    code, text = run("mgt", "6", "--project", "3")
    assert code == 0
    assert "[0,5,4,3,2,1] -> [0,2,1]" in text.splitlines()
    assert len(text.splitlines()) == 12
    assert run("mgt", "6", "--project", "4")[0] == 1


def test_mgt_check_relations():
    assert run("mgt", "4", "--check-relations", "24") == (0, "OK (all chains)\n")
    assert run("mgt", "1")[0] == 1


def test_verify_single_suite():
    code, text = run("verify", "--suite", "symmetric", "--seed", "3")
    lines = text.splitlines()
    assert code == 0
    assert all(l.startswith("PASS ") for l in lines[:-1])
    assert lines[-1].endswith("properties hold")
    assert run("verify", "--suite", "symmetric", "--seed", "3") == (code, text)


def test_act():
    tree = json.dumps(two_vertex([1, 2], [3, 4]).to_dict())
    code, text = run("act", "(2 3)", tree)
    assert code == 0
    assert json.loads(text)["tails"] == {"1": 0, "2": 1, "3": 0, "4": 1}


def test_act_malformed_json_names_field(capsys):
    code, _ = run("act", "(1 2)", '{"vertices": [0], "edges": []}')
    assert code == 1
    assert "tails" in capsys.readouterr().err


def test_act_bad_permutation(capsys):
    tree = json.dumps(two_vertex([1, 2], [3, 4]).to_dict())
    assert run("act", "(1 x)", tree)[0] == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["strata", "4", "--dot", "--json"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "genuszero", "strata", "4"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "codim: [1, 3] total: 4\n"


def test_act_reads_stdin():
    tree = json.dumps(two_vertex([1, 2], [3, 4]).to_dict())
    proc = subprocess.run(
        [sys.executable, "-m", "genuszero", "act", "()", "-"],
        input=tree,
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["tails"] == {"1": 0, "2": 0, "3": 1, "4": 1}
