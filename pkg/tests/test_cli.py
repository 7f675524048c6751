import json
import subprocess
import sys
from pathlib import Path

import pytest

from towerlab.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "towerlab.cli", *args], capture_output=True)
    return proc.returncode, proc.stdout.decode("utf-8"), proc.stderr.decode("utf-8")


def test_tower_d8_json():
    code, out, _ = run_cli("tower", "D8", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["termination"] == {"limit_part": 1, "finite_part": 1}


def test_group_trivial(capsys):
    assert main(["group", "T", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["order"] == 1 and data["complete"] is True


def test_boxed_height(capsys):
    assert main(["boxed-height", "--depth", "3", "--classes", "all-one", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["height"] == 3


def test_exit_codes():
    code, _, err = run_cli("tower", "Z9")
    assert code == 1 and err.count("\n") == 1 and "error" in err
    code, _, _ = run_cli("tower", "D8", "--bogus")
    assert code == 2
    code, _, _ = run_cli("frobnicate")
    assert code == 2
    code, _, err = run_cli("fact-check", "D8")
    assert code == 1 and "centerless" in err


def test_out_flag(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run_cli("group", "S3", "--json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["order"] == 6


@pytest.mark.parametrize("args", [
    ["group", "D8"], ["aut", "S3"], ["tower", "C3xC3"], ["normtower", "--ambient", "S4", "--sub", "1"],
    ["fact-check", "A4"], ["boxed", "--depth", "2"], ["wall", "--depth", "2", "--wall", "distinct"],
])
def test_human_and_json_agree(capsys, args):
    assert main(args) == 0
    human = capsys.readouterr().out
    assert main(args + ["--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    for key, val in data.items():
        if isinstance(val, (int, bool)) and not isinstance(val, bool):
            assert f"{key}: {val}" in human


def test_graph_aut(tmp_path):
    path = Path(__file__).parent / "data" / "graphs" / "hexagon.json"
    code, out, _ = run_cli("graph-aut", str(path), "--json")
    assert code == 0 and json.loads(out)["order"] == 12


def test_file_spec(tmp_path):
    from towerlab.groups import group_to_json
    from towerlab.named import construct_named
    p = tmp_path / "d8.json"
    p.write_text(json.dumps(group_to_json(construct_named("D8"))))
    code, out, _ = run_cli("tower", f"file:{p}", "--json")
    assert code == 0 and json.loads(out)["termination_label"] == "ω+1"


@pytest.mark.parametrize("name,args", [
    ("tower_D8", ["tower", "D8", "--json"]),
    ("group_S3", ["group", "S3", "--json"]),
    ("survey_8", ["survey", "--max-order", "8", "--json"]),
    ("boxed_height_2", ["boxed-height", "--depth", "2", "--json"]),
])
def test_golden(name, args):
    code, out, _ = run_cli(*args)
    assert code == 0
    assert out == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


def test_env_cap():
    import os
    env = dict(os.environ, TOWERLAB_MAX_ORDER="4")
    proc = subprocess.run([sys.executable, "-m", "towerlab.cli", "aut", "S3"], capture_output=True, env=env)
    assert proc.returncode == 1
