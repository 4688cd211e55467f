import json
import os

import numpy as np
import pytest

from cubemedian import __version__
from cubemedian.builders.cayley import standard_ball
from cubemedian.builders.tilings import grid_window, tiling_window, dinf2_rotated
from cubemedian.cli import main
from cubemedian.errors import InputError
from cubemedian.serialization import (SCHEMA_VERSION, ball_from_json, ball_to_json, dumps,
                                      read_json, report, to_dot)

INPUTS = os.path.join("demos", "inputs")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- artifacts ---------------------------------------------------------------

@pytest.mark.parametrize("make", [lambda p: standard_ball(p, 2), lambda p: grid_window(2, 2),
                                  lambda p: tiling_window(dinf2_rotated(), 3)])
def test_ball_round_trip(pentagon, make):
    B = make(pentagon)
    doc = json.loads(dumps(ball_to_json(B)))
    assert doc["schema_version"] == SCHEMA_VERSION
    C = ball_from_json(doc)
    assert C.labels == B.labels
    assert (C.eu == B.eu).all() and (C.ev == B.ev).all()
    assert len(C.theta) == len(B.theta)
    for t in doc["theta"]:
        a, b = t["edge"]
        assert C.theta[t["id"]].plus[b] and not C.theta[t["id"]].plus[a]
        assert (C.theta[t["id"]].plus == B.theta[t["id"]].plus).all()
    if "action" in B.meta:
        for k, v in B.meta["action"].items():
            assert np.array_equal(C.meta["action"][k], v)


def test_bad_schema_version():
    doc = ball_to_json(grid_window(1, 1))
    doc["schema_version"] = 99
    with pytest.raises(InputError):
        ball_from_json(doc)


def test_read_json_errors(tmp_path):
    with pytest.raises(InputError):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(InputError):
        read_json(bad)


def test_report_shape():
    doc = report("build", {"seed": 3}, {"exact": True}, {"x": np.int64(4)})
    assert doc["tool_version"] == __version__
    assert json.loads(dumps(doc))["result"] == {"x": 4}
    assert "timing" not in doc


def test_dot_marks_members_and_walls():
    G = grid_window(2, 1)
    text = to_dot(G, [0], [(0, 1)])
    assert text.startswith('graph "ball"')
    assert "fillcolor" in text and "penwidth=3" in text
    assert text.count(" -- ") == G.m


# -- build ---------------------------------------------------------------------

def test_build_pentagon(capsys, repo_root):
    code, out, _ = run(capsys, "build", "--racg", os.path.join(INPUTS, "pentagon.json"), "--radius", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["summary"]["vertices"] == 21
    assert doc["config"]["seed"] == 0


def test_build_333_tiling(capsys, repo_root, tmp_path):
    code, out, _ = run(capsys, "build", "--tiling", os.path.join(INPUTS, "action333.json"),
                       "--halfwidth", "8", "--out", str(tmp_path), "--dot")
    assert code == 0
    doc = json.loads(out)
    assert doc["certification"]["relations_verified"]
    assert (tmp_path / "artifact.json").read_text(encoding="utf-8") == out
    assert (tmp_path / "artifact.dot").exists()


def test_build_hexagon(capsys):
    code, out, _ = run(capsys, "build", "--hexagon", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["summary"]["squares"] == 9
    assert doc["certification"] == {"npc": "pass", "tietze": "verified"}


def test_build_exit_codes(capsys, repo_root, tmp_path):
    assert run(capsys, "build", "--racg", str(tmp_path / "nope.json"), "--radius", "2")[0] == 1
    assert run(capsys, "build", "--racg", os.path.join(INPUTS, "pentagon.json"))[0] == 1
    assert run(capsys, "build")[0] == 1
    code, _, err = run(capsys, "build", "--racg", os.path.join(INPUTS, "pentagon.json"),
                       "--radius", "5", "--budget-states", "30")
    assert code == 2 and "budget" in err
    assert run(capsys, "build", "--grid", "2", "--halfwidth", "2", "--budget-states", "0")[0] == 1


def test_env_budget(capsys, repo_root, monkeypatch):
    monkeypatch.setenv("CUBEMEDIAN_BUDGET", "30")
    assert run(capsys, "build", "--racg", os.path.join(INPUTS, "pentagon.json"), "--radius", "5")[0] == 2


def test_build_niblo_reeves(capsys, repo_root):
    code, out, _ = run(capsys, "build", "--niblo-reeves", os.path.join(INPUTS, "triangle333.json"),
                       "--radius", "3")
    doc = json.loads(out)
    assert code == 0
    c = doc["certification"]
    assert c["stabilizers_agree"] == c["stabilizers"] > 0


# -- analyze -----------------------------------------------------------------

@pytest.fixture
def grid_artifact(capsys, tmp_path):
    assert run(capsys, "build", "--grid", "2", "--halfwidth", "6", "--out", str(tmp_path))[0] == 0
    return str(tmp_path / "artifact.json")


def test_analyze_axis_is_convex(capsys, grid_artifact):
    code, out, _ = run(capsys, "analyze", grid_artifact, "--orbit", "e1", "--names", "e1")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["verdict"] == "convex"
    assert doc["result"]["grid_witnesses"] == []


def test_analyze_staircase(capsys, grid_artifact):
    code, out, _ = run(capsys, "analyze", grid_artifact, "--orbit", "e1 e2", "--cyclic",
                       "--grids", "3", "--qc", "8")
    doc = json.loads(out)["result"]
    assert code == 0
    assert doc["verdict"] == "subalgebra_not_convex"
    assert [w["n"] for w in doc["grid_witnesses"]] == [0, 1, 2, 3]
    assert doc["escape"][8] >= 2
    assert doc["alpha"]["transverse_ok"] and doc["alpha"]["disjoint_ok"]


def test_analyze_not_a_subalgebra(capsys, grid_artifact):
    code, out, _ = run(capsys, "analyze", grid_artifact, "--members", "(0,0);(1,1);(2,0)")
    assert code == 1
    res = json.loads(out)["result"]
    assert res["witness_triple"] == ["(0,0)", "(1,1)", "(2,0)"]
    assert res["missing_median"] == "(1,0)"


def test_analyze_needs_members(capsys, grid_artifact):
    assert run(capsys, "analyze", grid_artifact)[0] == 1


# -- classify ----------------------------------------------------------------

def test_classify_vb(capsys):
    code, out, _ = run(capsys, "classify", "vb", "--matrix", "[[1,1],[1,-1]]")
    assert code == 0
    assert json.loads(out)["result"]["vectors"] == [[1, -1], [1, 1]]
    assert run(capsys, "classify", "vb", "--matrix", "[[1,1],[1,1]]")[0] == 1
    assert run(capsys, "classify", "vb", "--matrix", "[[1,")[0] == 1


def test_classify_dinf(capsys):
    code, out, _ = run(capsys, "classify", "dinf", "--images", "[[[0,-1],[-1,0]],[[0,1],[1,0]]]")
    assert code == 0 and json.loads(out)["result"]["k"] == 1
    assert run(capsys, "classify", "dinf", "--images", "[[[0,1],[1,0]],[[-1,0],[0,1]]]")[0] == 1


def test_classify_squares_and_twists(capsys):
    code, out, _ = run(capsys, "classify", "squares", "--all-graphs", "4")
    assert code == 0 and json.loads(out)["result"]["disagreements"] == 0
    code, out, _ = run(capsys, "classify", "twists", "--graph6", "Bw")
    assert code == 0
    assert json.loads(out)["result"]["twistless"] is False


def test_classify_richardson(capsys):
    code, out, _ = run(capsys, "classify", "richardson", "--type", "B3")
    doc = json.loads(out)
    assert code == 0 and doc["certification"]["all_verified"]
    assert doc["result"]["order"] == 48


def test_richardson_infinite_exits_2(capsys, repo_root):
    code, _, _ = run(capsys, "classify", "richardson", "--coxeter",
                     os.path.join(INPUTS, "triangle333.json"), "--budget-states", "500")
    assert code == 2


# -- reproducibility -----------------------------------------------------------

GOLDEN_RUNS = {
    "build_pentagon.json": ["build", "--racg", os.path.join(INPUTS, "pentagon.json"), "--radius", "2"],
    "build_hexagon3.json": ["build", "--hexagon", "3"],
    "classify_vb.json": ["classify", "vb", "--matrix", "[[1,1],[1,-1]]"],
    "classify_richardson_A3.json": ["classify", "richardson", "--type", "A3"],
    "classify_squares_random.json": ["classify", "squares", "--random-graphs", "20",
                                     "--vertices", "7", "--seed", "11"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_reports_are_byte_stable(capsys, repo_root, golden, name):
    _, first, _ = run(capsys, *GOLDEN_RUNS[name])
    _, second, _ = run(capsys, *GOLDEN_RUNS[name])
    assert first == second
    assert golden(os.path.join("cli", name), first)


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "build", "--hexagon", "1", "--timing")
    doc = json.loads(out)
    assert "timing" in doc and "timing" not in doc["config"]
