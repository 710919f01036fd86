import json
import subprocess
import sys

import pytest

from fourpoint import space as sp
from fourpoint.cli import run


@pytest.fixture
def files(tmp_path, c4, star):
    c4p = tmp_path / "c4.json"
    treep = tmp_path / "tree.json"
    sp.save_space(c4, c4p)
    sp.save_space(star, treep)
    return {"c4": str(c4p), "tree": str(treep), "dir": tmp_path}


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_c4_ptolemaic(capsys, files):
    code, out, _ = call(capsys, "check", "--space", files["c4"], "--property", "ptolemaic")
    assert code == 1
    rep = json.loads(out)
    assert rep["pass"] is False
    assert rep["defect"] == pytest.approx(2.0, abs=1e-9)
    assert rep["property"] == "ptolemaic"


def test_analyze_tree(capsys, files):
    code, out, _ = call(capsys, "analyze", "--space", files["tree"])
    assert code == 0
    c = json.loads(out)["classification"]
    assert c["is_metric"] and c["is_additive"]
    assert c["delta_star"] == 0.0
    assert "is_ptolemaic" in c and "roundness" in c


def test_theorem_qm(capsys):
    code, out, _ = call(capsys, "theorem", "--hyp", "qm", "--phi", "u+v", "--eta", "t^0.5")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] is True and rep["summary"].startswith("no violation found on grid")


def test_theorem_qm_square_fails(capsys):
    code, out, _ = call(capsys, "theorem", "--hyp", "qm", "--phi", "u+v", "--eta", "t^2")
    assert code == 1 and json.loads(out)["n_violations"] > 0


@pytest.mark.parametrize(
    "prop, extra, expect",
    [
        ("additive", [], 1),
        ("hyperbolic", ["--delta", "1"], 0),
        ("hyperbolic", ["--delta", "0.9"], 1),
        ("roundness", ["--q", "1"], 0),
        ("cat0", [], 1),
        ("reshetnyak", [], 1),
        ("custom", ["--phi", "2*1+max(u,v)", "--psi", "u+v"], 0),
    ],
)
def test_check_properties(capsys, files, prop, extra, expect):
    code, out, _ = call(capsys, "check", "--space", files["c4"], "--property", prop, *extra)
    assert code == expect
    assert json.loads(out)["pass"] is (expect == 0)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["check", "--space", "x.json"],
        ["check", "--space", "missing.json", "--property", "ptolemaic"],
        ["check", "--property", "hyperbolic", "--space", "{c4}"],
        ["check", "--property", "custom", "--space", "{c4}", "--phi", "u+"],
        ["check", "--property", "ptolemaic", "--space", "{c4}", "--bogus"],
        ["theorem", "--hyp", "qm", "--phi", "u+w"],
        ["theorem", "--hyp", "qm", "--eta", "1/(1+t)"],
        ["transform", "--space", "{c4}", "--alpha", "2"],
        ["transform", "--space", "{c4}", "--alpha", "0.5", "--lambda", "2"],
        ["gen", "random", "--n", "1"],
    ],
)
def test_usage_errors_exit_two(capsys, files, argv):
    argv = [a.format(c4=files["c4"]) for a in argv]
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.count("\n") == 1 and err.startswith("fourpoint: error:")


def test_bad_space_file(capsys, files):
    p = files["dir"] / "bad.json"
    p.write_text('{"labels": ["a", "b"], "matrix": [[0, 1], [2, 0]]}')
    code, _, err = call(capsys, "analyze", "--space", str(p))
    assert code == 2 and "NonSymmetric" in err


def test_gen_is_deterministic(capsys):
    outs = [call(capsys, "gen", "random", "--n", "5", "--seed", "3")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    s = sp.space_from_dict(json.loads(outs[0]))
    assert s.n == 5 and sp.is_metric(s)
    for kind in ("tree", "ultrametric", "semimetric", "lp-points"):
        code, out, _ = call(capsys, "gen", kind, "--n", "4")
        assert code == 0 and sp.space_from_dict(json.loads(out))


def test_transform_and_map_verify(capsys, files):
    mapfile = files["dir"] / "m.json"
    # C4 has cross-ratios other than 1, so the snowflake is not a mobius map
    code, _, _ = call(capsys, "transform", "--space", files["c4"], "--alpha", "0.5", "--map", "--out", str(mapfile))
    assert code == 0
    code, out, _ = call(capsys, "map-verify", "--map", str(mapfile), "--kind", "qs", "--eta", "t^0.5")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = call(capsys, "map-verify", "--map", str(mapfile), "--kind", "qm", "--eta", "t^0.5")
    assert code == 0
    code, out, _ = call(capsys, "map-verify", "--map", str(mapfile), "--kind", "mobius")
    assert code == 1 and json.loads(out)["pass"] is False
    code, out, _ = call(capsys, "envelope", "--map", str(mapfile))
    assert code == 0 and out.startswith("t,r,x,a,b\n")
    code, out, _ = call(capsys, "transform", "--space", files["tree"], "--lambda", "2")
    assert code == 0 and json.loads(out)["matrix"][0][1] == 2 * sp.load_space(files["tree"]).dist[0, 1]


def test_experiment(capsys, files):
    cfg = files["dir"] / "b.json"
    cfg.write_text(json.dumps({
        "spaces": {"kind": "lp-points", "count": 4, "n": 5},
        "map": {"kind": "snowflake", "param": 0.5},
        "functions": {"phi": "u+v", "psi": "u*v", "eta": "t^0.5"},
    }))
    code, out, _ = call(capsys, "experiment", "--config", str(cfg))
    assert code == 0 and json.loads(out)["theorem_violations"] == 0
    cfg.write_text("{nope")
    code, _, err = call(capsys, "experiment", "--config", str(cfg))
    assert code == 2 and err.count("\n") == 1


def test_reports_are_byte_stable(capsys, files):
    argv = ["analyze", "--space", files["c4"], "--seed", "4"]
    a = call(capsys, *argv)[1]
    b = call(capsys, *argv)[1]
    assert a == b
    assert a == json.dumps(json.loads(a), sort_keys=True, indent=2) + "\n"


def test_exit_code_matches_pass_field(capsys, files):
    for prop in ("ptolemaic", "additive", "cat0"):
        for space in (files["c4"], files["tree"]):
            code, out, _ = call(capsys, "check", "--space", space, "--property", prop)
            assert code == (0 if json.loads(out)["pass"] else 1)


def test_out_file(capsys, files):
    target = files["dir"] / "r.json"
    code, out, _ = call(capsys, "check", "--space", files["tree"], "--property", "additive", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["pass"] is True


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "fourpoint", "check", "--space", files["c4"], "--property", "ptolemaic"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["defect"] == pytest.approx(2.0)
