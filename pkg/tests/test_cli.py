import json

import pytest

from jumpconvex import formats
from jumpconvex.cli import main
from jumpconvex.functions import DiscreteFunction
from jumpconvex.generators import FIXTURE_SETS, unit_square_fn
from jumpconvex.systems import PointSet


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, S in FIXTURE_SETS.items():
        paths[name] = tmp_path / f"{name}.jset"
        formats.dump(S, paths[name])
    for a, b in ((1, 0), (0, 1)):
        p = tmp_path / f"f{a}{b}.jfn"
        formats.dump(unit_square_fn(a, b), p)
        paths[f"f{a}{b}"] = p
    ind = DiscreteFunction.indicator(PointSet([(0,), (2,)]))
    paths["ind02"] = tmp_path / "ind02.jfn"
    formats.dump(ind, paths["ind02"])
    paths["net"] = tmp_path / "net.jnet"
    paths["net"].write_text("jnet\nvertex s entrance\nvertex t exit\narc a s t lo=0 hi=3 cost=0 1 4 9\n")
    paths["badlift"] = tmp_path / "bad.jset"
    paths["badlift"].write_text("jset dim=2\n1 0\n")
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check(files, capsys):
    code, out, _ = run(capsys, "check", files["gap"], "jnat-exc")
    assert code == 2
    assert "(J♮-EXC) fails: x=0 y=3 s=+e1" in out
    code, out, _ = run(capsys, "check", files["even-pair"], "j-exc")
    assert code == 0 and "(J-EXC) holds" in out
    code, _, err = run(capsys, "check", files["dir"] / "missing.jset", "j-exc")
    assert code == 1 and "error" in err


def test_check_json(files, capsys):
    code, out, _ = run(capsys, "check", files["triangle"], "jnat-exc", "--json")
    rec = json.loads(out)
    assert code == 2 and rec["holds"] is False and rec["axiom"] == "jnat-exc"
    assert rec["witness"]["x"] == [0, 0, 0] and rec["witness"]["s"] == [1, 0, 0]


def test_check_unknown_axiom(files, capsys):
    code, _, err = run(capsys, "check", files["even-pair"], "nope")
    assert code == 1 and "unknown axiom" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check"])
    assert exc.value.code == 1


def test_classify(files, capsys):
    code, out, _ = run(capsys, "classify", files["even-pair"])
    assert code == 0
    assert out.splitlines()[0] == "constant-parity jump system; not M♮-convex set"
    _, out, _ = run(capsys, "classify", files["triangle"])
    assert out.splitlines()[0] == "jump system; delta-matroid; not simultaneous-exchange"
    _, out, _ = run(capsys, "classify", files["f01"])
    assert out.startswith("jump M♮-convex; not jump M-convex")
    _, out, _ = run(capsys, "classify", files["f10"], "--json")
    rec = json.loads(out)
    assert rec["classes"]["mnat_convex"] is True and rec["classes"]["jump_m_convex"] is False


def test_embed(files, capsys, tmp_path):
    lifted = tmp_path / "lift.jset"
    code, _, _ = run(capsys, "embed", files["even-pair"], "lift", "-o", lifted)
    assert code == 0
    assert formats.load(lifted) == PointSet([(0, 0), (0, 2)])
    back = tmp_path / "back.jset"
    run(capsys, "embed", lifted, "unlift", "-o", back)
    assert back.read_bytes() == files["even-pair"].read_bytes()
    code, _, err = run(capsys, "embed", files["badlift"], "unlift")
    assert code == 2 and "(1,0)" in err


def test_op(files, capsys, tmp_path):
    out = tmp_path / "c.jfn"
    code, _, _ = run(capsys, "op", "convolve", files["ind02"], files["ind02"], "-o", out)
    assert code == 0
    assert formats.load(out) == DiscreteFunction.indicator(PointSet([(0,), (2,), (4,)]))
    code, text, _ = run(capsys, "op", "project", files["f10"], "--keep", "1")
    assert code == 0 and text == "jfn dim=1\n0 0\n1 0\n"
    code, text, _ = run(capsys, "op", "induce", files["ind02"], files["net"])
    assert code == 0 and text == "jfn dim=1\n0 0\n2 4\n"


def test_op_set_and_verify(files, capsys):
    code, text, err = run(capsys, "op", "aggregate", files["triangle"], "--blocks", "1|2,3", "--verify")
    assert text == "jset dim=2\n0 0\n0 2\n1 1\n1 2\n"
    assert "verify" in err
    code, _, err = run(capsys, "op", "restrict", files["gap"], "--keep", "1", "--verify")
    assert code == 2 and "fails" in err


def test_op_errors(files, capsys):
    code, _, err = run(capsys, "op", "project", files["f10"])
    assert code == 1 and "--keep" in err
    code, _, err = run(capsys, "op", "separable", files["f10"], "--phi", "5:5:0", "--phi", "0:1:0,0")
    assert code == 2 and "empty" in err
    code, _, _ = run(capsys, "op", "convolve", files["f10"])
    assert code == 1


def test_negative_flag_values(files, capsys):
    code, text, _ = run(capsys, "op", "separable", files["f10"], "--phi", "0:2:0,1,4", "--phi=-1:1:1,0,1")
    assert code == 0 and text == "jfn dim=2\n0 0 1\n0 1 1\n1 0 1\n1 1 3\n"
    code, text, _ = run(capsys, "op", "split", files["ind02"], "--sizes", "2", "--box=-1:1")
    assert code == 0 and text == "jfn dim=2\n-1 1 0\n0 0 0\n1 -1 0\n1 1 0\n"


def test_minimize(files, capsys):
    code, out, _ = run(capsys, "minimize", files["f10"])
    assert code == 0 and out.strip() == "min 0 at (0,1)"
    _, out, _ = run(capsys, "minimize", files["f10"], "--local")
    assert out.splitlines()[-1].endswith("agree")
    _, out, _ = run(capsys, "minimize", files["f10"], "--json")
    assert json.loads(out)["minimizer"] == [0, 1]


def test_minimize_local_on_degree_instance(capsys, tmp_path):
    p = tmp_path / "g.jfn"
    assert run(capsys, "generate", "--seed", 4, "--profile", "degree+square", "-o", p)[0] == 0
    _, out, _ = run(capsys, "minimize", p, "--local")
    assert out.splitlines()[-1].endswith(": agree")


def test_generate_is_reproducible(capsys):
    _, a, _ = run(capsys, "generate", "--seed", 9, "--kind", "set")
    _, b, _ = run(capsys, "generate", "--seed", 9, "--kind", "set")
    assert a == b and a.startswith("jset dim=")


def test_search_and_replay(capsys, tmp_path):
    for kind in ("scaling", "sum"):
        p = tmp_path / f"{kind}.json"
        code, _, _ = run(capsys, "search", kind, "--seed", 0, "--pool-size", 30, "-o", p)
        assert code == 0
        rec = json.loads(p.read_text())
        assert rec["search"] == kind
        code, out, _ = run(capsys, "replay", p)
        assert code == 0
        if rec["found"]:
            assert "genuine" in out


def test_replay_detects_tampering(capsys, tmp_path):
    p = tmp_path / "s.json"
    run(capsys, "search", "sum", "--seed", 0, "--pool-size", 30, "-o", p)
    rec = json.loads(p.read_text())
    if not rec["found"]:
        pytest.skip("no counterexample in this pool")
    rec["verdict"]["witness"]["y"] = rec["verdict"]["witness"]["x"]
    p.write_text(json.dumps(rec))
    code, out, _ = run(capsys, "replay", p)
    assert code == 2 and "NOT" in out
