import json
import shutil
import subprocess

import pytest

from braceforge import corpus
from braceforge.cli import main
from braceforge.serialize import dumps


def run(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, args in {
        "trivial": ["--kind", "trivial", "--p", 5, "--exponents", 3],
        "rc": ["--kind", "radical-cyclic", "--p", 5, "--n", 3],
        "tri": ["--kind", "radical-triangular", "--p", 5, "--d", 3],
        "small": ["--kind", "trivial", "--p", 3, "--exponents", 1, 1, 1],
        "heis": ["--kind", "heisenberg", "--p", 5],
        "zero": ["--kind", "zero", "--p", 5, "--exponents", 2],
    }.items():
        path = tmp_path / f"{name}.json"
        code, _, _ = run(["construct", *args, "--out", path], capsys)
        assert code == 0
        paths[name] = path
    return paths


def test_construct(files):
    doc = json.loads(files["trivial"].read_text())
    assert len(doc["star"]) == 125 and doc["prime"] == 5
    doc = json.loads(files["rc"].read_text())
    assert doc["star"][1][1] == 5
    assert files["tri"].read_text() == dumps(corpus.radical_triangular(5, 3).to_json())


def test_construct_usage_errors(capsys):
    assert run(["construct", "--kind", "radical-cyclic", "--p", 5], capsys)[0] == 2
    assert run(["construct", "--kind", "trivial", "--p", 4, "--exponents", 1], capsys)[0] == 2
    assert run(["construct", "--kind", "trivial", "--p", 2, "--exponents", 1], capsys)[0] == 2
    with pytest.raises(SystemExit) as err:
        main(["construct", "--kind", "nonsense"])
    assert err.value.code == 2


def test_verify_exit_codes(files, tmp_path, capsys):
    code, out, _ = run(["verify", "--suite", "brace-axioms", files["trivial"]], capsys)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(["verify", "--suite", "theorem-dc", files["tri"]], capsys)
    assert code == 0
    code, out, _ = run(["verify", "--suite", "roundtrip", files["small"]], capsys)
    rep = json.loads(out)
    assert code == 0
    skipped = [c for c in rep["checks"] if c["status"] == "skipped"]
    assert skipped and all(c["hypothesis"] == "p > n+1" for c in skipped)
    assert all(c["anchor"] for c in rep["checks"])


def test_verify_violation_and_bad_input(files, tmp_path, capsys):
    doc = json.loads(files["rc"].read_text())
    doc["star"][2][3] = (doc["star"][2][3] + 1) % 125
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(["verify", "--suite", "brace-axioms", bad], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["checks"][0]["status"] == "fail" and rep["checks"][0]["witness"]
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(["verify", "--suite", "brace-axioms", junk], capsys)[0] == 2
    assert run(["verify", "--suite", "brace-axioms", tmp_path / "missing.json"], capsys)[0] == 2
    doc["star"] = doc["star"][:-1]
    bad.write_text(json.dumps(doc))
    assert run(["verify", "--suite", "brace-axioms", bad], capsys)[0] == 2
    # a group suite on a pre-Lie ring is a usage error
    assert run(["verify", "--suite", "coclass", files["zero"]], capsys)[0] == 2


def test_report_file_and_timing(files, tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out, _ = run(["verify", "--suite", "prop-12345", files["rc"], "--report", rep], capsys)
    assert code == 0 and out == ""
    assert "timing" not in json.loads(rep.read_text())
    code, out, _ = run(["--timing", "verify", "--suite", "prop-12345", files["rc"]], capsys)
    assert "seconds" in json.loads(out)["timing"]


def test_transform_and_flows(files, tmp_path, capsys):
    code, out, _ = run(["transform", "--which", "bullet", files["rc"]], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["dot"]) == 5
    assert doc["provenance"]["construction"] == "bullet"
    code, out, _ = run(["transform", "--which", "strong-dot", files["rc"]], capsys)
    assert json.loads(out)["dot"][1][1] == 20
    code, out, err = run(["transform", "--which", "bullet", files["small"]], capsys)
    assert code == 1 and "p > n+1" in err
    code, out, _ = run(["flows", files["zero"]], capsys)
    doc = json.loads(out)
    assert code == 0 and not any(any(r) for r in doc["star"])
    assert run(["flows", files["rc"]], capsys)[0] == 2


def test_transform_flows_roundtrip(files, tmp_path, capsys):
    sd = tmp_path / "sd.json"
    assert run(["transform", "--which", "strong-dot", files["rc"], "--out", sd], capsys)[0] == 0
    code, out, _ = run(["flows", sd, "--scale", -(1 + 5 + 25 + 125)], capsys)
    assert code == 0
    assert json.loads(out)["star"] == json.loads(files["rc"].read_text())["star"]


def test_analyze_group(files, capsys):
    code, out, _ = run(["analyze-group", files["heis"]], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["class"] == 2 and rep["powerful"] is False
    code, out, _ = run(["analyze-group", files["tri"]], capsys)
    assert json.loads(out)["order"] == 125


def test_xi_command(capsys):
    code, out, _ = run(["xi", 5], capsys)
    assert code == 0 and json.loads(out)["gamma"] == 2
    assert run(["xi", 6], capsys)[0] == 2


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--suite", "roundtrip", "{rc}"],
        ["verify", "--suite", "bounds", "{tri}"],
        ["transform", "--which", "dot-pA", "{tri}"],
        ["analyze-group", "{heis}"],
    ],
)
def test_deterministic_across_parallel(files, capsys, args):
    args = [a.format(**{k: str(v) for k, v in files.items()}) for a in args]
    outs = [run(["--parallel", n, *args], capsys)[1] for n in (1, 1, 2, 4)]
    assert len(set(outs)) == 1 and outs[0]


def test_parallel_must_be_positive(capsys):
    with pytest.raises(SystemExit) as err:
        main(["--parallel", "0", "xi", "5"])
    assert err.value.code == 2


@pytest.mark.skipif(shutil.which("braceforge") is None, reason="console script not installed")
def test_console_script(tmp_path):
    proc = subprocess.run(["braceforge", "xi", "3"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["xi"] == 26
