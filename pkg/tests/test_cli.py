import json
from importlib import resources

import jsonschema
import pytest
from click.testing import CliRunner

from artifact import cli
from artifact.cli import SuiteResult, main


def schema(name):
    return json.loads(resources.files("artifact").joinpath("schema", f"{name}.schema.json").read_text())


def run(*args, code=0):
    res = CliRunner().invoke(main, list(args))
    assert res.exit_code == code, res.output
    return res.output


def run_json(kind, *args):
    doc = json.loads(run(*args, "--format", "json"))
    jsonschema.validate(doc, schema(kind))
    return doc


def test_basis_examples():
    doc = run_json("basis", "basis", "--kind", "gc", "--g", "2", "--m", "2", "--W", "1", "--H", "3")
    assert len(doc["rows"]) == 4 and {r["k"] for r in doc["rows"]} == {0}
    assert run_json("basis", "basis", "--kind", "gc", "--g", "0", "--m", "1", "--W", "1", "--H", "1")["rows"] == []
    doc = run_json("basis", "basis", "--kind", "ppicg", "--n", "3", "--r", "2", "--C", "1")
    assert "n=3;r=2;int=0;edges=[(e1,e2)]" in [r["label"] for r in doc["rows"]]
    doc = run_json("basis", "basis", "--kind", "fstable", "--M", "1", "--N", "1", "--W", "0", "--H", "0")
    assert len(doc["rows"]) == 1


def test_basis_csv_and_text():
    csv = run("basis", "--kind", "gc", "--g", "2", "--m", "2", "--W", "1", "--H", "3", "--format", "csv")
    lines = csv.strip().splitlines()
    assert lines[0] == "k,label" and len(lines) == 5
    text = run("basis", "--kind", "gc", "--g", "2", "--m", "2", "--W", "1", "--H", "3")
    assert len(text.strip().splitlines()) == 4


def test_cohomology_examples():
    doc = run_json("cohomology", "cohomology", "--kind", "gc", "--g", "4", "--m", "1", "--W", "2")
    assert doc["rows"] and all(r["critical"] for r in doc["rows"])
    for r in doc["rows"]:
        assert r["k"] == (-r["W"] * 1 + r["H"]) / 2
    csv = run("cohomology", "--kind", "ce", "--g", "3", "--m", "1", "--W", "1", "--format", "csv")
    rows = [line.split(",") for line in csv.strip().splitlines()[1:]]
    assert rows and all(r[4] == "true" for r in rows)
    for W, H, k, dim, crit in rows:
        assert int(k) == (3 * int(W) - int(H)) // 2
    empty = run_json("cohomology", "cohomology", "--kind", "gc", "--g", "0", "--m", "1", "--W", "1", "--H", "1")
    assert empty["rows"] == []


def test_cohomology_other_kinds():
    doc = run_json("cohomology", "cohomology", "--kind", "ppicg", "--n", "3", "--r", "2", "--C", "1")
    assert all(r["W"] is None for r in doc["rows"])
    doc = run_json("cohomology", "cohomology", "--kind", "fstable", "--M", "1", "--N", "1", "--W-max", "2")
    assert doc["rows"]


def test_cohomology_cache_and_threads_are_deterministic():
    args = ("cohomology", "--kind", "g", "--g", "2", "--m", "2", "--W-max", "2", "--format", "json")
    cold = run(*args, "--no-cache")
    first = run(*args)
    second = run(*args)
    threaded = run(*args, "--threads", "2")
    assert cold == first == second == threaded


def test_gl_decompose():
    out = run("gl-decompose", "--g", "6", "--m", "1", "--W", "2", "--H", "4")
    assert "λ=(2,2,0,0,0,0) mult=1" in out
    out = run("gl-decompose", "--g", "6", "--m", "2", "--W", "1", "--H", "3")
    assert "λ=(3,0,0,0,0,0) mult=1" in out
    doc = run_json("decompose", "gl-decompose", "--g", "2", "--m", "1", "--W", "1", "--H", "3")
    assert doc["rows"] == []


@pytest.mark.parametrize(
    "args",
    [
        ("basis", "--kind", "nosuch", "--g", "1", "--W", "1", "--H", "1"),
        ("basis", "--kind", "gc", "--g", "99", "--W", "1", "--H", "1"),
        ("basis", "--kind", "gc", "--g", "2", "--W", "9", "--H", "1"),
        ("basis", "--kind", "gc", "--g", "2", "--m", "0", "--W", "1", "--H", "1"),
        ("basis", "--kind", "gc", "--g", "2"),
        ("basis", "--kind", "ppicg", "--n", "3"),
        ("cohomology", "--kind", "gc", "--g", "2"),
        ("cohomology", "--kind", "gc", "--W", "1"),
        ("gl-decompose", "--kind", "ppicg", "--g", "2", "--W", "1", "--H", "1"),
        ("verify", "nosuch"),
    ],
)
def test_invalid_parameters_exit_nonzero(args):
    res = CliRunner().invoke(main, list(args))
    assert res.exit_code != 0


def test_verify_pass_and_schema():
    doc = json.loads(run("verify", "dsq", "--g", "1", "--m", "1", "--W-max", "2", "--MN-max", "0", "--format", "json"))
    jsonschema.validate(doc, schema("verify"))
    assert doc["ok"] and doc["checked"] > 0
    out = run("verify", "cgamma", "--max-edges", "4", "--max-vertices", "3")
    assert out.startswith("PASS cgamma")


def test_verify_failure_reports_witness(monkeypatch):
    def failing(name, **params):
        return SuiteResult(name).fail(W=1, H=3, reason="forced")

    monkeypatch.setattr(cli, "run_suite", failing)
    out = run("verify", "thm1", code=1)
    assert out.startswith("FAIL thm1")
    witness = json.loads(out.split("witness: ", 1)[1])
    assert witness == {"W": 1, "H": 3, "reason": "forced"}


def test_suite_result_roundtrip():
    r = SuiteResult("x")
    assert r.ok and r.to_dict()["witness"] is None
    r.fail(a=1)
    assert not r.ok and r.to_dict()["witness"] == {"a": 1}
