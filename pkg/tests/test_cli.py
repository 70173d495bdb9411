import json

import pytest
from click.testing import CliRunner

from tybraid import cli
from tybraid import tydata as td


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(cli.main, list(args))

    return go


def test_classify_split_real(run):
    r = run("classify", "--case", "split-real", "--n", "1")
    assert r.exit_code == 0, r.output
    out = json.loads(r.output)
    assert len(out["classes"]) == 2 and out["N"] == 16
    assert sorted(out["pi0_aut_br_orders"]) == [2, 2]


def test_classify_crossed(run):
    r = run("classify", "--case", "cc", "--n", "1")
    assert r.exit_code == 0, r.output
    out = json.loads(r.output)
    assert out["crossed"] and len(out["classes"]) == 2
    assert sorted(out["pi0_aut_br_orders"]) == [8, 24]
    assert out["strong_equivalence_components"] == 4


@pytest.mark.parametrize("fmt", ["csv", "markdown"])
def test_classify_formats(run, fmt):
    r = run("classify", "--case", "rc-conj", "--n", "1", "--format", fmt)
    assert r.exit_code == 0 and "σ3(1)" in r.output


def test_invalid_input_exit_code(run):
    assert run("classify", "--case", "nonsense", "--n", "1").exit_code == 2
    assert run("classify", "--case", "split-complex", "--n", "1", "--l-blocks", "5").exit_code == 2
    assert run("verify", "--case", "split-real", "--n", "3").exit_code == 2
    assert run("verify").exit_code == 2


def test_verify_ok(run):
    r = run("verify", "--case", "sr", "--n", "1")
    assert r.exit_code == 0, r.output
    reports = json.loads(r.output)["reports"]
    assert all(rep["agree"] and rep["violations"] == [] for rep in reports)
    r = run("verify", "--case", "cc", "--n", "0", "--stage", "full")
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["reports"][0]["plain_braidings"] == 0


def test_verify_wall_fuzz(run):
    r = run("verify", "--wall-samples", "50", "--seed", "3")
    assert r.exit_code == 0
    assert json.loads(r.output)["wall"]["failures"] == []


def test_verification_failure_exit_code(run, monkeypatch):
    monkeypatch.setattr(cli, "brute_force_braidings", lambda data, stage: [])
    r = run("verify", "--case", "sr", "--n", "1", "--tau", "+")
    assert r.exit_code == 1
    assert "oracle" in r.output


def test_reproduce_gauss(run, tmp_path):
    r = run("reproduce", "--tables", "gauss", "--n-max", "1", "--format", "markdown", "--out", str(tmp_path))
    assert r.exit_code == 0, r.output
    assert (tmp_path / "gauss.md").read_text() == cli.tb.golden_text("gauss")


def test_enumerate_forms(run):
    r = run("enumerate-forms", "--h", "1")
    out = json.loads(r.output)
    assert out["count"] == 4
    assert sorted(o["size"] for o in out["orbits"]) == [1, 3]
    r = run("enumerate-forms", "--h", "0", "--l", "1", "--field", "complex", "--format", "csv")
    assert r.exit_code == 0


def test_cache_round_trip(run, tmp_path, monkeypatch):
    path = tmp_path / "c.ndjson"
    first = run("classify", "--case", "rq", "--n", "1", "--cache", str(path))
    assert first.exit_code == 0
    calls = []
    monkeypatch.setattr(cli, "classify_result", lambda *a: calls.append(a) or {})
    second = run("classify", "--case", "rq", "--n", "1", "--cache", str(path))
    assert second.output == first.output and calls == []


def test_cache_rejects_tampered_and_stale(tmp_path):
    path = tmp_path / "c.ndjson"
    data = td.split_real(1, 1)
    result = cli.classify_result(data)
    cli.cache_store(path, data, "classify", result)
    assert cli.cache_lookup(path, data, "classify") == result
    # a different instance never hits
    assert cli.cache_lookup(path, td.split_real(1, -1), "classify") is None
    # an edited result fails its digest
    header, rec = path.read_text().splitlines()
    rec = json.loads(rec)
    rec["result"]["classes"] = []
    path.write_text(header + "\n" + json.dumps(rec) + "\n")
    assert cli.cache_lookup(path, data, "classify") is None
    # a cache from another modulus is ignored
    path.write_text(json.dumps({"kind": cli.CACHE_KIND, "version": "0", "N": 16}) + "\n")
    assert cli.cache_lookup(path, data, "classify") is None
