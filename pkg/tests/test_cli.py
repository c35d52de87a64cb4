import io
import json

import pytest

from quivermoduli.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_count_simple():
    code, out, _ = call("count", "simple", "--quiver", "loop:2", "--d", "2")
    assert code == 0 and json.loads(out)["poly"] == "q^5 - q^4"


def test_betti_kronecker():
    code, out, _ = call("betti", "--quiver", "kronecker:3", "--theta", '{"i":1,"j":0}', "--d", '{"i":2,"j":3}')
    assert code == 0 and json.loads(out)["at_q_1"] == "13"


def test_comma_vectors():
    code, out, _ = call("betti", "--quiver", "kronecker:3", "--theta", "1,0", "--d", "2,3", "--no-cache")
    assert code == 0 and json.loads(out)["at_q_1"] == "13"
    assert call("betti", "--quiver", "kronecker:3", "--theta", "1,x", "--d", "2,3")[0] == 1


def test_oracle_verify():
    code, out, _ = call("oracle", "verify", "--quiver", "kronecker:1", "--d", '{"i":1,"j":1}',
                        "--theta", '{"i":1,"j":0}', "--q", "2")
    assert code == 0 and json.loads(out)["pass"] is True


def test_oracle_census_csv():
    code, out, _ = call("oracle", "census", "--quiver", "kronecker:1", "--d", "[1,1]",
                        "--theta", "[1,0]", "--q", "2", "--format", "csv")
    assert code == 0 and out.splitlines() == ["hn_type,count", '"(1,0);(0,1)",1', '"(1,1)",1']


@pytest.mark.parametrize("argv", [
    ("roots", "classify", "--quiver", "kronecker:3", "--d", "[2,3]"),
    ("euler-form", "--quiver", "kronecker:3", "--d", "[2,3]", "--e", "[2,3]"),
    ("coprime", "--quiver", "kronecker:3", "--d", "[2,3]", "--theta", "[1,0]"),
    ("hn-poly", "--quiver", "kronecker:1", "--d", "[1,1]", "--theta", "[1,0]", "--method", "direct"),
    ("count", "stable", "--quiver", "subspace:4", "--d", "[1,1,1,1,2]", "--theta", "[0,0,0,0,-1]"),
    ("count", "sst", "--quiver", "kronecker:2", "--d", "[2,2]", "--theta", "[1,0]"),
    ("exists", "sst", "--quiver", "kronecker:2", "--d", "[2,2]", "--theta", "[1,0]", "--method", "hn"),
    ("exists", "st", "--quiver", "kronecker:1", "--d", "[1,1]", "--theta", "[1,0]"),
    ("exists", "simple", "--quiver", "loop:2", "--d", "2"),
    ("exists", "al", "--quiver", "kronecker:3", "--theta", "[1,0]", "--parts", '[[2, {"i":1,"j":1}]]'),
    ("hilb", "betti", "--quiver", "loop:2", "--d", "2", "--n", "1"),
    ("hilb", "nonempty", "--quiver", "kronecker:1", "--d", "[1,1]", "--n", "[1,0]"),
    ("hilb", "forests", "--quiver", "loop:2", "--d", "3", "--n", "1", "--format", "csv"),
    ("hilb", "genfun", "--quiver", "loop:2", "--n", "1", "--N", "4"),
    ("smooth-model", "--quiver", "kronecker:1", "--d", "[1,1]", "--n", "[1,0]", "--theta", "[1,0]"),
    ("cycles", "primitive", "--quiver", "loop:2", "--d", "3"),
    ("conjecture-scan", "--quiver", "loop:2", "--d", "3", "--format", "csv"),
])
def test_commands_run_and_are_deterministic(argv):
    first = call(*argv)
    assert first[0] == 0, first[2]
    assert call(*argv) == first


def test_exit_codes():
    assert call("count", "sst", "--quiver", "kronecker:2", "--d", '{"x":1}')[0] == 1
    assert call("count", "sst", "--quiver", "nonsense:2", "--d", "1")[0] == 1
    assert call("betti", "--quiver", "kronecker:2", "--d", "[2,2]", "--theta", "[1,0]")[0] == 1
    code, _, err = call("oracle", "census", "--quiver", "loop:2", "--d", "5", "--q", "2")
    assert code == 2 and "budget" in err
    assert call("hilb", "forests", "--quiver", "loop:2", "--d", "6", "--n", "1", "--max-enumerate", "3")[0] == 2
    code, _, err = call("count", "sst", "--quiver", "kronecker:2", "--d", "[1]")
    assert code == 1 and "--d" in err


def test_integrality_exit_code(monkeypatch):
    from quivermoduli import cli
    from quivermoduli.exactq import IntegralityError

    def broken(*a, **k):
        raise IntegralityError("not a polynomial")
    monkeypatch.setattr(cli, "betti_coprime", broken)
    assert call("betti", "--quiver", "kronecker:1", "--d", "[1,1]", "--theta", "[1,0]")[0] == 3


def test_quiver_file(tmp_path):
    path = tmp_path / "c3.json"
    path.write_text(json.dumps({"vertices": ["a", "b", "c"],
                                "arrows": [{"from": "a", "to": "b"}, {"from": "b", "to": "c"},
                                           {"from": "c", "to": "a"}]}))
    code, out, _ = call("exists", "simple", "--quiver", str(path), "--d", "[1,1,1]")
    assert code == 0 and json.loads(out) == {"nonempty": True}
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert call("exists", "simple", "--quiver", str(bad), "--d", "[1]")[0] == 1


def test_cache_roundtrip(tmp_path, monkeypatch):
    argv = ("count", "sst", "--quiver", "kronecker:3", "--d", "[2,3]", "--theta", "[1,0]",
            "--cache-dir", str(tmp_path))
    fresh = call(*argv)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    from quivermoduli import cli

    def fail(*a, **k):
        raise AssertionError("cache miss")
    monkeypatch.setitem(cli.HANDLERS, "count", fail)
    assert call(*argv) == fresh
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    assert call(*argv[:-2]) == fresh
