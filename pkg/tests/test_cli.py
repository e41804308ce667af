import json
import os

import pytest

from gamble_algebra.cli import main


@pytest.fixture
def plain_problem(tmp_path):
    blob = {
        "space": 2,
        "partitions": {
            "all": [[0, 1]],
            "each": [[0], [1]],
        },
        "gambles": {
            "up": [[1, -1]],
            "down": [[-1, 1]],
            "clash": [[1, -1], [-1, 1]],
            "target": [[1, -1]],
            "empty": [],
        },
        "pieces": {
            "p": {
                "label": [[0], [1]],
                "content": {"kind": "coherent", "generators": [[1, -1]]},
            }
        },
        "script": [["coherence", "clash"], ["extract", "all", "up"]],
    }
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(blob))
    return str(path)


@pytest.fixture
def product_problem(tmp_path):
    blob = {
        "system": {"domains": [2, 2]},
        "partitions": {
            "rows": [[0, 1], [2, 3]],
            "cols": [[0, 2], [1, 3]],
            "skew": [[0, 3], [1, 2]],
        },
    }
    path = tmp_path / "product.json"
    path.write_text(json.dumps(blob))
    return str(path)


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


class TestBasicCommands:
    def test_coherence_contradictory(self, plain_problem, capsys):
        status, out = run(capsys, "coherence", "clash", "--space-file", plain_problem)
        assert status == 0
        assert json.loads(out) == {"result": "contradictory"}

    def test_coherence_coherent(self, plain_problem, capsys):
        status, out = run(capsys, "coherence", "up", "--space-file", plain_problem)
        assert status == 0
        assert json.loads(out) == {"result": "coherent"}

    def test_combine(self, plain_problem, capsys):
        status, out = run(capsys, "combine", "up", "down", "--space-file", plain_problem)
        assert status == 0
        assert json.loads(out) == {"kind": "top"}

    def test_extract_to_unit(self, plain_problem, capsys):
        status, out = run(capsys, "extract", "all", "up", "--space-file", plain_problem)
        assert status == 0
        assert json.loads(out) == {"kind": "coherent", "generators": []}

    def test_transport(self, plain_problem, capsys):
        status, out = run(capsys, "transport", "all", "p", "--space-file", plain_problem)
        assert status == 0
        blob = json.loads(out)
        assert blob["label"] == [[0, 1]]
        assert blob["content"] == {"kind": "coherent", "generators": []}

    def test_commutes(self, product_problem, capsys):
        status, out = run(
            capsys, "commutes", "rows", "cols", "--space-file", product_problem
        )
        assert status == 0 and json.loads(out) == {"commutes": True}

    def test_independence(self, product_problem, capsys):
        status, out = run(
            capsys, "independence", "rows", "cols", "--space-file", product_problem
        )
        assert status == 0 and json.loads(out) == {"independent": True}

    def test_conditional_independence(self, product_problem, capsys):
        status, out = run(
            capsys,
            "independence",
            "rows",
            "cols",
            "--given",
            "skew",
            "--space-file",
            product_problem,
        )
        assert status == 0
        assert json.loads(out) == {"independent": False}

    def test_atoms_separate(self, plain_problem, capsys):
        status, out = run(
            capsys, "atoms", "separate", "empty", "target", "--space-file", plain_problem
        )
        assert status == 0
        blob = json.loads(out)
        assert blob == {"chain": [[0, 1], [1, 0]]}

    def test_script(self, plain_problem, capsys):
        status, out = run(capsys, "script", "--space-file", plain_problem)
        assert status == 0
        lines = [json.loads(l) for l in out.splitlines()]
        assert lines[0]["output"] == {"result": "contradictory"}
        assert lines[1]["output"] == {"kind": "coherent", "generators": []}


class TestAxioms:
    def test_product_fixture_passes_and_is_reproducible(self, product_problem, capsys, tmp_path):
        status, out = run(
            capsys,
            "axioms",
            "--seed",
            "7",
            "--count",
            "12",
            "--space-file",
            product_problem,
        )
        assert status == 0
        rows = [json.loads(l) for l in out.splitlines()]
        assert rows and all(r["pass"] for r in rows)
        # byte-for-byte reproducibility through --out
        out1 = tmp_path / "a.jsonl"
        out2 = tmp_path / "b.jsonl"
        assert (
            main(["axioms", "--seed", "7", "--count", "12",
                  "--space-file", product_problem, "--out", str(out1)]) == 0
        )
        assert (
            main(["axioms", "--seed", "7", "--count", "12",
                  "--space-file", product_problem, "--out", str(out2)]) == 0
        )
        assert out1.read_bytes() == out2.read_bytes()


class TestErrors:
    def test_unknown_name(self, plain_problem, capsys):
        status = main(["coherence", "missing", "--space-file", plain_problem])
        assert status == 2

    def test_invalid_json_position(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"space": 2,\n  "partitions": }')
        status = main(["coherence", "x", "--space-file", str(bad)])
        assert status == 2
        err = capsys.readouterr().err
        assert "line 2" in err

    def test_schema_error_carries_path(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"space": 2, "gambles": {"k": [[1, 2, 3]]}}))
        status = main(["coherence", "k", "--space-file", str(bad)])
        assert status == 2
        assert "$.gambles.k[0]" in capsys.readouterr().err

    def test_dimension_cap(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("GA_MAX_DIM", "3")
        blob = {"space": 4, "gambles": {"k": [[1, 1, 1, 1]]}}
        path = tmp_path / "big.json"
        path.write_text(json.dumps(blob))
        status = main(["coherence", "k", "--space-file", str(path)])
        assert status == 2
        assert "GA_MAX_DIM" in capsys.readouterr().err

    def test_separation_target_must_not_be_a_member(self, plain_problem, capsys):
        status = main(
            ["atoms", "separate", "up", "target", "--space-file", plain_problem]
        )
        assert status == 2
