from __future__ import annotations

import json

import pytest

from facecolor import corpus_path
from facecolor.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def cp(name: str) -> str:
    return str(corpus_path(name))


def test_eval_known_values(capsys):
    code, out, _ = run(capsys, "eval", "--input", cp("j3.pd"), "--invariant", "pk")
    assert code == 0
    assert out.strip() == "n^4 - 6n^3 + 11n^2 - 6n"

    code, out, _ = run(capsys, "eval", "--input", cp("theta.pd"), "--invariant", "total")
    assert code == 0
    assert out.strip() == "n^2 - n"


def test_eval_json_and_evaluations(capsys):
    code, out, _ = run(
        capsys, "eval", "--input", cp("j3.pd"), "--json", "--n", "3", "--n", "4"
    )
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "1"
    assert data["polynomial"]["text"] == "n^4 - 6n^3 + 11n^2 - 6n"
    assert data["evaluations"] == [
        {"n": 3, "t": 1, "value": "0"},
        {"n": 4, "t": 1, "value": "24"},
    ]


def test_eval_factor_check(capsys):
    code, _, _ = run(
        capsys,
        "eval", "--input", cp("k33.pd"), "--factor-check", "n(n-1)^2",
    )
    assert code == 0
    code, _, err = run(
        capsys,
        "eval", "--input", cp("k33.pd"), "--factor-check", "n(n-1)^3",
    )
    assert code == 2
    assert "mismatch" in err


def test_eval_self_check(capsys):
    code, out, _ = run(capsys, "eval", "--input", cp("k33.pd"), "--self-check")
    assert code == 0
    assert out.strip() == "n^3 - 2n^2 + n"


def test_parse_and_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "parse", "--input", cp("theta.pd"))
    assert code == 0 and out == "G[M[1,2,2,1]]\n"

    code, out, _ = run(capsys, "validate", "--input", cp("pet.pd"))
    assert code == 0 and out.strip() == "ok"

    bad = tmp_path / "bad.pd"
    bad.write_text("G[M[1,2,2,3]]\n")
    code, _, err = run(capsys, "validate", "--input", str(bad))
    assert code == 2
    assert "invalid" in err


def test_usage_errors(capsys):
    assert run(capsys, "eval", "--invariant", "nope")[0] == 1
    assert run(capsys, "nosuchcommand")[0] == 1
    assert run(capsys)[0] == 1


def test_syntax_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.pd"
    bad.write_text("G[M[1,2]]\n")
    code, _, err = run(capsys, "parse", "--input", str(bad))
    assert code == 2
    assert "error" in err


def test_budget_exit(capsys):
    code, _, err = run(
        capsys, "eval", "--input", cp("petbu.pd"), "--budget", "1000"
    )
    assert code == 3
    assert "budget" in err


def test_missing_file_exit(capsys):
    code, _, _ = run(capsys, "eval", "--input", "/nonexistent.pd")
    assert code == 2


def test_states_listing(capsys):
    code, out, _ = run(capsys, "states", "--input", cp("theta.pd"))
    assert code == 0
    assert out.splitlines() == ["0 2", "1 1"]
    code, out, _ = run(
        capsys, "states", "--input", cp("theta.pd"), "--alpha", "0", "--json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["circles"] == [[1], [2]]


def test_oracle_tensor_census(capsys):
    code, out, _ = run(capsys, "oracle", "--input", cp("doubletheta.graph"), "--n", "3")
    assert code == 0 and out.strip() == "12"

    code, out, _ = run(capsys, "tensor", "--input", cp("j3.pd"), "--n", "4", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["value"] == "24" and data["all_terms_plus_one"] is True

    code, out, _ = run(capsys, "census", "--input", cp("petersen.graph"), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["num_matchings"] == 6 and data["all_zero"] is True


def test_blowup_immerse_jm_pipeline(capsys, tmp_path):
    code, out, _ = run(capsys, "blowup", "--input", cp("petersen.graph"))
    assert code == 0
    blown = tmp_path / "bu.graph"
    blown.write_text(out)
    code, out, _ = run(capsys, "immerse", "--input", str(blown))
    assert code == 0
    assert out.count("M[") == 15

    code, out, _ = run(capsys, "jm", "--m", "3")
    assert code == 0
    assert out.count("M[") == 6 and out.count("V[") == 3
    assert run(capsys, "jm", "--m", "2")[0] == 2


def test_homology_report(capsys):
    code, out, _ = run(
        capsys,
        "homology", "--input", cp("theta.pd"), "--n", "3", "--betti", "--check-basis",
    )
    assert code == 0
    data = json.loads(out)
    assert data["betti"] == [6, 0]
    assert data["dims"] == [9, 3]
    assert data["d_squared_residual"] <= 1e-8
    assert data["color_basis"]["ok"] is True

    code, out, _ = run(
        capsys,
        "homology", "--input", cp("theta.pd"), "--n", "3",
        "--harmonic", "--alpha", "1",
    )
    assert code == 0
    assert json.loads(out)["harmonic"] == {"alpha": "1", "dim": 0}


def test_worker_determinism_cli(capsys):
    outputs = []
    for workers in ("1", "8"):
        code, out, _ = run(
            capsys,
            "eval", "--input", cp("j3.pd"), "--json", "--workers", workers,
            "--n", "3", "--n", "4",
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
