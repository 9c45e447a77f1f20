import json

import pytest

from geoproof.core.proof import Proof
from geoproof.interface.cli import build_parser, demo, run
from geoproof.lg3ipm import check_proof
from geoproof.rules.logics import builtin_logic

from .conftest import WORKED


def test_prove_gd(capsys):
    code = run(["prove", "--logic", "gd", "--sequent", "=> x:((A -> B) | (B -> A))"])
    assert code == 0
    assert "lin" in capsys.readouterr().out


def test_prove_then_check(tmp_path, capsys):
    path = tmp_path / "proof.json"
    assert run(["prove", "--sequent", WORKED, "--format", "json", "--out", str(path)]) == 0
    assert json.loads(path.read_text())["calculus"] == "g3i"
    assert run(["check", "--in", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "valid"


def test_countermodel(capsys):
    assert run(["countermodel", "--sequent", "=> x:(A | ~A)", "--worlds", "2"]) == 1
    assert "worlds" in capsys.readouterr().out
    assert run(["countermodel", "--sequent", "x<=y ; x:P => y:P", "--worlds", "2"]) == 0
    assert "no countermodel" in capsys.readouterr().out


def test_rulegen(capsys):
    assert run(["rulegen", "--logic", "gd", "--form", "hypersequent"]) == 0
    assert capsys.readouterr().out.startswith("lin: H || ")
    assert run(["rulegen", "--axiom", "true => x<=y || y<=x", "--form", "sls",
                "--format", "json"]) == 0
    assert list(json.loads(capsys.readouterr().out)) == ["sls"]


def test_unfold(capsys):
    assert run(["unfold", "--sequent", WORKED]) == 0
    out = capsys.readouterr().out
    assert "result: " in out
    assert "hypersequent: " in out


def test_translate(capsys):
    assert run(["translate", "--sequent", WORKED, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["passed"] is True


def test_demo_text(capsys):
    assert run(["demo"]) == 0
    assert "[L_or_par]" in capsys.readouterr().out


def test_demo_json():
    code, text = demo("json")
    assert code == 0
    payload = json.loads(text)
    assert payload["ok"] is True
    proof = Proof.from_dict(payload["translation"]["proof"])
    assert check_proof(proof, builtin_logic("int").with_lin(), "permissive")


@pytest.mark.parametrize("argv", [
    ["prove", "--sequent", "x:A =>> y:B"],
    ["prove", "--logic", "s4", "--sequent", "=> x:A"],
    ["prove"],
    ["check", "--in", "/nonexistent/proof.json"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    capsys.readouterr()


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == 0
    assert "geoproof" in capsys.readouterr().out


def test_fresh_labels_are_opt_in(capsys):
    argv = ["prove", "--calculus", "lg3ipm", "--sequent", "=> x:(A -> A)"]
    assert build_parser().parse_args(argv).allow_fresh is False
    assert build_parser().parse_args(argv + ["--allow-fresh"]).allow_fresh is True
    assert run(argv + ["--allow-fresh"]) == 0
    assert "R_imp" in capsys.readouterr().out
