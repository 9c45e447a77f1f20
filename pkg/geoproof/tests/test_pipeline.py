import dataclasses

import pytest

from geoproof.core.errors import TranslationError
from geoproof.core.parser import parse_relatom
from geoproof.core.proof import LG3IPM, SearchBudget
from geoproof.g3i import prove as prove_g3i
from geoproof.lg3ipm import check_proof
from geoproof.pipeline import transitive_unfold, translate_proof, unfold, unfold_by_fold, verify_translation
from geoproof.rules.logics import CHARACTERISTIC_FORMULAS, builtin_logic
from geoproof.semantics import valid_in_all

from .conftest import SEPARATION, SEPARATION_UNFOLDING, WORKED, WORKED_UNFOLDING, lab, labelled_goal, sls


@pytest.mark.parametrize("text", ["x<=y, x<=z ; x:A => y:B", "x<=y, y<=z ; x:A => y:B"])
def test_unfolding_follows_the_closure(text):
    assert unfold(lab(text)) == sls("x:A, y:A, z:A => x:B, y:B")


@pytest.mark.parametrize("text, expected", [
    (WORKED, WORKED_UNFOLDING),
    (SEPARATION, SEPARATION_UNFOLDING),
    ("x<=x ; x:A => x:B", "x:A => x:B"),
    ("x<=y, y<=x ; x:A => ", "x:A, y:A => "),
])
def test_unfolding_examples(text, expected):
    assert unfold(lab(text)) == sls(expected)


def test_trace_records_every_occurrence():
    trace = transitive_unfold(lab(WORKED))
    assert len(trace.copies) == 4
    assert sorted(c.labels for c in trace.copies if c.side == "succ") == [("x",), ("y", "x")]
    data = trace.to_dict()
    assert data["closure"] == ["x<=y"]
    assert data["result"] == trace.result.text
    assert trace.to_text().endswith(f"result: {trace.result.text}")


def test_unfolding_does_not_depend_on_fold_order(rng):
    s = lab("x<=y, y<=z, z<=w ; x:A, y:(B & C) => w:D, z:A")
    expected = unfold(s)
    atoms = sorted(transitive_unfold(s).closure)
    for _ in range(10):
        rng.shuffle(atoms)
        assert unfold_by_fold(s, atoms) == expected


def test_fold_rejects_atoms_outside_the_closure():
    with pytest.raises(ValueError):
        unfold_by_fold(lab("x<=y ; x:A => y:A"), [parse_relatom("y<=x")])


@pytest.mark.parametrize("text", [WORKED, SEPARATION])
def test_unfolding_of_a_valid_sequent_is_valid(text):
    assert valid_in_all(unfold(lab(text)), 3)


def test_worked_translation(worked_proof, int_logic):
    out = translate_proof(worked_proof, int_logic)
    assert out.calculus == LG3IPM
    assert out.derived == "L_or_par"
    assert out.conclusion == sls(WORKED_UNFOLDING)
    assert check_proof(out, int_logic.with_lin(), "permissive")

    report = verify_translation(worked_proof, int_logic)
    assert report.passed
    assert "checker: valid" in report.describe()
    assert report.to_dict()["passed"] is True


def test_axiom_translates_to_a_single_axiom(int_logic):
    p = prove_g3i(lab("x<=y ; x:P => y:P"), int_logic).proof
    out = translate_proof(p, int_logic)
    assert out.size == 1
    assert out.rule == "Ax"
    assert out.subst["principal"] == "y:P"
    assert out.conclusion == sls("x:P, y:P => x:P, y:P")


def test_implication_translation(int_logic):
    p = prove_g3i(lab("=> x:(A -> A)"), int_logic).proof
    out = translate_proof(p, int_logic)
    assert out.rule == "R_imp_i"
    assert out.conclusion == sls("=> x:(A -> A)")
    assert verify_translation(p, int_logic).passed


def test_geometric_rule_translation(gd_logic):
    p = prove_g3i(lab(f"=> x:({CHARACTERISTIC_FORMULAS['gd']})"), gd_logic).proof
    report = verify_translation(p, gd_logic)
    assert report.passed
    assert "lin" in report.proof.rules_used()


def test_strictify_is_reported(worked_proof, int_logic):
    report = verify_translation(worked_proof, int_logic, strictify=True)
    assert report.passed
    assert report.strict is not None


def test_bad_input_is_rejected(worked_proof, int_logic):
    wrong_root = dataclasses.replace(worked_proof, conclusion=lab(SEPARATION))
    with pytest.raises(TranslationError):
        translate_proof(wrong_root, int_logic)
    with pytest.raises(TranslationError):
        translate_proof(dataclasses.replace(worked_proof, calculus=LG3IPM), int_logic)

    report = verify_translation(wrong_root, int_logic)
    assert not report.passed
    assert report.proof is None
    assert report.errors


@pytest.mark.slow
@pytest.mark.parametrize("name", ["int", "gd"])
def test_random_derivations_translate(name, rng):
    logic = builtin_logic(name)
    budget = SearchBudget.for_g3i(max_depth=10, max_labels=4)
    translated = 0
    for i in range(400):
        result = prove_g3i(labelled_goal(rng, i), logic, budget)
        if not result.found:
            continue
        report = verify_translation(result.proof, logic)
        assert report.passed, report.describe()
        translated += 1
        if translated == 60:
            break
    assert translated == 60
