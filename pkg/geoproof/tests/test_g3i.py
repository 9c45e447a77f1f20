import pytest

from geoproof.core.entities import Atom, LabelledFormula, RelAtom
from geoproof.core.errors import FreshnessError, RuleApplicationError, ShapeMismatch
from geoproof.core.labels import canonicalize_labelled
from geoproof.core.parser import parse_formula
from geoproof.core.proof import G3I, Proof, SearchBudget
from geoproof.g3i import (
    check_proof, contract_proof, derived_rel_rule, inferred_logic, invert, monotonicity_proof,
    premisses, prove, subst_label, weaken_proof, weaken_to,
)
from geoproof.g3i.search import _Search
from geoproof.rules.logics import CHARACTERISTIC_FORMULAS, builtin_logic

from geoproof.semantics import valid_in_all

from .conftest import WORKED, lab, labelled_goal

A = Atom("A")


def test_worked_example(worked_proof, int_logic):
    assert worked_proof.conclusion == lab(WORKED)
    assert worked_proof.rule == "L_or"
    assert check_proof(worked_proof, int_logic)


@pytest.mark.parametrize("logic", ["gd", "class"])
def test_characteristic_formula_provable(logic):
    spec = builtin_logic(logic)
    result = prove(lab(f"=> x:({CHARACTERISTIC_FORMULAS[logic]})"), spec)
    assert result.found
    assert check_proof(result.proof, spec)
    assert logic_rule(spec) in result.proof.rules_used()


def logic_rule(spec):
    (name,) = spec.rule_names
    return name


def test_excluded_middle_not_intuitionistic(int_logic):
    result = prove(lab("=> x:(A | ~A)"), int_logic, SearchBudget(8, 4, 20))
    assert not result.found


def test_identity_through_reflexivity(int_logic):
    result = prove(lab("=> x:(A -> A)"), int_logic)
    assert result.found
    assert [node.rule for _, node in result.proof.walk()] == ["R_imp", "refl", "Ax"]


def test_axiom_needs_relation(int_logic):
    s = lab("x<=y ; x:A => y:A")
    assert premisses("Ax", s, {"principal": "x:A", "rel": "x<=y"}, int_logic) == []
    with pytest.raises(RuleApplicationError):
        premisses("Ax", lab("y<=x ; x:A => y:A"), {"principal": "x:A", "rel": "y<=x"}, int_logic)


def test_r_imp_freshness(int_logic):
    with pytest.raises(FreshnessError):
        premisses("R_imp", lab("x<=y ; => x:(A -> B)"),
                  {"principal": "x:(A -> B)", "fresh": "y"}, int_logic)


def test_checker_locates_bad_node(int_logic):
    bad_leaf = Proof(G3I, "Ax", lab("x<=y ; x:A, x:C => y:B"), {"principal": "x:A", "rel": "x<=y"})
    root = Proof(G3I, "L_and", lab("x<=y ; x:(A & C) => y:B"), {"principal": "x:(A & C)"},
                 (bad_leaf,))
    result = check_proof(root, int_logic)
    assert not result
    assert result.path == (0,)


def test_strict_mode_rejects_weakening(int_logic):
    leaf = Proof(G3I, "Ax", lab("x<=y ; x:A => y:A"), {"principal": "x:A", "rel": "x<=y"})
    w = Proof(G3I, "W", lab("x<=y ; x:A, x:B => y:A"), {"side": "ante", "formula": "x:B"}, (leaf,))
    assert not check_proof(w, int_logic)
    assert check_proof(w, int_logic, "permissive")
    with pytest.raises(ValueError):
        check_proof(w, int_logic, "lenient")


def test_weakening_renames_eigenlabels(int_logic):
    p = prove(lab("=> x:(A -> A)"), int_logic).proof
    eigen = p.subst["fresh"]
    out = weaken_proof(p, RelAtom("x", eigen))
    assert RelAtom("x", eigen) in out.conclusion.rels
    assert out.subst["fresh"] != eigen
    assert check_proof(out, int_logic)


def test_weaken_to(worked_proof, int_logic):
    target = lab(WORKED).add(ante=[LabelledFormula("z", A)])
    out = weaken_to(worked_proof, target)
    assert out.conclusion == target
    assert check_proof(out, int_logic)
    with pytest.raises(ShapeMismatch):
        weaken_to(worked_proof, lab("; => x:A"))


def test_label_substitution(int_logic):
    p = prove(lab("x<=y ; x:A => y:A"), int_logic).proof
    out = subst_label(p, "y", "z")
    assert out.conclusion == lab("x<=z ; x:A => z:A")
    assert check_proof(out, int_logic)


def test_inversion_of_root(worked_proof):
    left, right = invert(worked_proof, "L_or", LabelledFormula("x", parse_formula("A | B")))
    assert LabelledFormula("x", A) in left.conclusion.ante
    assert LabelledFormula("x", Atom("B")) in right.conclusion.ante


def test_contraction(int_logic):
    p = prove(lab("x<=y ; x:A, x:A => y:A"), int_logic).proof
    out = contract_proof(p, LabelledFormula("x", A), "ante")
    assert out.conclusion == lab("x<=y ; x:A => y:A")
    assert check_proof(out, int_logic)
    with pytest.raises(RuleApplicationError):
        contract_proof(out, LabelledFormula("x", A), "ante")


@pytest.mark.parametrize("formula", ["A", "A & B", "A | B", "A -> B", "~A"])
def test_monotonicity(formula, int_logic):
    f = parse_formula(formula)
    s = lab(f"x<=y ; x:({formula}) => y:({formula})")
    p = monotonicity_proof(s, "x", "y", f)
    assert p.conclusion == s
    assert check_proof(p, int_logic)


def test_relational_substitution_via_cut(int_logic):
    p = prove(lab("x<=y ; x:A, y:A => y:A"), int_logic).proof
    out = derived_rel_rule(p, "L_sub", RelAtom("x", "y"), A)
    assert out.derived == "L_sub"
    assert out.conclusion == lab("x<=y ; x:A => y:A")
    assert check_proof(out, int_logic, "permissive")
    with pytest.raises(ValueError):
        derived_rel_rule(p, "M_sub", RelAtom("x", "y"), A)


def test_inferred_logic(worked_proof, gd_logic):
    assert inferred_logic(worked_proof).name == "int"
    gd = prove(lab(f"=> x:({CHARACTERISTIC_FORMULAS['gd']})"), gd_logic).proof
    assert inferred_logic(gd).rule_names == ("lin",)


def test_loop_prune_marks_search_exhausted(int_logic):
    s = lab("x:A => x:B")
    search = _Search(int_logic, SearchBudget.for_g3i())
    proof, clean = search.run(s, 1, frozenset({canonicalize_labelled(s).text}))
    assert proof is None
    assert not clean
    assert search.exhausted


@pytest.mark.slow
@pytest.mark.parametrize("name", ["int", "gd", "class"])
def test_found_proofs_hold_in_small_models(name, rng):
    logic = builtin_logic(name)
    budget = SearchBudget.for_g3i(max_depth=10, max_labels=4)
    proved = 0
    for i in range(200):
        goal = labelled_goal(rng, i)
        result = prove(goal, logic, budget)
        if not result.found:
            continue
        proved += 1
        assert check_proof(result.proof, logic), goal.text
        assert valid_in_all(goal, 3, logic.axioms), goal.text
    assert proved >= 50
