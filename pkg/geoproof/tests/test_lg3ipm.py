import itertools

import pytest

from geoproof.core.entities import And, Atom, Bot, Imp, LabelledFormula, Or, SimplyLabelledSequent
from geoproof.core.errors import RuleApplicationError, ShapeMismatch
from geoproof.core.parser import parse_formula, parse_labelled_formula
from geoproof.core.proof import LG3IPM, Proof, SearchBudget
from geoproof.lg3ipm import (
    FALLBACKS, PERMISSIVE, applicable_rules, check_proof, contract_proof, cut_conjecture_trial, invert,
    is_strict, l_or_parallel, premisses, prove, r_and_parallel, r_bot_elim, r_subset_mp, rc_imp, reshape,
    weaken_to,
)
from geoproof.lg3ipm.search import close
from geoproof.rules.logics import builtin_logic
from geoproof.semantics import valid_in_all

from .conftest import SEPARATION_UNFOLDING, WORKED_UNFOLDING, random_formula, random_sls, sls

A, B = Atom("A"), Atom("B")


def axiom_proof(text):
    proof = close(sls(text))
    assert proof is not None
    return proof


def test_separation_needs_lin(int_logic):
    goal = sls(SEPARATION_UNFOLDING)
    without = prove(goal, int_logic, use_lin=False, allow_fresh=False)
    assert without.status == "refuted"
    with_lin = prove(goal, int_logic, use_lin=True)
    assert with_lin.found
    assert check_proof(with_lin.proof, int_logic.with_lin(), "permissive")
    assert "lin" in with_lin.proof.rules_used()


def test_worked_unfolding_without_lin(int_logic):
    result = prove(sls(WORKED_UNFOLDING), int_logic, use_lin=False)
    assert result.found
    assert check_proof(result.proof, int_logic)
    assert is_strict(result.proof, int_logic)


def test_linearity_in_hypersequent_form(gd_logic):
    result = prove(sls("=> x:(A -> B), y:(B -> A)"), gd_logic)
    assert result.found
    assert check_proof(result.proof, gd_logic)


def test_r_imp_drops_same_label_succedent(int_logic):
    s = sls("=> x:(A -> B), x:C, y:D")
    assert premisses("R_imp", s, {"principal": "x:(A -> B)"}, int_logic) == [
        sls("x:A => x:B, y:D")]


def test_structural_rules_are_strict_only_when_named(int_logic):
    s = sls("x:A => x:A, y:B")
    with pytest.raises(RuleApplicationError):
        premisses("lin", s, {"x": "x", "y": "y"}, int_logic)
    with pytest.raises(RuleApplicationError):
        premisses("L_imp_i", sls("x:(A -> B) => x:B"), {"principal": "x:(A -> B)"}, int_logic)


def test_applicable_rules(int_logic):
    steps = applicable_rules(sls("x:(A | B) => x:A"), int_logic)
    assert ("L_or", {"principal": "x:(A | B)"}) in steps
    assert all(rule != "Ax" for rule, _ in steps)


def test_checker_rejects_wrong_axiom(int_logic):
    bad = Proof(LG3IPM, "Ax", sls("x:A => y:A"), {"principal": "x:A"})
    result = check_proof(bad, int_logic)
    assert not result
    assert result.path == ()


def test_weaken_to(int_logic):
    p = axiom_proof("x:A => x:A")
    target = sls("x:A, y:B => x:A, x:C")
    out = weaken_to(p, target)
    assert out.conclusion == target
    assert check_proof(out, int_logic, "permissive")
    assert not is_strict(out, int_logic)
    with pytest.raises(ShapeMismatch):
        weaken_to(p, sls("y:A => y:A"))


def test_contract_and_reshape(int_logic):
    p = axiom_proof("x:A, x:A => x:A")
    contracted = contract_proof(p, LabelledFormula("x", A), "ante")
    assert contracted.conclusion == sls("x:A => x:A")
    with pytest.raises(RuleApplicationError):
        contract_proof(contracted, LabelledFormula("x", A), "ante")

    reshaped = reshape(p, sls("x:A => x:A, y:B"))
    assert reshaped.conclusion == sls("x:A => x:A, y:B")
    assert check_proof(reshaped, int_logic, "permissive")
    with pytest.raises(ShapeMismatch):
        reshape(p, sls("y:A => y:A"))


def test_r_subset(int_logic):
    p = axiom_proof("x:A, y:A => x:A, y:A")
    out = r_subset_mp(p, "x", "y", A, int_logic)
    assert out.conclusion == sls("x:A, y:A => y:A")
    assert check_proof(out, int_logic, "permissive")

    stuck = axiom_proof("x:A, y:B => x:A, y:A")
    with pytest.raises(ShapeMismatch):
        r_subset_mp(stuck, "x", "y", A, int_logic)


def test_r_bot_elimination(int_logic):
    p = axiom_proof("x:A => x:A, y:bot")
    out = r_bot_elim(p, parse_labelled_formula("y:bot"), int_logic)
    assert out.conclusion == sls("x:A => x:A")
    assert check_proof(out, int_logic)
    with pytest.raises(ShapeMismatch):
        r_bot_elim(p, parse_labelled_formula("x:A"), int_logic)


def test_inversion(int_logic):
    p = prove(sls("x:(A & B) => x:A"), int_logic).proof
    (inverted,) = invert(p, "L_and", parse_labelled_formula("x:(A & B)"), int_logic)
    assert inverted.conclusion == sls("x:A, x:B => x:A")
    assert check_proof(inverted, int_logic, "permissive")


def test_parallel_l_or_on_worked_example(int_logic):
    rest = "x:(B->C), y:(B->C) => x:A, x:C, y:C"
    pA = prove(sls(f"x:A, y:A, {rest}"), int_logic, use_lin=False).proof
    pB = prove(sls(f"x:B, y:B, {rest}"), int_logic, use_lin=False).proof
    logic = int_logic.with_lin()
    out = l_or_parallel(pA, pB, "x", "y", Or(A, B), logic)
    assert out.derived == "L_or_par"
    assert out.conclusion == sls(WORKED_UNFOLDING)
    assert check_proof(out, logic, "permissive")
    assert "lin" in out.rules_used()


def test_parallel_l_or_needs_lin(int_logic):
    pA = axiom_proof("x:A, y:A => x:A, x:B")
    pB = axiom_proof("x:B, y:B => x:A, x:B")
    with pytest.raises(RuleApplicationError):
        l_or_parallel(pA, pB, "x", "y", Or(A, B), int_logic)


def test_parallel_r_and(int_logic):
    context = "x:A, x:B, y:A, y:B"
    pA = axiom_proof(f"{context} => x:A, y:A")
    pB = axiom_proof(f"{context} => x:B, y:B")
    out = r_and_parallel(pA, pB, ["x", "y"], And(A, B), int_logic)
    assert out.derived == "R_and_par"
    assert out.conclusion == sls(f"{context} => x:(A & B), y:(A & B)")
    assert check_proof(out, int_logic, "permissive")


def test_cut_trial_skips_when_a_premiss_fails(int_logic):
    trial = cut_conjecture_trial(sls("x:A => x:B"), LabelledFormula("x", A), int_logic)
    assert trial.left == "proved"
    assert trial.right == "refuted"
    assert not trial.applicable
    assert not trial.violation


@pytest.mark.parametrize("formula", ["A -> A", "A & B -> B & A", "A -> ~~A"])
def test_intuitionistic_theorems(formula, int_logic):
    result = prove(sls(f"=> x:({formula})"), int_logic, use_lin=False)
    assert result.found
    assert check_proof(result.proof, int_logic)
    assert parse_formula(formula) == result.proof.conclusion.succ[0].formula


# -- eliminations ---------------------------------------------------------------

ELIMINATED = {"RC_imp", "R_subset", "R_bot"}
SMALL = ("A", "B")


def test_eliminated_rules_are_not_proof_nodes(int_logic):
    assert not ELIMINATED & set(PERMISSIVE)
    above = axiom_proof("x:A => x:A, x:(B -> A)")
    fake = Proof(LG3IPM, "RC_imp", sls("x:A => x:(B -> A)"), {"principal": "x:(B -> A)"},
                 premises=(above,))
    assert not check_proof(fake, int_logic.with_lin(), "permissive")


def test_subset_elimination_renames_an_implication_into_a_copy(int_logic):
    C = Atom("C")
    p = prove(sls("=> x:(C -> C), y:(C -> C)"), int_logic, use_lin=False).proof
    out = r_subset_mp(p, "x", "y", Imp(C, C), int_logic)
    assert out.conclusion == sls("=> y:(C -> C)")
    assert out.rule == "R_imp_i"
    assert not ELIMINATED & set(out.rules_used())
    assert check_proof(out, int_logic.with_lin(), "permissive")
    assert FALLBACKS.events["search"] == 0


def test_implication_contraction_on_an_axiom(int_logic):
    p = axiom_proof("x:B => x:B, x:(A -> B)")
    out = rc_imp(p, parse_labelled_formula("x:(A -> B)"), int_logic)
    assert out.rule == "R_imp"
    assert out.conclusion == sls("x:B => x:(A -> B)")
    assert check_proof(out, int_logic)


def search_proofs(goals, logic, count, attempts=600):
    """The first ``count`` goals found without lin or fresh labels, with their tags."""
    found = []
    for goal, tag in itertools.islice(goals, attempts):
        result = prove(goal, logic, use_lin=False, allow_fresh=False, max_nodes=3000)
        if result.found:
            found.append((goal, result.proof, tag))
            if len(found) == count:
                break
    return found


def subset_goals(rng):
    """``G => D, x:A, y:A`` with ``G|x`` inside ``G|y``; every other ``A`` comes from ``G|x``."""
    for i in itertools.count():
        shared = [random_formula(rng, 2, SMALL) for _ in range(rng.randint(1, 2))]
        extra = [random_formula(rng, 1, SMALL) for _ in range(rng.randint(0, 1))]
        rest = [LabelledFormula(rng.choice("xy"), random_formula(rng, 1, SMALL))
                for _ in range(rng.randint(0, 1))]
        formula = rng.choice(shared) if i % 2 == 0 else random_formula(rng, 2, SMALL)
        ante = [LabelledFormula("x", f) for f in shared] + [LabelledFormula("y", f) for f in shared + extra]
        succ = rest + [LabelledFormula("x", formula), LabelledFormula("y", formula)]
        yield SimplyLabelledSequent(tuple(ante), tuple(succ)), formula


def contraction_goals(rng):
    """``G => D, x:B, x:(C -> B)``; every other ``B`` also sits in ``G|x``."""
    for i in itertools.count():
        context = [LabelledFormula(rng.choice("xy"), random_formula(rng, 1, SMALL))
                   for _ in range(rng.randint(0, 2))]
        body = random_formula(rng, 2, SMALL)
        if i % 2 == 0:
            context.append(LabelledFormula("x", body))
        principal = LabelledFormula("x", Imp(random_formula(rng, 1, SMALL), body))
        rest = [LabelledFormula(rng.choice("xy"), random_formula(rng, 1, SMALL))
                for _ in range(rng.randint(0, 1))]
        succ = rest + [LabelledFormula("x", body), principal]
        yield SimplyLabelledSequent(tuple(context), tuple(succ)), principal


def bot_goals(rng):
    for i in itertools.count():
        s = random_sls(rng, size=2, depth=2)
        if i % 2 == 0:
            same = LabelledFormula(rng.choice("xy"), random_formula(rng, 2, SMALL))
            s = s.add(ante=[same], succ=[same])
        item = LabelledFormula(rng.choice("xyz"), Bot())
        yield s.add(succ=[item]), item


@pytest.mark.slow
def test_subset_elimination_on_found_proofs(int_logic, rng):
    cases = search_proofs(subset_goals(rng), int_logic, 100)
    assert len(cases) == 100
    for goal, p, formula in cases:
        out = r_subset_mp(p, "x", "y", formula, int_logic)
        assert out.conclusion == goal.remove(succ=[LabelledFormula("x", formula)])
        assert check_proof(out, int_logic.with_lin(), "permissive"), goal.text
        assert not ELIMINATED & set(out.rules_used())
    assert FALLBACKS.events["search"] == 0


@pytest.mark.slow
def test_implication_contraction_on_found_proofs(int_logic, rng):
    cases = search_proofs(contraction_goals(rng), int_logic, 100)
    assert len(cases) == 100
    for goal, p, principal in cases:
        out = rc_imp(p, principal, int_logic)
        body = LabelledFormula("x", principal.formula.right)
        assert out.conclusion == goal.remove(succ=[body])
        assert check_proof(out, int_logic.with_lin(), "permissive"), goal.text
        assert not ELIMINATED & set(out.rules_used())
    assert FALLBACKS.events["search"] == 0


@pytest.mark.slow
def test_bot_elimination_on_found_proofs(int_logic, rng):
    cases = search_proofs(bot_goals(rng), int_logic, 100)
    assert len(cases) == 100
    for goal, p, item in cases:
        out = r_bot_elim(p, item, int_logic)
        assert out.conclusion == goal.remove(succ=[item])
        assert check_proof(out, int_logic, "permissive"), goal.text
        assert not ELIMINATED & set(out.rules_used())
    assert FALLBACKS.events["search"] == 0


# -- soundness and cut ----------------------------------------------------------

def identity_mix(rng, count):
    """Random sequents, every other one closed by an identity at one label."""
    for i in range(count):
        s = random_sls(rng, size=2, depth=2)
        if i % 2 == 0:
            same = LabelledFormula(rng.choice("xy"), random_formula(rng, 2, SMALL))
            s = s.add(ante=[same], succ=[same])
        yield s


@pytest.mark.slow
@pytest.mark.parametrize("name", ["int", "gd", "class"])
def test_found_proofs_hold_in_small_models(name, rng):
    # lin only for linear frames
    logic = builtin_logic(name)
    use_lin = name == "gd"
    checked = logic.with_lin() if use_lin else logic
    proved = 0
    for goal in identity_mix(rng, 200):
        result = prove(goal, logic, use_lin=use_lin, allow_fresh=False, max_nodes=2000)
        if not result.found:
            continue
        proved += 1
        assert check_proof(result.proof, checked, "permissive"), goal.text
        assert valid_in_all(goal, 3, logic.axioms), goal.text
    assert proved >= 50


@pytest.mark.slow
def test_cut_conjecture_on_random_sequents(gd_logic, rng):
    budget = SearchBudget.for_lg3ipm(max_depth=16, max_labels=4)
    trials = []
    for i in range(120):
        s = random_sls(rng, size=2, depth=1)
        if i % 2 == 0:
            atom = LabelledFormula(rng.choice("xy"), Atom(rng.choice(SMALL)))
            s = s.add(ante=[atom], succ=[atom])
            cut = atom
        else:
            cut = LabelledFormula(rng.choice("xy"), random_formula(rng, 1, SMALL))
        trials.append(cut_conjecture_trial(s, cut, gd_logic, budget=budget, allow_fresh=True))
    assert not any(t.violation for t in trials)
    applicable = [t for t in trials if t.applicable]
    assert len(applicable) >= 60
    for t in applicable:
        assert valid_in_all(t.sequent, 3, gd_logic.axioms), t.sequent.text
