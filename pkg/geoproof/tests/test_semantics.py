import numpy as np
import pytest

from geoproof.core.errors import ModelError
from geoproof.core.labels import hs_to_sls, sls_to_hs
from geoproof.core.parser import parse_formula, parse_hypersequent
from geoproof.rules.logics import CHARACTERISTIC_FORMULAS, axiom, builtin_logic
from geoproof.semantics import (
    KripkeModel, all_models, check_frame, enumerate_models, eval_hypersequent, eval_sls, evaluate,
    find_countermodel, forces, preorders, up_sets, valid_in_all,
)

from .conftest import lab, random_sls, sls


def chain():
    return KripkeModel.from_edges(["a", "b"], [("a", "b")], {"b": {"P"}})


def fork():
    return KripkeModel.from_edges(["r", "s", "t"], [("r", "s"), ("r", "t")], {"s": {"P"}})


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_preorder_counts(n, count):
    assert sum(1 for _ in preorders(n)) == count


@pytest.mark.slow
def test_preorder_count_five():
    assert sum(1 for _ in preorders(5)) == 4231


def test_preorders_are_reflexive_and_transitive():
    for rel in preorders(3):
        assert rel.diagonal().all()
        composed = (rel.astype(int) @ rel.astype(int)) > 0
        assert not (composed & ~rel).any()


@pytest.mark.parametrize("max_worlds, atoms, frame, count", [
    (1, ["A"], (), 2),
    (1, [], (), 1),
    (2, ["A"], ("sym",), 8),
])
def test_model_counts(max_worlds, atoms, frame, count):
    axioms = [axiom(name) for name in frame]
    assert sum(1 for _ in enumerate_models(max_worlds, atoms, axioms)) == count


def test_up_sets_of_a_chain():
    rel = np.array([[True, True], [False, True]])
    assert sorted(map(sorted, up_sets(rel))) == [[], [0, 1], [1]]


def test_forcing_is_persistent_and_intuitionistic():
    m = chain()
    P = parse_formula("P")
    assert not forces(m, "a", P)
    assert forces(m, "b", P)
    assert forces(m, "a", parse_formula("~~P"))
    assert not forces(m, "a", parse_formula("P | ~P"))
    assert forces(m, "b", parse_formula("P | ~P"))


@pytest.mark.parametrize("build", [
    lambda: KripkeModel(("a",), np.zeros((1, 1), dtype=bool), (frozenset(),)),
    lambda: KripkeModel.from_edges(["a", "b"], [("a", "b")], {"a": {"P"}}),
    lambda: KripkeModel.from_edges(["a"], [("a", "c")], {}),
    lambda: KripkeModel.from_edges(["a"], [], {"z": {"P"}}),
    lambda: KripkeModel(("a", "b", "c"),
                        np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool),
                        (frozenset(),) * 3),
])
def test_invalid_models_are_rejected(build):
    with pytest.raises(ModelError):
        build()


def test_model_text_round_trip():
    m = KripkeModel.from_text("worlds: a b; rel: a<=b; val: b={P}")
    assert m.edges() == (("a", "b"),)
    again = KripkeModel.from_dict(m.to_dict())
    assert again.to_text() == m.to_text()


def test_labelled_evaluation_is_universal():
    m = chain()
    assert evaluate(m, lab("x<=y ; x:P => y:P"))
    assert not evaluate(m, lab("y<=x ; x:P => y:P"))
    assert evaluate(m, lab("; x:P => y:P")) is False


def test_simply_labelled_evaluation_matches_hypersequents():
    m = fork()
    for text in ["=> P || P =>", "=> P, ~P", "=> ~P || => ~~P", "P => P"]:
        h = parse_hypersequent(text)
        assert eval_sls(m, hs_to_sls(h)) == eval_hypersequent(m, h)


def test_component_with_failing_antecedent_holds():
    m = fork()
    assert eval_sls(m, sls("x:P => x:bot"))
    assert not eval_sls(m, sls("=> x:P"))


def test_frame_conditions_on_a_fork():
    m = fork()
    assert not check_frame(m, axiom("lin"))
    assert not check_frame(m, axiom("dir"))
    assert check_frame(m, axiom("bd2"))
    assert check_frame(chain(), axiom("lin"))
    assert not check_frame(chain(), axiom("sym"))


@pytest.mark.parametrize("logic, worlds", [
    ("class", 2), ("jankov", 3), ("gd", 3), ("bd2", 3),
])
def test_characteristic_formulas_fail_intuitionistically(logic, worlds):
    goal = lab(f"=> x:({CHARACTERISTIC_FORMULAS[logic]})")
    assert find_countermodel(goal, worlds - 1) is None
    found = find_countermodel(goal, worlds)
    assert found is not None
    assert len(found.model.worlds) == worlds
    assert not evaluate(found.model, goal)


@pytest.mark.parametrize("logic", sorted(CHARACTERISTIC_FORMULAS))
def test_characteristic_formulas_hold_on_their_frames(logic):
    goal = lab(f"=> x:({CHARACTERISTIC_FORMULAS[logic]})")
    assert valid_in_all(goal, 3, builtin_logic(logic).axioms)


def test_world_cap():
    with pytest.raises(ValueError):
        valid_in_all(lab("=> x:P"), 9)


def test_component_reading_of_random_sequents(rng):
    models = all_models(3, ["A", "B"])
    checks = 0
    while checks < 500:
        s = random_sls(rng, labels=("x", "y", "z"), size=2, depth=2)
        h = sls_to_hs(s)
        for m in rng.sample(models, min(25, len(models))):
            assert eval_hypersequent(m, h) == eval_sls(m, s), s.text
            checks += 1
