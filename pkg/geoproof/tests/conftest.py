"""
Shared fixtures: logics, the worked example and a few parse shortcuts.
"""

import random

import pytest

from geoproof.core.entities import (
    And, Atom, Bot, Imp, LabelledFormula, LabelledSequent, Or, RelAtom, SimplyLabelledSequent, Top, neg,
)
from geoproof.core.parser import parse_labelled, parse_sls
from geoproof.g3i import prove as prove_g3i
from geoproof.lg3ipm import FALLBACKS
from geoproof.rules.logics import builtin_logic

WORKED = "x<=y ; x:(A|B), x:(B->C) => x:A, y:C"
WORKED_UNFOLDING = "x:(A|B), y:(A|B), x:(B->C), y:(B->C) => x:A, x:C, y:C"
SEPARATION = "x<=y ; x:(A|B), y:(B->C) => x:A, y:C"
SEPARATION_UNFOLDING = "x:(A|B), y:(A|B), y:(B->C) => x:A, x:C, y:C"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: larger randomised or exhaustive runs")


@pytest.fixture
def int_logic():
    return builtin_logic("int")


@pytest.fixture
def gd_logic():
    return builtin_logic("gd")


@pytest.fixture
def rng():
    return random.Random(20240617)


@pytest.fixture(autouse=True)
def clean_fallbacks():
    FALLBACKS.reset()
    yield
    FALLBACKS.reset()


@pytest.fixture
def worked_proof(int_logic):
    result = prove_g3i(parse_labelled(WORKED), int_logic)
    assert result.found
    return result.proof


def lab(text):
    return parse_labelled(text)


def sls(text):
    return parse_sls(text)


def random_formula(rng, depth, atoms=("A", "B", "C")):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(tuple(Atom(a) for a in atoms) + (Bot(), Top()))
    kind = rng.choice((And, Or, Imp, neg))
    if kind is neg:
        return neg(random_formula(rng, depth - 1, atoms))
    return kind(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms))


def random_sls(rng, labels=("x", "y"), size=3, depth=2, atoms=("A", "B")):
    """A nonempty simply labelled sequent with at most ``size`` formulas a side."""
    def side():
        return tuple(LabelledFormula(rng.choice(labels), random_formula(rng, depth, atoms))
                     for _ in range(rng.randint(0, size)))
    ante, succ = side(), side()
    if not ante and not succ:
        succ = (LabelledFormula(labels[0], random_formula(rng, depth, atoms)),)
    return SimplyLabelledSequent(ante, succ)


def labelled_goal(rng, i, atoms=("A", "B")):
    """By ``i`` mod 3: ``=> x:F``, the identity ``x:F => x:F`` or persistence ``x<=y ; x:F => y:F``."""
    f = random_formula(rng, 2, atoms)
    at_x, at_y = LabelledFormula("x", f), LabelledFormula("y", f)
    kind = i % 3
    if kind == 0:
        return LabelledSequent((), (), (at_x,))
    if kind == 1:
        return LabelledSequent((), (at_x,), (at_x,))
    return LabelledSequent((RelAtom("x", "y"),), (at_x,), (at_y,))
