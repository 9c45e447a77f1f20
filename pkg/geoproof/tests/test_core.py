import itertools

import pytest

from geoproof.core.entities import (
    And, Atom, Bot, Imp, LabelledFormula, LabelledSequent, Or, RelAtom, SimplyLabelledSequent, neg,
)
from geoproof.core.errors import ParseError
from geoproof.core.labels import (
    backward_labels, canonicalize_labelled, canonicalize_labels, forward_labels, fresh_label, fresh_labels, hs_to_sls,
    is_subset_modulo_perm, slice_included, sls_to_hs, subset_modulo_perm, transitive_closure,
)
from geoproof.core.multiset import contains, difference, minus
from geoproof.core.parser import (
    parse_formula, parse_hypersequent, parse_labelled_formula, parse_sequent,
)
from geoproof.core.proof import LG3IPM, CheckResult, Proof
from geoproof.core.render import render

from .conftest import lab, random_formula, sls

A, B, C = Atom("A"), Atom("B"), Atom("C")


@pytest.mark.parametrize("text, expected", [
    ("A -> B -> C", Imp(A, Imp(B, C))),
    ("A | B & C", Or(A, And(B, C))),
    ("A & B | C", Or(And(A, B), C)),
    ("~A | ~~A", Or(neg(A), neg(neg(A)))),
    ("(A -> B) | (B -> A)", Or(Imp(A, B), Imp(B, A))),
    ("bot", Bot()),
])
def test_formula_precedence(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text", [
    "A -> B -> C", "(A -> B) -> C", "~(A & B)", "A | B | C", "A | (B | C)",
    "(A -> B) | (B -> A)", "B | (B -> A | ~A)", "top & bot",
])
def test_formula_text_reparses(text):
    f = parse_formula(text)
    assert parse_formula(f.text) == f


def test_sequent_text_reparses():
    s = lab("x<=y, y<=z ; x:(A|B), y:(B->C) => x:A, z:C")
    assert lab(s.text) == s
    t = sls("x:(A|B), y:(A|B) => x:A, y:C")
    assert sls(t.text) == t


def test_sequents_are_multisets():
    assert lab("; x:A, x:A => x:B") != lab("; x:A => x:B")
    assert sls("x:A, y:B => x:C") == sls("y:B, x:A => x:C")


def test_parse_sequent_by_kind():
    assert parse_sequent("x<=y ; x:A => y:A") == lab("x<=y ; x:A => y:A")
    assert parse_sequent("x:A => y:A", "sls") == sls("x:A => y:A")
    assert parse_sequent("A => B || => A", "hypersequent") == parse_hypersequent("A => B || => A")
    with pytest.raises(ParseError):
        parse_sequent("A => B", "tableau")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_formula("A & & B")
    assert info.value.column is not None


def test_closure_and_label_sets():
    closure = transitive_closure([RelAtom("x", "y"), RelAtom("y", "z")])
    assert RelAtom("x", "z") in closure
    assert forward_labels(closure, "x") == {"y", "z"}
    assert backward_labels(closure, "z") == {"x", "y"}
    assert transitive_closure([]) == frozenset()


def test_slice_inclusion():
    s = sls("x:A, y:A, y:B => x:C")
    assert slice_included(s, "x", "y")
    assert not slice_included(s, "y", "x")
    doubled = sls("x:A, x:A, y:A => ")
    assert not slice_included(doubled, "x", "y")


def test_subset_modulo_permutation():
    small = sls("u:A, v:B => ").ante
    big = sls("x:A, x:B, y:B => ").ante
    assert is_subset_modulo_perm(small, big)
    assert not is_subset_modulo_perm(sls("u:A, v:A => ").ante, big)


def test_canonical_labels_ignore_names():
    s1 = sls("x:A, y:B => y:C")
    s2 = sls("p:A, q:B => q:C")
    assert canonicalize_labels(s1) == canonicalize_labels(s2)
    assert canonicalize_labels(s1) != canonicalize_labels(sls("x:A, y:B => x:C"))


def test_fresh_labels():
    assert fresh_label({"w0", "x"}) == "w1"
    assert fresh_labels({"w1"}, 2) == ["w0", "w2"]


def test_hypersequent_round_trip():
    h = parse_hypersequent("A => B || B, C => A")
    s = hs_to_sls(h)
    assert len(s.labels) == 2
    assert sls_to_hs(s) == h


def test_multiset_helpers():
    assert contains((1, 1, 2), (1, 2))
    assert not contains((1, 2), (1, 1))
    assert minus((1, 1, 2), (1,)) == (1, 2)
    assert difference((1, 1, 2), (1, 3)) == (1, 2)
    with pytest.raises(ValueError):
        minus((1,), (2,))


def test_proof_json_round_trip():
    leaf = Proof(LG3IPM, "Ax", sls("x:A => x:A"), {"principal": "x:A"})
    top = Proof(LG3IPM, "W", sls("x:A, x:B => x:A"), {"side": "ante", "formula": "x:B"},
                (leaf,), "demo")
    again = Proof.from_dict(top.to_dict())
    assert again.structurally_equal(top)
    assert again.derived == "demo"
    assert top.depth == 2 and top.size == 2
    assert top.rules_used() == {"W": 1, "Ax": 1}


def test_check_result_describe():
    assert CheckResult.success().describe() == "valid"
    failed = CheckResult.failure((0, 1), "Ax", "no axiom")
    assert not failed
    assert "0/1" in failed.describe()


def test_render_formats():
    lf = parse_labelled_formula("x:(A -> B)")
    assert render(lf) == lf.text
    assert "\\supset" in render(lf, "latex")
    assert '"text"' in render(lf, "json")
    with pytest.raises(ValueError):
        render(lf, "html")
    assert LabelledFormula("x", A).text == "x:A"


def test_labelled_formula_body_must_be_parenthesised():
    assert parse_labelled_formula("x:(A | B)") == LabelledFormula("x", Or(A, B))
    assert parse_labelled_formula("x:bot") == LabelledFormula("x", Bot())
    assert LabelledFormula("x", neg(A)).text == "x:(~A)"
    for text in ("x:A|B", "x:A -> B", "x:~A", "x:A & B"):
        with pytest.raises(ParseError):
            parse_labelled_formula(text)
    with pytest.raises(ParseError):
        lab("x<=y ; x:A|B => y:A")


# -- randomised ---------------------------------------------------------------

LABELS = ("x", "y", "z")


def random_labelled(rng, labels=LABELS, depth=2):
    return LabelledFormula(rng.choice(labels), random_formula(rng, depth))


def test_rendered_formulas_reparse(rng):
    for _ in range(300):
        f = random_formula(rng, 4)
        assert parse_formula(render(f)) == f
        lf = LabelledFormula(rng.choice(LABELS), f)
        assert parse_labelled_formula(render(lf)) == lf


def test_rendered_sequents_reparse(rng):
    for _ in range(100):
        s = SimplyLabelledSequent(
            tuple(random_labelled(rng) for _ in range(rng.randint(0, 3))),
            tuple(random_labelled(rng) for _ in range(rng.randint(0, 3))))
        assert sls(render(s)) == s
        rels = tuple(RelAtom(rng.choice(LABELS), rng.choice(LABELS)) for _ in range(rng.randint(1, 3)))
        t = LabelledSequent(rels, s.ante, s.succ)
        assert lab(render(t)) == t


def random_small_labelled(rng):
    labels = LABELS[:rng.randint(1, 3)]
    rels = tuple(RelAtom(rng.choice(labels), rng.choice(labels)) for _ in range(rng.randint(0, 2)))
    ante = tuple(LabelledFormula(rng.choice(labels), rng.choice((A, B)))
                 for _ in range(rng.randint(0, 2)))
    succ = tuple(LabelledFormula(rng.choice(labels), rng.choice((A, B)))
                 for _ in range(rng.randint(0, 2)))
    return LabelledSequent(rels, ante, succ)


def renamings_agree(s, t):
    if len(s.labels) != len(t.labels):
        return False
    source = sorted(s.labels)
    return any(s.relabel(dict(zip(source, image))) == t
               for image in itertools.permutations(sorted(t.labels)))


def test_canonical_labelled_form_matches_renaming(rng):
    agreed = 0
    for _ in range(300):
        s = random_small_labelled(rng)
        if rng.random() < 0.5:
            image = list(("p", "q", "r")[:len(s.labels)])
            rng.shuffle(image)
            t = s.relabel(dict(zip(sorted(s.labels), image)))
        else:
            t = random_small_labelled(rng)
        same = canonicalize_labelled(s) == canonicalize_labelled(t)
        assert same == renamings_agree(s, t), (s.text, t.text)
        agreed += same
    assert agreed >= 100


def brute_force_embedding(g1, g2):
    small = sorted({lf.label for lf in g1})
    big = sorted({lf.label for lf in g2})
    for image in itertools.permutations(big, len(small)):
        mapping = dict(zip(small, image))
        moved = [lf.relabel(mapping) for lf in g1]
        if contains(tuple(sorted(g2)), tuple(sorted(moved))):
            return True
    return False


def test_subset_modulo_perm_matches_brute_force(rng):
    for _ in range(300):
        g1 = [LabelledFormula(rng.choice(("u", "v")), rng.choice((A, B)))
              for _ in range(rng.randint(0, 3))]
        g2 = [LabelledFormula(rng.choice(LABELS), rng.choice((A, B)))
              for _ in range(rng.randint(0, 4))]
        found = subset_modulo_perm(g1, g2)
        assert (found is not None) == brute_force_embedding(g1, g2), (g1, g2)
        if found is not None:
            assert contains(tuple(sorted(g2)), tuple(sorted(lf.relabel(found) for lf in g1)))
