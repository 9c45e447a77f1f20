import itertools

import pytest

from geoproof.core.errors import FreshnessError, ParseError, RuleApplicationError, UnknownLogicError
from geoproof.core.parser import parse_formula
from geoproof.rules import (
    analyze_rule, axiom, builtin_logic, instantiate, load_logic, parse_geometric_implication,
    parse_hs_rule, to_hypersequent_rule,
)

from .conftest import lab, sls


def test_builtin_rule_names(gd_logic, int_logic):
    assert gd_logic.rule_names == ("lin",)
    assert int_logic.rule_names == ()
    assert builtin_logic("class").rule_names == ("sym",)


def test_with_lin():
    extended = builtin_logic("int").with_lin()
    assert extended.has_lin
    assert extended.rule_names == ("lin",)
    gd = builtin_logic("gd")
    assert gd.with_lin() is gd


def test_unknown_logic():
    with pytest.raises(UnknownLogicError):
        builtin_logic("s4")
    with pytest.raises(UnknownLogicError):
        load_logic("custom:/nonexistent/axioms.txt")


def test_custom_logic_file(tmp_path):
    path = tmp_path / "mine.geo"
    path.write_text("# linearity, spelled differently\ntrue => x<=y || y<=x\n")
    logic = load_logic(f"custom:{path}")
    assert logic.name == "mine"
    assert logic.rule_names == ("lin",)
    assert logic.has_lin


def test_custom_logic_file_reports_line(tmp_path):
    path = tmp_path / "broken.geo"
    path.write_text("true => x<=y\nx<=y => \n")
    with pytest.raises(ParseError, match=":2:"):
        load_logic(f"custom:{path}")


def test_geometric_implication_scoping():
    gi = parse_geometric_implication("x<=y => ex z. y<=z & z<=x")
    assert gi.universals == ("x", "y")
    assert gi.alternatives[0].exists == ("z",)
    with pytest.raises(ParseError):
        parse_geometric_implication("x<=y => ex x. x<=y")


def test_labelled_rules():
    dir_rule = builtin_logic("jankov").labelled_rules[0]
    assert dir_rule.has_fresh
    assert dir_rule.fresh == (("z",),)
    lin_rule = builtin_logic("gd").labelled_rules[0]
    assert not lin_rule.has_fresh
    assert len(lin_rule.premisses) == 2


def test_labelled_rule_instance():
    rule = builtin_logic("jankov").labelled_rules[0]
    s = lab("x<=y ; x:A => y:B")
    subst = rule.with_fresh(s, {"x": "x", "y": "y"})
    assert subst["z"] not in s.labels
    (premiss,) = rule.premisses_for(s, subst)
    assert len(premiss.rels) == 3
    with pytest.raises(FreshnessError):
        rule.premisses_for(s, {"x": "x", "y": "y", "z": "y"})


def test_principal_atoms_must_occur():
    rule = builtin_logic("class").labelled_rules[0]
    with pytest.raises(RuleApplicationError):
        rule.premisses_for(lab("; x:A => y:A"), {"x": "x", "y": "y"})
    assert list(rule.matches(lab("x<=y ; => "))) == [{"x": "x", "y": "y"}]


def test_lin_hypersequent_rule():
    r = to_hypersequent_rule(axiom("lin"), "lin")
    assert r.text == ("lin: H || G1 => D1, D2 || G1, G2 => D2  &  "
                      "H || G1, G2 => D1 || G2 => D1, D2  /  H || G1 => D1 || G2 => D2")
    assert analyze_rule(r) == {
        "linear_conclusion": True, "subformula_property": True, "context_sharing": True}
    assert parse_hs_rule(r.text).shape() == r.shape()


def test_symmetry_merges_components():
    r = to_hypersequent_rule(axiom("sym"), "sym")
    (premiss,) = r.premisses
    assert len(premiss) == 1
    assert premiss[0].ante == ("G1", "G2")
    assert not analyze_rule(r)["linear_conclusion"]


def test_sls_lin_schema(gd_logic):
    rule = gd_logic.sls_rule("lin")
    assert rule.labels == ("x", "y")
    assert len(rule.premisses) == 2
    assert rule.fresh == ((), ())


def test_directedness_sls_schema_has_fresh_component():
    rule = builtin_logic("jankov").sls_rules[0]
    assert rule.fresh == (("z",),)
    assert len(rule.premisses[0]) == 3


def test_instantiate_lin(gd_logic):
    rule = gd_logic.sls_rule("lin")
    inst = instantiate(rule, sls("x:A => x:B, y:C"), {"x": "x", "y": "y"})
    assert inst.values["G1"] == (parse_formula("A"),)
    assert inst.values["G2"] == ()
    assert inst.premisses == (
        sls("x:A, y:A => x:B, x:C, y:C"),
        sls("x:A => x:B, y:B, y:C"),
    )


def test_instantiate_rejects_non_fresh_label():
    rule = builtin_logic("jankov").sls_rules[0]
    with pytest.raises(FreshnessError):
        instantiate(rule, sls("x:A => y:B"), {"x": "x", "y": "y", "z": "y"})


def test_hypersequent_parse_error():
    with pytest.raises(ParseError):
        parse_hs_rule("lin: H || G1 => D1 /")


# -- generated rules against their expected forms ------------------------------

DIR_HS = "dir: H || G1 => D1 || G2 => D2 || G1, G2 =>  /  H || G1 => D1 || G2 => D2"
BD2_HS = ("bd2: H || G1, G2 => D1, D2, D3 || G1, G2, G3 => D3  &  "
          "H || G1 => D1, D2, D3 || G1, G2, G3 => D2, D3  /  "
          "H || G1 => D1, D2, D3 || G1, G2 => D2, D3 || G1, G2, G3 => D3")


def renamed_shape(schema, order):
    """Shape of ``schema`` with variable index i renamed to ``order[i - 1]``."""
    def rename(vs):
        return tuple(sorted(f"{v[0]}{order[int(v[1:]) - 1]}" for v in vs))

    def comps(cs):
        return tuple(sorted((rename(c.ante), rename(c.succ)) for c in cs))
    return comps(schema.conclusion), tuple(comps(p) for p in schema.premisses)


def same_up_to_renaming(generated, expected):
    n = len({v[1:] for c in expected.conclusion for v in c.ante + c.succ})
    target = renamed_shape(generated, list(range(1, n + 1)))
    return any(renamed_shape(expected, list(order)) == target
               for order in itertools.permutations(range(1, n + 1)))


@pytest.mark.parametrize("name, text", [("dir", DIR_HS), ("bd2", BD2_HS)])
def test_hypersequent_rule_matches_expected_form(name, text):
    generated = to_hypersequent_rule(axiom(name), name)
    assert same_up_to_renaming(generated, parse_hs_rule(text))
    assert same_up_to_renaming(parse_hs_rule(generated.text), parse_hs_rule(text))


def test_bd2_conclusion_is_not_linear():
    r = to_hypersequent_rule(axiom("bd2"), "bd2")
    assert not analyze_rule(r)["linear_conclusion"]
    assert analyze_rule(to_hypersequent_rule(axiom("dir"), "dir"))["linear_conclusion"]


def components_match(components, expected):
    """``expected`` lists (labels, ante, succ); a merged component may sit at any of its labels."""
    if len(components) != len(expected):
        return False
    left = list(expected)
    for c in components:
        hit = next((e for e in left if (c.ante, c.succ) == e[1:] and c.label in e[0]), None)
        if hit is None:
            return False
        left.remove(hit)
    return True


def test_dir_sls_rule_matches_expected_form():
    rule = builtin_logic("jankov").sls_rule("dir")
    assert rule.labels == ("x", "y")
    assert rule.fresh == (("z",),)
    assert components_match(rule.conclusion, [("x", ("G1",), ("D1",)), ("y", ("G2",), ("D2",))])
    (premiss,) = rule.premisses
    assert components_match(premiss, [
        ("x", ("G1",), ("D1",)), ("y", ("G2",), ("D2",)), ("z", ("G1", "G2"), ())])


def test_bd2_sls_rule_matches_expected_form():
    rule = builtin_logic("bd2").sls_rule("bd2")
    assert rule.labels == ("x", "y", "z")
    assert rule.fresh == ((), ())
    assert components_match(rule.conclusion, [
        ("x", ("G1",), ("D1", "D2", "D3")),
        ("y", ("G1", "G2"), ("D2", "D3")),
        ("z", ("G1", "G2", "G3"), ("D3",)),
    ])
    first, second = rule.premisses
    assert components_match(first, [
        ("xy", ("G1", "G2"), ("D1", "D2", "D3")),
        ("z", ("G1", "G2", "G3"), ("D3",)),
    ])
    assert components_match(second, [
        ("x", ("G1",), ("D1", "D2", "D3")),
        ("yz", ("G1", "G2", "G3"), ("D2", "D3")),
    ])


def test_bd2_sls_instance():
    rule = builtin_logic("bd2").sls_rule("bd2")
    s = sls("x:A, y:A, y:B, z:A, z:B, z:C => x:P, x:Q, x:R, y:Q, y:R, z:R")
    inst = instantiate(rule, s, {"x": "x", "y": "y", "z": "z"})
    assert inst.values["G1"] == (parse_formula("A"),)
    assert inst.values["G3"] == (parse_formula("C"),)
    first, second = inst.premisses
    assert first == sls("x:A, x:B, z:A, z:B, z:C => x:P, x:Q, x:R, z:R")
    assert second == sls("x:A, y:A, y:B, y:C => x:P, x:Q, x:R, y:Q, y:R")
