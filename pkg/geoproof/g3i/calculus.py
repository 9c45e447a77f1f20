"""
G3I Rules
=========
The labelled calculus: axioms, logical rules, ``refl``/``trans`` and the
geometric rules of a logic, plus the admissible rules accepted by the
permissive checker.

Every rule is described by :func:`premisses`, which maps a conclusion and
an instantiation to the list of premisses. The checker and the search both
go through it.

``subst`` keys per rule:

=============  ===================================================
Ax             principal ``x:P``, rel ``x<=y`` (closes ``y:P``)
L_bot          principal ``x:bot``
R_top          principal ``x:top``
L_and .. R_or  principal
L_imp          principal ``x:(A -> B)``, rel ``x<=y``
R_imp          principal ``x:(A -> B)``, fresh ``y``
refl, trans,   schema variables to labels (``x``, ``y``, ...), fresh
geometric      variables included
W, C           side (``rels``/``ante``/``succ``), formula
cut            cut ``x:A``
L_sub          principal ``x:A``, rel ``x<=y``
R_sub          principal ``y:A``, rel ``x<=y``
=============  ===================================================
"""

import logging
from typing import Dict, List, Mapping, Optional

from ..core.entities import And, Atom, Bot, Imp, LabelledFormula, LabelledSequent, Or, RelAtom, Top
from ..core.errors import FreshnessError, ParseError, RuleApplicationError
from ..core.parser import parse_labelled_formula, parse_relatom
from ..rules.geometric import LabelledRuleSchema, to_labelled_rule
from ..rules.logics import LogicSpec, axiom

log = logging.getLogger(__name__)

LOGICAL = ("Ax", "L_bot", "R_top", "L_and", "R_and", "L_or", "R_or", "L_imp", "R_imp")
BASE_STRUCTURAL = ("refl", "trans")
PERMISSIVE = ("W", "C", "cut", "L_sub", "R_sub")

_BASE_RULES: Dict[str, LabelledRuleSchema] = {
    name: to_labelled_rule(axiom(name), name) for name in BASE_STRUCTURAL
}


def structural_rule(name: str, logic: LogicSpec) -> Optional[LabelledRuleSchema]:
    return _BASE_RULES.get(name) or logic.labelled_rule(name)


def primitive_rules(logic: LogicSpec):
    return LOGICAL + BASE_STRUCTURAL + logic.rule_names


def _formula(subst: Mapping[str, str], key: str = "principal") -> LabelledFormula:
    try:
        return parse_labelled_formula(subst[key])
    except KeyError:
        raise RuleApplicationError(f"instantiation lacks {key!r}") from None
    except ParseError as exc:
        raise RuleApplicationError(f"bad {key!r}: {exc}") from None


def _rel(subst: Mapping[str, str], key: str = "rel"):
    try:
        return parse_relatom(subst[key])
    except KeyError:
        raise RuleApplicationError(f"instantiation lacks {key!r}") from None
    except ParseError as exc:
        raise RuleApplicationError(f"bad {key!r}: {exc}") from None


def _need(condition: bool, message: str) -> None:
    if not condition:
        raise RuleApplicationError(message)


def _shape(lf: LabelledFormula, kind, rule: str) -> None:
    _need(isinstance(lf.formula, kind), f"{rule}: {lf.text} has the wrong main connective")


def premisses(rule: str, s: LabelledSequent, subst: Mapping[str, str],
              logic: LogicSpec, permissive: bool = False) -> List[LabelledSequent]:
    """Premisses of ``rule`` instantiated by ``subst`` with conclusion ``s``."""
    if rule == "Ax":
        p = _formula(subst)
        r = _rel(subst)
        _shape(p, Atom, rule)
        _need(p.label == r.src, "Ax: relation does not start at the principal label")
        _need(r in s.rels, f"Ax: {r.text} not in the conclusion")
        _need(p in s.ante, f"Ax: {p.text} not in the antecedent")
        _need(LabelledFormula(r.dst, p.formula) in s.succ,
              f"Ax: {r.dst}:{p.formula.text} not in the succedent")
        return []
    if rule == "L_bot":
        p = _formula(subst)
        _shape(p, Bot, rule)
        _need(p in s.ante, f"L_bot: {p.text} not in the antecedent")
        return []
    if rule == "R_top":
        p = _formula(subst)
        _shape(p, Top, rule)
        _need(p in s.succ, f"R_top: {p.text} not in the succedent")
        return []
    if rule in ("L_and", "L_or"):
        p = _formula(subst)
        _shape(p, And if rule == "L_and" else Or, rule)
        _need(p in s.ante, f"{rule}: {p.text} not in the antecedent")
        rest = s.remove(ante=[p])
        left = LabelledFormula(p.label, p.formula.left)
        right = LabelledFormula(p.label, p.formula.right)
        if rule == "L_and":
            return [rest.add(ante=[left, right])]
        return [rest.add(ante=[left]), rest.add(ante=[right])]
    if rule in ("R_and", "R_or"):
        p = _formula(subst)
        _shape(p, And if rule == "R_and" else Or, rule)
        _need(p in s.succ, f"{rule}: {p.text} not in the succedent")
        rest = s.remove(succ=[p])
        left = LabelledFormula(p.label, p.formula.left)
        right = LabelledFormula(p.label, p.formula.right)
        if rule == "R_and":
            return [rest.add(succ=[left]), rest.add(succ=[right])]
        return [rest.add(succ=[left, right])]
    if rule == "L_imp":
        p = _formula(subst)
        r = _rel(subst)
        _shape(p, Imp, rule)
        _need(p in s.ante, f"L_imp: {p.text} not in the antecedent")
        _need(r.src == p.label and r in s.rels, f"L_imp: {r.text} not usable")
        return [s.add(succ=[LabelledFormula(r.dst, p.formula.left)]),
                s.add(ante=[LabelledFormula(r.dst, p.formula.right)])]
    if rule == "R_imp":
        p = _formula(subst)
        _shape(p, Imp, rule)
        _need(p in s.succ, f"R_imp: {p.text} not in the succedent")
        y = subst.get("fresh")
        _need(bool(y), "R_imp: no fresh label given")
        if y in s.labels:
            raise FreshnessError(f"R_imp: label {y} is not fresh")
        return [s.remove(succ=[p]).add(
            rels=[RelAtom(p.label, y)],
            ante=[LabelledFormula(y, p.formula.left)],
            succ=[LabelledFormula(y, p.formula.right)])]

    schema = structural_rule(rule, logic)
    if schema is not None:
        return schema.premisses_for(s, subst)

    if not permissive:
        raise RuleApplicationError(f"unknown rule {rule!r}")
    return _admissible(rule, s, subst)


def _admissible(rule: str, s: LabelledSequent, subst: Mapping[str, str]) -> List[LabelledSequent]:
    if rule in ("W", "C"):
        side = subst.get("side")
        _need(side in ("rels", "ante", "succ"), f"{rule}: side must be rels, ante or succ")
        item = _rel(subst, "formula") if side == "rels" else _formula(subst, "formula")
        present = item in getattr(s, side)
        _need(present, f"{rule}: {item.text} not in the conclusion")
        if rule == "W":
            return [s.remove(**{side: [item]})]
        return [s.add(**{side: [item]})]
    if rule == "cut":
        c = _formula(subst, "cut")
        return [s.add(succ=[c]), s.add(ante=[c])]
    if rule == "L_sub":
        p = _formula(subst)
        r = _rel(subst)
        _need(r in s.rels and r.src == p.label, f"L_sub: {r.text} not usable")
        _need(p in s.ante, f"L_sub: {p.text} not in the antecedent")
        return [s.add(ante=[LabelledFormula(r.dst, p.formula)])]
    if rule == "R_sub":
        p = _formula(subst)
        r = _rel(subst)
        _need(r in s.rels and r.dst == p.label, f"R_sub: {r.text} not usable")
        _need(p in s.succ, f"R_sub: {p.text} not in the succedent")
        return [s.add(succ=[LabelledFormula(r.src, p.formula)])]
    raise RuleApplicationError(f"unknown rule {rule!r}")
