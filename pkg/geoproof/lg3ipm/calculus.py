"""
LG3ipm Rules
============
The simply labelled calculus: same-label logical rules, the structural
rules of a logic in simply labelled form, and the admissible rules the
permissive checker accepts.

``subst`` keys per rule:

=============  ===================================================
Ax             principal ``x:P`` (closes ``x:P`` on the right)
L_bot, R_top   principal
L_and .. R_or  principal
L_imp          principal ``x:(A -> B)``; the right premiss drops it
R_imp          principal ``x:(A -> B)``; the premiss drops every other
               ``x`` formula of the succedent
structural     schema labels to labels, optional variable values
               (``G1``, ``D2``, ... as comma separated formulas)
L_imp_i        as ``L_imp``, principal kept in both premisses
R_imp_i        principal, fresh ``z``: adds ``z:(G|x), z:A => z:B``
W, C           side (``ante``/``succ``), formula
subst          old, new: the premiss relabelled ``old`` to ``new``
=============  ===================================================
"""

import logging
import re
from typing import Dict, List, Mapping, Optional, Tuple

from ..core.entities import And, Atom, Bot, Formula, Imp, LabelledFormula, Or, SimplyLabelledSequent, Top
from ..core.errors import FreshnessError, ParseError, RuleApplicationError
from ..core.parser import parse_formula, parse_labelled_formula
from ..rules.hypersequent import SlsInstance, SlsRuleSchema, instantiate
from ..rules.logics import LogicSpec

log = logging.getLogger(__name__)

LOGICAL = ("Ax", "L_bot", "R_top", "L_and", "R_and", "L_or", "R_or", "L_imp", "R_imp")
PERMISSIVE = ("L_imp_i", "R_imp_i", "W", "C", "subst")

_VARIABLE = re.compile(r"^[GD][0-9]+$")


def primitive_rules(logic: LogicSpec) -> Tuple[str, ...]:
    return LOGICAL + logic.rule_names


def _need(condition: bool, message: str) -> None:
    if not condition:
        raise RuleApplicationError(message)


def _formula(subst: Mapping[str, str], key: str = "principal") -> LabelledFormula:
    try:
        return parse_labelled_formula(subst[key])
    except KeyError:
        raise RuleApplicationError(f"instantiation lacks {key!r}") from None
    except ParseError as exc:
        raise RuleApplicationError(f"bad {key!r}: {exc}") from None


def _shape(lf: LabelledFormula, kind, rule: str) -> None:
    _need(isinstance(lf.formula, kind), f"{rule}: {lf.text} has the wrong main connective")


def _label(subst: Mapping[str, str], key: str, rule: str) -> str:
    value = subst.get(key)
    _need(bool(value), f"{rule}: no {key!r} label given")
    return value


# =============================================================================
# STRUCTURAL RULE INSTANCES
# =============================================================================

def _values(text: str) -> Tuple[Formula, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    return tuple(parse_formula(p) for p in parts)


def split_structural_subst(subst: Mapping[str, str]) -> Tuple[Dict[str, str], Dict[str, Tuple[Formula, ...]]]:
    """Label map and explicit variable values of a structural node."""
    label_map, given = {}, {}
    for key, value in subst.items():
        if _VARIABLE.match(key):
            try:
                given[key] = _values(value)
            except ParseError as exc:
                raise RuleApplicationError(f"bad value for {key}: {exc}") from None
        else:
            label_map[key] = value
    return label_map, given


def structural_instance(schema: SlsRuleSchema, s: SimplyLabelledSequent,
                        subst: Mapping[str, str], resolve: bool = False) -> SlsInstance:
    """Instance of ``schema`` on ``s``; ``resolve`` ignores explicit values."""
    label_map, given = split_structural_subst(subst)
    return instantiate(schema, s, label_map, None if resolve else given)


# =============================================================================
# PREMISSES
# =============================================================================

def premisses(rule: str, s: SimplyLabelledSequent, subst: Mapping[str, str],
              logic: LogicSpec, permissive: bool = False) -> List[SimplyLabelledSequent]:
    """Premisses of ``rule`` instantiated by ``subst`` with conclusion ``s``.

    ``subst`` nodes are not covered: their premiss is not a function of the
    conclusion, see :func:`subst_matches`.
    """
    if rule == "Ax":
        p = _formula(subst)
        _shape(p, Atom, rule)
        _need(p in s.ante, f"Ax: {p.text} not in the antecedent")
        _need(p in s.succ, f"Ax: {p.text} not in the succedent")
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
    if rule in ("L_imp", "L_imp_i"):
        if rule == "L_imp_i" and not permissive:
            raise RuleApplicationError("L_imp_i is not a primitive rule")
        p = _formula(subst)
        _shape(p, Imp, rule)
        _need(p in s.ante, f"{rule}: {p.text} not in the antecedent")
        left = s.add(succ=[LabelledFormula(p.label, p.formula.left)])
        body = LabelledFormula(p.label, p.formula.right)
        right = s.add(ante=[body]) if rule == "L_imp_i" else s.remove(ante=[p]).add(ante=[body])
        return [left, right]
    if rule == "R_imp":
        p = _formula(subst)
        _shape(p, Imp, rule)
        _need(p in s.succ, f"R_imp: {p.text} not in the succedent")
        kept = tuple(lf for lf in s.succ if lf.label != p.label)
        return [SimplyLabelledSequent(
            s.ante + (LabelledFormula(p.label, p.formula.left),),
            kept + (LabelledFormula(p.label, p.formula.right),))]

    schema = logic.sls_rule(rule)
    if schema is not None:
        return list(structural_instance(schema, s, subst).premisses)

    if not permissive:
        raise RuleApplicationError(f"unknown rule {rule!r}")
    return _admissible(rule, s, subst)


def _admissible(rule: str, s: SimplyLabelledSequent,
                subst: Mapping[str, str]) -> List[SimplyLabelledSequent]:
    if rule == "R_imp_i":
        p = _formula(subst)
        _shape(p, Imp, rule)
        _need(p in s.succ, f"R_imp_i: {p.text} not in the succedent")
        z = _label(subst, "fresh", rule)
        if z in s.labels:
            raise FreshnessError(f"R_imp_i: label {z} is not fresh")
        copy = tuple(LabelledFormula(z, f) for f in s.ante_slice(p.label))
        return [s.add(ante=copy + (LabelledFormula(z, p.formula.left),),
                      succ=[LabelledFormula(z, p.formula.right)])]
    if rule in ("W", "C"):
        side = subst.get("side")
        _need(side in ("ante", "succ"), f"{rule}: side must be ante or succ")
        item = _formula(subst, "formula")
        _need(item in getattr(s, side), f"{rule}: {item.text} not in the conclusion")
        if rule == "W":
            return [s.remove(**{side: [item]})]
        return [s.add(**{side: [item]})]
    if rule == "subst":
        raise RuleApplicationError("subst premisses are not determined by the conclusion")
    raise RuleApplicationError(f"unknown rule {rule!r}")


def subst_matches(node_conclusion: SimplyLabelledSequent, subst: Mapping[str, str],
                  premise: SimplyLabelledSequent) -> Optional[str]:
    """Reason a label substitution node is wrong, or None when it is right."""
    old, new = subst.get("old"), subst.get("new")
    if not old or not new:
        return "subst needs 'old' and 'new'"
    if premise.relabel({old: new}) != node_conclusion:
        return f"premiss with {old} renamed to {new} is not the conclusion"
    return None


def fresh_of(rule: str, subst: Mapping[str, str], logic: LogicSpec) -> Tuple[str, ...]:
    """Labels a node introduces in its premisses."""
    if rule == "R_imp_i":
        return (subst["fresh"],) if subst.get("fresh") else ()
    schema = logic.sls_rule(rule)
    if schema is None:
        return ()
    return tuple(subst[z] for group in schema.fresh for z in group if z in subst)


def relabel_subst(subst: Mapping[str, str], mapping: Mapping[str, str]) -> Dict[str, str]:
    """``subst`` of a node whose labels are renamed by ``mapping``."""
    out = {}
    for key, value in subst.items():
        if key in ("principal", "formula"):
            out[key] = parse_labelled_formula(value).relabel(mapping).text
        elif key == "side" or _VARIABLE.match(key):
            out[key] = value
        else:
            out[key] = mapping.get(value, value)
    return out
