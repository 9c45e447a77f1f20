"""
G3I Admissible Rules
====================
Proof transformations for the rules admissible in G3I: label
substitution, weakening, inversion, contraction, and the relational
substitution rules ``L_sub``/``R_sub`` built with a cut against a
monotonicity derivation.

The transformations take proofs over the primitive rules. Weakening is
decoration: every rule shares its context, so the added item is carried up
to the leaves, with clashing eigenlabels renamed first.
"""

import logging
from collections import Counter
from dataclasses import replace
from typing import Dict, List, Mapping, Optional, Set, Union

from ..core.entities import (
    And, Atom, Bot, Label, LabelledFormula, LabelledSequent, Or, RelAtom, Top,
)
from ..core.errors import RuleApplicationError, ShapeMismatch
from ..core.labels import fresh_label
from ..core.multiset import difference
from ..core.parser import parse_labelled_formula, parse_relatom
from ..core.proof import G3I, Proof
from ..rules.logics import AXIOMS, LogicSpec, axiom
from .calculus import premisses, primitive_rules, structural_rule

log = logging.getLogger(__name__)

Item = Union[RelAtom, LabelledFormula]

# rules whose principal formula is absent from the premisses
_CONSUMING = {"L_and": "ante", "L_or": "ante", "R_and": "succ", "R_or": "succ", "R_imp": "succ"}


def proof_labels(p: Proof) -> Set[Label]:
    return {label for _, node in p.walk() for label in node.conclusion.labels}


def inferred_logic(p: Proof) -> LogicSpec:
    """The logic whose built-in geometric rules ``p`` uses."""
    names = sorted(set(p.rules_used()) & set(AXIOMS))
    return LogicSpec("+".join(names) or "int", tuple(axiom(n) for n in names))


def _eigenlabels(p: Proof, logic: LogicSpec) -> Set[Label]:
    if p.rule == "R_imp":
        return {p.subst["fresh"]}
    schema = structural_rule(p.rule, logic)
    if schema is None:
        return set()
    return {p.subst[v] for group in schema.fresh for v in group}


def _relabel_subst(subst: Mapping[str, str], mapping: Mapping[Label, Label]) -> Dict[str, str]:
    out = {}
    for key, value in subst.items():
        if key in ("principal", "cut") or (key == "formula" and subst.get("side") != "rels"):
            out[key] = parse_labelled_formula(value).relabel(mapping).text
        elif key in ("rel", "formula"):
            out[key] = parse_relatom(value).relabel(mapping).text
        elif key == "side":
            out[key] = value
        else:
            out[key] = mapping.get(value, value)
    return out


# =============================================================================
# LABEL SUBSTITUTION
# =============================================================================

def subst_label(p: Proof, old: Label, new: Label, logic: Optional[LogicSpec] = None) -> Proof:
    """Proof of the endsequent with ``old`` replaced by ``new``.

    Eigenlabels equal to ``new`` are renamed before substituting.
    """
    logic = logic or inferred_logic(p)
    if old == new or old not in p.conclusion.labels:
        return p
    node = p
    if new in _eigenlabels(node, logic):
        z = fresh_label(proof_labels(node) | {old, new})
        node = replace(node, subst=_relabel_subst(node.subst, {new: z}),
                       premises=tuple(subst_label(q, new, z, logic) for q in node.premises))
    mapping = {old: new}
    return replace(
        node,
        conclusion=node.conclusion.relabel(mapping),
        subst=_relabel_subst(node.subst, mapping),
        premises=tuple(subst_label(q, old, new, logic) for q in node.premises),
    )


# =============================================================================
# WEAKENING
# =============================================================================

def _decorate(p: Proof, rels, ante, succ, logic: LogicSpec) -> Proof:
    added = {r.src for r in rels} | {r.dst for r in rels} | {lf.label for lf in ante + succ}
    node = p
    for e in sorted(_eigenlabels(node, logic) & added):
        z = fresh_label(proof_labels(node) | added)
        node = replace(node, subst=_relabel_subst(node.subst, {e: z}),
                       premises=tuple(subst_label(q, e, z, logic) for q in node.premises))
    return replace(
        node,
        conclusion=node.conclusion.add(rels=rels, ante=ante, succ=succ),
        premises=tuple(_decorate(q, rels, ante, succ, logic) for q in node.premises),
    )


def weaken_proof(p: Proof, addition: Item, side: Optional[str] = None,
                 logic: Optional[LogicSpec] = None) -> Proof:
    """Proof of the endsequent with ``addition`` added on ``side``."""
    logic = logic or inferred_logic(p)
    if isinstance(addition, RelAtom):
        return _decorate(p, (addition,), (), (), logic)
    if side not in ("ante", "succ"):
        raise ValueError("a labelled formula is added to 'ante' or 'succ'")
    extra = (addition,)
    return _decorate(p, (), extra if side == "ante" else (), extra if side == "succ" else (),
                     logic)


def weaken_to(p: Proof, target: LabelledSequent, logic: Optional[LogicSpec] = None) -> Proof:
    """Weaken ``p`` up to ``target``, which must contain its endsequent."""
    s = p.conclusion
    rels = difference(target.rels, s.rels)
    ante = difference(target.ante, s.ante)
    succ = difference(target.succ, s.succ)
    out = _decorate(p, rels, ante, succ, logic or inferred_logic(p)) if rels or ante or succ else p
    if out.conclusion != target:
        raise ShapeMismatch(f"{s.text} is not contained in {target.text}")
    return out


# =============================================================================
# INVERSION AND CONTRACTION
# =============================================================================

def _require_primitive(p: Proof, logic: LogicSpec) -> None:
    if p.rule not in primitive_rules(logic):
        raise RuleApplicationError(f"cannot transform past a {p.rule} node")


def invert(p: Proof, rule: str, item: LabelledFormula, logic: Optional[LogicSpec] = None,
           fresh: Optional[Label] = None) -> List[Proof]:
    """Proofs of the premisses of ``rule`` applied to ``item`` in ``p``'s endsequent.

    ``rule`` is one of the rules removing their principal formula; for
    ``R_imp`` the premiss uses ``fresh`` (default: a label new to ``p``).
    """
    logic = logic or inferred_logic(p)
    if rule not in _CONSUMING:
        raise ValueError(f"{rule} keeps its principal formula; weaken instead")
    subst = {"principal": item.text}
    if rule == "R_imp":
        subst["fresh"] = fresh or fresh_label(proof_labels(p))
    targets = premisses(rule, p.conclusion, subst, logic)
    return _invert(p, rule, item, subst, targets, logic)


def _invert(p: Proof, rule: str, item: LabelledFormula, subst: Dict[str, str],
            targets: List[LabelledSequent], logic: LogicSpec) -> List[Proof]:
    if p.rule == rule and p.subst.get("principal") == item.text:
        if rule == "R_imp":
            return [subst_label(p.premises[0], p.subst["fresh"], subst["fresh"], logic)]
        return list(p.premises)
    _require_primitive(p, logic)
    below = []
    for q in p.premises:
        inner = premisses(rule, q.conclusion, subst, logic)
        below.append(_invert(q, rule, item, subst, inner, logic))
    return [Proof(G3I, p.rule, t, p.subst, tuple(b[k] for b in below))
            for k, t in enumerate(targets)]


def contract_proof(p: Proof, duplicate: Item, side: Optional[str] = None,
                   logic: Optional[LogicSpec] = None) -> Proof:
    """Proof of the endsequent with one of two copies of ``duplicate`` removed."""
    logic = logic or inferred_logic(p)
    side = "rels" if isinstance(duplicate, RelAtom) else side
    if side not in ("rels", "ante", "succ"):
        raise ValueError("a labelled formula is contracted in 'ante' or 'succ'")
    if Counter(getattr(p.conclusion, side))[duplicate] < 2:
        raise RuleApplicationError(f"{duplicate.text} does not occur twice in {p.conclusion.text}")
    return _contract(p, duplicate, side, logic)


def _contract(p: Proof, item: Item, side: str, logic: LogicSpec) -> Proof:
    _require_primitive(p, logic)
    s = p.conclusion
    target = s.remove(**{side: [item]})
    consumed = (_CONSUMING.get(p.rule) == side and p.subst.get("principal") == item.text)
    if not consumed:
        # the item is a side formula: contract it in every premiss
        children = tuple(_contract(q, item, side, logic) for q in p.premises)
        return Proof(G3I, p.rule, target, p.subst, children)

    # the other copy survives in the premisses: invert it, then contract the parts
    fresh = fresh_label(proof_labels(p))
    base = s.remove(**{side: [item]})
    children = []
    for j, (q, prem) in enumerate(zip(p.premises, premisses(p.rule, s, p.subst, logic))):
        inverted = invert(q, p.rule, item, logic, fresh)[j]
        if p.rule == "R_imp":
            inverted = subst_label(inverted, fresh, p.subst["fresh"], logic)
        for r in difference(prem.rels, base.rels):
            inverted = _contract(inverted, r, "rels", logic)
        for lf in difference(prem.ante, base.ante):
            inverted = _contract(inverted, lf, "ante", logic)
        for lf in difference(prem.succ, base.succ):
            inverted = _contract(inverted, lf, "succ", logic)
        children.append(inverted)
    return Proof(G3I, p.rule, target, p.subst, tuple(children))


# =============================================================================
# MONOTONICITY AND RELATIONAL SUBSTITUTION
# =============================================================================

def _node(rule: str, s: LabelledSequent, subst: Dict[str, str], logic: LogicSpec,
          build=None) -> Proof:
    prems = premisses(rule, s, subst, logic)
    children = tuple(build(i, prem) for i, prem in enumerate(prems)) if build else ()
    return Proof(G3I, rule, s, subst, children)


def monotonicity_proof(s: LabelledSequent, x: Label, y: Label, formula,
                       logic: Optional[LogicSpec] = None) -> Proof:
    """Proof of ``s``, which holds ``x<=y`` (unless x = y), ``x:A`` on the left
    and ``y:A`` on the right."""
    logic = logic or LogicSpec("int")
    left = LabelledFormula(x, formula)
    right = LabelledFormula(y, formula)
    if left not in s.ante or right not in s.succ:
        raise ShapeMismatch(f"{s.text} lacks {left.text} => {right.text}")
    rel = RelAtom(x, y)
    if x != y and rel not in s.rels:
        raise ShapeMismatch(f"{s.text} lacks {rel.text}")

    if isinstance(formula, Atom):
        subst = {"principal": left.text, "rel": rel.text}
        if rel in s.rels:
            return _node("Ax", s, subst, logic)
        return _node("refl", s, {"x": x}, logic,
                     lambda i, prem: _node("Ax", prem, subst, logic))
    if isinstance(formula, Bot):
        return _node("L_bot", s, {"principal": left.text}, logic)
    if isinstance(formula, Top):
        return _node("R_top", s, {"principal": right.text}, logic)
    if isinstance(formula, And):
        parts = (formula.left, formula.right)
        return _node("L_and", s, {"principal": left.text}, logic, lambda _, prem: _node(
            "R_and", prem, {"principal": right.text}, logic,
            lambda i, leaf: monotonicity_proof(leaf, x, y, parts[i], logic)))
    if isinstance(formula, Or):
        parts = (formula.left, formula.right)
        return _node("L_or", s, {"principal": left.text}, logic, lambda i, prem: _node(
            "R_or", prem, {"principal": right.text}, logic,
            lambda _, leaf: monotonicity_proof(leaf, x, y, parts[i], logic)))

    # implication: R_imp at y, trans to reach the new label from x, L_imp at x
    z = fresh_label(s.labels)

    def at_z(prem: LabelledSequent) -> Proof:
        via = RelAtom(x, z)
        parts = (formula.left, formula.right)
        return _node("L_imp", prem, {"principal": left.text, "rel": via.text}, logic,
                     lambda i, leaf: monotonicity_proof(leaf, z, z, parts[i], logic))

    def after_r_imp(_, prem: LabelledSequent) -> Proof:
        if x == y or RelAtom(x, z) in prem.rels:
            return at_z(prem)
        return _node("trans", prem, {"x": x, "y": y, "z": z}, logic, lambda _, q: at_z(q))

    return _node("R_imp", s, {"principal": right.text, "fresh": z}, logic, after_r_imp)


def derived_rel_rule(p: Proof, kind: str, rel: RelAtom, formula,
                     logic: Optional[LogicSpec] = None) -> Proof:
    """``L_sub``: from ``x<=y; x:A, y:A, G => D`` to ``x<=y; x:A, G => D``.
    ``R_sub``: from ``x<=y; G => D, x:A, y:A`` to ``x<=y; G => D, y:A``.

    The result is a cut node tagged with ``kind``; the cut formula is
    the dropped copy and the other premiss is a monotonicity derivation.
    """
    logic = logic or inferred_logic(p)
    s = p.conclusion
    x, y = rel.src, rel.dst
    at_x = LabelledFormula(x, formula)
    at_y = LabelledFormula(y, formula)
    if rel not in s.rels:
        raise ShapeMismatch(f"{kind}: {rel.text} not in {s.text}")
    if kind == "L_sub":
        if at_x not in s.ante or at_y not in s.ante:
            raise ShapeMismatch(f"L_sub: {s.text} lacks {at_x.text}, {at_y.text} on the left")
        conclusion = s.remove(ante=[at_y])
        mono = monotonicity_proof(conclusion.add(succ=[at_y]), x, y, formula, logic)
        cut = Proof(G3I, "cut", conclusion, {"cut": at_y.text}, (mono, p))
    elif kind == "R_sub":
        if at_x not in s.succ or at_y not in s.succ:
            raise ShapeMismatch(f"R_sub: {s.text} lacks {at_x.text}, {at_y.text} on the right")
        conclusion = s.remove(succ=[at_x])
        mono = monotonicity_proof(conclusion.add(ante=[at_x]), x, y, formula, logic)
        cut = Proof(G3I, "cut", conclusion, {"cut": at_x.text}, (p, mono))
    else:
        raise ValueError(f"kind must be L_sub or R_sub, not {kind!r}")
    log.debug("%s via cut on %s", kind, cut.subst["cut"])
    return cut.tagged(kind)
