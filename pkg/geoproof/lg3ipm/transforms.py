"""
LG3ipm Proof Transformations
============================
The admissible rules of the simply labelled calculus as operations on
proofs: label substitution, weakening, contraction, inversion and the
eliminations of ``R_bot``, ``RC_imp`` and the slice-subset rule.

Retargeting re-instantiates the root rule on a new endsequent and carries
each premiss over to the premiss the rule now asks for. A node that cannot
be carried over is closed directly, replaced by one of its premisses,
contracted, or proved again by bounded search, in that order.

The three eliminations rewrite a proof bottom-up. Nodes that do not touch
the removed formula are re-instantiated; the cases where it is principal,
or where a left rule changes the slices it depends on, are built
explicitly. A case with no construction is proved again by search. Search
and contraction covers are counted in ``FALLBACKS``.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Set

from .. import config
from ..core.entities import And, Bot, Imp, Label, LabelledFormula, Or, SimplyLabelledSequent
from ..core.errors import GeoproofError, RuleApplicationError, ShapeMismatch
from ..core.labels import fresh_label, slice_included
from ..core.multiset import contains, difference
from ..core.parser import parse_labelled_formula
from ..core.proof import LG3IPM, Proof, SearchBudget
from ..g3i.admissible import inferred_logic
from ..rules.hypersequent import instantiate
from ..rules.logics import LogicSpec
from .calculus import (
    fresh_of, premisses, primitive_rules, relabel_subst, split_structural_subst, structural_instance,
)
from .checker import node_failure
from .search import close, prove

log = logging.getLogger(__name__)


@dataclass
class FallbackCounter:
    """Places where a transformation did not go through rule by rule."""
    events: Counter = field(default_factory=Counter)

    def record(self, kind: str, s: SimplyLabelledSequent) -> None:
        self.events[kind] += 1
        if kind == "search":
            log.warning("fallback to search at %s", s.text)
        else:
            log.info("%s node kept at %s", kind, s.text)

    @property
    def total(self) -> int:
        return sum(self.events.values())

    def reset(self) -> None:
        self.events.clear()


FALLBACKS = FallbackCounter()


class _Stuck(GeoproofError):
    pass


def node(rule: str, s: SimplyLabelledSequent, subst: Dict[str, str], premises=(),
         derived: Optional[str] = None) -> Proof:
    return Proof(LG3IPM, rule, s, dict(subst), tuple(premises), derived)


def proof_labels(p: Proof) -> Set[Label]:
    return {label for _, q in p.walk() for label in q.conclusion.labels}


def within(small: SimplyLabelledSequent, big: SimplyLabelledSequent) -> bool:
    return contains(big.ante, small.ante) and contains(big.succ, small.succ)


def is_strict(p: Proof, logic: Optional[LogicSpec] = None) -> bool:
    """True when ``p`` uses primitive rules of ``logic`` only."""
    allowed = set(primitive_rules(logic or inferred_logic(p)))
    return all(q.rule in allowed for _, q in p.walk())


# =============================================================================
# RENAMING
# =============================================================================

def rename_labels(p: Proof, mapping: Dict[Label, Label]) -> Proof:
    """Rename labels throughout ``p``. ``mapping`` must send labels to labels
    new to the proof, so every node stays an instance of its rule."""
    return replace(p, conclusion=p.conclusion.relabel(mapping),
                   subst=relabel_subst(p.subst, mapping),
                   premises=tuple(rename_labels(q, mapping) for q in p.premises))


def avoid_labels(p: Proof, avoid: Set[Label], logic: LogicSpec) -> Proof:
    """``p`` with the labels its root introduces moved off ``avoid``."""
    clash = [e for e in fresh_of(p.rule, p.subst, logic) if e in avoid]
    if not clash:
        return p
    used = proof_labels(p) | set(avoid)
    mapping = {}
    for e in clash:
        mapping[e] = fresh_label(used)
        used.add(mapping[e])
    return replace(p, subst=relabel_subst(p.subst, mapping),
                   premises=tuple(rename_labels(q, mapping) for q in p.premises))


def _pinned(p: Proof, logic: LogicSpec) -> Dict[str, str]:
    """``subst`` of a structural node with its variable values spelled out."""
    schema = logic.sls_rule(p.rule)
    if schema is None:
        return dict(p.subst)
    try:
        return structural_instance(schema, p.conclusion, p.subst).subst()
    except RuleApplicationError:
        return dict(p.subst)


def subst_label(p: Proof, old: Label, new: Label, logic: Optional[LogicSpec] = None) -> Proof:
    """Proof of the endsequent with ``old`` replaced by ``new``.

    Labels introduced inside ``p`` that equal ``new`` are renamed first. A
    node that stops being an instance of its rule once the two labels merge
    is kept as is below an explicit ``subst`` node.
    """
    logic = logic or inferred_logic(p)
    if old == new or old not in p.conclusion.labels:
        return p
    q = avoid_labels(p, {new}, logic)
    mapping = {old: new}
    out = replace(
        q,
        conclusion=q.conclusion.relabel(mapping),
        subst=relabel_subst(_pinned(q, logic), mapping),
        premises=tuple(subst_label(r, old, new, logic) for r in q.premises),
    )
    if node_failure(out, logic) is None:
        return out
    FALLBACKS.record("subst", out.conclusion)
    return node("subst", out.conclusion, {"old": old, "new": new}, [p])


# =============================================================================
# WEAKENING AND CONTRACTION AS EXPLICIT NODES
# =============================================================================

def weaken_proof(p: Proof, addition: LabelledFormula, side: str) -> Proof:
    if side not in ("ante", "succ"):
        raise ValueError("a labelled formula is added to 'ante' or 'succ'")
    s = p.conclusion.add(**{side: [addition]})
    return node("W", s, {"side": side, "formula": addition.text}, [p])


def weaken_to(p: Proof, target: SimplyLabelledSequent) -> Proof:
    """W nodes from ``p`` up to ``target``, which must contain its endsequent."""
    s = p.conclusion
    if not within(s, target):
        raise ShapeMismatch(f"{s.text} is not contained in {target.text}")
    out = p
    for lf in difference(target.ante, s.ante):
        out = weaken_proof(out, lf, "ante")
    for lf in difference(target.succ, s.succ):
        out = weaken_proof(out, lf, "succ")
    return out


def contract_proof(p: Proof, duplicate: LabelledFormula, side: str) -> Proof:
    """One of two copies of ``duplicate`` removed by a C node."""
    if side not in ("ante", "succ"):
        raise ValueError("a labelled formula is contracted in 'ante' or 'succ'")
    if Counter(getattr(p.conclusion, side))[duplicate] < 2:
        raise RuleApplicationError(f"{duplicate.text} does not occur twice in {p.conclusion.text}")
    s = p.conclusion.remove(**{side: [duplicate]})
    return node("C", s, {"side": side, "formula": duplicate.text}, [p])


def reshape(p: Proof, target: SimplyLabelledSequent) -> Proof:
    """Contract the surplus of ``p``'s endsequent over ``target``, then weaken
    up to it. Every surplus item must also occur in ``target``."""
    out = p
    for side in ("ante", "succ"):
        for lf in difference(getattr(p.conclusion, side), getattr(target, side)):
            if lf not in getattr(target, side):
                raise ShapeMismatch(f"{lf.text} is not in {target.text}")
            out = contract_proof(out, lf, side)
    return weaken_to(out, target)



def _succ_removal(p: Proof, lf: LabelledFormula, logic: Optional[LogicSpec]) -> Optional[Proof]:
    """``p`` with one ``lf`` taken off its succedent by an admissible rule."""
    rest = p.conclusion.remove(succ=[lf])
    if lf in rest.succ:
        return contract_proof(p, lf, "succ")
    if logic is None:
        return None
    if isinstance(lf.formula, Bot):
        return r_bot_elim(p, lf, logic)
    for other in rest.succ:
        if (other.label == lf.label and isinstance(other.formula, Imp)
                and other.formula.right == lf.formula):
            return rc_imp(p, other, logic)
    for other in rest.succ:
        if (other.formula == lf.formula and other.label != lf.label
                and slice_included(rest, lf.label, other.label)):
            return r_subset_mp(p, lf.label, other.label, lf.formula, logic)
    return None


def cover(p: Proof, target: SimplyLabelledSequent,
          logic: Optional[LogicSpec] = None) -> Optional[Proof]:
    """``p`` taken to ``target``: contractions, succedent removals, then W.

    Without ``logic`` the only removal is contraction; with it, surplus
    ``bot``, implication bodies and slice-subset copies are eliminated.
    """
    out = p
    for lf in difference(p.conclusion.ante, target.ante):
        if Counter(out.conclusion.ante)[lf] < 2:
            return None
        out = contract_proof(out, lf, "ante")
    for lf in difference(p.conclusion.succ, target.succ):
        try:
            out = _succ_removal(out, lf, logic)
        except RuleApplicationError as exc:
            log.debug("no removal of %s: %s", lf.text, exc)
            return None
        if out is None:
            return None
    return weaken_to(out, target)


# =============================================================================
# RETARGETING
# =============================================================================

def reinstantiate(p: Proof, target: SimplyLabelledSequent, logic: LogicSpec):
    """``subst`` and premisses of ``p``'s rule on ``target``, or None."""
    if p.rule == "subst":
        return None
    schema = logic.sls_rule(p.rule)
    if schema is not None:
        label_map, given = split_structural_subst(p.subst)
        for values, subst in ((None, label_map), (given, p.subst)):
            try:
                return dict(subst), list(instantiate(schema, target, label_map, values).premisses)
            except RuleApplicationError:
                continue
        return None
    try:
        return dict(p.subst), premisses(p.rule, target, p.subst, logic, permissive=True)
    except RuleApplicationError:
        return None


class _Retarget:
    def __init__(self, logic: LogicSpec, explicit: bool = True, search: bool = True):
        self.logic = logic
        self.explicit = explicit
        self.search = search

    def shortcut(self, p: Proof, target: SimplyLabelledSequent) -> Optional[Proof]:
        return None

    def run(self, p: Proof, target: SimplyLabelledSequent) -> Proof:
        if p.conclusion == target:
            return p
        out = self.shortcut(p, target)
        if out is None:
            out = self.carry(p, target)
        return out if out is not None else self.stuck(p, target)

    def carry(self, p: Proof, target: SimplyLabelledSequent) -> Optional[Proof]:
        if p.rule in ("W", "C"):
            item = parse_labelled_formula(p.subst["formula"])
            if item not in getattr(target, p.subst["side"]):
                try:
                    return self.run(p.premises[0], target)
                except _Stuck:
                    return None
        q = avoid_labels(p, set(target.labels), self.logic)
        found = reinstantiate(q, target, self.logic)
        if found is None or len(found[1]) != len(q.premises):
            return None
        subst, wants = found
        try:
            children = [self.run(r, want) for r, want in zip(q.premises, wants)]
        except _Stuck:
            return None
        return replace(q, conclusion=target, subst=subst, premises=tuple(children))

    def stuck(self, p: Proof, target: SimplyLabelledSequent) -> Proof:
        closed = close(target)
        if closed is not None:
            return closed
        for q in (p,) + p.premises:
            if within(q.conclusion, target):
                return weaken_to(q, target)
        if self.explicit:
            out = cover(p, target)
            if out is not None:
                FALLBACKS.record("explicit", target)
                return out
        if self.search:
            result = prove(target, self.logic, use_lin=False, budget=SearchBudget.fallback(),
                           allow_fresh=False, max_nodes=config.FALLBACK_MAX_NODES)
            if result.found:
                FALLBACKS.record("search", target)
                return result.proof
        raise _Stuck(target.text)


def retarget(p: Proof, target: SimplyLabelledSequent, logic: Optional[LogicSpec] = None,
             engine: Optional[_Retarget] = None) -> Proof:
    """A proof of ``target`` built from ``p`` rule by rule."""
    engine = engine or _Retarget(logic or inferred_logic(p))
    try:
        return engine.run(p, target)
    except _Stuck:
        raise ShapeMismatch(f"no proof of {target.text} from {p.conclusion.text}") from None


def _widen(p: Proof, target: SimplyLabelledSequent, logic: LogicSpec) -> Proof:
    """``p`` weakened to ``target``, the weakening pushed into the rules where it goes."""
    try:
        return _Retarget(logic, explicit=False, search=False).run(p, target)
    except _Stuck:
        return weaken_to(p, target)


def absorb_weakenings(p: Proof, logic: Optional[LogicSpec] = None) -> Proof:
    """Push W and C nodes upward until the rules above absorb them.

    Nodes that cannot move stay where they are; the result proves the same
    endsequent.
    """
    engine = _Retarget(logic or inferred_logic(p), explicit=False, search=False)

    def walk(q: Proof) -> Proof:
        q = q.with_premises(walk(r) for r in q.premises)
        if q.rule not in ("W", "C"):
            return q
        try:
            return engine.run(q.premises[0], q.conclusion)
        except _Stuck:
            return q

    out = walk(p)
    log.debug("absorbed weakenings: %d -> %d nodes", p.size, out.size)
    return out


# =============================================================================
# INVERSION
# =============================================================================

_INVERTIBLE = {"L_and": ("ante", And), "L_or": ("ante", Or),
               "R_and": ("succ", And), "R_or": ("succ", Or)}


class _Inversion(_Retarget):
    def __init__(self, logic: LogicSpec, rule: str, item: LabelledFormula, branch: int):
        super().__init__(logic)
        self.rule = rule
        self.item = item
        self.branch = branch

    def shortcut(self, p, target):
        if p.rule == self.rule and p.subst.get("principal") == self.item.text:
            try:
                return self.run(p.premises[self.branch], target)
            except _Stuck:
                return None
        return None


def invert(p: Proof, rule: str, item: LabelledFormula,
           logic: Optional[LogicSpec] = None) -> List[Proof]:
    """Proofs of the premisses of ``rule`` applied to ``item`` in ``p``'s endsequent."""
    if rule not in _INVERTIBLE:
        raise ValueError(f"{rule} is not one of {sorted(_INVERTIBLE)}")
    logic = logic or inferred_logic(p)
    targets = premisses(rule, p.conclusion, {"principal": item.text}, logic)
    return [retarget(p, t, engine=_Inversion(logic, rule, item, k)) for k, t in enumerate(targets)]


# =============================================================================
# ELIMINATIONS
# =============================================================================

def _fit(p: Proof, target: SimplyLabelledSequent) -> Optional[Proof]:
    """``p`` contracted and weakened to ``target``, or None."""
    if p.conclusion == target:
        return p
    try:
        return reshape(p, target)
    except RuleApplicationError:
        return None


def _iota_l_imp(p: Proof, logic: LogicSpec) -> Proof:
    """An ``L_imp`` node as ``L_imp_i``: the principal weakened back on the right premiss."""
    left, right = p.premises
    item = parse_labelled_formula(p.subst["principal"])
    return node("L_imp_i", p.conclusion, p.subst,
                [left, _widen(right, right.conclusion.add(ante=[item]), logic)], p.derived)


def _iota_r_imp(p: Proof, logic: LogicSpec) -> Proof:
    """An ``R_imp`` node as ``R_imp_i``: the premiss moved to a fresh label and weakened."""
    item = parse_labelled_formula(p.subst["principal"])
    z = fresh_label(proof_labels(p))
    subst = {"principal": item.text, "fresh": z}
    [want] = premisses("R_imp_i", p.conclusion, subst, logic, permissive=True)
    moved = rename_labels(p.premises[0], {item.label: z})
    return node("R_imp_i", p.conclusion, subst, [_widen(moved, want, logic)])


class _Elimination:
    """Bottom-up rewrite of a proof into a proof of ``goal`` of its endsequent."""
    name = "elimination"

    def __init__(self, logic: LogicSpec):
        self.logic = logic
        self.steps = 0

    def goal(self, s: SimplyLabelledSequent) -> SimplyLabelledSequent:
        raise NotImplementedError

    def applies(self, s: SimplyLabelledSequent) -> bool:
        raise NotImplementedError

    def special(self, p: Proof, target: SimplyLabelledSequent) -> Optional[Proof]:
        return None

    def run(self, p: Proof) -> Proof:
        target = self.goal(p.conclusion)
        if p.conclusion == target:
            return p
        closed = close(target)
        if closed is not None:
            return closed
        self.steps += 1
        if self.steps <= config.ELIMINATION_MAX_STEPS:
            try:
                out = self.special(p, target)
                if out is None:
                    out = self.thin(p, target) if p.rule in ("W", "C") else self.permute(p, target)
                if out is not None:
                    return out
            except RuleApplicationError as exc:
                log.debug("%s at %s: %s", self.name, p.conclusion.text, exc)
        return self.fallback(target)

    def fallback(self, target: SimplyLabelledSequent) -> Proof:
        result = prove(target, self.logic, use_lin=False, budget=SearchBudget.fallback(),
                       allow_fresh=False, max_nodes=config.FALLBACK_MAX_NODES)
        if not result.found:
            raise ShapeMismatch(f"{self.name}: no proof of {target.text}")
        FALLBACKS.record("search", target)
        return result.proof

    def premiss(self, q: Proof, want: SimplyLabelledSequent) -> Optional[Proof]:
        if q.conclusion == want:
            return q
        if self.applies(q.conclusion):
            q = self.run(q)
        elif not within(q.conclusion, want):
            return None
        return _fit(q, want)

    def permute(self, p: Proof, target: SimplyLabelledSequent) -> Optional[Proof]:
        q = avoid_labels(p, set(target.labels), self.logic)
        found = reinstantiate(q, target, self.logic)
        if found is None or len(found[1]) != len(q.premises):
            return None
        subst, wants = found
        children = []
        for r, want in zip(q.premises, wants):
            child = self.premiss(r, want)
            if child is None:
                return None
            children.append(child)
        return replace(q, conclusion=target, subst=subst, premises=tuple(children))

    def thin(self, p: Proof, target: SimplyLabelledSequent) -> Optional[Proof]:
        out = self.premiss(p.premises[0], target)
        return out if out is not None else self.absorbed(p)

    def absorbed(self, p: Proof) -> Optional[Proof]:
        """``p`` without its W or C root, the change pushed into the rules above."""
        try:
            out = _Retarget(self.logic, explicit=False, search=False).run(p.premises[0], p.conclusion)
        except _Stuck:
            return None
        if out.rule in ("W", "C"):
            return None
        return self.run(out)


class _BotElimination(_Elimination):
    """Every ``x:bot`` off the succedent. It is never principal."""
    name = "R_bot"

    def __init__(self, logic: LogicSpec, item: LabelledFormula):
        super().__init__(logic)
        self.item = item

    def goal(self, s):
        return s.remove(succ=[lf for lf in s.succ if lf == self.item])

    def applies(self, s):
        return self.item in s.succ

    def premiss(self, q, want):
        # structural rules may copy the bot to other labels
        for extra in sorted(set(difference(q.conclusion.succ, want.succ))):
            if isinstance(extra.formula, Bot) and extra != self.item and extra not in want.succ:
                q = _BotElimination(self.logic, extra).run(q)
        return super().premiss(q, want)


class _ImpContraction(_Elimination):
    """Every ``x:B`` off a succedent that also holds ``x:(A -> B)``."""
    name = "RC_imp"

    def __init__(self, logic: LogicSpec, principal: LabelledFormula):
        super().__init__(logic)
        self.principal = principal
        self.body = LabelledFormula(principal.label, principal.formula.right)

    def goal(self, s):
        return s.remove(succ=[lf for lf in s.succ if lf == self.body])

    def applies(self, s):
        return self.body in s.succ and self.principal in s.succ

    def special(self, p, target):
        if p.subst.get("principal") != self.body.text:
            return None
        if p.rule in ("Ax", "R_top"):
            # x:B closes the premiss of R_imp on the implication
            subst = {"principal": self.principal.text}
            [above] = premisses("R_imp", target, subst, self.logic)
            closed = close(above)
            return None if closed is None else node("R_imp", target, subst, [closed])
        if p.rule in ("R_and", "R_or", "R_imp", "R_imp_i"):
            return self.through_copy(p, target)
        return None

    def through_copy(self, p: Proof, target: SimplyLabelledSequent) -> Optional[Proof]:
        """``R_imp_i`` on the implication, its premiss from ``p`` with x:B moved
        to the fresh label, whose antecedent holds ``G|x`` and ``A``."""
        x = self.principal.label
        z = fresh_label(proof_labels(p) | set(target.labels))
        subst = {"principal": self.principal.text, "fresh": z}
        [want] = premisses("R_imp_i", target, subst, self.logic, permissive=True)
        copy = [LabelledFormula(z, f) for f in p.conclusion.ante_slice(x)]
        copy.append(LabelledFormula(z, self.principal.formula.left))
        widened = _widen(p, p.conclusion.add(ante=copy), self.logic)
        moved = _SubsetMove(self.logic.with_lin(), x, z, self.body.formula).run(widened)
        child = _fit(moved, want)
        return None if child is None else node("R_imp_i", target, subst, [child])


class _SubsetMove(_Elimination):
    """Every ``x:A`` off the succedent, with ``y:A`` added when absent.

    Needs ``G|x`` inside ``G|y``. Left rules at x or y change the slices and
    get their own constructions; ``L_or`` there uses ``lin``.
    """
    name = "R_subset"

    def __init__(self, logic: LogicSpec, x: Label, y: Label, formula):
        super().__init__(logic)
        self.x = x
        self.y = y
        self.source = LabelledFormula(x, formula)
        self.dest = LabelledFormula(y, formula)

    def goal(self, s):
        out = s.remove(succ=[lf for lf in s.succ if lf == self.source])
        return out if self.dest in out.succ else out.add(succ=[self.dest])

    def applies(self, s):
        return self.source in s.succ and slice_included(s, self.x, self.y)

    def moved(self, q: Proof, formula) -> Proof:
        if LabelledFormula(self.x, formula) not in q.conclusion.succ:
            return q
        return _SubsetMove(self.logic, self.x, self.y, formula).run(q)

    def premiss(self, q, want):
        s = q.conclusion
        if self.source in s.succ and not slice_included(s, self.x, self.y):
            q = self.repaired(q, want)
            return None if q is None else _fit(self.run(q), want)
        return super().premiss(q, want)

    def repaired(self, q: Proof, want: SimplyLabelledSequent) -> Optional[Proof]:
        """``q`` weakened at y up to its slice at x, when ``want`` keeps each
        added formula at y so that the copies contract away afterwards."""
        missing = Counter(q.conclusion.ante_slice(self.x)) - Counter(q.conclusion.ante_slice(self.y))
        have = Counter(want.ante_slice(self.y))
        if any(have[f] == 0 for f in missing):
            return None
        extra = [LabelledFormula(self.y, f) for f, n in sorted(missing.items()) for _ in range(n)]
        return _widen(q, q.conclusion.add(ante=extra), self.logic)

    def special(self, p, target):
        text = p.subst.get("principal")
        if text is None or p.rule in ("Ax", "L_bot", "R_top"):
            return None
        lf = parse_labelled_formula(text)
        rule = p.rule
        if rule in ("R_and", "R_or") and lf in (self.source, self.dest):
            return self.right_principal(p, target, lf == self.source)
        if rule == "R_imp" and lf == self.source:
            return self.fresh_copy(p, target)
        if rule == "R_imp" and lf.label == self.y:
            return self.run(_iota_r_imp(p, self.logic))
        if rule == "R_imp_i" and lf == self.source:
            return self.copied_principal(p, target)
        if rule in ("L_and", "L_or") and lf.label in (self.x, self.y):
            other = LabelledFormula(self.y if lf.label == self.x else self.x, lf.formula)
            if other in p.conclusion.ante:
                return self.parallel_left(p, target, lf, other)
            return None
        if rule in ("L_imp", "L_imp_i") and lf.label == self.x:
            return self.left_imp(p, target, lf)
        if rule == "L_imp" and lf.label == self.y:
            return self.run(_iota_l_imp(p, self.logic))
        return None

    def right_principal(self, p: Proof, target, from_source: bool) -> Optional[Proof]:
        """``R_and``/``R_or`` on x:A or y:A becomes the same rule on y:A; the
        premisses move their x-parts to y."""
        rule = p.rule
        formula = self.source.formula
        subst = {"principal": self.dest.text}
        wants = premisses(rule, target, subst, self.logic)
        children = []
        for i, (q, want) in enumerate(zip(p.premises, wants)):
            if self.source in q.conclusion.succ:
                q = self.run(q)
            if self.dest in q.conclusion.succ:
                q = invert(q, rule, self.dest, self.logic)[i if rule == "R_and" else 0]
            if from_source:
                parts = ((formula.left,), (formula.right,))[i] if rule == "R_and" \
                    else (formula.left, formula.right)
                for part in parts:
                    q = self.moved(q, part)
            child = _fit(q, want)
            if child is None:
                return None
            children.append(child)
        return node(rule, target, subst, children)

    def fresh_copy(self, p: Proof, target) -> Optional[Proof]:
        """``R_imp`` on x:(C -> D) becomes ``R_imp_i`` on y:(C -> D), the
        premiss renamed from x to the fresh label."""
        z = fresh_label(proof_labels(p) | set(target.labels))
        subst = {"principal": self.dest.text, "fresh": z}
        [want] = premisses("R_imp_i", target, subst, self.logic, permissive=True)
        moved = rename_labels(p.premises[0], {self.x: z})
        if not within(moved.conclusion, want):
            return None
        return node("R_imp_i", target, subst, [_widen(moved, want, self.logic)])

    def copied_principal(self, p: Proof, target) -> Optional[Proof]:
        p = avoid_labels(p, set(target.labels), self.logic)
        subst = {"principal": self.dest.text, "fresh": p.subst["fresh"]}
        [want] = premisses("R_imp_i", target, subst, self.logic, permissive=True)
        child = self.premiss(p.premises[0], want)
        return None if child is None else node("R_imp_i", target, subst, [child])

    def parallel_left(self, p: Proof, target, lf: LabelledFormula,
                      other: LabelledFormula) -> Optional[Proof]:
        """``L_and``/``L_or`` on a formula held at both x and y, applied at both."""
        rule = p.rule
        branches = []
        for i, q in enumerate(p.premises):
            q = invert(q, rule, other, self.logic)[i if rule == "L_or" else 0]
            branches.append(self.run(q))
        if rule == "L_or":
            from .derived import l_or_parallel
            return l_or_parallel(branches[0], branches[1], self.x, self.y, lf.formula, self.logic)
        first = {"principal": lf.text}
        second = {"principal": other.text}
        [middle] = premisses("L_and", target, first, self.logic)
        [top] = premisses("L_and", middle, second, self.logic)
        child = _fit(branches[0], top)
        if child is None:
            return None
        return node("L_and", target, first, [node("L_and", middle, second, [child])])

    def left_imp(self, p: Proof, target, lf: LabelledFormula) -> Optional[Proof]:
        """``L_imp`` at x: ``L_imp_i`` at y over ``L_imp_i`` at x, both
        implication bodies weakened in at y."""
        imp = lf.formula
        other = LabelledFormula(self.y, imp)
        if other not in p.conclusion.ante:
            return None
        left, right = p.premises
        upper = self.run(left)
        bodies = [LabelledFormula(self.x, imp.right), LabelledFormula(self.y, imp.right)]
        lower = self.run(_widen(right, p.conclusion.add(ante=bodies), self.logic))

        at_x, at_y = {"principal": lf.text}, {"principal": other.text}
        with_body = target.add(ante=[bodies[1]])
        outer_left, _ = premisses("L_imp_i", target, at_y, self.logic, permissive=True)
        inner_left, inner_right = premisses("L_imp_i", with_body, at_x, self.logic, permissive=True)
        children = [_fit(self.moved(upper, imp.left), outer_left),
                    _fit(upper, inner_left), _fit(lower, inner_right)]
        if any(c is None for c in children):
            return None
        inner = node("L_imp_i", with_body, at_x, children[1:])
        return node("L_imp_i", target, at_y, [children[0], inner])


def r_bot_elim(p: Proof, item: LabelledFormula, logic: Optional[LogicSpec] = None) -> Proof:
    """From ``G => D, x:bot`` to ``G => D``."""
    if not isinstance(item.formula, Bot) or item not in p.conclusion.succ:
        raise ShapeMismatch(f"{item.text} is not a succedent bot of {p.conclusion.text}")
    out = _BotElimination(logic or inferred_logic(p), item).run(p)
    return weaken_to(out, p.conclusion.remove(succ=[item]))


def rc_imp(p: Proof, principal: LabelledFormula, logic: Optional[LogicSpec] = None) -> Proof:
    """From ``G => D, x:B, x:(A -> B)`` to ``G => D, x:(A -> B)``.

    A branch where x:B is principal of a right rule goes through a fresh
    copy of the component and may use ``lin``.
    """
    s = p.conclusion
    if not isinstance(principal.formula, Imp) or principal not in s.succ:
        raise ShapeMismatch(f"{principal.text} is not a succedent implication of {s.text}")
    body = LabelledFormula(principal.label, principal.formula.right)
    if body not in s.succ:
        raise ShapeMismatch(f"{s.text} lacks {body.text} on the right")
    out = _ImpContraction(logic or inferred_logic(p), principal).run(p)
    return weaken_to(out, s.remove(succ=[body]))


def r_subset_mp(p: Proof, x: Label, y: Label, formula, logic: Optional[LogicSpec] = None) -> Proof:
    """From ``G => D, x:A, y:A`` to ``G => D, y:A`` when ``G|x`` is inside ``G|y``.

    The result is a proof under ``logic`` plus ``lin``.
    """
    s = p.conclusion
    at_x, at_y = LabelledFormula(x, formula), LabelledFormula(y, formula)
    if x == y or at_x not in s.succ or at_y not in s.succ:
        raise ShapeMismatch(f"{s.text} lacks {at_x.text}, {at_y.text} on the right")
    if not slice_included(s, x, y):
        raise ShapeMismatch(f"antecedent at {x} is not included in the one at {y} in {s.text}")
    logic = (logic or inferred_logic(p)).with_lin()
    out = _SubsetMove(logic, x, y, formula).run(p)
    return weaken_to(out, s.remove(succ=[at_x]))


def move(p: Proof, item: LabelledFormula, y: Label, logic: Optional[LogicSpec] = None) -> Proof:
    """From ``G => D, x:A`` to ``G => D, y:A``: W of ``y:A``, then the subset elimination."""
    if item not in p.conclusion.succ:
        raise ShapeMismatch(f"{item.text} is not in the succedent of {p.conclusion.text}")
    if item.label == y:
        return p
    weakened = weaken_proof(p, LabelledFormula(y, item.formula), "succ")
    return r_subset_mp(weakened, item.label, y, item.formula, logic)
