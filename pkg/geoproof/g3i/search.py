"""
G3I Proof Search
================
Bounded backward search. Every G3I rule is invertible, so the search
commits to one rule per node, in this order:

1. close with ``L_bot``, ``R_top`` or ``Ax`` (``refl`` first when the
   axiom pair sits at one label);
2. ``trans`` where it adds an atom, then ``L_and`` and ``R_or``;
3. geometric rules without fresh labels, unless some alternative already
   holds up to reflexivity and transitivity;
4. ``R_and`` and ``L_or``;
5. ``L_imp`` at the first successor whose premisses add something;
6. ``R_imp`` with the least fresh label;
7. geometric rules with fresh labels.

Fresh labels count against ``max_labels``. A sequent that repeats an
ancestor up to renaming fails the branch, and clean failures are memoised
modulo renaming.
"""

import logging
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from ..core.entities import And, Atom, Bot, Imp, LabelledFormula, LabelledSequent, Or, RelAtom, Top
from ..core.errors import BudgetExhausted
from ..core.labels import canonicalize_labelled, fresh_label, transitive_closure
from ..core.multiset import dedupe
from ..core.proof import G3I, Proof, SearchBudget, SearchResult
from ..rules.logics import LogicSpec

from .calculus import premisses

log = logging.getLogger(__name__)

Step = Tuple[str, Dict[str, str]]


def _closure(s: LabelledSequent) -> Set[RelAtom]:
    out = set(transitive_closure(s.rels))
    out.update(RelAtom(x, x) for x in s.labels)
    return out


def _successors(s: LabelledSequent, x: str) -> List[str]:
    """Labels y with x<=y in Σ, sorted, then x itself."""
    return sorted({r.dst for r in s.rels if r.src == x and r.dst != x}) + [x]


def applicable_rules(s: LabelledSequent, logic: LogicSpec) -> List[Step]:
    """Every backward-applicable instance, relational rules only where they add atoms."""
    out: List[Step] = []
    rels = set(s.rels)
    for lf in dedupe(s.ante):
        if isinstance(lf.formula, Atom):
            for r in sorted(rels):
                if r.src == lf.label and LabelledFormula(r.dst, lf.formula) in s.succ:
                    out.append(("Ax", {"principal": lf.text, "rel": r.text}))
    out += [("L_bot", {"principal": lf.text}) for lf in dedupe(s.ante) if isinstance(lf.formula, Bot)]
    out += [("R_top", {"principal": lf.text}) for lf in dedupe(s.succ) if isinstance(lf.formula, Top)]
    for side, kinds in ((s.ante, (("L_and", And), ("L_or", Or))),
                        (s.succ, (("R_and", And), ("R_or", Or)))):
        for lf in dedupe(side):
            for rule, kind in kinds:
                if isinstance(lf.formula, kind):
                    out.append((rule, {"principal": lf.text}))
    for lf in dedupe(s.ante):
        if isinstance(lf.formula, Imp):
            for r in sorted(rels):
                if r.src == lf.label:
                    out.append(("L_imp", {"principal": lf.text, "rel": r.text}))
    for lf in dedupe(s.succ):
        if isinstance(lf.formula, Imp):
            out.append(("R_imp", {"principal": lf.text, "fresh": fresh_label(s.labels)}))

    for x in sorted(s.labels):
        if RelAtom(x, x) not in rels:
            out.append(("refl", {"x": x}))
    for a in sorted(rels):
        for b in sorted(rels):
            if a.dst == b.src and RelAtom(a.src, b.dst) not in rels:
                out.append(("trans", {"x": a.src, "y": a.dst, "z": b.dst}))
    for rule in logic.labelled_rules:
        for subst in rule.matches(s):
            if not rule.satisfied(s, subst):
                out.append((rule.name, rule.with_fresh(s, subst) if rule.has_fresh else subst))
    return out


class _Search:
    def __init__(self, logic: LogicSpec, budget: SearchBudget):
        self.logic = logic
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        self.failed: Set[str] = set()

    @staticmethod
    def node(rule: str, s: LabelledSequent, subst: Dict[str, str], premises=()) -> Proof:
        return Proof(G3I, rule, s, subst, tuple(premises))

    def run(self, s: LabelledSequent, depth: int,
            ancestors: FrozenSet[str]) -> Tuple[Optional[Proof], bool]:
        """Proof of ``s`` or None; the flag is False when the failure is not clean."""
        self.nodes += 1
        if depth > self.budget.max_depth or s.size > self.budget.max_sequent_size:
            self.exhausted = True
            log.debug("bound hit at depth %d: %s", depth, s.text)
            return None, False
        key = canonicalize_labelled(s).text
        if key in self.failed:
            return None, True
        if key in ancestors:
            # a pruned loop leaves the search inconclusive
            self.exhausted = True
            log.debug("loop at depth %d: %s", depth, s.text)
            return None, False

        closed = self.close(s)
        if closed is not None:
            return closed, True
        try:
            step = self.step(s)
        except BudgetExhausted as exc:
            self.exhausted = True
            log.debug("%s", exc)
            return None, False
        if step is None:
            self.failed.add(key)
            return None, True

        rule, subst = step
        children = []
        inner = ancestors | {key}
        for prem in premisses(rule, s, subst, self.logic):
            child, clean = self.run(prem, depth + 1, inner)
            if child is None:
                if clean:
                    self.failed.add(key)
                return None, clean
            children.append(child)
        return self.node(rule, s, subst, children), True

    def close(self, s: LabelledSequent) -> Optional[Proof]:
        for lf in s.ante:
            if isinstance(lf.formula, Bot):
                return self.node("L_bot", s, {"principal": lf.text})
        for lf in s.succ:
            if isinstance(lf.formula, Top):
                return self.node("R_top", s, {"principal": lf.text})
        rels = set(s.rels)
        pending = None
        for lf in s.ante:
            if not isinstance(lf.formula, Atom):
                continue
            for target in s.succ:
                if target.formula != lf.formula:
                    continue
                rel = RelAtom(lf.label, target.label)
                if rel in rels:
                    return self.node("Ax", s, {"principal": lf.text, "rel": rel.text})
                if pending is None and lf.label == target.label:
                    pending = (lf, rel)
        if pending is None:
            return None
        lf, rel = pending
        inner = s.add(rels=[rel])
        axiom = self.node("Ax", inner, {"principal": lf.text, "rel": rel.text})
        return self.node("refl", s, {"x": lf.label}, [axiom])

    def need_labels(self, s: LabelledSequent, count: int) -> None:
        if len(s.labels) + count > self.budget.max_labels:
            raise BudgetExhausted(f"label bound {self.budget.max_labels} reached at {s.text}")

    def step(self, s: LabelledSequent) -> Optional[Step]:
        rels = set(s.rels)
        for a in sorted(rels):
            for b in sorted(rels):
                if (a.dst == b.src and a.src != a.dst and b.src != b.dst and a.src != b.dst
                        and RelAtom(a.src, b.dst) not in rels):
                    return "trans", {"x": a.src, "y": a.dst, "z": b.dst}

        for lf in s.ante:
            if isinstance(lf.formula, And):
                return "L_and", {"principal": lf.text}
        for lf in s.succ:
            if isinstance(lf.formula, Or):
                return "R_or", {"principal": lf.text}

        closure = _closure(s)
        for rule in self.logic.labelled_rules:
            if rule.has_fresh:
                continue
            for subst in rule.matches(s):
                if not rule.satisfied(s, subst, closure):
                    return rule.name, subst

        for lf in s.succ:
            if isinstance(lf.formula, And):
                return "R_and", {"principal": lf.text}
        for lf in s.ante:
            if isinstance(lf.formula, Or):
                return "L_or", {"principal": lf.text}

        for lf in dedupe(s.ante):
            if not isinstance(lf.formula, Imp):
                continue
            for y in _successors(s, lf.label):
                if (LabelledFormula(y, lf.formula.left) in s.succ
                        or LabelledFormula(y, lf.formula.right) in s.ante):
                    continue
                rel = RelAtom(lf.label, y)
                if rel not in rels:
                    return "refl", {"x": y}
                return "L_imp", {"principal": lf.text, "rel": rel.text}

        for lf in s.succ:
            if isinstance(lf.formula, Imp):
                self.need_labels(s, 1)
                return "R_imp", {"principal": lf.text, "fresh": fresh_label(s.labels)}

        for rule in self.logic.labelled_rules:
            if not rule.has_fresh:
                continue
            for subst in rule.matches(s):
                if not rule.satisfied(s, subst, closure):
                    self.need_labels(s, max(len(f) for f in rule.fresh))
                    return rule.name, rule.with_fresh(s, subst)
        return None


def prove(s: LabelledSequent, logic: LogicSpec,
          budget: Optional[SearchBudget] = None) -> SearchResult:
    """Search for a G3I proof of ``s`` under ``logic``.

    A missing proof with ``exhausted`` unset means the strategy closed every
    branch without a proof; it is not a countermodel.
    """
    budget = budget or SearchBudget.for_g3i()
    search = _Search(logic, budget)
    proof, _ = search.run(s, 1, frozenset())
    result = SearchResult(proof, exhausted=proof is None and search.exhausted,
                          nodes=search.nodes)
    log.debug("g3i search %s after %d nodes: %s", result.status, search.nodes, s.text)
    return result
