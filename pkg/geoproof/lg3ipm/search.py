"""
LG3ipm Proof Search
===================
Bounded backward search with backtracking.

Every rule except ``R_imp`` keeps its conclusion derivable from its
premisses and back (up to weakening, contraction and label
substitution), so the search commits to the first of:

1. ``L_bot``, ``R_top`` or ``Ax``;
2. ``L_and``, ``R_or``, ``R_and``, ``L_or``;
3. ``L_imp`` on an implication whose antecedent is not already on the
   right at its label;
4. a structural rule instance without fresh labels, over an injective
   label map, whose premisses each add something.

Otherwise it backtracks over ``R_imp`` on each succedent implication,
then (with fresh labels allowed) structural instances with fresh labels
and ``R_imp_i`` on a fresh copy of the component.

Sequents are compared by their support up to renaming: a branch that
repeats an ancestor fails, and clean failures are memoised.
"""

import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from .. import config
from ..core.entities import And, Atom, Bot, Imp, LabelledFormula, Or, SimplyLabelledSequent, Top
from ..core.errors import BudgetExhausted, RuleApplicationError
from ..core.labels import canonicalize_labels, fresh_labels
from ..core.multiset import dedupe
from ..core.proof import LG3IPM, Proof, SearchBudget, SearchResult
from ..rules.hypersequent import SlsRuleSchema
from ..rules.logics import LogicSpec
from .calculus import premisses, structural_instance

log = logging.getLogger(__name__)

Step = Tuple[str, Dict[str, str]]


def support_key(s: SimplyLabelledSequent) -> str:
    """Text of the deduplicated sequent in alpha-normal form."""
    return canonicalize_labels(SimplyLabelledSequent(dedupe(s.ante), dedupe(s.succ))).text


def _covered(prem: SimplyLabelledSequent, s: SimplyLabelledSequent) -> bool:
    return set(prem.ante) <= set(s.ante) and set(prem.succ) <= set(s.succ)


def label_maps(schema: SlsRuleSchema, s: SimplyLabelledSequent) -> Iterator[Dict[str, str]]:
    """Injective maps of the schema's conclusion labels into ``s``."""
    for choice in itertools.permutations(sorted(s.labels), len(schema.labels)):
        yield dict(zip(schema.labels, choice))


def fresh_names(schema: SlsRuleSchema) -> List[str]:
    return sorted({z for group in schema.fresh for z in group})


def redundant(schema: SlsRuleSchema, s: SimplyLabelledSequent, subst: Dict[str, str]) -> bool:
    """Some premiss adds nothing, even with its fresh labels read as old ones."""
    try:
        instance = structural_instance(schema, s, subst)
    except RuleApplicationError:
        return True
    fresh = [subst[z] for z in fresh_names(schema)]
    labels = sorted(s.labels)
    for prem in instance.premisses:
        for witness in itertools.product(labels, repeat=len(fresh)):
            if _covered(prem.relabel(dict(zip(fresh, witness))), s):
                return True
    return False


def applicable_rules(s: SimplyLabelledSequent, logic: LogicSpec) -> List[Step]:
    """Every backward-applicable instance; fresh labels are the least unused."""
    out: List[Step] = []
    for lf in dedupe(s.ante):
        if isinstance(lf.formula, Atom) and lf in s.succ:
            out.append(("Ax", {"principal": lf.text}))
        if isinstance(lf.formula, Bot):
            out.append(("L_bot", {"principal": lf.text}))
    out += [("R_top", {"principal": lf.text}) for lf in dedupe(s.succ) if isinstance(lf.formula, Top)]
    for side, kinds in ((s.ante, (("L_and", And), ("L_or", Or), ("L_imp", Imp))),
                        (s.succ, (("R_and", And), ("R_or", Or), ("R_imp", Imp)))):
        for lf in dedupe(side):
            for rule, kind in kinds:
                if isinstance(lf.formula, kind):
                    out.append((rule, {"principal": lf.text}))
    for schema in logic.sls_rules:
        names = fresh_names(schema)
        for label_map in label_maps(schema, s):
            subst = {**label_map, **dict(zip(names, fresh_labels(s.labels, len(names))))}
            try:
                structural_instance(schema, s, subst)
            except RuleApplicationError:
                continue
            out.append((schema.name, subst))
    return out


def close(s: SimplyLabelledSequent) -> Optional[Proof]:
    """A one-node proof of ``s`` by L_bot, R_top or Ax, when there is one."""
    for lf in s.ante:
        if isinstance(lf.formula, Bot):
            return Proof(LG3IPM, "L_bot", s, {"principal": lf.text})
    for lf in s.succ:
        if isinstance(lf.formula, Top):
            return Proof(LG3IPM, "R_top", s, {"principal": lf.text})
    succ = set(s.succ)
    for lf in s.ante:
        if isinstance(lf.formula, Atom) and lf in succ:
            return Proof(LG3IPM, "Ax", s, {"principal": lf.text})
    return None


class _Search:
    def __init__(self, logic: LogicSpec, budget: SearchBudget, allow_fresh: bool,
                 max_nodes: int = config.LG3IPM_MAX_NODES):
        self.logic = logic
        self.max_nodes = max_nodes
        self.budget = budget
        self.allow_fresh = allow_fresh
        self.nodes = 0
        self.exhausted = False
        self.failed: Set[str] = set()

    @staticmethod
    def node(rule: str, s: SimplyLabelledSequent, subst: Dict[str, str], premises=()) -> Proof:
        return Proof(LG3IPM, rule, s, dict(subst), tuple(premises))

    def run(self, s: SimplyLabelledSequent, depth: int,
            ancestors: FrozenSet[str]) -> Tuple[Optional[Proof], bool]:
        """Proof of ``s`` or None; the flag is False when the failure is not clean."""
        self.nodes += 1
        if (depth > self.budget.max_depth or s.size > self.budget.max_sequent_size
                or self.nodes > self.max_nodes):
            self.exhausted = True
            return None, False
        key = support_key(s)
        if key in self.failed:
            return None, True
        if key in ancestors:
            return None, False

        closed = close(s)
        if closed is not None:
            return closed, True

        inner = ancestors | {key}
        step = self.invertible(s)
        if step is not None:
            proof, clean = self.expand(s, step, depth, inner)
            if proof is None and clean:
                self.failed.add(key)
            return proof, clean

        all_clean = True
        for alternative in self.alternatives(s):
            try:
                proof, clean = alternative(depth, inner)
            except BudgetExhausted as exc:
                self.exhausted = True
                log.debug("%s", exc)
                proof, clean = None, False
            if proof is not None:
                return proof, True
            all_clean = all_clean and clean
        if all_clean:
            self.failed.add(key)
        return None, all_clean

    def expand(self, s: SimplyLabelledSequent, step: Step, depth: int,
               inner: FrozenSet[str]) -> Tuple[Optional[Proof], bool]:
        rule, subst = step
        children = []
        for prem in premisses(rule, s, subst, self.logic, permissive=True):
            child, clean = self.run(prem, depth + 1, inner)
            if child is None:
                return None, clean
            children.append(child)
        return self.node(rule, s, subst, children), True

    def invertible(self, s: SimplyLabelledSequent) -> Optional[Step]:
        for rule, side, kind in (("L_and", s.ante, And), ("R_or", s.succ, Or),
                                 ("R_and", s.succ, And), ("L_or", s.ante, Or)):
            for lf in side:
                if isinstance(lf.formula, kind):
                    return rule, {"principal": lf.text}
        for lf in dedupe(s.ante):
            if isinstance(lf.formula, Imp) and \
                    LabelledFormula(lf.label, lf.formula.left) not in s.succ:
                return "L_imp", {"principal": lf.text}
        for schema in self.logic.sls_rules:
            if any(schema.fresh):
                continue
            for subst in label_maps(schema, s):
                if not redundant(schema, s, subst):
                    return schema.name, subst
        return None

    def need_labels(self, s: SimplyLabelledSequent, count: int) -> None:
        if len(s.labels) + count > self.budget.max_labels:
            raise BudgetExhausted(f"label bound {self.budget.max_labels} reached at {s.text}")

    def alternatives(self, s: SimplyLabelledSequent):
        implications = [lf for lf in dedupe(s.succ) if isinstance(lf.formula, Imp)]
        for lf in implications:
            yield lambda depth, inner, lf=lf: self.expand(
                s, ("R_imp", {"principal": lf.text}), depth, inner)
        if not self.allow_fresh:
            return
        for schema in self.logic.sls_rules:
            names = fresh_names(schema)
            if not names:
                continue
            for label_map in label_maps(schema, s):
                subst = {**label_map, **dict(zip(names, fresh_labels(s.labels, len(names))))}
                if redundant(schema, s, subst):
                    continue
                yield lambda depth, inner, schema=schema, subst=subst: self.fresh_structural(
                    s, schema, subst, depth, inner)
        for lf in implications:
            yield lambda depth, inner, lf=lf: self.copy_component(s, lf, depth, inner)

    def fresh_structural(self, s, schema: SlsRuleSchema, subst: Dict[str, str], depth, inner):
        self.need_labels(s, len(fresh_names(schema)))
        return self.expand(s, (schema.name, subst), depth, inner)

    def copy_component(self, s: SimplyLabelledSequent, lf: LabelledFormula, depth, inner):
        self.need_labels(s, 1)
        z = fresh_labels(s.labels, 1)[0]
        subst = {"principal": lf.text, "fresh": z}
        (prem,) = premisses("R_imp_i", s, subst, self.logic, permissive=True)
        child, clean = self.run(prem, depth + 1, inner)
        if child is None:
            return None, clean
        return self.node("R_imp_i", s, subst, [child]), True


def prove(s: SimplyLabelledSequent, logic: LogicSpec, use_lin: bool = True,
          budget: Optional[SearchBudget] = None,
          allow_fresh: bool = config.LG3IPM_ALLOW_FRESH,
          max_nodes: int = config.LG3IPM_MAX_NODES) -> SearchResult:
    """Search for an LG3ipm proof of ``s`` under ``logic`` (plus ``lin``).

    With ``allow_fresh`` unset the label set is fixed; a missing proof with
    ``exhausted`` unset is then an exhaustive refutation for those labels.
    Proofs that copy components contain ``R_imp_i`` nodes and check in
    permissive mode only.
    """
    budget = budget or SearchBudget.for_lg3ipm()
    active = logic.with_lin() if use_lin else logic
    search = _Search(active, budget, allow_fresh, max_nodes)
    proof, _ = search.run(s, 1, frozenset())
    result = SearchResult(proof, exhausted=proof is None and search.exhausted,
                          nodes=search.nodes)
    log.debug("lg3ipm search %s after %d nodes: %s", result.status, search.nodes, s.text)
    return result
