"""
LG3ipm Derived Rules
====================
Parallel rules over several copies of one formula, used when a single
labelled inference becomes one inference per copy after unfolding:

* ``L_or_par``: ``x1:(A|B), ..., xn:(A|B)`` on the left, from the all-A and
  all-B premisses. Mixed cases are closed with ``lin``.
* ``R_and_par``: ``x1:(A&B), ..., xn:(A&B)`` on the right, moving the other
  copies to the last label first.

Also the empirical cut check on pairs of derivable premisses.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .. import config
from ..core.entities import And, Label, LabelledFormula, Or, SimplyLabelledSequent
from ..core.errors import RuleApplicationError, ShapeMismatch
from ..core.labels import slice_included
from ..core.proof import Proof, SearchBudget
from ..rules.logics import LogicSpec
from .calculus import premisses, structural_instance
from .search import prove
from .transforms import node, r_subset_mp, weaken_to, within

log = logging.getLogger(__name__)


def _without(p: Proof, side: str, items) -> SimplyLabelledSequent:
    try:
        return p.conclusion.remove(**{side: items})
    except ValueError:
        raise ShapeMismatch(f"{p.conclusion.text} lacks one of "
                            f"{[lf.text for lf in items]}") from None


# =============================================================================
# PARALLEL L_or
# =============================================================================

def _settle(s: SimplyLabelledSequent, proofs, copies, lin, depth: int) -> Proof:
    """Proof of ``s``, a leaf of the L_or chain or a lin premiss above one."""
    for p in proofs:
        if within(p.conclusion, s):
            return weaken_to(p, s)
    only_a = [a.label for a, b in zip(*copies) if a in s.ante and b not in s.ante]
    only_b = [b.label for a, b in zip(*copies) if b in s.ante and a not in s.ante]
    if not only_a or not only_b or depth > len(copies[0]):
        raise ShapeMismatch(f"no parallel case covers {s.text}")
    subst = {"x": only_a[0], "y": only_b[0]}
    instance = structural_instance(lin, s, subst)
    children = [_settle(prem, proofs, copies, lin, depth + 1) for prem in instance.premisses]
    return node(lin.name, s, subst, children)


def l_or_parallel_n(pA: Proof, pB: Proof, labels: Sequence[Label], disjunction,
                    logic: LogicSpec) -> Proof:
    """From ``G, x1:A..xn:A => D`` and ``G, x1:B..xn:B => D`` to
    ``G, x1:(A|B)..xn:(A|B) => D``.

    An L_or chain splits every copy; a leaf with some copies on A and some
    on B gets ``lin`` on one A-label and one B-label, which copies the
    formula across, until every copy is covered by one of the two proofs.
    """
    if not isinstance(disjunction, Or):
        raise ShapeMismatch(f"{disjunction.text} is not a disjunction")
    labels = list(labels)
    if len(set(labels)) != len(labels) or not labels:
        raise ShapeMismatch("labels must be distinct and non-empty")
    copies = ([LabelledFormula(x, disjunction.left) for x in labels],
              [LabelledFormula(x, disjunction.right) for x in labels])
    base = _without(pA, "ante", copies[0])
    if _without(pB, "ante", copies[1]) != base:
        raise ShapeMismatch(f"{pA.conclusion.text} and {pB.conclusion.text} differ "
                            f"outside the disjuncts")
    lin = logic.sls_rule("lin")
    if lin is None and len(labels) > 1:
        raise RuleApplicationError(f"parallel L_or needs lin, which {logic.name} lacks")

    def split(s: SimplyLabelledSequent, i: int) -> Proof:
        if i == len(labels):
            return _settle(s, (pA, pB), copies, lin, 0)
        principal = LabelledFormula(labels[i], disjunction)
        subst = {"principal": principal.text}
        left, right = premisses("L_or", s, subst, logic)
        return node("L_or", s, subst, [split(left, i + 1), split(right, i + 1)])

    conclusion = base.add(ante=[LabelledFormula(x, disjunction) for x in labels])
    out = split(conclusion, 0)
    log.debug("parallel L_or over %s: %d nodes", ",".join(labels), out.size)
    return out.tagged("L_or_par") if len(labels) > 1 else out


def l_or_parallel(pA: Proof, pB: Proof, x: Label, y: Label, disjunction,
                  logic: LogicSpec) -> Proof:
    return l_or_parallel_n(pA, pB, (x, y), disjunction, logic)


# =============================================================================
# PARALLEL R_and
# =============================================================================

def r_and_parallel(pA: Proof, pB: Proof, labels: Sequence[Label], conjunction,
                   logic: Optional[LogicSpec] = None) -> Proof:
    """From ``G => D, x1:A..xn:A`` and ``G => D, x1:B..xn:B`` to
    ``G => D, x1:(A&B)..xn:(A&B)``, given ``G|xi`` inside ``G|xn``."""
    if not isinstance(conjunction, And):
        raise ShapeMismatch(f"{conjunction.text} is not a conjunction")
    labels = list(labels)
    if len(set(labels)) != len(labels) or not labels:
        raise ShapeMismatch("labels must be distinct and non-empty")
    *others, last = labels
    parts = (conjunction.left, conjunction.right)
    base = _without(pA, "succ", [LabelledFormula(x, parts[0]) for x in labels])
    if _without(pB, "succ", [LabelledFormula(x, parts[1]) for x in labels]) != base:
        raise ShapeMismatch(f"{pA.conclusion.text} and {pB.conclusion.text} differ "
                            f"outside the conjuncts")
    for x in others:
        if not slice_included(base, x, last):
            raise ShapeMismatch(f"antecedent at {x} is not included in the one at {last}")

    conclusion = base.add(succ=[LabelledFormula(x, conjunction) for x in labels])
    principal = LabelledFormula(last, conjunction)
    subst = {"principal": principal.text}
    children = []
    for p, part, want in zip((pA, pB), parts, premisses("R_and", conclusion, subst, logic)):
        for x in others:
            p = r_subset_mp(p, x, last, part, logic)
        children.append(weaken_to(p, want))
    out = node("R_and", conclusion, subst, children)
    return out.tagged("R_and_par") if others else out


# =============================================================================
# CUT CONJECTURE
# =============================================================================

@dataclass(frozen=True)
class CutTrial:
    sequent: SimplyLabelledSequent
    cut: LabelledFormula
    left: str
    right: str
    conclusion: str

    @property
    def applicable(self) -> bool:
        return self.left == "proved" and self.right == "proved"

    @property
    def violation(self) -> bool:
        """Both premisses proved while the conclusion is refuted outright."""
        return self.applicable and self.conclusion == "refuted"


def cut_conjecture_trial(s: SimplyLabelledSequent, cut: LabelledFormula, logic: LogicSpec,
                         budget: Optional[SearchBudget] = None,
                         allow_fresh: bool = config.LG3IPM_ALLOW_FRESH) -> CutTrial:
    """Search ``s, cut`` on both sides and, when both are derivable, ``s`` itself."""
    def status(goal: SimplyLabelledSequent) -> str:
        return prove(goal, logic, use_lin=True, budget=budget, allow_fresh=allow_fresh).status

    left = status(s.add(succ=[cut]))
    right = status(s.add(ante=[cut])) if left == "proved" else "skipped"
    conclusion = status(s) if left == right == "proved" else "skipped"
    trial = CutTrial(s, cut, left, right, conclusion)
    if trial.violation:
        log.warning("cut on %s fails for %s", cut.text, s.text)
    return trial
