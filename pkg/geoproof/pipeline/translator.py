"""
Proof Translation
=================
G3I proofs to simply labelled proofs of the transitive unfolding of their
endsequent, by induction on the proof. Each labelled inference becomes a
block of simply labelled inferences over all copies the unfolding made of
its principal formula:

=============  ======================================================
Ax, L_bot,     the same axiom on the unfolded sequent
R_top
refl, trans    the translated premiss, contracted to the unfolding
L_and, R_or    one inference per copy
L_or           ``L_or_par`` over the copies (``lin`` closes mixed leaves)
R_and          ``R_and_par`` over the copies
L_imp          ``L_imp_i`` at every copy above the relation's target,
               the A-copies of the left premiss moved there by the
               slice-subset elimination
R_imp          ``R_imp_i`` on the fresh label, then the implication
               bodies eliminated per copy
geometric      the structural rule instance with the same label map,
               each premiss bridged from the translated one
=============  ======================================================

A bridge tries, in order: contraction, weakening and succedent removals;
label merges; ``lin`` splits; bounded search. Search is counted in
``FALLBACKS``. A bridge that finds nothing raises ``TranslationError``.
"""

import itertools
import logging
from typing import Callable, Dict, List, Optional, Tuple

from .. import config
from ..core.entities import Label, LabelledFormula, SimplyLabelledSequent
from ..core.errors import RuleApplicationError, TranslationError
from ..core.labels import backward_labels, forward_labels, transitive_closure
from ..core.parser import parse_labelled_formula, parse_relatom
from ..core.proof import G3I, Proof, SearchBudget
from ..g3i.checker import check_proof as check_g3i
from ..lg3ipm.calculus import premisses
from ..lg3ipm.derived import l_or_parallel_n, r_and_parallel
from ..lg3ipm.search import prove
from ..lg3ipm.transforms import (
    FALLBACKS, absorb_weakenings, cover, node, r_subset_mp, rc_imp, reshape, subst_label,
    weaken_proof, weaken_to,
)
from ..rules.hypersequent import instantiate
from ..rules.logics import LogicSpec
from .unfold import unfold

log = logging.getLogger(__name__)

Path = Tuple[int, ...]


def _others(labels, x: Label) -> List[Label]:
    return sorted(set(labels) - {x})


def _deficit(have: SimplyLabelledSequent, want: SimplyLabelledSequent) -> int:
    """Distinct items of ``have`` that ``want`` does not contain."""
    return (len(set(have.ante) - set(want.ante))
            + len(set(have.succ) - set(want.succ)))


class _Translator:
    def __init__(self, logic: LogicSpec):
        self.source = logic
        self.logic = logic.with_lin()
        self.cases: Dict[str, Callable[[Proof, List[Proof]], Proof]] = {
            "Ax": self.axiom, "L_bot": self.axiom, "R_top": self.axiom,
            "refl": self.ordering, "trans": self.ordering,
            "L_and": self.single, "R_or": self.single,
            "L_or": self.l_or, "R_and": self.r_and,
            "L_imp": self.l_imp, "R_imp": self.r_imp,
        }

    def run(self, p: Proof, path: Path = ()) -> Proof:
        if p.rule in self.cases:
            case = self.cases[p.rule]
        elif p.rule in self.source.rule_names:
            case = self.geometric
        else:
            raise TranslationError(f"no translation for rule {p.rule!r} at {list(path)}")
        kids = [self.run(q, path + (i,)) for i, q in enumerate(p.premises)]
        try:
            out = case(p, kids)
        except RuleApplicationError as exc:
            raise TranslationError(f"{p.rule} at {list(path)}: {exc}") from exc
        want = unfold(p.conclusion)
        if out.conclusion != want:
            raise TranslationError(f"{p.rule} at {list(path)} proves {out.conclusion.text}, "
                                   f"expected {want.text}")
        return out

    @staticmethod
    def expect(p: Proof, want: SimplyLabelledSequent) -> Proof:
        if p.conclusion != want:
            raise TranslationError(f"translated premiss {p.conclusion.text} is not {want.text}")
        return p

    # -- axioms and ordering rules ------------------------------------------

    def axiom(self, p: Proof, kids: List[Proof]) -> Proof:
        principal = parse_labelled_formula(p.subst["principal"])
        if p.rule == "Ax":
            # x:P is copied forward to the target of x<=y
            principal = LabelledFormula(parse_relatom(p.subst["rel"]).dst, principal.formula)
        return node(p.rule, unfold(p.conclusion), {"principal": principal.text})

    def ordering(self, p: Proof, kids: List[Proof]) -> Proof:
        return reshape(kids[0], unfold(p.conclusion))

    # -- propositional rules --------------------------------------------------

    def copies(self, p: Proof, principal: LabelledFormula, side: str) -> List[Label]:
        closure = transitive_closure(p.conclusion.rels)
        reach = forward_labels if side == "ante" else backward_labels
        return _others(reach(closure, principal.label), principal.label)

    def single(self, p: Proof, kids: List[Proof]) -> Proof:
        principal = parse_labelled_formula(p.subst["principal"])
        side = "ante" if p.rule == "L_and" else "succ"
        labels = [principal.label] + self.copies(p, principal, side)

        def chain(s: SimplyLabelledSequent, i: int) -> Proof:
            if i == len(labels):
                return self.expect(kids[0], s)
            subst = {"principal": LabelledFormula(labels[i], principal.formula).text}
            [above] = premisses(p.rule, s, subst, self.logic)
            return node(p.rule, s, subst, [chain(above, i + 1)])

        return chain(unfold(p.conclusion), 0)

    def l_or(self, p: Proof, kids: List[Proof]) -> Proof:
        principal = parse_labelled_formula(p.subst["principal"])
        labels = [principal.label] + self.copies(p, principal, "ante")
        return l_or_parallel_n(kids[0], kids[1], labels, principal.formula, self.logic)

    def r_and(self, p: Proof, kids: List[Proof]) -> Proof:
        principal = parse_labelled_formula(p.subst["principal"])
        labels = self.copies(p, principal, "succ") + [principal.label]
        return r_and_parallel(kids[0], kids[1], labels, principal.formula, self.logic)

    def l_imp(self, p: Proof, kids: List[Proof]) -> Proof:
        """``L_imp_i`` at y and every label above it, in sorted order.

        The left premiss at ``yi`` comes from the translated left premiss:
        the copies of ``A`` at y and below are moved to ``yi``. The last
        right premiss is the translated right premiss.
        """
        principal = parse_labelled_formula(p.subst["principal"])
        y = parse_relatom(p.subst["rel"]).dst
        imp = principal.formula
        closure = transitive_closure(p.conclusion.rels)
        targets = [y] + _others(forward_labels(closure, y), y)
        sources = [y] + _others(backward_labels(closure, y), y)
        left_proof, right_proof = kids

        def left_branch(yi: Label, want: SimplyLabelledSequent) -> Proof:
            q = left_proof
            if yi not in sources:
                q = weaken_proof(q, LabelledFormula(yi, imp.left), "succ")
            for u in sources:
                if u != yi:
                    try:
                        q = r_subset_mp(q, u, yi, imp.left, self.logic)
                    except RuleApplicationError as exc:
                        log.debug("moving %s from %s to %s: %s", imp.left.text, u, yi, exc)
                        return self.bridge(q, want)
            return weaken_to(q, want)

        def chain(s: SimplyLabelledSequent, i: int) -> Proof:
            if i == len(targets):
                return self.expect(right_proof, s)
            subst = {"principal": LabelledFormula(targets[i], imp).text}
            left, right = premisses("L_imp_i", s, subst, self.logic, permissive=True)
            return node("L_imp_i", s, subst, [left_branch(targets[i], left), chain(right, i + 1)])

        return chain(unfold(p.conclusion), 0)

    def r_imp(self, p: Proof, kids: List[Proof]) -> Proof:
        principal = parse_labelled_formula(p.subst["principal"])
        imp = principal.formula
        conclusion = unfold(p.conclusion)
        subst = {"principal": principal.text, "fresh": p.subst["fresh"]}
        [want] = premisses("R_imp_i", conclusion, subst, self.logic, permissive=True)
        labels = [principal.label] + self.copies(p, principal, "succ")
        q = kids[0]
        for x in labels:
            q = weaken_proof(q, LabelledFormula(x, imp), "succ")
        try:
            for x in labels:
                q = rc_imp(q, LabelledFormula(x, imp), self.logic)
        except RuleApplicationError as exc:
            log.debug("implication bodies at %s: %s", ",".join(labels), exc)
            return node("R_imp_i", conclusion, subst, [self.bridge(q, want)])
        return node("R_imp_i", conclusion, subst, [self.expect(q, want)])

    # -- geometric rules ------------------------------------------------------

    def geometric(self, p: Proof, kids: List[Proof]) -> Proof:
        schema = self.logic.sls_rule(p.rule)
        names = schema.labels + tuple(z for group in schema.fresh for z in group)
        try:
            label_map = {v: p.subst[v] for v in names}
        except KeyError as exc:
            raise TranslationError(f"{p.rule}: instance does not name {exc}") from None
        conclusion = unfold(p.conclusion)
        instance = instantiate(schema, conclusion, label_map)
        children = [self.bridge(t, want) for t, want in zip(kids, instance.premisses)]
        return node(p.rule, conclusion, label_map, children)

    def bridge(self, t: Proof, want: SimplyLabelledSequent) -> Proof:
        out = self.settle(t, want, config.BRIDGE_SPLIT_DEPTH)
        if out is not None:
            return out
        result = prove(want, self.logic, use_lin=True, budget=SearchBudget.fallback(),
                       allow_fresh=False, max_nodes=config.FALLBACK_MAX_NODES)
        if result.found:
            FALLBACKS.record("search", want)
            return result.proof
        raise TranslationError(f"cannot bridge {t.conclusion.text} to {want.text}")

    def settle(self, t: Proof, want: SimplyLabelledSequent, depth: int) -> Optional[Proof]:
        if t.conclusion == want:
            return t
        out = cover(t, want, self.logic)
        if out is None:
            out = self.merge(t, want)
        if out is None and depth > 0:
            out = self.split(t, want, depth)
        return out

    def merge(self, t: Proof, want: SimplyLabelledSequent) -> Optional[Proof]:
        """Labels of ``t`` missing from ``want`` renamed onto labels of ``want``."""
        extra = sorted(t.conclusion.labels - want.labels)
        if not extra:
            return None
        onto = sorted(want.labels)
        choices = itertools.product(onto, repeat=len(extra))
        for combo in itertools.islice(choices, config.MERGE_SEARCH_CAP):
            q = t
            for old, new in zip(extra, combo):
                q = subst_label(q, old, new, self.logic)
            out = cover(q, want, self.logic)
            if out is not None:
                log.warning("merged labels %s onto %s for %s", ",".join(extra),
                            ",".join(combo), want.text)
                return out
        return None

    def split(self, t: Proof, want: SimplyLabelledSequent, depth: int) -> Optional[Proof]:
        """``lin`` on two labels of ``want`` when both premisses get closer to ``t``."""
        lin = self.logic.sls_rule("lin")
        gap = _deficit(t.conclusion, want)
        for a, b in itertools.permutations(sorted(want.labels), 2):
            label_map = {"x": a, "y": b}
            try:
                instance = instantiate(lin, want, label_map)
            except RuleApplicationError:
                continue
            if any(_deficit(t.conclusion, q) >= gap for q in instance.premisses):
                continue
            children = [self.settle(t, q, depth - 1) for q in instance.premisses]
            if all(c is not None for c in children):
                return node(lin.name, want, label_map, children)
        return None


def translate_proof(p: Proof, logic: LogicSpec, strictify: bool = False) -> Proof:
    """Simply labelled proof of the unfolding of ``p``'s endsequent.

    ``p`` must be a strict G3I proof under ``logic``; the result checks in
    permissive mode under ``logic`` plus ``lin``. ``strictify`` pushes the
    W and C nodes of the result up as far as they go.
    """
    if p.calculus != G3I:
        raise TranslationError(f"expected a g3i proof, got {p.calculus!r}")
    checked = check_g3i(p, logic, "strict")
    if not checked:
        raise TranslationError(f"input is not a strict G3I proof: {checked.describe()}")
    translator = _Translator(logic)
    out = translator.run(p)
    if strictify:
        out = absorb_weakenings(out, translator.logic)
    log.info("translated %d g3i nodes into %d lg3ipm nodes", p.size, out.size)
    return out
