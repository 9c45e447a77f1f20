"""
Geometric Rules
===============
Labelled structural rules read off geometric frame axioms, and their
instances on labelled sequents.

An axiom ``∀x̄(A0 ⊃ ∃ȳ1.A1 ∨ ... ∨ ∃ȳn.An)`` becomes the rule with
conclusion ``Ā0, Σ; Γ ⇒ Δ`` and one premiss ``Āi, Ā0, Σ; Γ ⇒ Δ`` per
alternative, the labels ȳi fresh.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..core.entities import Label, LabelledSequent, RelAtom
from ..core.errors import FreshnessError, RuleApplicationError
from ..core.labels import fresh_labels
from ..core.multiset import contains
from ..semantics.frames import GeometricImplication

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabelledRuleSchema:
    name: str
    variables: Tuple[Label, ...]
    conclusion: Tuple[RelAtom, ...]
    premisses: Tuple[Tuple[RelAtom, ...], ...]
    fresh: Tuple[Tuple[Label, ...], ...]

    @property
    def has_fresh(self) -> bool:
        return any(self.fresh)

    @property
    def text(self) -> str:
        def side(atoms):
            prefix = ", ".join(a.text for a in atoms)
            return f"{prefix}, S; G => D" if prefix else "S; G => D"

        prems = "  &  ".join(side(tuple(added) + self.conclusion) for added in self.premisses)
        fresh = sorted({v for group in self.fresh for v in group})
        tail = f"  [{', '.join(fresh)} fresh]" if fresh else ""
        return f"{self.name}: {prems}  /  {side(self.conclusion)}{tail}"

    def to_latex(self) -> str:
        def side(atoms):
            rels = ", ".join(a.to_latex() for a in atoms)
            return rf"{rels}, \Sigma; \Gamma \Rightarrow \Delta" if rels else \
                r"\Sigma; \Gamma \Rightarrow \Delta"

        prems = r" \quad ".join(side(tuple(a) + self.conclusion) for a in self.premisses)
        return rf"\infer[{self.name}]{{{side(self.conclusion)}}}{{{prems}}}"

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "form": "labelled",
            "conclusion": [a.text for a in self.conclusion],
            "premisses": [[a.text for a in p] for p in self.premisses],
            "fresh": [list(f) for f in self.fresh],
            "text": self.text,
        }

    # -------------------------------------------------------------------------
    # instances
    # -------------------------------------------------------------------------

    def premisses_for(self, s: LabelledSequent, subst: Mapping[str, Label]) -> List[LabelledSequent]:
        """Premisses of the instance of this rule with conclusion ``s``."""
        missing = [v for v in self.variables if v not in subst]
        if missing:
            raise RuleApplicationError(f"{self.name}: no label given for {missing}")
        principal = [a.relabel(subst) for a in self.conclusion]
        if not contains(s.rels, principal):
            raise RuleApplicationError(
                f"{self.name}: {', '.join(a.text for a in principal)} not in the conclusion")
        out = []
        for added, fresh in zip(self.premisses, self.fresh):
            for v in fresh:
                if v not in subst:
                    raise RuleApplicationError(f"{self.name}: no label given for fresh {v}")
                if subst[v] in s.labels:
                    raise FreshnessError(f"{self.name}: label {subst[v]} is not fresh")
            if len({subst[v] for v in fresh}) != len(fresh):
                raise FreshnessError(f"{self.name}: fresh labels must be distinct")
            out.append(s.add(rels=[a.relabel(subst) for a in added]))
        return out

    def matches(self, s: LabelledSequent) -> Iterator[Dict[str, Label]]:
        """Label maps for the universal variables making Ā0 a part of Σ."""
        labels = sorted(s.labels)
        for choice in itertools.product(labels, repeat=len(self.variables)):
            subst = dict(zip(self.variables, choice))
            if contains(s.rels, [a.relabel(subst) for a in self.conclusion]):
                yield subst

    def satisfied(self, s: LabelledSequent, subst: Mapping[str, Label],
                  rels: Optional[Iterable[RelAtom]] = None) -> bool:
        """Some alternative already holds in ``rels`` (default Σ), witnesses
        among current labels."""
        rels = set(s.rels if rels is None else rels)
        labels = sorted(s.labels)
        for added, fresh in zip(self.premisses, self.fresh):
            for witness in itertools.product(labels, repeat=len(fresh)):
                full = {**subst, **dict(zip(fresh, witness))}
                if all(a.relabel(full) in rels for a in added):
                    return True
        return False

    def with_fresh(self, s: LabelledSequent, subst: Mapping[str, Label],
                   used: Sequence[Label] = ()) -> Dict[str, Label]:
        """Extend ``subst`` with fresh labels for every existential variable."""
        needed = sorted({v for group in self.fresh for v in group})
        chosen = fresh_labels(set(s.labels) | set(used), len(needed))
        return {**subst, **dict(zip(needed, chosen))}


def to_labelled_rule(gi: GeometricImplication, name: str) -> LabelledRuleSchema:
    """The geometric rule of ``gi``: one premiss per alternative."""
    schema = LabelledRuleSchema(
        name=name,
        variables=gi.universals,
        conclusion=tuple(sorted(gi.hypothesis)),
        premisses=tuple(tuple(sorted(alt.atoms)) for alt in gi.alternatives),
        fresh=tuple(tuple(alt.exists) for alt in gi.alternatives),
    )
    log.debug("labelled rule %s", schema.text)
    return schema
