"""
Frame Conditions
================
Geometric implications ``∀x̄(A0 ⊃ ∃ȳ(A1 ∨ ... ∨ An))`` over the
accessibility relation, and their truth in finite frames.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..core.entities import Label, RelAtom
from ..core.errors import ParseError
from ..core.parser import parse_geometric_raw
from .kripke import KripkeModel

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Alternative:
    """One disjunct ``∃ȳ. Ai``."""
    exists: Tuple[Label, ...]
    atoms: Tuple[RelAtom, ...]

    @property
    def text(self) -> str:
        body = " & ".join(a.text for a in self.atoms)
        if not self.exists:
            return body
        return f"ex {' '.join(self.exists)}. {body}"


@dataclass(frozen=True)
class GeometricImplication:
    universals: Tuple[Label, ...]
    hypothesis: Tuple[RelAtom, ...]
    alternatives: Tuple[Alternative, ...]
    name: Optional[str] = None

    def __post_init__(self):
        if not self.alternatives:
            raise ParseError("a geometric implication needs at least one alternative")
        bound = set(self.universals)
        for atom in self.hypothesis:
            if atom.src not in bound or atom.dst not in bound:
                raise ParseError(f"hypothesis atom {atom.text} uses an unbound variable")
        for alt in self.alternatives:
            if not alt.atoms:
                raise ParseError("an alternative must contain at least one atom")
            clash = bound & set(alt.exists)
            if clash:
                raise ParseError(f"existential variables {sorted(clash)} shadow universals")
            scope = bound | set(alt.exists)
            for atom in alt.atoms:
                if atom.src not in scope or atom.dst not in scope:
                    raise ParseError(f"atom {atom.text} uses an unbound variable")

    @property
    def text(self) -> str:
        hyp = ", ".join(a.text for a in self.hypothesis) or "true"
        return f"{hyp} => {' || '.join(alt.text for alt in self.alternatives)}"

    def to_latex(self) -> str:
        def conj(atoms):
            return r" \land ".join(a.to_latex() for a in atoms) or r"\top"

        alts = []
        for alt in self.alternatives:
            body = conj(alt.atoms)
            alts.append(rf"\exists {','.join(alt.exists)}.({body})" if alt.exists else body)
        prefix = rf"\forall {','.join(self.universals)}." if self.universals else ""
        disj = r" \lor ".join(alts)
        return rf"{prefix}({conj(self.hypothesis)} \supset {disj})"

    def to_dict(self) -> Dict:
        return {"name": self.name, "text": self.text}

    def __str__(self) -> str:
        return self.text


def parse_geometric_implication(text: str) -> GeometricImplication:
    """Read ``[name:] hyp => alt || alt ...``; free variables are universal."""
    raw = parse_geometric_raw(text)
    alternatives = tuple(Alternative(tuple(exists), tuple(atoms))
                         for exists, atoms in raw.alternatives)
    existential = {v for alt in alternatives for v in alt.exists}
    free = set()
    for atom in raw.hypothesis:
        free |= {atom.src, atom.dst}
    for alt in alternatives:
        for atom in alt.atoms:
            free |= {atom.src, atom.dst} - set(alt.exists)
    universals = tuple(sorted(free))
    if existential & set(universals):
        raise ParseError(f"variables {sorted(existential & set(universals))} are both "
                         f"free and existentially bound")
    return GeometricImplication(universals, tuple(raw.hypothesis), alternatives, raw.name)


def check_frame(m: KripkeModel, gi: GeometricImplication) -> bool:
    """Truth of ``gi`` in the frame of ``m``, by finite quantifier expansion."""
    n = len(m.worlds)
    rel = m.rel

    def holds(atoms, h) -> bool:
        return all(rel[h[a.src], h[a.dst]] for a in atoms)

    for choice in itertools.product(range(n), repeat=len(gi.universals)):
        h = dict(zip(gi.universals, choice))
        if not holds(gi.hypothesis, h):
            continue
        satisfied = False
        for alt in gi.alternatives:
            for witness in itertools.product(range(n), repeat=len(alt.exists)):
                if holds(alt.atoms, {**h, **dict(zip(alt.exists, witness))}):
                    satisfied = True
                    break
            if satisfied:
                break
        if not satisfied:
            return False
    return True
