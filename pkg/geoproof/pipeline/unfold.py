"""
Transitive Unfolding
====================
Encodes the relational part of a labelled sequent into its slices. Every
antecedent occurrence ``x:A`` is copied to each ``y`` with ``x<=y`` in the
transitive closure, every succedent occurrence ``y:A`` to each ``x`` with
``x<=y``. Self loops add nothing, and cycles copy both ways.

Copies are taken from the original occurrences only, so the result does
not depend on the order the relational atoms are visited in.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from ..core.entities import Label, LabelledFormula, LabelledSequent, RelAtom, SimplyLabelledSequent
from ..core.labels import backward_labels, forward_labels, transitive_closure

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Copy:
    """Where one occurrence of the source went."""
    side: str
    occurrence: LabelledFormula
    labels: Tuple[Label, ...]

    @property
    def text(self) -> str:
        return f"{self.side} {self.occurrence.text} -> {','.join(self.labels)}"


@dataclass(frozen=True)
class UnfoldingTrace:
    source: LabelledSequent
    closure: FrozenSet[RelAtom]
    copies: Tuple[Copy, ...]
    result: SimplyLabelledSequent

    def to_text(self) -> str:
        lines = [f"source: {self.source.text}",
                 f"closure: {', '.join(sorted(r.text for r in self.closure)) or '-'}"]
        lines += [f"  {c.text}" for c in self.copies]
        lines.append(f"result: {self.result.text}")
        return "\n".join(lines)

    @property
    def text(self) -> str:
        return self.to_text()

    def to_latex(self) -> str:
        return self.result.to_latex()

    def to_dict(self):
        return {
            "source": self.source.text,
            "closure": sorted(r.text for r in self.closure),
            "copies": [{"side": c.side, "occurrence": c.occurrence.text, "labels": list(c.labels)}
                       for c in self.copies],
            "result": self.result.text,
        }


def _targets(closure, lf: LabelledFormula, side: str) -> Tuple[Label, ...]:
    reach = forward_labels if side == "ante" else backward_labels
    others = sorted(reach(closure, lf.label) - {lf.label})
    return (lf.label, *others)


def transitive_unfold(s: LabelledSequent) -> UnfoldingTrace:
    closure = transitive_closure(s.rels)
    copies, ante, succ = [], [], []
    for side, out in (("ante", ante), ("succ", succ)):
        for lf in getattr(s, side):
            labels = _targets(closure, lf, side)
            copies.append(Copy(side, lf, labels))
            out.extend(LabelledFormula(x, lf.formula) for x in labels)
    result = SimplyLabelledSequent(tuple(ante), tuple(succ))
    log.debug("unfolded %s to %s", s.text, result.text)
    return UnfoldingTrace(s, closure, tuple(copies), result)


def unfold(s: LabelledSequent) -> SimplyLabelledSequent:
    return transitive_unfold(s).result


def unfold_by_fold(s: LabelledSequent, order: Optional[Sequence[RelAtom]] = None) -> SimplyLabelledSequent:
    """The unfolding built one closure atom at a time, in ``order``.

    Each atom ``x<=y`` copies the original antecedent slice of ``x`` to ``y``
    and the original succedent slice of ``y`` to ``x``.
    """
    closure = transitive_closure(s.rels)
    atoms: Iterable[RelAtom] = sorted(closure) if order is None else order
    ante, succ = list(s.ante), list(s.succ)
    for r in atoms:
        if r not in closure:
            raise ValueError(f"{r.text} is not in the closure of {s.text}")
        if r.src == r.dst:
            continue
        ante.extend(LabelledFormula(r.dst, f) for f in s.ante_slice(r.src))
        succ.extend(LabelledFormula(r.src, f) for f in s.succ_slice(r.dst))
    return SimplyLabelledSequent(tuple(ante), tuple(succ))
