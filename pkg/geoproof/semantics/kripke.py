"""
Kripke Semantics
================
Finite intuitionistic Kripke models and the evaluation of formulas,
labelled sequents, simply labelled sequents and hypersequents.

Accessibility is a boolean numpy matrix; the extension of a formula is a
boolean vector over worlds, computed clause by clause and cached per model.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.entities import (
    And, Atom, Bot, Formula, Hypersequent, Imp, LabelledSequent, Or, RelAtom,
    SimplyLabelledSequent, Top,
)
from ..core.errors import ModelError
from ..core.labels import transitive_closure
from ..core.parser import parse_model_raw

log = logging.getLogger(__name__)

World = Union[int, str]


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """Worlds, a preorder ``rel`` and a monotone valuation ``val``.

    ``rel[i, j]`` holds when world j is accessible from world i.
    """
    worlds: Tuple[str, ...]
    rel: np.ndarray
    val: Tuple[FrozenSet[str], ...]
    _extensions: Dict[Formula, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = len(self.worlds)
        if n == 0:
            raise ModelError("a model has at least one world")
        if self.rel.shape != (n, n) or len(self.val) != n:
            raise ModelError("relation and valuation must cover every world")
        if not self.rel.diagonal().all():
            raise ModelError("accessibility is not reflexive")
        composed = (self.rel.astype(np.int32) @ self.rel.astype(np.int32)) > 0
        if (composed & ~self.rel).any():
            raise ModelError("accessibility is not transitive")
        for i, j in zip(*np.nonzero(self.rel)):
            if not self.val[i] <= self.val[j]:
                raise ModelError(f"valuation not monotone along {self.worlds[i]}<={self.worlds[j]}")

    # -------------------------------------------------------------------------
    # construction
    # -------------------------------------------------------------------------

    @classmethod
    def from_edges(cls, worlds: Sequence[str], edges: Iterable[Tuple[str, str]],
                   val: Mapping[str, Iterable[str]]) -> "KripkeModel":
        """Model whose relation is the reflexive-transitive closure of ``edges``."""
        worlds = tuple(worlds)
        index = {w: i for i, w in enumerate(worlds)}
        rel = np.eye(len(worlds), dtype=bool)
        pairs = [RelAtom(a, b) for a, b in edges]
        for atom in transitive_closure(pairs):
            if atom.src not in index or atom.dst not in index:
                raise ModelError(f"edge {atom.text} mentions an unknown world")
            rel[index[atom.src], index[atom.dst]] = True
        unknown = set(val) - set(worlds)
        if unknown:
            raise ModelError(f"valuation mentions unknown worlds {sorted(unknown)}")
        valuation = tuple(frozenset(val.get(w, ())) for w in worlds)
        return cls(worlds, rel, valuation)

    @classmethod
    def from_text(cls, text: str) -> "KripkeModel":
        raw = parse_model_raw(text)
        return cls.from_edges(raw.worlds, [(r.src, r.dst) for r in raw.rels], raw.valuation)

    @classmethod
    def from_dict(cls, data: Mapping) -> "KripkeModel":
        edges = [tuple(pair) for pair in data.get("rel", [])]
        return cls.from_edges(data["worlds"], edges, data.get("val", {}))

    # -------------------------------------------------------------------------
    # output
    # -------------------------------------------------------------------------

    def edges(self) -> Tuple[Tuple[str, str], ...]:
        """Non-reflexive pairs of the relation."""
        return tuple((self.worlds[i], self.worlds[j])
                     for i, j in zip(*np.nonzero(self.rel)) if i != j)

    def to_text(self) -> str:
        rel = ", ".join(f"{a}<={b}" for a, b in self.edges())
        val = ", ".join(
            f"{w}={{{', '.join(sorted(atoms))}}}" for w, atoms in zip(self.worlds, self.val))
        return f"worlds: {' '.join(self.worlds)}; rel: {rel}; val: {val}"

    def to_latex(self) -> str:
        return rf"\texttt{{{self.to_text()}}}"

    @property
    def text(self) -> str:
        return self.to_text()

    def to_dict(self) -> Dict:
        return {
            "worlds": list(self.worlds),
            "rel": [list(pair) for pair in self.edges()],
            "val": {w: sorted(atoms) for w, atoms in zip(self.worlds, self.val)},
        }

    # -------------------------------------------------------------------------
    # evaluation
    # -------------------------------------------------------------------------

    def index(self, w: World) -> int:
        if isinstance(w, (int, np.integer)):
            return int(w)
        try:
            return self.worlds.index(w)
        except ValueError:
            raise ModelError(f"unknown world {w!r}") from None

    def extension(self, f: Formula) -> np.ndarray:
        """Boolean vector of the worlds forcing ``f``."""
        cached = self._extensions.get(f)
        if cached is not None:
            return cached
        n = len(self.worlds)
        if isinstance(f, Atom):
            ext = np.array([f.name in atoms for atoms in self.val], dtype=bool)
        elif isinstance(f, Bot):
            ext = np.zeros(n, dtype=bool)
        elif isinstance(f, Top):
            ext = np.ones(n, dtype=bool)
        elif isinstance(f, And):
            ext = self.extension(f.left) & self.extension(f.right)
        elif isinstance(f, Or):
            ext = self.extension(f.left) | self.extension(f.right)
        elif isinstance(f, Imp):
            bad = self.extension(f.left) & ~self.extension(f.right)
            ext = ~(self.rel & bad[np.newaxis, :]).any(axis=1)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._extensions[f] = ext
        return ext

    def globally(self, f: Formula) -> bool:
        return bool(self.extension(f).all())

    def __str__(self) -> str:
        return self.to_text()


def forces(m: KripkeModel, w: World, f: Formula) -> bool:
    return bool(m.extension(f)[m.index(w)])


# =============================================================================
# SEQUENT EVALUATION
# =============================================================================

def _component_holds(m: KripkeModel, ante: Iterable[Formula], succ: Iterable[Formula]) -> bool:
    """``Γ ⇒ Δ`` true in m: ``∧Γ`` fails somewhere or ``∨Δ`` holds everywhere."""
    n = len(m.worlds)
    conj = np.ones(n, dtype=bool)
    for f in ante:
        conj &= m.extension(f)
    if not conj.all():
        return True
    disj = np.zeros(n, dtype=bool)
    for f in succ:
        disj |= m.extension(f)
    return bool(disj.all())


def counterexample_assignment(m: KripkeModel, s: LabelledSequent) -> Optional[Dict[str, str]]:
    """First label assignment consistent with Σ that forces Γ and refutes Δ."""
    labels = sorted(s.labels)
    for choice in itertools.product(range(len(m.worlds)), repeat=len(labels)):
        h = dict(zip(labels, choice))
        if not all(m.rel[h[r.src], h[r.dst]] for r in s.rels):
            continue
        if not all(m.extension(lf.formula)[h[lf.label]] for lf in s.ante):
            continue
        if any(m.extension(lf.formula)[h[lf.label]] for lf in s.succ):
            continue
        return {label: m.worlds[i] for label, i in h.items()}
    return None


def eval_labelled(m: KripkeModel, s: LabelledSequent) -> bool:
    """Universal reading: every Σ-consistent assignment satisfies the sequent."""
    return counterexample_assignment(m, s) is None


def eval_sls(m: KripkeModel, s: SimplyLabelledSequent) -> bool:
    if not s.labels:
        log.warning("simply labelled sequent without labels is an empty component")
        return False
    return any(_component_holds(m, s.ante_slice(x), s.succ_slice(x)) for x in sorted(s.labels))


def eval_hypersequent(m: KripkeModel, h: Hypersequent) -> bool:
    return any(_component_holds(m, c.ante, c.succ) for c in h.components)


def evaluate(m: KripkeModel, goal) -> bool:
    """Dispatch on the sequent shape."""
    if isinstance(goal, LabelledSequent):
        return eval_labelled(m, goal)
    if isinstance(goal, SimplyLabelledSequent):
        return eval_sls(m, goal)
    if isinstance(goal, Hypersequent):
        return eval_hypersequent(m, goal)
    raise TypeError(f"cannot evaluate {type(goal).__name__}")
