"""
Model Enumeration
=================
Every finite preordered model with monotone valuation up to a world bound,
filtered by frame conditions, and countermodel search on top of it.

Preorders are grown one world at a time: the new world picks an up-set and
a down-set of the current order with every down-set world below every
up-set world, which keeps the relation transitive. Isomorphic copies are
not removed.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .. import config
from ..core.entities import Hypersequent, LabelledSequent
from .frames import GeometricImplication, check_frame
from .kripke import KripkeModel, counterexample_assignment, evaluate

log = logging.getLogger(__name__)


def _bitsets(n: int) -> Iterator[FrozenSet[int]]:
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


def preorders(n: int) -> Iterator[np.ndarray]:
    """All preorders on ``n`` labelled points, as boolean matrices."""
    if n == 0:
        yield np.zeros((0, 0), dtype=bool)
        return
    for rel in preorders(n - 1):
        k = n - 1
        for up in _bitsets(k):
            if any(rel[u, v] and v not in up for u in up for v in range(k)):
                continue
            for down in _bitsets(k):
                if any(rel[e, d] and e not in down for d in down for e in range(k)):
                    continue
                if any(not rel[d, u] for d in down for u in up):
                    continue
                grown = np.zeros((n, n), dtype=bool)
                grown[:k, :k] = rel
                grown[k, k] = True
                for u in up:
                    grown[k, u] = True
                for d in down:
                    grown[d, k] = True
                yield grown


def up_sets(rel: np.ndarray) -> List[FrozenSet[int]]:
    """Subsets of worlds closed upward under ``rel``."""
    n = rel.shape[0]
    return [s for s in _bitsets(n)
            if all(j in s for i in s for j in range(n) if rel[i, j])]


def enumerate_models(max_worlds: int, atoms: Sequence[str] = (),
                     frame: Sequence[GeometricImplication] = ()) -> Iterator[KripkeModel]:
    """Yield every model with 1..max_worlds worlds satisfying ``frame``."""
    if max_worlds > config.MAX_WORLDS_CAP:
        raise ValueError(f"max_worlds is capped at {config.MAX_WORLDS_CAP}")
    atoms = sorted(set(atoms))
    for n in range(1, max_worlds + 1):
        worlds = tuple(f"w{i}" for i in range(n))
        for rel in preorders(n):
            frame_model = KripkeModel(worlds, rel, tuple(frozenset() for _ in worlds))
            if not all(check_frame(frame_model, gi) for gi in frame):
                continue
            ups = up_sets(rel)
            for choice in itertools.product(ups, repeat=len(atoms)):
                val = tuple(
                    frozenset(a for a, s in zip(atoms, choice) if i in s) for i in range(n))
                yield KripkeModel(worlds, rel, val)


@lru_cache(maxsize=64)
def _model_list(max_worlds: int, atoms: Tuple[str, ...],
                frame: Tuple[GeometricImplication, ...]) -> Tuple[KripkeModel, ...]:
    return tuple(enumerate_models(max_worlds, atoms, frame))


def all_models(max_worlds: int, atoms: Sequence[str] = (),
               frame: Sequence[GeometricImplication] = ()) -> Tuple[KripkeModel, ...]:
    """Cached, materialised :func:`enumerate_models` for repeated oracle use."""
    return _model_list(max_worlds, tuple(sorted(set(atoms))), tuple(frame))


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    assignment: Optional[Dict[str, str]] = None

    def to_text(self) -> str:
        text = self.model.to_text()
        if self.assignment:
            text += "; assign: " + ", ".join(f"{k}={v}" for k, v in sorted(self.assignment.items()))
        return text

    @property
    def text(self) -> str:
        return self.to_text()

    def to_latex(self) -> str:
        return rf"\texttt{{{self.to_text()}}}"

    def to_dict(self) -> Dict:
        return {"model": self.model.to_dict(), "assignment": self.assignment}


def goal_atoms(goal) -> FrozenSet[str]:
    if isinstance(goal, Hypersequent):
        formulas = [f for c in goal.components for f in c.ante + c.succ]
    else:
        formulas = [lf.formula for lf in goal.ante + goal.succ]
    out = set()
    for f in formulas:
        out |= f.atoms()
    return frozenset(out)


def find_countermodel(goal, max_worlds: int = config.COUNTERMODEL_WORLDS,
                      frame: Sequence[GeometricImplication] = ()) -> Optional[Countermodel]:
    """First enumerated model refuting ``goal``, smallest models first."""
    atoms = sorted(goal_atoms(goal))
    for model in enumerate_models(max_worlds, atoms, frame):
        if isinstance(goal, LabelledSequent):
            h = counterexample_assignment(model, goal)
            if h is not None:
                log.debug("countermodel %s with assignment %s", model.to_text(), h)
                return Countermodel(model, h)
        elif not evaluate(model, goal):
            log.debug("countermodel %s", model.to_text())
            return Countermodel(model)
    return None


def valid_in_all(goal, max_worlds: int = config.ORACLE_WORLDS,
                 frame: Sequence[GeometricImplication] = ()) -> bool:
    """True when no model of the cached enumeration refutes ``goal``."""
    return all(evaluate(m, goal) for m in all_models(max_worlds, goal_atoms(goal), frame))
