"""
Label Utilities
===============
Transitive closure of relational multisets, label maps over the closure,
subset modulo permutation, alpha-normal forms, fresh labels and the
hypersequent / simply labelled notation switch.
"""

import itertools
import logging
from collections import Counter
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .. import config
from .entities import (
    Component, Hypersequent, Label, LabelledFormula, LabelledSequent, RelAtom,
    SimplyLabelledSequent,
)

log = logging.getLogger(__name__)


# =============================================================================
# CLOSURE
# =============================================================================

def transitive_closure(rels: Iterable[RelAtom]) -> FrozenSet[RelAtom]:
    """Smallest transitively closed set containing ``rels`` (Warshall)."""
    rels = list(rels)
    if not rels:
        return frozenset()
    labels = sorted({r.src for r in rels} | {r.dst for r in rels})
    index = {label: i for i, label in enumerate(labels)}
    reach = np.zeros((len(labels), len(labels)), dtype=bool)
    for r in rels:
        reach[index[r.src], index[r.dst]] = True
    for k in range(len(labels)):
        reach |= reach[:, k:k + 1] & reach[k:k + 1, :]
    rows, cols = np.nonzero(reach)
    return frozenset(RelAtom(labels[i], labels[j]) for i, j in zip(rows, cols))


def forward_labels(closure: Iterable[RelAtom], x: Label) -> FrozenSet[Label]:
    """``lab→_x``: every y with x⊑y in the closure."""
    return frozenset(r.dst for r in closure if r.src == x)


def backward_labels(closure: Iterable[RelAtom], y: Label) -> FrozenSet[Label]:
    """``lab←_y``: every x with x⊑y in the closure."""
    return frozenset(r.src for r in closure if r.dst == y)


# =============================================================================
# SUBSET MODULO PERMUTATION
# =============================================================================

def _slices(items: Iterable[LabelledFormula]) -> Dict[Label, Counter]:
    out: Dict[Label, Counter] = {}
    for lf in items:
        out.setdefault(lf.label, Counter())[lf.formula] += 1
    return out


def _fits(small: Counter, big: Counter) -> bool:
    return all(big[f] >= n for f, n in small.items())


def subset_modulo_perm(g1: Iterable[LabelledFormula],
                       g2: Iterable[LabelledFormula]) -> Optional[Dict[Label, Label]]:
    """Injective relabelling π with π(g1) ⊆ g2, or None.

    An empty ``g1`` yields the empty map, so test the result with
    ``is not None``.
    """
    small = _slices(g1)
    big = _slices(g2)
    order = sorted(small, key=lambda label: (-sum(small[label].values()), label))
    candidates = {
        label: [target for target in sorted(big) if _fits(small[label], big[target])]
        for label in order
    }
    chosen: Dict[Label, Label] = {}
    used = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        label = order[i]
        for target in candidates[label]:
            if target in used:
                continue
            chosen[label] = target
            used.add(target)
            if extend(i + 1):
                return True
            used.discard(target)
            del chosen[label]
        return False

    return dict(chosen) if extend(0) else None


def is_subset_modulo_perm(g1: Iterable[LabelledFormula], g2: Iterable[LabelledFormula]) -> bool:
    return subset_modulo_perm(g1, g2) is not None


def slice_included(s: SimplyLabelledSequent, x: Label, y: Label) -> bool:
    """``Γ|x ⊂~ Γ|y`` with the permutation restricted to x ↦ y."""
    return _fits(Counter(s.ante_slice(x)), Counter(s.ante_slice(y)))


# =============================================================================
# CANONICAL FORMS
# =============================================================================

def _signature(ante: Sequence[LabelledFormula], succ: Sequence[LabelledFormula],
               label: Label) -> Tuple[str, ...]:
    return tuple(sorted(["0" + lf.formula.text for lf in ante if lf.label == label]
                        + ["1" + lf.formula.text for lf in succ if lf.label == label]))


def canonical_names(count: int) -> List[Label]:
    return [f"{config.CANONICAL_LABEL_PREFIX}{i}" for i in range(count)]


def canonicalize_labels(s: SimplyLabelledSequent) -> SimplyLabelledSequent:
    """Alpha-normal form: labels renamed v0, v1, ... in slice-signature order.

    Labels with equal signatures carry identical slices, so the order among
    them does not affect the result.
    """
    order = sorted(s.labels, key=lambda label: (_signature(s.ante, s.succ, label), label))
    mapping = dict(zip(order, canonical_names(len(order))))
    return s.relabel(mapping)


def canonicalize_labelled(s: LabelledSequent) -> LabelledSequent:
    """Alpha-normal form of a labelled sequent.

    Labels are ordered by slice signature and relational degree; ties are
    broken by trying the permutations of each tie group (up to a cap) and
    keeping the smallest text. Beyond the cap the first order is used, which
    only weakens loop detection.
    """
    def key(label: Label):
        outdeg = sum(1 for r in s.rels if r.src == label)
        indeg = sum(1 for r in s.rels if r.dst == label)
        return (_signature(s.ante, s.succ, label), outdeg, indeg)

    groups: Dict[tuple, List[Label]] = {}
    for label in sorted(s.labels):
        groups.setdefault(key(label), []).append(label)
    ordered_groups = [groups[k] for k in sorted(groups)]
    names = canonical_names(len(s.labels))

    total = 1
    for group in ordered_groups:
        for n in range(2, len(group) + 1):
            total *= n
    if total > config.CANONICAL_PERMUTATION_CAP:
        flat = [label for group in ordered_groups for label in group]
        return s.relabel(dict(zip(flat, names)))

    best: Optional[LabelledSequent] = None
    for combo in itertools.product(*(itertools.permutations(g) for g in ordered_groups)):
        flat = [label for group in combo for label in group]
        candidate = s.relabel(dict(zip(flat, names)))
        if best is None or candidate.text < best.text:
            best = candidate
    return best if best is not None else s


# =============================================================================
# FRESH LABELS
# =============================================================================

def fresh_label(used: Iterable[Label], prefix: str = config.FRESH_LABEL_PREFIX) -> Label:
    """Least ``prefixN`` not in ``used``."""
    used = set(used)
    for n in itertools.count():
        candidate = f"{prefix}{n}"
        if candidate not in used:
            return candidate
    raise AssertionError("unreachable")


def fresh_labels(used: Iterable[Label], count: int,
                 prefix: str = config.FRESH_LABEL_PREFIX) -> List[Label]:
    used = set(used)
    out = []
    for _ in range(count):
        label = fresh_label(used, prefix)
        used.add(label)
        out.append(label)
    return out


# =============================================================================
# HYPERSEQUENT <-> SIMPLY LABELLED
# =============================================================================

def hs_to_sls(h: Hypersequent) -> SimplyLabelledSequent:
    """One fresh label per component, in component order."""
    ante, succ = [], []
    names = canonical_names(len(h.components))
    for label, component in zip(names, h.components):
        if component.is_empty:
            log.warning("empty component dropped from hypersequent %s", h.text)
        ante.extend(LabelledFormula(label, f) for f in component.ante)
        succ.extend(LabelledFormula(label, f) for f in component.succ)
    return SimplyLabelledSequent(tuple(ante), tuple(succ))


def sls_to_hs(s: SimplyLabelledSequent) -> Hypersequent:
    """One component per label; the empty sequent becomes one empty component."""
    if not s.labels:
        log.warning("empty simply labelled sequent read as a single empty component")
        return Hypersequent((Component(),))
    return Hypersequent(tuple(
        Component(s.ante_slice(label), s.succ_slice(label)) for label in sorted(s.labels)
    ))
