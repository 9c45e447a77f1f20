"""
Syntax Entities
===============
Formulas, relational atoms, labelled formulas and the three sequent shapes.

Every entity is an immutable dataclass. Multiset fields are stored as sorted
tuples, so dataclass equality is multiset equality and duplicates survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, Mapping, Tuple

Label = str

_PREC_IMP = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_ATOM = 4

_TEXT = {
    "bot": "bot", "top": "top", "and": " & ", "or": " | ", "imp": " -> ",
    "neg": "~", "atom": "{}",
}
_LATEX = {
    "bot": r"\bot", "top": r"\top", "and": r" \land ", "or": r" \lor ",
    "imp": r" \supset ", "neg": r"\neg ", "atom": "{}",
}


# =============================================================================
# FORMULAS
# =============================================================================

@dataclass(frozen=True)
class Formula:
    """Propositional formula. Negation is stored as ``Imp(A, Bot)``."""

    @property
    def precedence(self) -> int:
        return _PREC_ATOM

    @cached_property
    def text(self) -> str:
        return self._render(_TEXT)

    def to_latex(self) -> str:
        return self._render(_LATEX)

    def _render(self, sym: Mapping[str, str]) -> str:
        raise NotImplementedError

    def _wrapped(self, sym: Mapping[str, str], needs_parens: bool) -> str:
        inner = self._render(sym)
        return f"({inner})" if needs_parens else inner

    @cached_property
    def size(self) -> int:
        return 1 + sum(child.size for child in self.children)

    @property
    def children(self) -> Tuple["Formula", ...]:
        return ()

    def atoms(self) -> FrozenSet[str]:
        found = set()
        for f in self.subformulas():
            if isinstance(f, Atom):
                found.add(f.name)
        return frozenset(found)

    def subformulas(self) -> FrozenSet["Formula"]:
        out = {self}
        for child in self.children:
            out |= child.subformulas()
        return frozenset(out)

    def __lt__(self, other: "Formula") -> bool:
        return self.text < other.text

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def _render(self, sym):
        return sym["atom"].format(self.name)


@dataclass(frozen=True)
class Bot(Formula):
    def _render(self, sym):
        return sym["bot"]


@dataclass(frozen=True)
class Top(Formula):
    def _render(self, sym):
        return sym["top"]


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    @property
    def precedence(self) -> int:
        return _PREC_AND

    @property
    def children(self):
        return (self.left, self.right)

    def _render(self, sym):
        left = self.left._wrapped(sym, self.left.precedence < _PREC_AND)
        right = self.right._wrapped(sym, self.right.precedence <= _PREC_AND)
        return f"{left}{sym['and']}{right}"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    @property
    def precedence(self) -> int:
        return _PREC_OR

    @property
    def children(self):
        return (self.left, self.right)

    def _render(self, sym):
        left = self.left._wrapped(sym, self.left.precedence < _PREC_OR)
        right = self.right._wrapped(sym, self.right.precedence <= _PREC_OR)
        return f"{left}{sym['or']}{right}"


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula

    @property
    def is_negation(self) -> bool:
        return isinstance(self.right, Bot)

    @property
    def precedence(self) -> int:
        return _PREC_ATOM if self.is_negation else _PREC_IMP

    @property
    def children(self):
        return (self.left, self.right)

    def _render(self, sym):
        if self.is_negation:
            operand = self.left._wrapped(sym, self.left.precedence < _PREC_ATOM)
            return f"{sym['neg']}{operand}"
        left = self.left._wrapped(sym, self.left.precedence <= _PREC_IMP)
        right = self.right._wrapped(sym, self.right.precedence < _PREC_IMP)
        return f"{left}{sym['imp']}{right}"


BOT = Bot()
TOP = Top()


def neg(formula: Formula) -> Formula:
    """``~A`` as sugar for ``A -> bot``."""
    return Imp(formula, BOT)


# =============================================================================
# LABELLED ATOMS
# =============================================================================

@dataclass(frozen=True, order=True)
class RelAtom:
    """Relational atom ``src <= dst``."""
    src: Label
    dst: Label

    @property
    def text(self) -> str:
        return f"{self.src}<={self.dst}"

    def to_latex(self) -> str:
        return rf"{self.src} \sqsubseteq {self.dst}"

    def relabel(self, mapping: Mapping[Label, Label]) -> "RelAtom":
        return RelAtom(mapping.get(self.src, self.src), mapping.get(self.dst, self.dst))

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True, order=True)
class LabelledFormula:
    """Formula annotated with a label, ``x:A``."""
    label: Label
    formula: Formula

    @property
    def text(self) -> str:
        body = self.formula._wrapped(_TEXT, bool(self.formula.children))
        return f"{self.label}:{body}"

    def to_latex(self) -> str:
        body = self.formula._wrapped(_LATEX, bool(self.formula.children))
        return f"{self.label}{{:}}{body}"

    def relabel(self, mapping: Mapping[Label, Label]) -> "LabelledFormula":
        return LabelledFormula(mapping.get(self.label, self.label), self.formula)

    def __str__(self) -> str:
        return self.text


# =============================================================================
# SEQUENTS
# =============================================================================

def _sorted(items: Iterable) -> tuple:
    return tuple(sorted(items))


def _join(ante: Iterable[str], succ: Iterable[str], arrow: str = "=>") -> str:
    left = ", ".join(ante)
    right = ", ".join(succ)
    return " ".join(part for part in (left, arrow, right) if part)


class _LabelledSides:
    """Shared behaviour of sequents whose sides hold labelled formulas."""

    ante: Tuple[LabelledFormula, ...]
    succ: Tuple[LabelledFormula, ...]

    @cached_property
    def formula_labels(self) -> FrozenSet[Label]:
        return frozenset(lf.label for lf in self.ante + self.succ)

    def ante_slice(self, label: Label) -> Tuple[Formula, ...]:
        """Label-erased antecedent slice ``Γ|x``."""
        return tuple(lf.formula for lf in self.ante if lf.label == label)

    def succ_slice(self, label: Label) -> Tuple[Formula, ...]:
        return tuple(lf.formula for lf in self.succ if lf.label == label)

    @property
    def size(self) -> int:
        return len(self.ante) + len(self.succ)


@dataclass(frozen=True)
class LabelledSequent(_LabelledSides):
    """``Σ; Γ ⇒ Δ`` with Σ, Γ, Δ multisets."""
    rels: Tuple[RelAtom, ...] = ()
    ante: Tuple[LabelledFormula, ...] = ()
    succ: Tuple[LabelledFormula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rels", _sorted(self.rels))
        object.__setattr__(self, "ante", _sorted(self.ante))
        object.__setattr__(self, "succ", _sorted(self.succ))

    @cached_property
    def labels(self) -> FrozenSet[Label]:
        rel_labels = {r.src for r in self.rels} | {r.dst for r in self.rels}
        return frozenset(rel_labels) | self.formula_labels

    @property
    def size(self) -> int:
        return len(self.rels) + len(self.ante) + len(self.succ)

    def add(self, rels: Iterable[RelAtom] = (), ante: Iterable[LabelledFormula] = (),
            succ: Iterable[LabelledFormula] = ()) -> "LabelledSequent":
        return LabelledSequent(self.rels + tuple(rels), self.ante + tuple(ante),
                               self.succ + tuple(succ))

    def remove(self, rels: Iterable[RelAtom] = (), ante: Iterable[LabelledFormula] = (),
               succ: Iterable[LabelledFormula] = ()) -> "LabelledSequent":
        from .multiset import minus
        return LabelledSequent(minus(self.rels, rels), minus(self.ante, ante),
                               minus(self.succ, succ))

    def relabel(self, mapping: Mapping[Label, Label]) -> "LabelledSequent":
        return LabelledSequent(
            tuple(r.relabel(mapping) for r in self.rels),
            tuple(lf.relabel(mapping) for lf in self.ante),
            tuple(lf.relabel(mapping) for lf in self.succ),
        )

    @cached_property
    def text(self) -> str:
        core = _join((lf.text for lf in self.ante), (lf.text for lf in self.succ))
        if not self.rels:
            return core
        return f"{', '.join(r.text for r in self.rels)} ; {core}"

    def to_latex(self) -> str:
        core = _join((lf.to_latex() for lf in self.ante),
                     (lf.to_latex() for lf in self.succ), r"\Rightarrow")
        if not self.rels:
            return core
        return f"{', '.join(r.to_latex() for r in self.rels)}; {core}"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SimplyLabelledSequent(_LabelledSides):
    """``Γ ⇒ Δ`` over labelled formulas with no relational part."""
    ante: Tuple[LabelledFormula, ...] = ()
    succ: Tuple[LabelledFormula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ante", _sorted(self.ante))
        object.__setattr__(self, "succ", _sorted(self.succ))

    @property
    def labels(self) -> FrozenSet[Label]:
        return self.formula_labels

    def add(self, ante: Iterable[LabelledFormula] = (),
            succ: Iterable[LabelledFormula] = ()) -> "SimplyLabelledSequent":
        return SimplyLabelledSequent(self.ante + tuple(ante), self.succ + tuple(succ))

    def remove(self, ante: Iterable[LabelledFormula] = (),
               succ: Iterable[LabelledFormula] = ()) -> "SimplyLabelledSequent":
        from .multiset import minus
        return SimplyLabelledSequent(minus(self.ante, ante), minus(self.succ, succ))

    def relabel(self, mapping: Mapping[Label, Label]) -> "SimplyLabelledSequent":
        return SimplyLabelledSequent(
            tuple(lf.relabel(mapping) for lf in self.ante),
            tuple(lf.relabel(mapping) for lf in self.succ),
        )

    def support(self) -> Tuple[FrozenSet[LabelledFormula], FrozenSet[LabelledFormula]]:
        return frozenset(self.ante), frozenset(self.succ)

    @cached_property
    def text(self) -> str:
        return _join((lf.text for lf in self.ante), (lf.text for lf in self.succ))

    def to_latex(self) -> str:
        return _join((lf.to_latex() for lf in self.ante),
                     (lf.to_latex() for lf in self.succ), r"\Rightarrow")

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Component:
    """One sequent ``Γ ⇒ Δ`` of a hypersequent (unlabelled formulas)."""
    ante: Tuple[Formula, ...] = ()
    succ: Tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ante", _sorted(self.ante))
        object.__setattr__(self, "succ", _sorted(self.succ))

    @property
    def is_empty(self) -> bool:
        return not self.ante and not self.succ

    @property
    def text(self) -> str:
        return _join((f.text for f in self.ante), (f.text for f in self.succ))

    def to_latex(self) -> str:
        return _join((f.to_latex() for f in self.ante),
                     (f.to_latex() for f in self.succ), r"\Rightarrow")

    @property
    def sort_key(self) -> Tuple[str, ...]:
        return tuple(["0" + f.text for f in self.ante] + ["1" + f.text for f in self.succ])

    def __lt__(self, other: "Component") -> bool:
        return self.sort_key < other.sort_key


@dataclass(frozen=True)
class Hypersequent:
    """Nonempty multiset of components, read disjunctively."""
    components: Tuple[Component, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a hypersequent has at least one component")
        object.__setattr__(self, "components", _sorted(self.components))

    @property
    def text(self) -> str:
        return " || ".join(c.text for c in self.components)

    def to_latex(self) -> str:
        return r" \mid ".join(c.to_latex() for c in self.components)

    def __str__(self) -> str:
        return self.text
