"""
Parser
======
One LALR grammar (lark) with a start symbol per input kind: formulas,
labelled and simply labelled sequents, hypersequents, geometric
implications and Kripke models.

Precedence: ``~`` > ``&`` > ``|`` > ``->``; ``->`` associates to the right,
``&`` and ``|`` to the left. Reserved words: bot, top, true, ex, worlds,
rel, val.
"""

import logging
from functools import lru_cache
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .entities import (
    Atom, BOT, Component, Formula, Hypersequent, Imp, LabelledFormula, LabelledSequent,
    Or, And, RelAtom, SimplyLabelledSequent, TOP, neg,
)
from .errors import GeoproofError, ParseError

log = logging.getLogger(__name__)

GRAMMAR = r"""
?formula: disj "->" formula          -> imp
        | disj
?disj: disj "|" conj                 -> or_
     | conj
?conj: conj "&" unary                -> and_
     | unary
?unary: "~" unary                    -> neg
      | primary
?primary: "bot"                      -> bot
        | "top"                      -> top
        | NAME                       -> atom
        | "(" formula ")"

lformula: NAME ":" primary
relatom: NAME "<=" NAME
lside: (lformula ("," lformula)*)?
rels: relatom ("," relatom)*

lsequent: rels ";" lside "=>" lside  -> lsequent_rels
        | ";" lside "=>" lside       -> lsequent_bare
        | lside "=>" lside           -> lsequent_bare

slsequent: lside "=>" lside

fside: (formula ("," formula)*)?
component: fside "=>" fside
hypersequent: component ("||" component)*

gimpl: NAME ":" ghyp "=>" galts      -> gimpl_named
     | ghyp "=>" galts               -> gimpl_plain
ghyp: "true"                         -> hyp_true
    | relatom ("," relatom)*         -> hyp_atoms
galts: galt ("||" galt)*
galt: "ex" NAME+ "." gconj           -> galt_ex
    | gconj                          -> galt_plain
gconj: relatom (gsep relatom)*
gsep: "&"                            -> sep_and
    | "|"                            -> sep_or

model: "worlds" ":" NAME+ (";" model_rel)? (";" model_val)?
model_rel: "rel" ":" (relatom ("," relatom)*)?
model_val: "val" ":" (valentry ("," valentry)*)?
valentry: NAME "=" "{" (NAME ("," NAME)*)? "}"

NAME: /[A-Za-z][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""

_STARTS = ["formula", "lformula", "relatom", "lsequent", "slsequent", "hypersequent",
           "gimpl", "model"]

_PARSER = Lark(GRAMMAR, start=_STARTS, parser="lalr")


class RawGeometric(NamedTuple):
    """Geometric implication as read, before validation."""
    name: Optional[str]
    hypothesis: Tuple[RelAtom, ...]
    alternatives: Tuple[Tuple[Tuple[str, ...], Tuple[RelAtom, ...]], ...]


class RawModel(NamedTuple):
    worlds: Tuple[str, ...]
    rels: Tuple[RelAtom, ...]
    valuation: Dict[str, FrozenSet[str]]


@v_args(inline=True)
class _Builder(Transformer):

    # formulas
    def imp(self, left, right):
        return Imp(left, right)

    def or_(self, left, right):
        return Or(left, right)

    def and_(self, left, right):
        return And(left, right)

    def neg(self, operand):
        return neg(operand)

    def bot(self):
        return BOT

    def top(self):
        return TOP

    def atom(self, name):
        return Atom(str(name))

    # labelled pieces
    def lformula(self, label, formula):
        return LabelledFormula(str(label), formula)

    def relatom(self, src, dst):
        return RelAtom(str(src), str(dst))

    def lside(self, *items):
        return tuple(items)

    def rels(self, *items):
        return tuple(items)

    def lsequent_rels(self, rels, ante, succ):
        return LabelledSequent(rels, ante, succ)

    def lsequent_bare(self, ante, succ):
        return LabelledSequent((), ante, succ)

    def slsequent(self, ante, succ):
        return SimplyLabelledSequent(ante, succ)

    # hypersequents
    def fside(self, *formulas):
        return tuple(formulas)

    def component(self, ante, succ):
        return Component(ante, succ)

    def hypersequent(self, *components):
        return Hypersequent(tuple(components))

    # geometric implications
    def gimpl_named(self, name, hypothesis, alternatives):
        return RawGeometric(str(name), hypothesis, alternatives)

    def gimpl_plain(self, hypothesis, alternatives):
        return RawGeometric(None, hypothesis, alternatives)

    def hyp_true(self):
        return ()

    def hyp_atoms(self, *atoms):
        return tuple(atoms)

    def galts(self, *groups):
        return tuple(alt for group in groups for alt in group)

    def galt_ex(self, *children):
        names = tuple(str(tok) for tok in children[:-1])
        atoms, seps = children[-1]
        if "or" in seps:
            log.warning("'|' under an existential read as '&' (directedness spelling)")
        return [(names, tuple(atoms))]

    def galt_plain(self, conj):
        atoms, seps = conj
        groups: List[List[RelAtom]] = [[atoms[0]]]
        for sep, atom in zip(seps, atoms[1:]):
            if sep == "or":
                groups.append([atom])
            else:
                groups[-1].append(atom)
        return [((), tuple(group)) for group in groups]

    def gconj(self, first, *rest):
        atoms = [first] + list(rest[1::2])
        seps = list(rest[0::2])
        return atoms, seps

    def sep_and(self):
        return "and"

    def sep_or(self):
        return "or"

    # models
    def model(self, *children):
        worlds = tuple(str(c) for c in children if not isinstance(c, tuple))
        rels: Tuple[RelAtom, ...] = ()
        valuation: Dict[str, FrozenSet[str]] = {}
        for child in children:
            if isinstance(child, tuple) and child[0] == "rel":
                rels = child[1]
            elif isinstance(child, tuple) and child[0] == "val":
                valuation = child[1]
        return RawModel(worlds, rels, valuation)

    def model_rel(self, *atoms):
        return ("rel", tuple(atoms))

    def model_val(self, *entries):
        return ("val", dict(entries))

    def valentry(self, world, *atoms):
        return (str(world), frozenset(str(a) for a in atoms))


def _parse(text: str, start: str):
    try:
        tree = _PARSER.parse(text, start=start)
        return _Builder().transform(tree)
    except UnexpectedInput as exc:
        line = getattr(exc, "line", None)
        column = getattr(exc, "column", None)
        if line is not None and line < 0:
            line = column = None
        raise ParseError(f"cannot parse {start} {text!r}", line, column) from None
    except VisitError as exc:
        if isinstance(exc.orig_exc, GeoproofError):
            raise exc.orig_exc from None
        raise ParseError(f"cannot build {start} from {text!r}: {exc.orig_exc}") from None


@lru_cache(maxsize=8192)
def parse_formula(text: str) -> Formula:
    return _parse(text, "formula")


@lru_cache(maxsize=8192)
def parse_labelled_formula(text: str) -> LabelledFormula:
    return _parse(text, "lformula")


@lru_cache(maxsize=1024)
def parse_relatom(text: str) -> RelAtom:
    return _parse(text, "relatom")


@lru_cache(maxsize=4096)
def parse_labelled(text: str) -> LabelledSequent:
    return _parse(text, "lsequent")


@lru_cache(maxsize=4096)
def parse_sls(text: str) -> SimplyLabelledSequent:
    return _parse(text, "slsequent")


def parse_hypersequent(text: str) -> Hypersequent:
    return _parse(text, "hypersequent")


_KINDS = {
    "labelled": parse_labelled,
    "simply_labelled": parse_sls,
    "sls": parse_sls,
    "hypersequent": parse_hypersequent,
}


def parse_sequent(text: str, kind: str = "labelled"):
    """Parse ``text`` as a labelled, simply labelled or hypersequent."""
    try:
        return _KINDS[kind](text)
    except KeyError:
        raise ParseError(f"unknown sequent kind {kind!r}") from None


def parse_geometric_raw(text: str) -> RawGeometric:
    return _parse(text, "gimpl")


def parse_model_raw(text: str) -> RawModel:
    return _parse(text, "model")
