"""
geoproof.core - syntax, labels, proof objects and errors
"""

from .entities import (
    Formula, Atom, Bot, Top, And, Or, Imp, BOT, TOP, neg,
    Label, RelAtom, LabelledFormula, LabelledSequent, SimplyLabelledSequent,
    Component, Hypersequent,
)
from .errors import (
    GeoproofError, ParseError, UnknownLogicError, RuleApplicationError,
    FreshnessError, ShapeMismatch, ModelError, TranslationError, BudgetExhausted,
)
from .labels import (
    transitive_closure, forward_labels, backward_labels, subset_modulo_perm,
    is_subset_modulo_perm, slice_included, canonicalize_labels,
    canonicalize_labelled, fresh_label, fresh_labels, hs_to_sls, sls_to_hs,
)
from .parser import (
    parse_formula, parse_labelled_formula, parse_relatom, parse_labelled, parse_sls,
    parse_hypersequent, parse_sequent,
)
from .proof import Proof, CheckResult, SearchBudget, SearchResult, G3I, LG3IPM
from .render import render

__all__ = [
    "Formula", "Atom", "Bot", "Top", "And", "Or", "Imp", "BOT", "TOP", "neg",
    "Label", "RelAtom", "LabelledFormula", "LabelledSequent", "SimplyLabelledSequent",
    "Component", "Hypersequent",
    "GeoproofError", "ParseError", "UnknownLogicError", "RuleApplicationError",
    "FreshnessError", "ShapeMismatch", "ModelError", "TranslationError", "BudgetExhausted",
    "transitive_closure", "forward_labels", "backward_labels", "subset_modulo_perm",
    "is_subset_modulo_perm", "slice_included", "canonicalize_labels",
    "canonicalize_labelled", "fresh_label", "fresh_labels", "hs_to_sls", "sls_to_hs",
    "parse_formula", "parse_labelled_formula", "parse_relatom", "parse_labelled",
    "parse_sls", "parse_hypersequent", "parse_sequent",
    "Proof", "CheckResult", "SearchBudget", "SearchResult", "G3I", "LG3IPM",
    "render",
]
