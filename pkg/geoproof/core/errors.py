"""
Errors
======
Exception hierarchy shared by every geoproof module.
"""

from typing import Optional


class GeoproofError(Exception):
    """Base class for all geoproof errors."""


class ParseError(GeoproofError):
    """Syntax error with the position of the offending token."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class UnknownLogicError(GeoproofError):
    """A logic name that is neither built in nor a custom axiom file."""


class RuleApplicationError(GeoproofError):
    """A rule instance does not match the sequent it is applied to."""


class FreshnessError(RuleApplicationError):
    """A label required to be fresh occurs in the conclusion."""


class ShapeMismatch(RuleApplicationError):
    """A constructor received a proof whose endsequent has the wrong shape."""


class ModelError(GeoproofError):
    """A Kripke model violating reflexivity, transitivity or monotonicity."""


class TranslationError(GeoproofError):
    """The labelled-to-simply-labelled translation could not be completed."""


class BudgetExhausted(GeoproofError):
    """Internal signal raised when a search budget trips."""
