"""
geoproof.pipeline - transitive unfolding and the labelled to simply labelled translation
"""

from .unfold import Copy, UnfoldingTrace, transitive_unfold, unfold, unfold_by_fold
from .translator import translate_proof
from .verify import TranslationReport, verify_translation

__all__ = [
    "Copy", "UnfoldingTrace", "transitive_unfold", "unfold", "unfold_by_fold",
    "translate_proof", "TranslationReport", "verify_translation",
]
