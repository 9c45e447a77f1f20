"""
geoproof.g3i - the labelled calculus: rules, checking, search, admissible rules
"""

from .calculus import LOGICAL, BASE_STRUCTURAL, PERMISSIVE, premisses, primitive_rules
from .checker import check_proof
from .search import applicable_rules, prove
from .admissible import (
    subst_label, weaken_proof, weaken_to, invert, contract_proof, monotonicity_proof,
    derived_rel_rule, inferred_logic,
)

__all__ = [
    "LOGICAL", "BASE_STRUCTURAL", "PERMISSIVE", "premisses", "primitive_rules",
    "check_proof", "applicable_rules", "prove",
    "subst_label", "weaken_proof", "weaken_to", "invert", "contract_proof",
    "monotonicity_proof", "derived_rel_rule", "inferred_logic",
]
