"""
geoproof.lg3ipm - the simply labelled calculus: rules, checking, search, transformations
"""

from .calculus import LOGICAL, PERMISSIVE, premisses, primitive_rules, structural_instance
from .checker import check_proof, node_failure
from .search import applicable_rules, prove
from .transforms import (
    FALLBACKS, FallbackCounter, absorb_weakenings, contract_proof, invert, is_strict, move,
    r_bot_elim, r_subset_mp, rc_imp, reshape, retarget, subst_label, weaken_proof, weaken_to,
)
from .derived import CutTrial, cut_conjecture_trial, l_or_parallel, l_or_parallel_n, r_and_parallel

__all__ = [
    "LOGICAL", "PERMISSIVE", "premisses", "primitive_rules", "structural_instance",
    "check_proof", "node_failure", "applicable_rules", "prove",
    "FALLBACKS", "FallbackCounter", "absorb_weakenings", "contract_proof", "invert",
    "is_strict", "move", "r_bot_elim", "r_subset_mp", "rc_imp", "reshape", "retarget",
    "subst_label", "weaken_proof", "weaken_to",
    "CutTrial", "cut_conjecture_trial", "l_or_parallel", "l_or_parallel_n", "r_and_parallel",
]
