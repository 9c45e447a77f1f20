"""
geoproof.semantics - finite Kripke models, frame conditions and the oracle
"""

from .kripke import (
    KripkeModel, forces, eval_labelled, eval_sls, eval_hypersequent, evaluate,
    counterexample_assignment,
)
from .frames import Alternative, GeometricImplication, parse_geometric_implication, check_frame
from .enumeration import (
    preorders, up_sets, enumerate_models, all_models, Countermodel, find_countermodel,
    valid_in_all,
)

__all__ = [
    "KripkeModel", "forces", "eval_labelled", "eval_sls", "eval_hypersequent", "evaluate",
    "counterexample_assignment",
    "Alternative", "GeometricImplication", "parse_geometric_implication", "check_frame",
    "preorders", "up_sets", "enumerate_models", "all_models", "Countermodel",
    "find_countermodel", "valid_in_all",
]
