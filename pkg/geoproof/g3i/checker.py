"""
G3I Proof Checker
=================
Node-by-node validation of labelled proofs.
"""

import logging

from ..core.entities import LabelledSequent
from ..core.errors import RuleApplicationError
from ..core.proof import G3I, CheckResult, Proof
from ..rules.logics import LogicSpec
from .calculus import PERMISSIVE, premisses, primitive_rules

log = logging.getLogger(__name__)

MODES = ("strict", "permissive")


def check_proof(p: Proof, logic: LogicSpec, mode: str = "strict") -> CheckResult:
    """Check every node of ``p``; the result points at the first bad node.

    Strict mode accepts the primitive rules only. Permissive mode also
    accepts ``W``, ``C``, ``cut``, ``L_sub`` and ``R_sub`` nodes.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    permissive = mode == "permissive"
    allowed = set(primitive_rules(logic)) | (set(PERMISSIVE) if permissive else set())

    for path, node in p.walk():
        if node.calculus != G3I:
            return CheckResult.failure(path, node.rule, f"calculus tag is {node.calculus!r}")
        if not isinstance(node.conclusion, LabelledSequent):
            return CheckResult.failure(path, node.rule, "conclusion is not a labelled sequent")
        if node.rule not in allowed:
            reason = "not a primitive rule" if node.rule in PERMISSIVE else "unknown rule"
            return CheckResult.failure(path, node.rule, f"{reason} for {logic.name}")
        try:
            expected = premisses(node.rule, node.conclusion, node.subst, logic, permissive)
        except RuleApplicationError as exc:
            return CheckResult.failure(path, node.rule, str(exc))
        found = [q.conclusion for q in node.premises]
        if len(expected) != len(found):
            return CheckResult.failure(
                path, node.rule, f"expected {len(expected)} premisses, found {len(found)}")
        for i, (want, got) in enumerate(zip(expected, found)):
            if want != got:
                return CheckResult.failure(
                    path, node.rule, f"premiss {i} is {got.text!r}, expected {want.text!r}")
    log.debug("checked %d nodes (%s)", p.size, mode)
    return CheckResult.success()
