"""
LG3ipm Proof Checker
====================
Node-by-node validation of simply labelled proofs. Structural nodes are
re-instantiated from the full slices of their labels, so a node whose
context hides a formula of a principal label is rejected.
"""

import logging
from typing import Optional

from ..core.entities import SimplyLabelledSequent
from ..core.errors import RuleApplicationError
from ..core.proof import LG3IPM, CheckResult, Proof
from ..rules.logics import LogicSpec
from .calculus import PERMISSIVE, premisses, primitive_rules, subst_matches

log = logging.getLogger(__name__)

MODES = ("strict", "permissive")


def node_failure(node: Proof, logic: LogicSpec, permissive: bool = True) -> Optional[str]:
    """Why ``node`` is not a correct inference, or None when it is."""
    if node.calculus != LG3IPM:
        return f"calculus tag is {node.calculus!r}"
    if not isinstance(node.conclusion, SimplyLabelledSequent):
        return "conclusion is not simply labelled"
    allowed = set(primitive_rules(logic)) | (set(PERMISSIVE) if permissive else set())
    if node.rule not in allowed:
        reason = "not a primitive rule" if node.rule in PERMISSIVE else "unknown rule"
        return f"{reason} for {logic.name}"
    found = [q.conclusion for q in node.premises]
    if node.rule == "subst":
        if len(found) != 1:
            return "subst takes one premiss"
        return subst_matches(node.conclusion, node.subst, found[0])
    try:
        expected = premisses(node.rule, node.conclusion, node.subst, logic, permissive)
    except RuleApplicationError as exc:
        return str(exc)
    if len(expected) != len(found):
        return f"expected {len(expected)} premisses, found {len(found)}"
    for i, (want, got) in enumerate(zip(expected, found)):
        if want != got:
            return f"premiss {i} is {got.text!r}, expected {want.text!r}"
    return None


def check_proof(p: Proof, logic: LogicSpec, mode: str = "strict") -> CheckResult:
    """Check every node of ``p``; the result points at the first bad node.

    Strict mode accepts the rules of the calculus for ``logic`` only; pass
    ``logic.with_lin()`` for proofs that use ``lin``.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    permissive = mode == "permissive"
    for path, node in p.walk():
        reason = node_failure(node, logic, permissive)
        if reason:
            return CheckResult.failure(path, node.rule, reason)
    log.debug("checked %d nodes (%s)", p.size, mode)
    return CheckResult.success()
