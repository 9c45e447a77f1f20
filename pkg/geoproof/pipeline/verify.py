"""
Translation Verification
========================
Runs the translation and cross-checks the result three ways: the
endsequent against the unfolding (up to label names), the simply labelled
checker in permissive mode, and the finite models of the logic's frame.
Failures are collected in the report instead of raised.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .. import config
from ..core.errors import GeoproofError
from ..core.labels import canonicalize_labels
from ..core.proof import CheckResult, Proof
from ..lg3ipm.checker import check_proof as check_lg3ipm
from ..lg3ipm.transforms import FALLBACKS, is_strict
from ..rules.logics import LogicSpec
from ..semantics.enumeration import valid_in_all
from .translator import translate_proof
from .unfold import unfold

log = logging.getLogger(__name__)


@dataclass
class TranslationReport:
    source: Proof
    proof: Optional[Proof] = None
    endsequent_ok: bool = False
    check: Optional[CheckResult] = None
    semantic_ok: bool = False
    strict: Optional[bool] = None
    fallbacks: Dict[str, int] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.proof is not None and self.endsequent_ok and bool(self.check)
                and self.semantic_ok and not self.errors)

    def describe(self) -> str:
        lines = [
            f"translation: {'ok' if self.proof is not None else 'failed'}",
            f"endsequent matches unfolding: {self.endsequent_ok}",
            f"checker: {self.check.describe() if self.check is not None else 'not run'}",
            f"semantic check: {self.semantic_ok}",
        ]
        if self.strict is not None:
            lines.append(f"strict after strictify: {self.strict}")
        if self.fallbacks:
            lines.append("fallbacks: " + ", ".join(f"{k}={v}" for k, v in sorted(self.fallbacks.items())))
        lines.extend(f"error: {e}" for e in self.errors)
        return "\n".join(lines)

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "endsequent_ok": self.endsequent_ok,
            "check": None if self.check is None else {
                "ok": self.check.ok, "path": list(self.check.path or ()),
                "rule": self.check.rule, "reason": self.check.reason},
            "semantic_ok": self.semantic_ok,
            "strict": self.strict,
            "fallbacks": dict(self.fallbacks),
            "errors": list(self.errors),
            "proof": None if self.proof is None else self.proof.to_dict(),
        }


def verify_translation(p: Proof, logic: LogicSpec, max_worlds: int = config.ORACLE_WORLDS,
                       strictify: bool = False) -> TranslationReport:
    report = TranslationReport(p)
    FALLBACKS.reset()
    try:
        report.proof = translate_proof(p, logic, strictify=strictify)
    except GeoproofError as exc:
        report.errors.append(str(exc))
        log.warning("translation failed: %s", exc)
        return report
    finally:
        report.fallbacks = dict(FALLBACKS.events)

    out = report.proof
    target = unfold(p.conclusion)
    report.endsequent_ok = canonicalize_labels(out.conclusion) == canonicalize_labels(target)
    if not report.endsequent_ok:
        report.errors.append(f"endsequent {out.conclusion.text} is not {target.text}")
    report.check = check_lg3ipm(out, logic.with_lin(), "permissive")
    if not report.check:
        report.errors.append(report.check.describe())
    try:
        report.semantic_ok = valid_in_all(out.conclusion, max_worlds, logic.axioms)
        if not report.semantic_ok:
            report.errors.append(f"{out.conclusion.text} fails in a model with at most "
                                 f"{max_worlds} worlds")
    except (GeoproofError, ValueError) as exc:
        report.errors.append(f"semantic check: {exc}")
    if strictify:
        report.strict = is_strict(out, logic.with_lin())
    log.info("translation of %s: %s", p.conclusion.text, "passed" if report.passed else "failed")
    return report
