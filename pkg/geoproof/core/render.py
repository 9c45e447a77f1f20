"""
Rendering
=========
Text, LaTeX and JSON output for every printable entity.

Text output of formulas and sequents re-parses to an equal value. Proofs
render as an indented tree in text and as ``bussproofs`` markup in LaTeX.
"""

import json
from typing import Any, List

from .proof import Proof

FORMATS = ("text", "latex", "json")

_RULE_LATEX = {
    "Ax": r"\mathrm{Ax}", "L_bot": r"L\bot", "R_top": r"R\top",
    "L_and": r"L\land", "R_and": r"R\land", "L_or": r"L\lor", "R_or": r"R\lor",
    "L_imp": r"L\supset", "R_imp": r"R\supset",
    "L_imp_i": r"L\supset_\iota", "R_imp_i": r"R\supset_\iota",
    "L_sub": r"L\sqsubseteq", "R_sub": r"R\sqsubseteq",
    "W": r"\mathrm{W}", "C": r"\mathrm{C}", "cut": r"\mathrm{Cut}", "subst": r"\mathrm{Subst}",
}

_DERIVED_LATEX = {"L_or_par": r"L\lor^\bullet", "R_and_par": r"R\land^\bullet"}

_INFERENCE = {1: "UnaryInfC", 2: "BinaryInfC", 3: "TrinaryInfC",
              4: "QuaternaryInfC", 5: "QuinaryInfC"}


def rule_latex(node: Proof) -> str:
    if node.derived in _DERIVED_LATEX:
        return _DERIVED_LATEX[node.derived]
    return _RULE_LATEX.get(node.rule, rf"\mathrm{{{node.rule}}}")


def proof_text(proof: Proof, indent: int = 0) -> str:
    lines: List[str] = []

    def emit(node: Proof, depth: int) -> None:
        tag = f" [{node.derived}]" if node.derived else ""
        lines.append(f"{'  ' * depth}{node.rule}{tag}: {node.conclusion.text}")
        for premise in node.premises:
            emit(premise, depth + 1)

    emit(proof, indent)
    return "\n".join(lines)


def proof_latex(proof: Proof) -> str:
    """``bussproofs`` markup; premisses are emitted before their conclusion."""
    lines: List[str] = [r"\begin{prooftree}"]

    def emit(node: Proof) -> None:
        for premise in node.premises:
            emit(premise)
        if not node.premises:
            lines.append(r"\AxiomC{}")
        lines.append(rf"\RightLabel{{\scriptsize ${rule_latex(node)}$}}")
        command = _INFERENCE.get(max(len(node.premises), 1), "QuinaryInfC")
        lines.append(rf"\{command}{{${node.conclusion.to_latex()}$}}")

    emit(proof)
    lines.append(r"\end{prooftree}")
    return "\n".join(lines)


def _json_payload(entity: Any) -> Any:
    if hasattr(entity, "to_dict"):
        return entity.to_dict()
    return {"kind": type(entity).__name__, "text": entity.text}


def render(entity: Any, fmt: str = "text") -> str:
    """Render a formula, sequent, proof, rule schema or model."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "json":
        return json.dumps(_json_payload(entity), indent=2, ensure_ascii=False)
    if isinstance(entity, Proof):
        return proof_text(entity) if fmt == "text" else proof_latex(entity)
    if fmt == "latex":
        return entity.to_latex()
    if hasattr(entity, "to_text"):
        return entity.to_text()
    return entity.text
