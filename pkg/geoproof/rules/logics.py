"""
Logics
======
Intermediate logics as lists of geometric frame axioms, with their rules
in labelled, hypersequent and simply labelled form.

Built in: int (no axioms), jankov (directedness), gd (linearity),
bd2 (bounded depth 2) and class (symmetry). ``custom:<path>`` reads an
axiom file with one geometric implication per line and ``#`` comments.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, Optional, Tuple

from ..core.errors import GeoproofError, UnknownLogicError
from ..semantics.frames import GeometricImplication, parse_geometric_implication
from .geometric import LabelledRuleSchema, to_labelled_rule
from .hypersequent import HsRuleSchema, SlsRuleSchema, hs_rule_to_sls_rule, to_hypersequent_rule

log = logging.getLogger(__name__)

# =============================================================================
# CHARACTERISTIC AXIOMS
# =============================================================================
AXIOMS = {
    "dir": "true => ex z. x<=z & y<=z",
    "lin": "true => x<=y || y<=x",
    "bd2": "x<=y, y<=z => y<=x || z<=y",
    "sym": "x<=y => y<=x",
}

# Base relational rules of the labelled calculus, in the same format.
BASE_AXIOMS = {
    "refl": "true => x<=x",
    "trans": "x<=y, y<=z => x<=z",
}

BUILTIN = {
    "int": (),
    "jankov": ("dir",),
    "gd": ("lin",),
    "bd2": ("bd2",),
    "class": ("sym",),
}

# Characteristic formulas, used by the separation checks and the CLI demo.
CHARACTERISTIC_FORMULAS = {
    "jankov": "~A | ~~A",
    "gd": "(A -> B) | (B -> A)",
    "bd2": "B | (B -> (A | ~A))",
    "class": "A | ~A",
}


def axiom(name: str) -> GeometricImplication:
    text = AXIOMS.get(name) or BASE_AXIOMS[name]
    gi = parse_geometric_implication(text)
    return GeometricImplication(gi.universals, gi.hypothesis, gi.alternatives, name)


def _rule_name(gi: GeometricImplication, index: int) -> str:
    if gi.name:
        return gi.name
    for name in AXIOMS:
        if axiom(name).text == gi.text:
            return name
    return f"geo{index}"


@dataclass(frozen=True)
class LogicSpec:
    name: str
    axioms: Tuple[GeometricImplication, ...] = ()

    @cached_property
    def rule_names(self) -> Tuple[str, ...]:
        return tuple(_rule_name(gi, i) for i, gi in enumerate(self.axioms, start=1))

    @cached_property
    def labelled_rules(self) -> Tuple[LabelledRuleSchema, ...]:
        return tuple(to_labelled_rule(gi, name) for gi, name in zip(self.axioms, self.rule_names))

    @cached_property
    def hypersequent_rules(self) -> Tuple[HsRuleSchema, ...]:
        return tuple(to_hypersequent_rule(gi, rule.name, rule)
                     for gi, rule in zip(self.axioms, self.labelled_rules))

    @cached_property
    def sls_rules(self) -> Tuple[SlsRuleSchema, ...]:
        return tuple(hs_rule_to_sls_rule(r) for r in self.hypersequent_rules)

    def labelled_rule(self, name: str) -> Optional[LabelledRuleSchema]:
        return next((r for r in self.labelled_rules if r.name == name), None)

    def sls_rule(self, name: str) -> Optional[SlsRuleSchema]:
        return next((r for r in self.sls_rules if r.name == name), None)

    @property
    def has_lin(self) -> bool:
        lin = axiom("lin").text
        return any(gi.text == lin for gi in self.axioms)

    def with_lin(self) -> "LogicSpec":
        """This logic with the linearity rule added (no-op when present)."""
        if self.has_lin:
            return self
        return LogicSpec(f"{self.name}+lin", self.axioms + (axiom("lin"),))

    def to_dict(self) -> Dict:
        return {"name": self.name, "axioms": [gi.to_dict() for gi in self.axioms]}


def builtin_logic(name: str) -> LogicSpec:
    try:
        names = BUILTIN[name]
    except KeyError:
        raise UnknownLogicError(
            f"unknown logic {name!r}; expected one of {sorted(BUILTIN)} or custom:<file>"
        ) from None
    return LogicSpec(name, tuple(axiom(n) for n in names))


def read_axiom_file(path: Path) -> Tuple[GeometricImplication, ...]:
    axioms = []
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            axioms.append(parse_geometric_implication(line))
        except GeoproofError as exc:
            raise type(exc)(f"{path}:{number}: {exc}") from None
    return tuple(axioms)


def load_logic(spec: str) -> LogicSpec:
    """``int``/``jankov``/``gd``/``bd2``/``class`` or ``custom:<path>``."""
    if spec.startswith("custom:"):
        path = Path(spec[len("custom:"):])
        if not path.is_file():
            raise UnknownLogicError(f"axiom file {path} not found")
        axioms = read_axiom_file(path)
        log.info("loaded %d axioms from %s", len(axioms), path)
        return LogicSpec(path.stem, axioms)
    return builtin_logic(spec)
