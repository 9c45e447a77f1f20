"""
geoproof.rules - rules generated from geometric frame axioms
"""

from ..semantics.frames import GeometricImplication, parse_geometric_implication
from .geometric import LabelledRuleSchema, to_labelled_rule
from .hypersequent import (
    SchemaComponent, HsRuleSchema, SlsComponent, SlsRuleSchema, SlsInstance,
    to_hypersequent_rule, hs_rule_to_sls_rule, analyze_rule, parse_hs_rule, instantiate,
)
from .logics import (
    AXIOMS, BASE_AXIOMS, BUILTIN, CHARACTERISTIC_FORMULAS, LogicSpec, axiom, builtin_logic,
    load_logic, read_axiom_file,
)

__all__ = [
    "GeometricImplication", "parse_geometric_implication",
    "LabelledRuleSchema", "to_labelled_rule",
    "SchemaComponent", "HsRuleSchema", "SlsComponent", "SlsRuleSchema", "SlsInstance",
    "to_hypersequent_rule", "hs_rule_to_sls_rule", "analyze_rule", "parse_hs_rule",
    "instantiate",
    "AXIOMS", "BASE_AXIOMS", "BUILTIN", "CHARACTERISTIC_FORMULAS", "LogicSpec", "axiom",
    "builtin_logic", "load_logic", "read_axiom_file",
]
