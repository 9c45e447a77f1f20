"""
Hypersequent Rules
==================
Structural hypersequent rules from geometric frame axioms, their simply
labelled form, and instances of the simply labelled form on sequents.

Construction of the hypersequent rule:

1. take the geometric rule and close every relation set transitively,
   dropping reflexive pairs;
2. give each principal label ``x`` a component ``Gx => Dx``;
3. for every ``x<=y`` add ``Gx`` to the antecedent at ``y`` and ``Dy`` to
   the succedent at ``x``; labels related both ways share one component;
4. repeat per premiss, with variable-free components for fresh labels;
5. drop repeated variables within a side and duplicate components.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput

from ..core.entities import Formula, Label, LabelledFormula, SimplyLabelledSequent
from ..core.errors import FreshnessError, ParseError, RuleApplicationError
from ..core.labels import transitive_closure
from ..core.multiset import contains, minus
from ..semantics.frames import GeometricImplication
from .geometric import LabelledRuleSchema

log = logging.getLogger(__name__)

Variable = str


# =============================================================================
# SCHEMAS
# =============================================================================

def _var_key(v: Variable) -> Tuple[int, str]:
    return int(v[1:]), v


def _vars(vs) -> Tuple[Variable, ...]:
    return tuple(sorted(set(vs), key=_var_key))


def _tex_var(v: Variable) -> str:
    greek = r"\Gamma" if v[0] == "G" else r"\Delta"
    return f"{greek}_{{{v[1:]}}}"


@dataclass(frozen=True)
class SchemaComponent:
    """Schematic component; ``labels`` are the labels it stands for."""
    ante: Tuple[Variable, ...]
    succ: Tuple[Variable, ...]
    labels: Tuple[Label, ...] = ()

    @property
    def text(self) -> str:
        left = ", ".join(self.ante)
        right = ", ".join(self.succ)
        return " ".join(p for p in (left, "=>", right) if p)

    def to_latex(self) -> str:
        ante = ", ".join(_tex_var(v) for v in self.ante)
        succ = ", ".join(_tex_var(v) for v in self.succ)
        return rf"{ante} \Rightarrow {succ}"

    @property
    def shape(self) -> Tuple[Tuple[Variable, ...], Tuple[Variable, ...]]:
        return self.ante, self.succ


def _hs_text(components: Sequence[SchemaComponent]) -> str:
    return " || ".join(["H"] + [c.text for c in components])


@dataclass(frozen=True)
class HsRuleSchema:
    name: str
    conclusion: Tuple[SchemaComponent, ...]
    premisses: Tuple[Tuple[SchemaComponent, ...], ...]
    context_sharing: bool = True

    @property
    def text(self) -> str:
        prems = "  &  ".join(_hs_text(p) for p in self.premisses)
        return f"{self.name}: {prems}  /  {_hs_text(self.conclusion)}"

    def to_latex(self) -> str:
        def hs(components):
            return r" \mid ".join([r"\mathcal{H}"] + [c.to_latex() for c in components])
        prems = " & ".join(hs(p) for p in self.premisses)
        return rf"\infer[{self.name}]{{{hs(self.conclusion)}}}{{{prems}}}"

    def to_dict(self) -> Dict:
        def comps(cs):
            return [{"ante": list(c.ante), "succ": list(c.succ)} for c in cs]
        return {
            "name": self.name,
            "form": "hypersequent",
            "conclusion": comps(self.conclusion),
            "premisses": [comps(p) for p in self.premisses],
            "text": self.text,
        }

    def shape(self):
        """Label-free structure used for equality up to component order."""
        return (tuple(sorted(c.shape for c in self.conclusion)),
                tuple(tuple(sorted(c.shape for c in p)) for p in self.premisses))


@dataclass(frozen=True)
class SlsComponent:
    label: Label
    ante: Tuple[Variable, ...]
    succ: Tuple[Variable, ...]


@dataclass(frozen=True)
class SlsRuleSchema:
    """Simply labelled structural rule.

    The conclusion labels ``labels`` and every premiss-only label are
    fresh for the context ``G', D'``: an instance takes the full slices of
    those labels.
    """
    name: str
    labels: Tuple[Label, ...]
    conclusion: Tuple[SlsComponent, ...]
    premisses: Tuple[Tuple[SlsComponent, ...], ...]
    fresh: Tuple[Tuple[Label, ...], ...]

    @property
    def variables(self) -> Tuple[Variable, ...]:
        return _vars(v for c in self.conclusion for v in c.ante + c.succ)

    @staticmethod
    def _side_text(components: Sequence[SlsComponent]) -> str:
        ante = [f"{c.label}:{v}" for c in components for v in c.ante]
        succ = [f"{c.label}:{v}" for c in components for v in c.succ]
        left = ", ".join(ante + ["G'"])
        right = ", ".join(["D'"] + succ)
        return f"{left} => {right}"

    @property
    def text(self) -> str:
        prems = "  &  ".join(self._side_text(p) for p in self.premisses)
        side = sorted(set(self.labels) | {v for f in self.fresh for v in f})
        return (f"{self.name}: {prems}  /  {self._side_text(self.conclusion)}"
                f"  [{', '.join(side)} # G', D']")

    def to_latex(self) -> str:
        def side(components):
            def tex(c, vs):
                return [rf"{c.label}{{:}}{_tex_var(v)}" for v in vs]
            ante = [t for c in components for t in tex(c, c.ante)] + [r"\Gamma'"]
            succ = [r"\Delta'"] + [t for c in components for t in tex(c, c.succ)]
            return rf"{', '.join(ante)} \Rightarrow {', '.join(succ)}"
        prems = " & ".join(side(p) for p in self.premisses)
        return rf"\infer[{self.name}]{{{side(self.conclusion)}}}{{{prems}}}"

    def to_dict(self) -> Dict:
        def comps(cs):
            return [{"label": c.label, "ante": list(c.ante), "succ": list(c.succ)} for c in cs]
        return {
            "name": self.name,
            "form": "sls",
            "labels": list(self.labels),
            "conclusion": comps(self.conclusion),
            "premisses": [comps(p) for p in self.premisses],
            "fresh": [list(f) for f in self.fresh],
            "text": self.text,
        }


# =============================================================================
# CONSTRUCTION
# =============================================================================

def _components(principal: Sequence[Label], extra: Sequence[Label], closure,
                base: Mapping[Label, Tuple[Variable, Variable]]) -> Tuple[SchemaComponent, ...]:
    labels = list(principal) + [z for z in extra if z not in principal]
    ante: Dict[Label, set] = {x: {base[x][0]} if x in base else set() for x in labels}
    succ: Dict[Label, set] = {x: {base[x][1]} if x in base else set() for x in labels}
    for rel in closure:
        if rel.src == rel.dst:
            continue
        if rel.src in base:
            ante[rel.dst].add(base[rel.src][0])
        if rel.dst in base and rel.src in base:
            succ[rel.src].add(base[rel.dst][1])

    # labels related both ways share a component
    pairs = {(r.src, r.dst) for r in closure}
    groups: List[List[Label]] = []
    for x in labels:
        for group in groups:
            y = group[0]
            if (x, y) in pairs and (y, x) in pairs:
                group.append(x)
                break
        else:
            groups.append([x])

    out: List[SchemaComponent] = []
    seen = set()
    for group in groups:
        a = _vars(v for x in group for v in ante[x])
        s = _vars(v for x in group for v in succ[x])
        if (a, s) in seen:
            continue
        seen.add((a, s))
        out.append(SchemaComponent(a, s, tuple(group)))
    return tuple(out)


def to_hypersequent_rule(gi: GeometricImplication, name: str,
                         labelled: Optional[LabelledRuleSchema] = None) -> HsRuleSchema:
    from .geometric import to_labelled_rule

    rule = labelled or to_labelled_rule(gi, name)
    principal = list(gi.universals)
    base = {x: (f"G{i}", f"D{i}") for i, x in enumerate(principal, start=1)}
    conclusion = _components(principal, (), transitive_closure(rule.conclusion), base)
    premisses = []
    for added, fresh in zip(rule.premisses, rule.fresh):
        closure = transitive_closure(tuple(added) + rule.conclusion)
        premisses.append(_components(principal, fresh, closure, base))
    schema = HsRuleSchema(name, conclusion, tuple(premisses))
    log.debug("hypersequent rule %s", schema.text)
    return schema


def hs_rule_to_sls_rule(r: HsRuleSchema) -> SlsRuleSchema:
    """Tag components with labels; a merged component keeps its first label."""
    labels = tuple(label for c in r.conclusion for label in c.labels)
    conclusion = tuple(SlsComponent(c.labels[0], c.ante, c.succ) for c in r.conclusion)
    premisses, fresh = [], []
    for prem in r.premisses:
        comps = []
        for c in prem:
            in_conclusion = [x for x in c.labels if x in labels]
            label = in_conclusion[0] if in_conclusion else c.labels[0]
            comps.append(SlsComponent(label, c.ante, c.succ))
        premisses.append(tuple(comps))
        fresh.append(tuple(c.label for c in comps if c.label not in labels))
    return SlsRuleSchema(r.name, labels, conclusion, tuple(premisses), tuple(fresh))


def analyze_rule(r: HsRuleSchema) -> Dict[str, bool]:
    """Linear conclusion: no variable occurs twice in the conclusion."""
    counts = Counter(v for c in r.conclusion for v in c.ante + c.succ)
    return {
        "linear_conclusion": all(n == 1 for n in counts.values()),
        "subformula_property": subformula_property(r),
        "context_sharing": context_sharing(r),
    }


def subformula_property(r: HsRuleSchema) -> bool:
    """Every premiss variable occurs in the conclusion."""
    used = {v for c in r.conclusion for v in c.ante + c.succ}
    return all(v in used for p in r.premisses for c in p for v in c.ante + c.succ)


def context_sharing(r: HsRuleSchema) -> bool:
    """Each conclusion component is included in the premiss component of its labels."""
    for prem in r.premisses:
        for c in r.conclusion:
            home = next((pc for pc in prem if set(c.labels) & set(pc.labels)), None)
            if home is None or not (set(c.ante) <= set(home.ante)
                                    and set(c.succ) <= set(home.succ)):
                return False
    return True


# =============================================================================
# TEXT FORM
# =============================================================================

_HS_GRAMMAR = r"""
hsrule: NAME ":" hsseq ("&" hsseq)* "/" hsseq
hsseq: "H" ("||" scomp)*
scomp: vars "=>" vars
vars: (VAR ("," VAR)*)?

VAR.2: /[GD][0-9]+/
NAME: /[A-Za-z][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""


@v_args(inline=True)
class _HsBuilder(Transformer):
    def hsrule(self, name, *seqs):
        return HsRuleSchema(str(name), seqs[-1], tuple(seqs[:-1]))

    def hsseq(self, *components):
        return tuple(components)

    def scomp(self, ante, succ):
        return SchemaComponent(ante, succ)

    def vars(self, *names):
        return tuple(str(n) for n in names)


_HS_PARSER = Lark(_HS_GRAMMAR, start="hsrule", parser="lalr")


def parse_hs_rule(text: str) -> HsRuleSchema:
    """Read the text form printed by :attr:`HsRuleSchema.text`."""
    try:
        return _HsBuilder().transform(_HS_PARSER.parse(text))
    except UnexpectedInput as exc:
        raise ParseError(f"cannot parse rule {text!r}", getattr(exc, "line", None),
                         getattr(exc, "column", None)) from None


# =============================================================================
# INSTANCES
# =============================================================================

Values = Dict[Variable, Tuple[Formula, ...]]


@dataclass(frozen=True)
class SlsInstance:
    """A structural rule instance: label map, variable values, premisses."""
    rule: SlsRuleSchema
    label_map: Dict[Label, Label]
    values: Values
    premisses: Tuple[SimplyLabelledSequent, ...]

    def subst(self) -> Dict[str, str]:
        out = dict(self.label_map)
        for v, fs in self.values.items():
            out[v] = ", ".join(f.text for f in fs)
        return out


def _equations(components: Sequence[SlsComponent], label_map: Mapping[Label, Label]):
    ante: Dict[Label, List[Variable]] = {}
    succ: Dict[Label, List[Variable]] = {}
    for c in components:
        target = label_map[c.label]
        ante.setdefault(target, []).extend(c.ante)
        succ.setdefault(target, []).extend(c.succ)
    return ante, succ


def _solve(s: SimplyLabelledSequent, rule: SlsRuleSchema, label_map: Mapping[Label, Label],
           given: Mapping[Variable, Tuple[Formula, ...]]) -> Values:
    ante_eq, succ_eq = _equations(rule.conclusion, label_map)
    equations = [(s.ante_slice(t), vs) for t, vs in ante_eq.items()] + \
                [(s.succ_slice(t), vs) for t, vs in succ_eq.items()]
    values: Values = {v: tuple(sorted(fs)) for v, fs in given.items()}

    progress = True
    while progress:
        progress = False
        for total, vs in equations:
            unknown = [v for v in set(vs) if v not in values]
            if len(unknown) != 1 or vs.count(unknown[0]) != 1:
                continue
            known = [f for v in vs if v in values for f in values[v]]
            if not contains(total, known):
                raise RuleApplicationError(f"{rule.name}: slices do not fit the schema")
            values[unknown[0]] = minus(total, known)
            progress = True

    # underdetermined variables: the first takes the remainder
    for total, vs in equations:
        unknown = [v for v in _vars(vs) if v not in values]
        if not unknown:
            continue
        known = [f for v in vs if v in values for f in values[v]]
        if not contains(total, known):
            raise RuleApplicationError(f"{rule.name}: slices do not fit the schema")
        rest = minus(total, known)
        first = unknown[0]
        copies = vs.count(first)
        if copies > 1:
            counted = Counter(rest)
            if any(n % copies for n in counted.values()):
                raise RuleApplicationError(f"{rule.name}: cannot split slice evenly")
            rest = tuple(sorted(Counter({f: n // copies for f, n in counted.items()}).elements()))
        values[first] = tuple(rest)
        for v in unknown[1:]:
            values[v] = ()

    for total, vs in equations:
        built = [f for v in vs for f in values.get(v, ())]
        if Counter(built) != Counter(total):
            raise RuleApplicationError(
                f"{rule.name}: slices {[f.text for f in total]} do not match the schema")
    for v in rule.variables:
        values.setdefault(v, ())
    return values


def instantiate(rule: SlsRuleSchema, s: SimplyLabelledSequent, label_map: Mapping[Label, Label],
                given: Optional[Mapping[Variable, Tuple[Formula, ...]]] = None) -> SlsInstance:
    """Instance of ``rule`` with conclusion ``s``.

    ``label_map`` sends every conclusion label of the schema to a label of
    ``s`` and every premiss-only label to a label absent from ``s``.
    Variable values are solved from the full slices of the mapped labels.
    """
    for x in rule.labels:
        if x not in label_map:
            raise RuleApplicationError(f"{rule.name}: no label given for {x}")
    fresh_targets = []
    for group in rule.fresh:
        for z in group:
            if z not in label_map:
                raise RuleApplicationError(f"{rule.name}: no label given for fresh {z}")
            if label_map[z] in s.labels or label_map[z] in {label_map[x] for x in rule.labels}:
                raise FreshnessError(f"{rule.name}: label {label_map[z]} is not fresh")
            fresh_targets.append(label_map[z])
    values = _solve(s, rule, label_map, given or {})

    principal = {label_map[x] for x in rule.labels}
    context_ante = tuple(lf for lf in s.ante if lf.label not in principal)
    context_succ = tuple(lf for lf in s.succ if lf.label not in principal)
    premisses = []
    for comps in rule.premisses:
        ante = list(context_ante)
        succ = list(context_succ)
        for c in comps:
            target = label_map[c.label]
            ante.extend(LabelledFormula(target, f) for v in c.ante for f in values[v])
            succ.extend(LabelledFormula(target, f) for v in c.succ for f in values[v])
        premisses.append(SimplyLabelledSequent(tuple(ante), tuple(succ)))
    return SlsInstance(rule, dict(label_map), values, tuple(premisses))
