"""
Proof Objects
=============
Proof trees shared by both calculi, checker verdicts, search budgets and
search outcomes.
"""

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterator, Mapping, Optional, Tuple, Union

from .. import config
from .entities import LabelledSequent, SimplyLabelledSequent
from .errors import ParseError

Sequent = Union[LabelledSequent, SimplyLabelledSequent]
Path = Tuple[int, ...]

G3I = "g3i"
LG3IPM = "lg3ipm"


@dataclass(frozen=True, eq=False)
class Proof:
    """One node of a derivation: rule id, instantiation, conclusion, premisses.

    ``subst`` maps schema variables to text; which keys a rule uses is
    documented next to the rule in its calculus module. ``derived`` names
    the admissible construction a node is the root of, when any.
    """
    calculus: str
    rule: str
    conclusion: Sequent
    subst: Mapping[str, str] = field(default_factory=dict)
    premises: Tuple["Proof", ...] = ()
    derived: Optional[str] = None

    @property
    def depth(self) -> int:
        return 1 + max((p.depth for p in self.premises), default=0)

    @property
    def size(self) -> int:
        return 1 + sum(p.size for p in self.premises)

    def walk(self, path: Path = ()) -> Iterator[Tuple[Path, "Proof"]]:
        """Pre-order traversal yielding ``(path, node)``."""
        yield path, self
        for i, premise in enumerate(self.premises):
            yield from premise.walk(path + (i,))

    def node_at(self, path: Path) -> "Proof":
        node = self
        for i in path:
            node = node.premises[i]
        return node

    def rules_used(self) -> Counter:
        return Counter(node.rule for _, node in self.walk())

    def with_premises(self, premises) -> "Proof":
        return replace(self, premises=tuple(premises))

    def tagged(self, derived: str) -> "Proof":
        return replace(self, derived=derived)

    def structurally_equal(self, other: "Proof") -> bool:
        return self.to_dict() == other.to_dict()

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "calculus": self.calculus,
            "rule": self.rule,
            "conclusion": self.conclusion.text,
            "subst": dict(self.subst),
            "premises": [p.to_dict() for p in self.premises],
        }
        if self.derived:
            out["derived"] = self.derived
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Proof":
        from .parser import parse_labelled, parse_sls

        try:
            calculus = data["calculus"]
            reader = {G3I: parse_labelled, LG3IPM: parse_sls}[calculus]
            return cls(
                calculus=calculus,
                rule=data["rule"],
                conclusion=reader(data["conclusion"]),
                subst={str(k): str(v) for k, v in data.get("subst", {}).items()},
                premises=tuple(cls.from_dict(p) for p in data.get("premises", [])),
                derived=data.get("derived"),
            )
        except KeyError as exc:
            raise ParseError(f"proof JSON lacks or misnames field {exc}") from None

    def __str__(self) -> str:
        return f"{self.rule}: {self.conclusion.text}"


@dataclass(frozen=True)
class CheckResult:
    """Verdict of a proof checker; localises the first failing node."""
    ok: bool
    path: Optional[Path] = None
    rule: Optional[str] = None
    reason: str = ""

    @classmethod
    def success(cls) -> "CheckResult":
        return cls(True)

    @classmethod
    def failure(cls, path: Path, rule: str, reason: str) -> "CheckResult":
        return cls(False, path, rule, reason)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "valid"
        where = "/".join(str(i) for i in self.path) or "root"
        return f"invalid at {where} ({self.rule}): {self.reason}"


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int
    max_labels: int
    max_sequent_size: int

    def __post_init__(self):
        for name in ("max_depth", "max_labels", "max_sequent_size"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def for_g3i(cls, **overrides) -> "SearchBudget":
        base = cls(config.G3I_MAX_DEPTH, config.G3I_MAX_LABELS, config.G3I_MAX_SEQUENT_SIZE)
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def for_lg3ipm(cls, **overrides) -> "SearchBudget":
        base = cls(config.LG3IPM_MAX_DEPTH, config.LG3IPM_MAX_LABELS,
                   config.LG3IPM_MAX_SEQUENT_SIZE)
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def fallback(cls) -> "SearchBudget":
        return cls(config.FALLBACK_MAX_DEPTH, config.FALLBACK_MAX_LABELS,
                   config.FALLBACK_MAX_SEQUENT_SIZE)


@dataclass(frozen=True, eq=False)
class SearchResult:
    """Outcome of a bounded search.

    ``exhausted`` is set when some branch hit a budget bound, so a missing
    proof with ``exhausted`` unset is a refutation under the strategy.
    """
    proof: Optional[Proof]
    exhausted: bool = False
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.proof is not None

    @property
    def status(self) -> str:
        if self.proof is not None:
            return "proved"
        return "exhausted" if self.exhausted else "refuted"
