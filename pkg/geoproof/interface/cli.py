"""
Command Line
============
Batch front end over the engines. One verb per invocation:

    prove         search a G3I or LG3ipm proof of --sequent
    check         check a proof read from --in
    translate     translate a G3I proof (from --in, or searched for --sequent)
    unfold        print the transitive unfolding of --sequent
    rulegen       rules generated from --axiom or from the axioms of --logic
    countermodel  smallest finite model refuting --sequent
    demo          the worked example from proof search to checked translation

Exit codes: 0 success, 1 honest negative (refuted, invalid, countermodel
found), 2 budget exhausted or usage error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .. import config
from ..core.errors import GeoproofError, ParseError, TranslationError, UnknownLogicError
from ..core.labels import hs_to_sls, sls_to_hs
from ..core.parser import parse_hypersequent, parse_labelled, parse_sls
from ..core.proof import G3I, LG3IPM, Proof, SearchBudget
from ..core.render import FORMATS, render
from ..g3i import check_proof as check_g3i, prove as prove_g3i
from ..lg3ipm import check_proof as check_lg3ipm, prove as prove_lg3ipm
from ..pipeline import transitive_unfold, verify_translation
from ..rules.logics import LogicSpec, load_logic
from ..semantics.enumeration import find_countermodel
from ..semantics.frames import parse_geometric_implication

log = logging.getLogger(__name__)

FORMS = ("labelled", "hypersequent", "sls", "all")

DEMO_SEQUENT = "x<=y ; x:(A|B), x:(B->C) => x:A, y:C"
DEMO_LOGIC = "int"


class UsageError(GeoproofError):
    pass


# =============================================================================
# ARGUMENTS
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for stage summaries, -vv for search details")
    common.add_argument("--format", choices=FORMATS, default=config.DEFAULT_FORMAT)
    common.add_argument("--out", type=Path, help="write the result here instead of stdout")
    common.add_argument("--logic", default="int",
                        help="int, jankov, gd, bd2, class or custom:<axiom file>")

    parser = argparse.ArgumentParser(
        prog="geoproof",
        description="Labelled and simply labelled proofs for geometric intermediate logics.")
    verbs = parser.add_subparsers(dest="verb", required=True)

    prove = verbs.add_parser("prove", parents=[common], help="search for a proof")
    prove.add_argument("--sequent", required=True)
    prove.add_argument("--calculus", choices=(G3I, LG3IPM), default=G3I)
    prove.add_argument("--no-lin", action="store_true", help="lg3ipm: search without lin")
    fresh = prove.add_mutually_exclusive_group()
    fresh.add_argument("--allow-fresh", dest="allow_fresh", action="store_true",
                       default=config.LG3IPM_ALLOW_FRESH,
                       help="lg3ipm: let R_imp_i and structural rules introduce labels")
    fresh.add_argument("--no-fresh", dest="allow_fresh", action="store_false",
                       help="lg3ipm: keep the label set fixed")
    prove.add_argument("--depth", type=int, help="maximum proof depth")
    prove.add_argument("--labels", type=int, help="maximum number of labels")

    check = verbs.add_parser("check", parents=[common], help="check a proof file")
    check.add_argument("--in", dest="source", type=Path, required=True)
    check.add_argument("--mode", choices=("strict", "permissive"), default="strict")
    check.add_argument("--no-lin", action="store_true", help="lg3ipm: check without lin")

    translate = verbs.add_parser("translate", parents=[common],
                                 help="translate a G3I proof into LG3ipm")
    source = translate.add_mutually_exclusive_group(required=True)
    source.add_argument("--in", dest="source", type=Path)
    source.add_argument("--sequent")
    translate.add_argument("--strictify", action="store_true",
                           help="push weakening and contraction nodes upward")
    translate.add_argument("--worlds", type=int, default=config.ORACLE_WORLDS)

    unfold = verbs.add_parser("unfold", parents=[common], help="transitive unfolding")
    unfold.add_argument("--sequent", required=True)

    rulegen = verbs.add_parser("rulegen", parents=[common], help="generate rules")
    rulegen.add_argument("--axiom", action="append", default=[],
                         help="geometric implication; repeatable")
    rulegen.add_argument("--form", choices=FORMS, default="all")

    counter = verbs.add_parser("countermodel", parents=[common], help="search a countermodel")
    counter.add_argument("--sequent", required=True)
    counter.add_argument("--calculus", choices=(G3I, LG3IPM), default=G3I,
                         help="read the sequent as labelled (g3i) or simply labelled (lg3ipm)")
    counter.add_argument("--worlds", type=int, default=config.COUNTERMODEL_WORLDS)

    verbs.add_parser("demo", parents=[common], help="run the worked example")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def _emit(args, text: str) -> None:
    if args.out is not None:
        args.out.write_text(text + "\n", encoding="utf-8")
        log.info("wrote %s", args.out)
    else:
        print(text)


def _sls(text: str):
    """A simply labelled sequent, or a hypersequent read as one."""
    try:
        return parse_sls(text)
    except ParseError:
        return hs_to_sls(parse_hypersequent(text))


def _read_proof(path: Path) -> Proof:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return Proof.from_dict(data)


# =============================================================================
# VERBS
# =============================================================================

def cmd_prove(args, logic: LogicSpec) -> int:
    if args.calculus == G3I:
        budget = SearchBudget.for_g3i(max_depth=args.depth, max_labels=args.labels)
        result = prove_g3i(parse_labelled(args.sequent), logic, budget)
    else:
        budget = SearchBudget.for_lg3ipm(max_depth=args.depth, max_labels=args.labels)
        result = prove_lg3ipm(_sls(args.sequent), logic, use_lin=not args.no_lin,
                              budget=budget, allow_fresh=args.allow_fresh)
    log.info("search %s after %d nodes", result.status, result.nodes)
    if result.found:
        _emit(args, render(result.proof, args.format))
        return config.EXIT_OK
    _emit(args, result.status)
    return config.EXIT_BUDGET_OR_USAGE if result.exhausted else config.EXIT_NEGATIVE


def cmd_check(args, logic: LogicSpec) -> int:
    proof = _read_proof(args.source)
    if proof.calculus == G3I:
        result = check_g3i(proof, logic, args.mode)
    else:
        result = check_lg3ipm(proof, logic if args.no_lin else logic.with_lin(), args.mode)
    if args.format == "json":
        _emit(args, json.dumps({"ok": result.ok, "path": list(result.path or ()),
                                "rule": result.rule, "reason": result.reason}, indent=2))
    else:
        _emit(args, result.describe())
    return config.EXIT_OK if result else config.EXIT_NEGATIVE


def _g3i_proof(args, logic: LogicSpec) -> Optional[Proof]:
    if args.source is not None:
        return _read_proof(args.source)
    result = prove_g3i(parse_labelled(args.sequent), logic)
    if not result.found:
        log.warning("no G3I proof of %s (%s)", args.sequent, result.status)
    return result.proof


def cmd_translate(args, logic: LogicSpec) -> int:
    proof = _g3i_proof(args, logic)
    if proof is None:
        return config.EXIT_NEGATIVE
    report = verify_translation(proof, logic, max_worlds=args.worlds, strictify=args.strictify)
    if args.format == "json":
        _emit(args, json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
    else:
        parts = [render(report.proof, args.format)] if report.proof is not None else []
        if args.format == "text":
            parts.append(report.describe())
        _emit(args, "\n".join(parts))
    return config.EXIT_OK if report.passed else config.EXIT_NEGATIVE


def cmd_unfold(args, logic: LogicSpec) -> int:
    trace = transitive_unfold(parse_labelled(args.sequent))
    if args.format == "text":
        _emit(args, f"{trace.to_text()}\nhypersequent: {sls_to_hs(trace.result).text}")
    else:
        _emit(args, render(trace, args.format))
    return config.EXIT_OK


def _rule_logic(args, logic: LogicSpec) -> LogicSpec:
    if not args.axiom:
        return logic
    return LogicSpec("custom", tuple(parse_geometric_implication(a) for a in args.axiom))


def cmd_rulegen(args, logic: LogicSpec) -> int:
    logic = _rule_logic(args, logic)
    groups = {"labelled": logic.labelled_rules, "hypersequent": logic.hypersequent_rules,
              "sls": logic.sls_rules}
    forms = list(groups) if args.form == "all" else [args.form]
    if args.format == "json":
        payload = {form: [r.to_dict() for r in groups[form]] for form in forms}
        _emit(args, json.dumps(payload, indent=2, ensure_ascii=False))
        return config.EXIT_OK
    blocks = []
    for form in forms:
        rendered = [render(r, args.format) for r in groups[form]]
        blocks.append("\n".join(rendered) if len(forms) == 1 else
                      "\n".join([f"# {form}"] + rendered))
    _emit(args, "\n".join(blocks))
    return config.EXIT_OK


def cmd_countermodel(args, logic: LogicSpec) -> int:
    goal = parse_labelled(args.sequent) if args.calculus == G3I else _sls(args.sequent)
    found = find_countermodel(goal, args.worlds, logic.axioms)
    if found is None:
        _emit(args, f"no countermodel with at most {args.worlds} worlds")
        return config.EXIT_OK
    _emit(args, render(found, args.format))
    return config.EXIT_NEGATIVE


def demo(fmt: str = config.DEFAULT_FORMAT) -> tuple:
    """The worked example end to end; returns (exit code, output)."""
    logic = load_logic(DEMO_LOGIC)
    sequent = parse_labelled(DEMO_SEQUENT)
    search = prove_g3i(sequent, logic)
    if not search.found:
        return config.EXIT_NEGATIVE, f"no G3I proof of {sequent.text}"
    trace = transitive_unfold(sequent)
    report = verify_translation(search.proof, logic)
    root = report.proof.derived if report.proof is not None else None
    ok = report.passed and root == "L_or_par"
    if fmt == "json":
        payload = {"sequent": sequent.text, "g3i": search.proof.to_dict(),
                   "unfolding": trace.to_dict(), "translation": report.to_dict(), "ok": ok}
        text = json.dumps(payload, indent=2, ensure_ascii=False)
    else:
        text = "\n\n".join([
            f"== G3I proof ({search.nodes} search nodes)\n{render(search.proof, fmt)}",
            f"== transitive unfolding\n{render(trace, fmt)}",
            f"== LG3ipm translation\n"
            + (render(report.proof, fmt) if report.proof is not None else "none"),
            f"== checks\n{report.describe()}",
        ])
    return (config.EXIT_OK if ok else config.EXIT_NEGATIVE), text


def cmd_demo(args, logic: LogicSpec) -> int:
    code, text = demo(args.format)
    _emit(args, text)
    return code


COMMANDS = {
    "prove": cmd_prove, "check": cmd_check, "translate": cmd_translate, "unfold": cmd_unfold,
    "rulegen": cmd_rulegen, "countermodel": cmd_countermodel, "demo": cmd_demo,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return config.EXIT_OK if exc.code == 0 else config.EXIT_BUDGET_OR_USAGE
    _configure_logging(args.verbose)
    try:
        logic = load_logic(args.logic)
        return COMMANDS[args.verb](args, logic)
    except (ParseError, UnknownLogicError, UsageError, ValueError) as exc:
        print(f"geoproof {args.verb}: {exc}", file=sys.stderr)
        return config.EXIT_BUDGET_OR_USAGE
    except TranslationError as exc:
        print(f"geoproof {args.verb}: {exc}", file=sys.stderr)
        return config.EXIT_NEGATIVE


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))
