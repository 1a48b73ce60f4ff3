"""Command-line front end: ``zs <verb> [inputs] [flags]``."""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.algebra.examples_categories import STOCK_EXAMPLES
from src.algebra.magma_core import MagmaProperty
from src.algebra.presentations import PresentationMode
from src.algebra.rewriting import ClosureKind, RelProperty
from src.models.base_models import CertKind, Command, CommandResult, RuleKind, Verdict
from src.models.errors import ArtifactError, FuelExhausted, UnknownExample, ZSError
from src.orchestrator import Orchestrator
from src.utils.logging_utils import cli_logger, set_console_level

EXIT_CODES = {
    Verdict.PASS: 0,
    Verdict.PASS_UP_TO_FUEL: 0,
    Verdict.NOT_APPLICABLE: 0,
    Verdict.FAIL: 1,
    Verdict.INCONCLUSIVE: 3,
}
EXIT_USAGE = 2

Arg = Tuple[Tuple[str, ...], Dict[str, Any]]

_SUBSETS: List[Arg] = [
    (("--U",), dict(nargs="+", required=True, metavar="NAME", help="element names of U")),
    (("--A",), dict(nargs="+", required=True, metavar="NAME", help="element names of A")),
]
_BOUND: Arg = (("--bound",), dict(type=int, help="word length bound for word domains"))
_WORD: Arg = (("--word",), dict(required=True, help="word over the alphabet; φ is the empty word"))

# verb -> (help, positional inputs, options)
GRAMMAR: Dict[str, Tuple[str, List[str], List[Arg]]] = {
    "check": ("multiplication properties of a magma", ["magma"],
              [(("--prop",), dict(action="append", choices=[p.value for p in MagmaProperty]))]),
    "identities": ("identity classification of every element", ["magma"], []),
    "units": ("elements with a two-sided inverse", ["magma"], []),
    "lclm": ("least common left multiple of two elements", ["magma", "a", "b"], []),
    "derive-actions": ("actions of an internal factorization M = UA", ["magma"], _SUBSETS),
    "check-axiom": ("evaluate axioms on an actions file", ["actions"],
                    [(("--axiom",), dict(action="append", help="P1..P8, a group or a single tag")), _BOUND]),
    "families": ("one-parameter family properties of both actions", ["actions"], [_BOUND]),
    "product": ("external product as a magma file", ["actions"],
                [(("--product-file",), dict(help="also write E, the pair table and provenance"))]),
    "reconstruct": ("isomorphism from U x A onto M", ["magma"], _SUBSETS),
    "monoid-product": ("product of monoids, checking the monoid hypotheses", ["actions"], []),
    "group-product": ("product of groups, checking the group hypotheses", ["actions"], []),
    "classify": ("direct, semidirect or general", ["actions"], []),
    "product-lclm": ("least common left multiple in a product", ["actions"],
                     [(("--x",), dict(required=True, help="first element, written u|alpha")),
                      (("--y",), dict(required=True, help="second element, written u|alpha"))]),
    "assoc-chain": ("n-factor reconstruction for a parenthesization", ["magma"],
                    [(("--factor",), dict(nargs="+", action="append", required=True, metavar="NAME")),
                     (("--tree",), dict(help="e.g. ((1 2) 3); left comb by default")),
                     (("--versus",), dict(help="second tree for the composite bijection"))]),
    "closure": ("closure of an abstract relation", ["relation"],
                [(("--kind",), dict(required=True, choices=[k.value for k in ClosureKind]))]),
    "rel-check": ("rewriting properties of an abstract relation", ["relation"],
                  [(("--prop",), dict(action="append", choices=[p.value for p in RelProperty]))]),
    "normal-forms": ("irreducible representative of every class", ["relation"], []),
    "rewrite": ("one-step rewrites of a word", ["presentation"], [_WORD]),
    "normalize": ("normal form of a word", ["presentation"],
                  [_WORD, (("--trace",), dict(action="store_true"))]),
    "local-confluence": ("critical pairs of a presentation", ["presentation"], []),
    "termination": ("termination certificate of a presentation", ["presentation"],
                    [(("--cert",), dict(choices=[c.value for c in CertKind])),
                     (("--order",), dict(nargs="+", help="letters, smallest first")),
                     (("--x-letters",), dict(nargs="+")),
                     (("--y-letters",), dict(nargs="+"))]),
    "table-pres": ("multiplication table as a presentation", ["magma"],
                   [(("--kind",), dict(default="monoid", choices=[k.value for k in RuleKind]))]),
    "zs-pres": ("presentation of a product from factor presentations", ["pres_u", "pres_a", "actions"],
                [(("--mode",), dict(default="generators", choices=[m.value for m in PresentationMode]))]),
    "action-pres": ("presentation of generator-level actions", ["gen_actions"], []),
    "extend-actions": ("extend generator actions to words and check them", ["gen_actions"], [_BOUND]),
    "twisted3": ("pass generator actions to presented monoids", ["pres_u", "pres_a", "gen_actions"], []),
    "wp": ("word problem", ["presentation"],
           [(("--w1",), dict(required=True)), (("--w2",), dict(required=True))]),
    "category": ("category file as a magma; characterization search", [],
                 [(("--search",), dict(action="store_true")),
                  (("--max-size",), dict(type=int, default=5)),
                  (("--samples",), dict(type=int, default=2000))]),
    "convert": ("actions of a groupoid bundle", ["bundle"], []),
    "roundtrip": ("internal/external roundtrip of a situation file", ["situation"], []),
    "example": ("stock examples", [],
                [(("--list",), dict(action="store_true")),
                 (("--emit-actions",), dict(metavar="PATH")),
                 (("--emit-magma",), dict(metavar="PATH")),
                 (("--emit-gen-actions",), dict(metavar="PATH")),
                 (("--emit-situation",), dict(metavar="PATH")),
                 (("--emit-presentation",), dict(nargs=2, action="append", metavar=("TAG", "PATH")))]),
}

_OPTIONAL_INPUT = {"category": "category", "example": "name"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, help="step budget for unbounded searches")
    common.add_argument("--seed", type=int, help="seed for sampling verbs")
    common.add_argument("--json", action="store_true", help="print the result as JSON")
    common.add_argument("-o", "--output", metavar="PATH", help="file to write")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on the console")

    parser = argparse.ArgumentParser(prog="zs", description="Twisted products of partial magmas.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    for verb, (help_text, inputs, options) in GRAMMAR.items():
        p = sub.add_parser(verb, parents=[common], help=help_text, description=help_text)
        for name in inputs:
            p.add_argument(name)
        if verb in _OPTIONAL_INPUT:
            extra = dict(choices=STOCK_EXAMPLES) if verb == "example" else {}
            p.add_argument(_OPTIONAL_INPUT[verb], nargs="?", **extra)
        for flags, kwargs in options:
            p.add_argument(*flags, **kwargs)
    return parser


def to_command(ns: argparse.Namespace) -> Command:
    values = vars(ns).copy()
    verb = values.pop("verb")
    _, inputs, _ = GRAMMAR[verb]
    names = list(inputs) + ([_OPTIONAL_INPUT[verb]] if verb in _OPTIONAL_INPUT else [])
    positional = [values.pop(n) for n in names]
    output = values.pop("output")
    values.pop("verbose")
    return Command(verb=verb, inputs=[p for p in positional if p is not None], flags=values, output=output)


def render(result: CommandResult, as_json: bool) -> str:
    if as_json:
        data = {"verb": result.verb, "verdict": result.verdict.value, "payload": result.payload,
                "written": result.written}
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, default=str)
    lines = [result.text] if result.text else []
    lines += [f"wrote {path}" for path in result.written]
    lines.append(f"verdict: {result.verdict.value}")
    return "\n".join(lines)


def _error(err: Exception, as_json: bool) -> str:
    witness = getattr(err, "witness", None)
    if as_json:
        return json.dumps({"error": type(err).__name__, "message": str(err), "witness": witness},
                          indent=2, sort_keys=True, ensure_ascii=False, default=str)
    return f"{type(err).__name__}: {err}" + (f"\nwitness: {witness}" if witness is not None else "")


def run(argv: Optional[Sequence[str]] = None, orchestrator: Optional[Orchestrator] = None) -> int:
    """Parse argv, dispatch the verb and print its report.

    Returns:
        int: 0 pass, 1 fail, 2 usage or file error, 3 inconclusive
    """
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0
    set_console_level(logging.DEBUG if ns.verbose else logging.INFO)
    cmd = to_command(ns)
    as_json = cmd.flags.get("json", False)
    orchestrator = orchestrator or Orchestrator()
    try:
        result = orchestrator.process(cmd)
    except (ArtifactError, UnknownExample, OSError) as e:
        cli_logger.warning(f"{cmd.verb}: {e}")
        print(_error(e, as_json), file=sys.stderr)
        return EXIT_USAGE
    except FuelExhausted as e:
        print(_error(e, as_json))
        return EXIT_CODES[Verdict.INCONCLUSIVE]
    except ZSError as e:
        print(_error(e, as_json))
        return EXIT_CODES[Verdict.FAIL]
    except ValueError as e:
        print(_error(e, as_json), file=sys.stderr)
        return EXIT_USAGE
    print(render(result, as_json))
    return EXIT_CODES[result.verdict]


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
