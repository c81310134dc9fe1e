"""Command line interface.

Exit codes: 0 affirmative, 1 negative, 2 usage or parse error, 3 aborted
(search budget or enumeration cap hit).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import checker, frames, oracle, satbound, soundness, textio
from .model import ModelError, UndeclaredSymbolError
from .textio import ParseError

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_ABORTED = 3


def _read_formula(arg: str):
    """Treat the argument as a file when such a file exists, otherwise as
    inline formula text."""
    path = Path(arg)
    if path.is_file():
        return textio.parse_formula(path.read_text())
    return textio.parse_formula(arg)


def _read_model(path: str):
    return textio.parse_model(Path(path).read_text())


def _cmd_check(args) -> int:
    m = _read_model(args.model)
    f = _read_formula(args.formula)
    evaluate = oracle.denote if args.oracle else checker.eval_formula
    sat = evaluate(m, f)
    if args.valid:
        ok = sat == m.universe
        print("valid" if ok else "not valid")
        if not ok:
            print("counterexample:", m.states[min(m.universe - sat)])
        return EXIT_YES if ok else EXIT_NO
    names = m.state_names(sat)
    print("states:", " ".join(names) if names else "(none)")
    return EXIT_YES if sat else EXIT_NO


def _cmd_validate(args) -> int:
    m = _read_model(args.model)
    report = frames.validate_model(m)
    for v in report.violations:
        print(v)
    for name, reason in report.skipped:
        print(f"{name} skipped: {reason}")
    if report.passed:
        print("model satisfies all frame conditions")
        return EXIT_YES
    if report.violations:
        return EXIT_NO
    return EXIT_ABORTED


def _cmd_axioms(args) -> int:
    m = _read_model(args.model)
    report = frames.validate_model(m)
    if not report.passed:
        print("model is not frame-valid; refusing to certify axioms",
              file=sys.stderr)
        for v in report.violations:
            print(v, file=sys.stderr)
        return EXIT_USAGE
    results = soundness.run_suite([m], seed=args.seed,
                                  bindings_per_schema=args.pool)
    print(soundness.render_suite_report(results))
    return EXIT_YES if all(r.ok for r in results) else EXIT_NO


def _cmd_sat(args) -> int:
    f = _read_formula(args.formula)
    result = satbound.sat_search(f, max_states=args.max_states,
                                 budget=args.budget)
    closure, bound = satbound.closure_bound(f)
    print(f"closure size {len(closure)}, theoretical model bound {bound}")
    if result.verdict == "sat":
        print(f"satisfiable, witness state {result.witness} "
              f"({result.explored} candidates)")
        print(textio.render_model(result.model), end="")
        return EXIT_YES
    if result.verdict == "unsat-up-to":
        print(f"no model with at most {result.max_states} states "
              f"({result.explored} candidates)")
        return EXIT_NO
    print(f"aborted: budget of {args.budget} candidates exhausted")
    return EXIT_ABORTED


def _cmd_fmt(args) -> int:
    text = Path(args.path).read_text()
    if args.kind == "model" or (args.kind == "auto" and _looks_like_model(text)):
        print(textio.render_model(textio.parse_model(text)), end="")
    else:
        print(textio.render_formula(textio.parse_formula(text)))
    return EXIT_YES


def _looks_like_model(text: str) -> bool:
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            return stripped.startswith("states")
    return False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bpictl",
        description="Model checker and semantics workbench for a "
                    "belief-preference-intention extension of CTL.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a formula on a model")
    p.add_argument("model", help="model file (.bpm)")
    p.add_argument("formula", help="formula file (.bpi) or inline text")
    p.add_argument("--valid", action="store_true",
                   help="ask for validity instead of the satisfying states")
    p.add_argument("--oracle", action="store_true",
                   help="use the reference evaluator instead of the labeler")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("validate", help="check frame conditions of a model")
    p.add_argument("model")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("axioms", help="run the axiom soundness suite")
    p.add_argument("model")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pool", type=int, default=50,
                   help="instantiations per schema")
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser("sat", help="bounded satisfiability search")
    p.add_argument("formula")
    p.add_argument("--max-states", type=int,
                   default=satbound.DEFAULT_MAX_STATES)
    p.add_argument("--budget", type=int, default=satbound.DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("fmt", help="reprint a formula or model canonically")
    p.add_argument("path")
    p.add_argument("--kind", choices=["auto", "formula", "model"],
                   default="auto")
    p.set_defaults(func=_cmd_fmt)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors
        return EXIT_YES if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UndeclaredSymbolError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
