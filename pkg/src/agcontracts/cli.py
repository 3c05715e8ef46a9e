"""Command-line front end for contract files.

Exit codes: 0 success (and ``refines`` true), 1 ``refines`` false or a failed
case-study check, 2 algebra error, 3 parse or schema error, 4 I/O error, 64 bad command-line usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import __version__
from .contracts import AlgebraError, IoContract, compose, merge, quotient, refines, validate
from .serialization import SchemaError, dumps, load_contract
from .terms import ParseError, TermList

EXIT_OK, EXIT_FALSE, EXIT_ALGEBRA, EXIT_PARSE, EXIT_IO, EXIT_USAGE = 0, 1, 2, 3, 4, 64

EPILOG = """\
Composition is not associative: an output consumed by the next contract is
hidden from the result.  n-ary compose and merge fold left in argument order,
so `compose a b c` computes (a || b) || c.  quotient is strictly binary.

exit codes: 0 ok / refines true, 1 refines false, 2 algebra error,
3 parse or schema error, 4 I/O error, 64 usage error
"""


class _Parser(argparse.ArgumentParser):
    # keep exit code 2 for algebra errors
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="agcontracts",
        description="Assume-guarantee contracts over linear inequalities.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="count", default=0, help="log to stderr (repeat for debug)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def result_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("-o", "--output", help="write the result here instead of standard output")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--name", help="name stored in the result document")

    p = sub.add_parser("compose", help="compose two or more contracts, folding left",
                       epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("contracts", nargs="+", metavar="FILE")
    p.add_argument("--trace", action="store_true", help="print intermediate term lists to stderr")
    result_opts(p)

    p = sub.add_parser("quotient", help="contract of the missing part: SYSTEM / PART")
    p.add_argument("contracts", nargs=2, metavar="FILE")
    p.add_argument("--trace", action="store_true", help="print intermediate term lists to stderr")
    result_opts(p)

    p = sub.add_parser("merge", help="merge two or more viewpoints with the same IO profile")
    p.add_argument("contracts", nargs="+", metavar="FILE")
    result_opts(p)

    p = sub.add_parser("refines", help="print whether FIRST refines SECOND (exit 0 true, 1 false)")
    p.add_argument("contracts", nargs=2, metavar="FILE")

    p = sub.add_parser("validate", help="check that contract files are well formed")
    p.add_argument("contracts", nargs="+", metavar="FILE")

    from .casestudies.runner import STUDIES

    p = sub.add_parser("casestudy", help="reproduce a packaged case study and report pass/fail")
    p.add_argument("study", choices=sorted(STUDIES) + ["all"])
    return ap


def _emit(c: IoContract, args: argparse.Namespace) -> None:
    text = dumps(c, args.name) if args.format == "json" else str(c) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fold(op, contracts: list[IoContract], trace: dict | None, log: logging.Logger) -> IoContract:
    acc = contracts[0]
    for i, c in enumerate(contracts[1:], 1):
        step: dict | None = {} if trace is not None else None
        acc = op(acc, c, step) if step is not None else op(acc, c)
        if trace is not None:
            trace[f"step {i}"] = {k: v.strings() if isinstance(v, TermList) else v for k, v in step.items()}
        log.info("step %d: %d assumptions, %d guarantees", i, len(acc.assumptions), len(acc.guarantees))
    return acc


def _run(args: argparse.Namespace) -> int:
    log = logging.getLogger("agcontracts.cli")
    if args.command == "casestudy":
        from .casestudies.runner import STUDIES

        names = sorted(STUDIES) if args.study == "all" else [args.study]
        ok = True
        for name in names:
            print(f"[{name}]")
            for check in STUDIES[name]():
                print(check.line())
                ok &= check.ok
        return EXIT_OK if ok else EXIT_FALSE

    contracts = [load_contract(path) for path in args.contracts]
    if args.command == "validate":
        for path, c in zip(args.contracts, contracts):
            validate(c)
            print(f"{path}: ok")
        return EXIT_OK
    if args.command == "refines":
        result = refines(*contracts)
        print("true" if result else "false")
        return EXIT_OK if result else EXIT_FALSE
    if len(contracts) < 2:
        print(f"error: {args.command} needs at least two contracts", file=sys.stderr)
        return EXIT_USAGE

    trace = {} if getattr(args, "trace", False) else None
    if args.command == "compose":
        result = _fold(compose, contracts, trace, log)
    elif args.command == "quotient":
        result = _fold(quotient, contracts, trace, log)
    else:
        result = _fold(merge, contracts, None, log)
    if trace is not None:
        print(json.dumps(trace, indent=2), file=sys.stderr)
    _emit(result, args)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _run(args)
    except AlgebraError as e:
        print(f"error: {e.kind.value}" + (f": {e.detail}" if e.detail else ""), file=sys.stderr)
        return EXIT_ALGEBRA
    except (ParseError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
