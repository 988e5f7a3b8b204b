"""plots command: render figures from the operator toolkit's CSVs.

Exit codes: 0 success, 1 bad usage or malformed input.
"""

from __future__ import annotations

import argparse
import sys

from .figures import PlotJob
from .reading import SchemaError


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main owns exit codes."""

    def error(self, message):
        raise ParseError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="plots",
                     description="figures from operator CSV output")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("convergence",
                       help="log-log sup-error curves with slope guides")
    p.add_argument("csv", nargs="+")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--title")

    p = sub.add_parser("voronovskaja",
                       help="scaled residuals against their limit")
    p.add_argument("csv")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--title")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        csvs = args.csv if isinstance(args.csv, list) else [args.csv]
        PlotJob(kind=args.command, csv_paths=tuple(csvs),
                out_path=args.out, title=args.title).run()
    except (ParseError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # matplotlib rejects unknown image extensions with ValueError
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
