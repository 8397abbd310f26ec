"""Command-line interface.

One subcommand: ``render --figure <id> --csv <path> --out <path.png>``.
Exit codes: 0 success, 2 usage error, 4 data or rendering failure.
Errors are a single line on stderr.
"""

from __future__ import annotations

import argparse
import sys

from .data import DataFormatError
from .render import MissingSeriesError, render_figure
from .specs import FIGURE_IDS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figurekit",
        description="render ftqec-limits benchmark figures from CSV",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="render one figure to a PNG file")
    p.add_argument("--figure", required=True, choices=FIGURE_IDS)
    p.add_argument("--csv", required=True, help="ftqec-limits v1 CSV file")
    p.add_argument("--out", required=True, help="output PNG path")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse --help or its own exits
        return int(exc.code or 0)
    try:
        out = render_figure(args.figure, args.csv, args.out)
    except (DataFormatError, MissingSeriesError) as exc:
        print(f"figurekit: {exc}", file=sys.stderr)
        return 4
    except Exception as exc:  # noqa: BLE001 - single-line error contract
        print(f"figurekit: runtime error: {exc}", file=sys.stderr)
        return 4
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
