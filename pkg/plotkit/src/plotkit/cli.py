"""Standalone renderer: plotkit-render --input sweep.csv --figure fig3 --out fig3.png

Exit codes: 0 success, 1 usage error, 2 data validation error.
"""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURE_IDS, FigureSpec, render
from .reader import PlotDataError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plotkit-render", description=__doc__)
    parser.add_argument("--input", required=True, help="sweep CSV path")
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS,
                        help="figure layout to render")
    parser.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        out = render(FigureSpec(input_csv=args.input, figure_id=args.figure,
                                output_image=args.out))
    except PlotDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
