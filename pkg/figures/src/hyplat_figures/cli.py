"""figures: render hyplat CSV exports as PNG and SVG.

Exit codes: 0 success, 2 usage, 3 bad input (schema mismatch, unreadable
file); a schema mismatch prints the column diff to stderr.
"""

import argparse
import sys

from hyplat_figures.render import FigureSpec, render
from hyplat_figures.schema import SCHEMAS, SchemaError


def build_parser():
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Deterministic plots of hyplat CSV exports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render one figure")
    p_render.add_argument("--kind", required=True, choices=sorted(SCHEMAS),
                          help="figure type")
    p_render.add_argument("--in", dest="input_csv", required=True,
                          metavar="CSV", help="input CSV from the hyplat CLI")
    p_render.add_argument("--out", required=True, metavar="PATH",
                          help="output path; .png and .svg are written")
    p_render.add_argument("--title", default="")
    p_render.add_argument("--xlabel", default="")
    p_render.add_argument("--ylabel", default="")
    p_render.add_argument("--dpi", type=int, default=100)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        kind=args.kind,
        input_csv=args.input_csv,
        output=args.out,
        title=args.title,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
        dpi=args.dpi,
    )
    try:
        result = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        for line in exc.diff_lines():
            print(line, file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    parts = ", ".join(f"{k}={v}" for k, v in result.summary.items())
    print(f"wrote {result.png_path} and {result.svg_path} ({parts})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
