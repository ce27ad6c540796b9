"""Command-line figure renderer.

Exit codes: 0 success, 1 usage error, 2 invalid or missing input, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .render import RenderError, preset_names, render, render_all


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102 - argparse override
        raise _UsageExit(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="marslora-plots", description=__doc__)
    parser.add_argument(
        "--version", action="version", version=f"marslora-plots {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    render_cmd = sub.add_parser("render", help="render one figure preset from CSVs")
    render_cmd.add_argument(
        "--preset", required=True, help=f"one of: {', '.join(preset_names())}"
    )
    render_cmd.add_argument(
        "--in", dest="in_dir", required=True, help="directory holding the preset CSVs"
    )
    render_cmd.add_argument(
        "--out", dest="out_path", required=True, help="output image path (.png/.svg/.pdf)"
    )
    all_cmd = sub.add_parser("render-all", help="chain every preset into one directory")
    all_cmd.add_argument("--in", dest="in_dir", required=True,
                         help="directory holding the preset CSVs")
    all_cmd.add_argument("--out-dir", required=True, help="directory for the images")
    all_cmd.add_argument("--format", default="png", choices=["png", "svg", "pdf"],
                         help="image format (default png)")
    all_cmd.add_argument("--skip-missing", action="store_true",
                         help="skip presets whose input CSVs are absent")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "render":
            data = render(args.preset, args.in_dir, args.out_path)
            series_count = sum(len(panel) for panel in data.values())
            print(f"wrote {args.out_path} ({series_count} series)")
            return 0
        results = render_all(args.in_dir, args.out_dir, args.format,
                             skip_missing=args.skip_missing)
        for preset, path in results.items():
            print(f"{preset}: {path if path is not None else 'skipped (missing inputs)'}")
        return 0
    except _UsageExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RenderError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
