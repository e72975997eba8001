"""Command-line interface: ``generate``, ``verify``, ``ladder`` and ``figure``.

Exit codes: 0 success, 1 usage error, 2 a checked identity failed,
3 degenerate geometry.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .chain import (
    ChainSpec,
    ChainVariant,
    chain_circle,
    configure_chain,
    tangency_classify,
    Tangency,
)
from .errors import ConstructionError, DegenerateGeometryError, DomainError, ParameterError, RenderError
from .inversive import ladder_trace, orthogonal_power
from .numeric import format_rational, parse_rational
from .render import FigureSpec, Style, Theorem1Overlay, Theorem2Overlay, preset_figure, render_figure
from .verify import DEFAULT_BOUND, grid_specs, sweep

EXIT_OK, EXIT_USAGE, EXIT_CHECK_FAILED, EXIT_DEGENERATE = 0, 1, 2, 3

CHAIN_RECORD_SCHEMA: dict[str, Any] = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["n", "x", "y", "r", "tangencies"],
        "additionalProperties": False,
        "properties": {
            "n": {"type": "integer"},
            "x": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
            "y": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
            "r": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
            "tangencies": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["other", "kind"],
                    "additionalProperties": False,
                    "properties": {
                        "other": {"type": "string"},
                        "kind": {"enum": ["external", "internal"]},
                    },
                },
            },
        },
    },
}

# options whose value may legitimately start with "-"
_VALUE_OPTIONS = {"--a", "--b", "--n", "--power", "--theorem1", "--theorem2"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _rational(text: str):
    try:
        return parse_rational(text)
    except ConstructionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _index_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _int_tuple(size: int):
    def parse(text: str) -> tuple[int, ...]:
        try:
            parts = tuple(int(p) for p in text.split(","))
        except ValueError:
            parts = ()
        if len(parts) != size:
            raise argparse.ArgumentTypeError(f"expected {size} comma-separated integers, got {text!r}")
        return parts

    return parse


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        v = 0
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _variant(text: str) -> ChainVariant:
    try:
        return ChainVariant.parse(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pappus-chain", description="Exact Pappus chain construction and verification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="export chain circles as JSON or CSV")
    gen.add_argument("--variant", type=_variant, required=True)
    gen.add_argument("--a", type=_rational, required=True)
    gen.add_argument("--b", type=_rational, required=True)
    gen.add_argument("--n", type=_index_range, default=(0, 5), help="inclusive index range lo..hi")
    gen.add_argument("--format", choices=("json", "csv"), default="json")
    gen.add_argument("--out", type=Path)

    ver = sub.add_parser("verify", help="run the identity suite")
    which = ver.add_mutually_exclusive_group(required=True)
    which.add_argument("--variant", type=_variant)
    which.add_argument("--all", action="store_true", help="all three chains")
    ver.add_argument("--a", type=_rational)
    ver.add_argument("--b", type=_rational)
    ver.add_argument("--grid", action="store_true", help="sweep the fixed (a, b) grid")
    ver.add_argument("--bound", type=_positive_int, default=DEFAULT_BOUND)
    ver.add_argument("--report", type=Path, help="write the JSON report here")
    ver.add_argument("--jobs", type=_positive_int, default=1)
    ver.add_argument("--max-skipped", type=int, default=200, help="skipped cases listed in the report")

    lad = sub.add_parser("ladder", help="dump the inversion construction of one member")
    lad.add_argument("--variant", type=_variant, required=True)
    lad.add_argument("--a", type=_rational, required=True)
    lad.add_argument("--b", type=_rational, required=True)
    lad.add_argument("--n", type=int, required=True)
    lad.add_argument("--power", default="1", help='positive rational, or "orthogonal"')
    lad.add_argument("--out", type=Path)

    fig = sub.add_parser("figure", help="render an SVG figure")
    fig.add_argument("--preset", choices=("fig1", "fig2", "fig3"))
    fig.add_argument("--variant", type=_variant)
    fig.add_argument("--a", type=_rational)
    fig.add_argument("--b", type=_rational)
    fig.add_argument("--n", type=_index_range)
    fig.add_argument("--theorem1", type=_int_tuple(2), action="append", default=[], metavar="I,N")
    fig.add_argument("--theorem2", type=_int_tuple(3), action="append", default=[], metavar="I,J,N")
    fig.add_argument("--stroke-width", type=float, default=1.5)
    fig.add_argument("--width", type=_positive_int, default=800)
    fig.add_argument("--no-labels", action="store_true")
    fig.add_argument("--out", type=Path)
    return parser


def _rejoin_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _emit(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def chain_records(spec: ChainSpec, lo: int, hi: int) -> list[dict[str, Any]]:
    """Export records for members lo..hi with their exact tangencies."""
    records = []
    bases = spec.base_circles()
    for n in range(lo, hi + 1):
        circle = chain_circle(spec, n).circle
        others = list(bases.items())
        others += [(f"delta[{k}]", chain_circle(spec, k).circle) for k in (n - 1, n + 1) if lo <= k <= hi]
        tangencies = []
        for name, other in others:
            if circle.same_set(other):
                continue
            kind = tangency_classify(circle, other)
            if kind is not Tangency.NONE:
                tangencies.append({"other": name, "kind": kind.value})
        records.append(
            {
                "n": n,
                "x": format_rational(circle.center.x),
                "y": format_rational(circle.center.y),
                "r": format_rational(circle.radius),
                "tangencies": tangencies,
            }
        )
    return records


def _cmd_generate(args) -> int:
    spec = configure_chain(args.a, args.b, args.variant)
    records = chain_records(spec, *args.n)
    if args.format == "json":
        text = json.dumps(records, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "x", "y", "r"])
        for rec in records:
            writer.writerow([rec["n"], rec["x"], rec["y"], rec["r"]])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    variants = list(ChainVariant) if args.all else [args.variant]
    if args.grid:
        if args.a is not None or args.b is not None:
            raise _UsageError("--grid cannot be combined with --a/--b")
        specs = grid_specs(variants)
    else:
        if args.a is None or args.b is None:
            raise _UsageError("verify needs --a and --b, or --grid")
        specs = [configure_chain(args.a, args.b, v) for v in variants]
    report = sweep(specs, args.bound, jobs=args.jobs)
    for name, tally in report.tallies.items():
        print(
            f"{name:<10} checked={tally.checked} passed={tally.passed} "
            f"failed={tally.failed} skipped_degenerate={tally.skipped}"
        )
    if args.report is not None:
        args.report.write_text(json.dumps(report.to_dict(args.max_skipped), indent=2) + "\n", encoding="utf-8")
    if not report.ok:
        first = report.failures[0]
        print(f"FAILED {first.identity_name}: {json.dumps(first.to_dict())}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print("all checks hold")
    return EXIT_OK


def _cmd_ladder(args) -> int:
    spec = configure_chain(args.a, args.b, args.variant)
    if args.power == "orthogonal":
        if args.n == 0:
            raise _UsageError("orthogonal power is undefined for n = 0")
        power = orthogonal_power(spec.anchor_p1, chain_circle(spec, args.n).circle)
    else:
        try:
            power = parse_rational(args.power)
        except ConstructionError as exc:
            raise _UsageError(str(exc)) from None
    trace = ladder_trace(spec, args.n, power)
    doc = {"chain": spec.describe(), "n": args.n, **trace.to_dict()}
    doc["matches_closed_form"] = trace.result == chain_circle(spec, args.n)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if doc["matches_closed_form"] else EXIT_CHECK_FAILED


def _cmd_figure(args) -> int:
    try:
        style = Style(args.stroke_width, not args.no_labels, args.width)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    overlays = [Theorem1Overlay(*t) for t in args.theorem1] + [Theorem2Overlay(*t) for t in args.theorem2]
    if args.preset:
        if any(v is not None for v in (args.variant, args.a, args.b, args.n)) or overlays:
            raise _UsageError("--preset cannot be combined with explicit figure flags")
        fig = preset_figure(args.preset, style)
    else:
        if args.variant is None:
            raise _UsageError("figure needs --preset or --variant")
        a = args.a if args.a is not None else 1
        b = args.b if args.b is not None else 1
        fig = FigureSpec(configure_chain(a, b, args.variant), args.n or (0, 5), tuple(overlays), style)
    _emit(render_figure(fig), args.out)
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "verify": _cmd_verify,
    "ladder": _cmd_ladder,
    "figure": _cmd_figure,
}


def run_cli(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_rejoin_values(argv))
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ParameterError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateGeometryError, RenderError) as exc:
        print(f"degenerate geometry: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


def main() -> None:
    sys.exit(run_cli())
