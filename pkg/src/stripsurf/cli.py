"""Command-line front end.

Subcommands: validate, leaves, reduce, check-h0, eval.  Verdict output
is JSON on stdout; diagnostics and error notes go to stderr.  Exit codes:
0 success / verdict true, 1 verdict false, 2 invalid input, 3 I/O or
internal error.  Behaviour is entirely flag-driven (no environment
variables), and identical inputs produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import dsl, homeo, leaves, numeric, reduction
from .errors import StripSurfError

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _parse_or_fail(path: str):
    result = dsl.parse_surface(_read_text(path))
    if isinstance(result, list):
        for err in result:
            print(f"{path}:{err}", file=sys.stderr)
        return None
    return result


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_validate(args) -> int:
    result = dsl.parse_surface(_read_text(args.path))
    if isinstance(result, list):
        _print_json(
            {
                "ok": False,
                "issues": [
                    {
                        "code": err.code,
                        "message": err.message,
                        "line": err.span.line,
                        "column": err.span.column,
                    }
                    for err in result
                ],
            }
        )
        return EXIT_INVALID
    _print_json({"ok": True, "issues": []})
    return EXIT_OK


def _members_obj(record: leaves.LeafRecord):
    if record.kind is leaves.LeafKind.INTERNAL:
        return {"strip": record.members}
    if record.kind is leaves.LeafKind.BOUNDARY:
        return {"interval": str(record.members)}
    src, dst = record.members
    return {"src": str(src), "dst": str(dst)}


def cmd_leaves(args) -> int:
    surface = _parse_or_fail(args.path)
    if surface is None:
        return EXIT_INVALID
    records = leaves.classify_leaves(surface)
    if args.json:
        _print_json(
            [
                {"leaf_id": r.leaf_id, "kind": r.kind.value, "members": _members_obj(r)}
                for r in records
            ]
        )
    else:
        for r in records:
            members = _members_obj(r)
            detail = " ".join(f"{k}={v}" for k, v in members.items())
            print(f"{r.kind.value:9s} {r.leaf_id}  {detail}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    surface = _parse_or_fail(args.path)
    if surface is None:
        return EXIT_INVALID
    outcome = reduction.reduce(surface)
    components = []
    for comp in outcome.components:
        trace = []
        for step in comp.trace:
            entry = {"op": step.op, "leaf": step.leaf_id}
            if step.verdict is not None:
                entry["verdict"] = step.verdict.value
            trace.append(entry)
        components.append(
            {
                "verdict": comp.verdict.value,
                "surface": dsl.surface_to_obj(comp.surface) if comp.surface else None,
                "trace": trace,
            }
        )
    payload = {"components": components}
    text = json.dumps(payload, indent=2) + "\n"
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check_h0(args) -> int:
    surface = _parse_or_fail(args.surface)
    if surface is None:
        return EXIT_INVALID
    try:
        shadow_obj = json.loads(_read_text(args.shadow))
        shadow = homeo.shadow_from_obj(shadow_obj)
    except json.JSONDecodeError as exc:
        print(f"{args.shadow}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    verdict = homeo.check_identity_component(surface, shadow)
    _print_json(homeo.verdict_to_obj(verdict))
    return EXIT_OK if verdict.in_H0 else EXIT_FALSE


def _parse_grid_spec(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m:
        raise ValueError(f"--grid expects NXxNY, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _parse_range_spec(text: str) -> tuple[float, float]:
    text = text.replace("−", "-")
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range expects LO..HI, got {text!r}")
    return float(lo), float(hi)


def _parse_breakpoints(text: str) -> numeric.PLMonotoneMap:
    pts = []
    for chunk in text.replace("−", "-").split(","):
        a, sep, b = chunk.partition(":")
        if not sep:
            raise ValueError(f"breakpoints expect x:y,...  got {text!r}")
        pts.append((float(a), float(b)))
    return numeric.PLMonotoneMap(tuple(pts))


def cmd_eval(args) -> int:
    nx, ny = _parse_grid_spec(args.grid)
    grid = numeric.sample_map(
        args.map,
        nx=nx,
        ny=ny,
        x_range=_parse_range_spec(args.xrange),
        y_range=_parse_range_spec(args.yrange),
        t=args.t,
        lam=_parse_breakpoints(args.lam) if args.lam else None,
        mu=_parse_breakpoints(args.mu) if args.mu else None,
    )
    text = numeric.emit_csv(grid) if args.out == "csv" else numeric.emit_svg(grid)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stripsurf",
        description="Stripped-surface toolkit: validate, classify leaves, reduce, "
        "test identity-component membership, and sample the explicit maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a .strip file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("leaves", help="classify the leaves of a surface")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.set_defaults(func=cmd_leaves)

    p = sub.add_parser("reduce", help="rewrite to reduced form / detect C and M")
    p.add_argument("path")
    p.add_argument("--emit", metavar="OUT.json", help="write the outcome JSON to a file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check-h0", help="identity-component membership of a shadow")
    p.add_argument("surface", help=".strip surface file (must be connected and reduced)")
    p.add_argument("shadow", help="shadow JSON file")
    p.set_defaults(func=cmd_check_h0)

    p = sub.add_parser("eval", help="sample one of the explicit maps on a grid")
    p.add_argument("--map", required=True, choices=["raw", "banded", "chain", "contraction", "qdef"])
    p.add_argument("--grid", default="3x3", help="NXxNY sample counts")
    p.add_argument("--xrange", default="-10..10", help="LO..HI input x range")
    p.add_argument("--yrange", default="-0.9..0.9", help="LO..HI input y range")
    p.add_argument("--t", type=float, default=0.0, help="isotopy time in [0,1]")
    p.add_argument("--lam", help="lambda breakpoints as x:y,x:y,...")
    p.add_argument("--mu", help="mu breakpoints as x:y,x:y,...")
    p.add_argument("--out", choices=["csv", "svg"], default="csv")
    p.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except StripSurfError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
