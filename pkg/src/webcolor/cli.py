"""Command line entry point: ``webcolor <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad input file, improper
coloring, engine mismatch) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .coloring import Color, bracket_enum, config_degree, configuration, enumerate_colorings, parse_coloring, require_proper
from .errors import ParseError, WebError
from .generate import generate_web
from .kempe import connected_components, kempe_dot, kempe_graph
from .rewrite import ReductionTrace, bracket_reduce
from .web import CubicGraph, WebMap

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _load(path: str):
    return io.parse_file(path).obj


def _need_web(obj) -> WebMap:
    if not isinstance(obj, WebMap):
        raise WebError(f"{obj.name} is a plain cubic graph; this command needs a web")
    return obj


def _coloring_arg(spec: str, graph):
    p = Path(spec)
    try:
        c = io.load_coloring(p) if p.exists() else parse_coloring(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    require_proper(graph, c)
    return c


def cmd_validate(args, out):
    obj = _load(args.file)
    if isinstance(obj, CubicGraph):
        print(f"ok: graph {obj.name} ({len(obj.vertex_ids)} vertices, {len(obj.edges)} edges)", file=out)
    else:
        print(
            f"ok: web {obj.name} ({len(obj.roles)} vertices, {len(obj.edges)} edges, "
            f"{len(obj.loops)} loops, {obj.num_components} components)",
            file=out,
        )
    return 0


def cmd_colorings(args, out):
    obj = _load(args.file)
    cols = enumerate_colorings(obj)
    if args.count:
        print(len(cols), file=out)
    else:
        for c in cols:
            print(c.format(obj), file=out)
    return 0


def cmd_degree(args, out):
    web = _need_web(_load(args.file))
    c = _coloring_arg(args.coloring, web)
    total = 0
    for u in Color:
        d = config_degree(configuration(web, c, u))
        total += d
        print(f"{u} {d}", file=out)
    print(f"total {total}", file=out)
    return 0


def cmd_bracket(args, out):
    web = _need_web(_load(args.file))
    trace = ReductionTrace() if args.trace else None
    results = {}
    if args.engine in ("enum", "both"):
        results["enum"] = bracket_enum(web)
    if args.engine in ("reduce", "both"):
        results["reduce"] = bracket_reduce(web, trace=trace)
    if trace is not None:
        print(trace.render(), file=out)
    values = list(results.values())
    if len(values) == 2 and values[0] != values[1]:
        for k, v in results.items():
            print(f"{k}: {v}", file=out)
        print("engines disagree", file=sys.stderr)
        return 1
    print(values[0], file=out)
    return 0


def cmd_kempe(args, out):
    obj = _load(args.file)
    g = kempe_graph(obj, args.mode)
    comps = sorted(connected_components(g), key=min)
    print(f"colorings {len(g.nodes)}", file=out)
    print(f"edges {len(g.edges)}", file=out)
    print(f"components {len(comps)}", file=out)
    if args.components:
        print("sizes " + " ".join(str(len(cc)) for cc in comps), file=out)
        for k, cc in enumerate(comps):
            print(f"component {k}: " + " ".join(str(i) for i in sorted(cc)), file=out)
    if args.dot:
        Path(args.dot).write_text(kempe_dot(g, obj), encoding="utf-8")
    return 0


def cmd_generate(args, out):
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    web = generate_web(args.seed, args.steps)
    Path(args.out).write_text(io.serialize(web), encoding="utf-8")
    print(f"wrote {args.out}: {len(web.roles)} vertices, {len(web.loops)} loops", file=out)
    return 0


def cmd_export_dot(args, out):
    obj = _load(args.file)
    c = _coloring_arg(args.coloring, obj) if args.coloring else None
    Path(args.out).write_text(io.to_dot(obj, c), encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="webcolor", description="Colorings and brackets of closed webs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and validate a .webx or .graphx file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("colorings", help="list proper 3-edge-colorings")
    s.add_argument("file")
    s.add_argument("--count", action="store_true", help="only print how many there are")
    s.set_defaults(func=cmd_colorings)

    s = sub.add_parser("degree", help="configuration degrees of one coloring")
    s.add_argument("file")
    s.add_argument("--coloring", required=True, help='"e1=r,e2=g,..." or a coloring file')
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("bracket", help="evaluate the colored bracket")
    s.add_argument("file")
    s.add_argument("--engine", choices=("enum", "reduce", "both"), default="both")
    s.add_argument("--trace", action="store_true", help="print the reduction steps")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("kempe", help="Kempe graph over all colorings")
    s.add_argument("file")
    s.add_argument("--mode", choices=("weak", "strong"), default="weak")
    s.add_argument("--components", action="store_true", help="list component sizes and members")
    s.add_argument("--dot", metavar="OUT", help="write the Kempe graph in DOT format")
    s.set_defaults(func=cmd_kempe)

    s = sub.add_parser("generate", help="random web by inverse rewriting")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("export-dot", help="write a Graphviz rendering")
    s.add_argument("file")
    s.add_argument("out")
    s.add_argument("--coloring", help="label edges with this coloring")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 1
    except (WebError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
