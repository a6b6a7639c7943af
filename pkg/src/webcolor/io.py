"""WEBX / GRAPHX text formats, coordinate sidecars and DOT output.

WEBX (closed webs)::

    web <name>
    vertex <vid> <sink|source>
    edge <eid> <source-vid> <sink-vid>
    rot <vid> <dart> <dart> <dart>     # counterclockwise, dart = <eid>t | <eid>h
    loop <lid> <ccw|cw>
    outer <dart>                        # one per connected component

GRAPHX (plain cubic graphs)::

    graph <name>
    edge <eid> <vid> <vid>

``#`` starts a comment.  Coordinate sidecars hold ``<id> <x> <y>`` lines;
the id is a vertex, or an edge to give that edge one bend point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Union

from .errors import (
    DuplicateRotation,
    MissingOuter,
    ParseError,
    UnknownDart,
    ValidationFailure,
    WebxSyntaxError,
)
from .web import CubicGraph, Dart, Role, WebMap, Winding, validate_web

__all__ = [
    "ParsedDocument",
    "parse",
    "parse_file",
    "load",
    "serialize",
    "parse_coords",
    "load_coords",
    "to_dot",
    "load_coloring",
    "FIXTURES",
    "fixture_path",
]

FIXTURES = Path(__file__).with_name("fixtures")


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@dataclass
class ParsedDocument:
    kind: str  # "web" | "graph"
    name: str
    obj: Union[WebMap, CubicGraph]
    lines: dict[str, int] = field(default_factory=dict)


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in body.split():
            col = body.index(part, col)
            toks.append((part, col + 1))
            col += len(part)
        if toks:
            yield lineno, toks


def parse(text: str, *, validate: bool = True) -> ParsedDocument:
    """Parse a WEBX or GRAPHX document.

    Never raises anything but :class:`ParseError` subclasses.
    """
    try:
        return _parse(text, validate)
    except ParseError:
        raise
    except Exception as exc:  # parsing is total
        raise WebxSyntaxError(f"unreadable input ({exc})", 0, 0) from exc


def _parse(text: str, validate: bool) -> ParsedDocument:
    lines = list(_tokens(text))
    if not lines:
        raise WebxSyntaxError("empty document", 1, 1)
    lineno, toks = lines[0]
    head = toks[0][0]
    if head not in ("web", "graph") or len(toks) != 2:
        raise WebxSyntaxError("document must start with 'web <name>' or 'graph <name>'", lineno, toks[0][1])
    name = toks[1][0]
    if head == "graph":
        return _parse_graph(name, lines[1:], validate)
    return _parse_web(name, lines[1:], validate)


def _arity(toks, n, lineno):
    if len(toks) != n:
        raise WebxSyntaxError(f"'{toks[0][0]}' takes {n - 1} arguments, got {len(toks) - 1}", lineno, toks[0][1])


def _parse_graph(name, lines, validate):
    vertices: list[str] = []
    edges: dict[str, tuple[str, str]] = {}
    where: dict[str, int] = {}
    for lineno, toks in lines:
        kw = toks[0][0]
        if kw == "edge":
            _arity(toks, 4, lineno)
            eid, a, b = (t[0] for t in toks[1:])
            if eid in edges:
                raise WebxSyntaxError(f"duplicate edge {eid}", lineno, toks[1][1])
            edges[eid] = (a, b)
            where[eid] = lineno
            for v in (a, b):
                if v not in vertices:
                    vertices.append(v)
        elif kw == "vertex":
            if len(toks) not in (2, 3):
                raise WebxSyntaxError("'vertex' takes an id", lineno, toks[0][1])
            if toks[1][0] not in vertices:
                vertices.append(toks[1][0])
            where[toks[1][0]] = lineno
        else:
            raise WebxSyntaxError(f"unknown directive {kw!r} in graph mode", lineno, toks[0][1])
    g = CubicGraph(tuple(vertices), edges, name)
    if validate:
        report = g.validate()
        if not report.ok:
            raise ValidationFailure(report)
    return ParsedDocument("graph", name, g, where)


def _parse_web(name, lines, validate):
    roles: dict[str, Role] = {}
    edges: dict[str, tuple[str, str]] = {}
    loops: dict[str, Winding] = {}
    rot_lines: dict[str, tuple[int, list]] = {}
    outer_lines: list[tuple[int, str, int]] = []
    where: dict[str, int] = {}

    def fresh(ident, lineno, col):
        if ident in where:
            raise WebxSyntaxError(f"identifier {ident} already defined on line {where[ident]}", lineno, col)
        where[ident] = lineno

    for lineno, toks in lines:
        kw, kcol = toks[0]
        if kw == "vertex":
            _arity(toks, 3, lineno)
            vid, role = toks[1][0], toks[2][0]
            if role not in ("sink", "source"):
                raise WebxSyntaxError(f"vertex role must be sink or source, got {role!r}", lineno, toks[2][1])
            fresh(vid, lineno, toks[1][1])
            roles[vid] = Role(role)
        elif kw == "edge":
            _arity(toks, 4, lineno)
            eid = toks[1][0]
            fresh(eid, lineno, toks[1][1])
            edges[eid] = (toks[2][0], toks[3][0])
        elif kw == "rot":
            if len(toks) < 2:
                raise WebxSyntaxError("'rot' needs a vertex", lineno, kcol)
            vid = toks[1][0]
            if vid in rot_lines:
                raise DuplicateRotation(
                    f"vertex {vid} already has a rotation on line {rot_lines[vid][0]}", lineno, toks[1][1]
                )
            rot_lines[vid] = (lineno, toks[2:])
        elif kw == "loop":
            _arity(toks, 3, lineno)
            lid, wd = toks[1][0], toks[2][0]
            if wd not in ("ccw", "cw"):
                raise WebxSyntaxError(f"loop winding must be ccw or cw, got {wd!r}", lineno, toks[2][1])
            fresh(lid, lineno, toks[1][1])
            loops[lid] = Winding(wd)
        elif kw == "outer":
            _arity(toks, 2, lineno)
            outer_lines.append((lineno, toks[1][0], toks[1][1]))
        elif kw in ("web", "graph"):
            raise WebxSyntaxError("only one header line is allowed", lineno, kcol)
        else:
            raise WebxSyntaxError(f"unknown directive {kw!r}", lineno, kcol)

    def dart(tok, lineno, col):
        try:
            d = Dart.parse(tok)
        except ValueError:
            raise WebxSyntaxError(f"bad dart token {tok!r}", lineno, col) from None
        if d.edge not in edges:
            raise UnknownDart(f"dart {tok} names no edge", lineno, col)
        return d

    for vid, (lineno, toks) in rot_lines.items():
        if vid not in roles:
            raise WebxSyntaxError(f"rotation for undeclared vertex {vid}", lineno, 1)
    rotation = {vid: tuple(dart(t, ln, c) for t, c in toks) for vid, (ln, toks) in rot_lines.items()}
    outer = tuple(dart(tok, ln, c) for ln, tok, c in outer_lines)
    for vid in roles:
        if vid not in rotation:
            raise WebxSyntaxError(f"vertex {vid} has no 'rot' line", where[vid], 1)

    web = WebMap(roles, edges, rotation, loops, outer, name)
    if validate:
        report = validate_web(web)
        if not report.ok:
            if any(v.kind == "OuterMark" and "no outer mark" in v.message for v in report.violations):
                last = lines[-1][0] if lines else 1
                raise MissingOuter(str(report), last, 1)
            raise ValidationFailure(report)
    return ParsedDocument("web", name, web, where)


def parse_file(path: str | Path, *, validate: bool = True) -> ParsedDocument:
    return parse(Path(path).read_text(encoding="utf-8"), validate=validate)


def load(name_or_path: str | Path):
    """Load a shipped fixture by file name, or any path; returns the map/graph."""
    p = Path(name_or_path)
    if not p.exists() and (FIXTURES / str(name_or_path)).exists():
        p = FIXTURES / str(name_or_path)
    return parse_file(p).obj


def serialize(obj: Union[WebMap, CubicGraph]) -> str:
    if isinstance(obj, CubicGraph):
        out = [f"graph {obj.name}"]
        out += [f"edge {e} {a} {b}" for e, (a, b) in ((e, obj.edges[e]) for e in obj.edge_ids)]
        return "\n".join(out) + "\n"
    out = [f"web {obj.name}"]
    out += [f"vertex {v} {obj.roles[v].value}" for v in obj.vertex_ids]
    out += [f"edge {e} {obj.edges[e][0]} {obj.edges[e][1]}" for e in obj.edge_ids]
    out += [f"rot {v} " + " ".join(str(d) for d in obj.rotation[v]) for v in obj.vertex_ids if v in obj.rotation]
    out += [f"loop {lid} {obj.loops[lid].value}" for lid in obj.loop_ids]
    out += [f"outer {d}" for d in obj.outer]
    return "\n".join(out) + "\n"


def parse_coords(text: str) -> dict[str, tuple[float, float]]:
    out = {}
    for lineno, toks in _tokens(text):
        if len(toks) != 3:
            raise WebxSyntaxError("coordinate lines are '<id> <x> <y>'", lineno, 1)
        try:
            out[toks[0][0]] = (float(toks[1][0]), float(toks[2][0]))
        except ValueError:
            raise WebxSyntaxError("coordinates must be numbers", lineno, toks[1][1]) from None
    return out


def load_coords(path: str | Path) -> dict[str, tuple[float, float]]:
    return parse_coords(Path(path).read_text(encoding="utf-8"))


def load_coloring(path: str | Path):
    """Read a coloring file: ``eid=color`` entries, ``#`` comments allowed."""
    from .coloring import parse_coloring

    p = Path(path)
    if not p.exists() and (FIXTURES / str(path)).exists():
        p = FIXTURES / str(path)
    body = " ".join(line.split("#", 1)[0] for line in p.read_text(encoding="utf-8").splitlines())
    return parse_coloring(body)


_DOT_COLORS = {0: "red", 1: "green", 2: "blue"}


def to_dot(obj: Union[WebMap, CubicGraph], coloring: Mapping | None = None) -> str:
    """Graphviz rendering; edges are labelled with colors when given."""
    directed = isinstance(obj, WebMap)
    arrow = "->" if directed else "--"
    lines = [f'{"digraph" if directed else "graph"} "{obj.name}" {{']
    for v in obj.vertex_ids:
        shape = ""
        if directed:
            shape = ' [shape=circle]' if obj.roles[v] is Role.SOURCE else ' [shape=doublecircle]'
        lines.append(f'  "{v}"{shape};')
    for e in obj.edge_ids:
        a, b = obj.edges[e]
        attrs = [f'label="{e}"']
        if coloring is not None and e in coloring:
            col = _DOT_COLORS[int(coloring[e])]
            attrs = [f'label="{e}={col}"', f"color={col}"]
        lines.append(f'  "{a}" {arrow} "{b}" [{", ".join(attrs)}];')
    for lid in obj.loop_ids:
        attrs = [f'label="{lid} ({obj.loops[lid].value})"', "shape=circle", "style=dashed"]
        if coloring is not None and lid in coloring:
            attrs.append(f"color={_DOT_COLORS[int(coloring[lid])]}")
        lines.append(f'  "{lid}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
