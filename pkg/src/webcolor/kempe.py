"""Kempe changes: bicolored cycles, tau-moves and the graph they generate."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Union

from .coloring import Color, Coloring, bicolored_walks, enumerate_colorings, others, total_degree
from .errors import CycleNotBicoloredInColoring, GreenSwapUnsupported, WebError
from .web import CubicGraph, Dart, Face, LoopWalk, Orientation, WebMap, cycle_orientation

__all__ = [
    "BicoloredCycle",
    "KempeGraph",
    "bicolored_cycles",
    "tau",
    "delta_dt",
    "cycle_sign",
    "kempe_graph",
    "connected_components",
    "check_square_edges",
    "SquareVerdict",
    "kempe_dot",
]

Graph = Union[WebMap, CubicGraph]


@dataclass(frozen=True)
class BicoloredCycle:
    u: Color
    edges: frozenset[str]
    walk: tuple[Dart, ...] | LoopWalk = field(compare=False, hash=False, default=())

    @property
    def colors(self) -> tuple[Color, Color]:
        return others(self.u)


def bicolored_cycles(graph: Graph, c: Mapping[str, Color], u: Color) -> list[BicoloredCycle]:
    """Components of the subgraph left after deleting the edges colored ``u``."""
    u = Color(u)
    out = []
    for w in bicolored_walks(graph, c, u):
        es = frozenset([w.loop]) if isinstance(w, LoopWalk) else frozenset(d.edge for d in w)
        out.append(BicoloredCycle(u, es, w))
    return out


def tau(graph: Graph, c: Mapping[str, Color], C: BicoloredCycle) -> Coloring:
    """Swap the two colors other than ``C.u`` along ``C``."""
    a, b = others(C.u)
    changes = {}
    for e in C.edges:
        col = c[e]
        if col not in (a, b):
            raise CycleNotBicoloredInColoring(f"edge {e} has color {col}, expected {a} or {b}")
        changes[e] = b if col == a else a
    current = {d for cyc in bicolored_cycles(graph, c, C.u) for d in [cyc.edges]}
    if C.edges not in current:
        raise CycleNotBicoloredInColoring("edge set is not a whole bicolored cycle of this coloring")
    return Coloring(c).replace(changes)


def cycle_sign(web: WebMap, C: BicoloredCycle) -> int:
    """Orientation sign of ``C`` under the reversal rule for its color pair."""
    return int(cycle_orientation(web, C.walk))


def delta_dt(web: WebMap, c: Mapping[str, Color], C: BicoloredCycle) -> int:
    """Change of total degree under ``tau``; only red and blue swaps qualify."""
    if C.u is Color.GREEN:
        raise GreenSwapUnsupported("no degree law is asserted for swaps of red and blue")
    return total_degree(web, tau(web, c, C)) - total_degree(web, c)


@dataclass
class KempeGraph:
    nodes: list[Coloring]
    edges: set[tuple[int, int]]
    mode: str

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj


def _moves(mode: str) -> tuple[Color, ...]:
    if mode == "weak":
        return (Color.RED, Color.GREEN, Color.BLUE)
    if mode == "strong":
        return (Color.RED, Color.BLUE)
    raise ValueError(f"mode must be weak or strong, got {mode!r}")


def kempe_graph(graph: Graph, mode: str = "weak") -> KempeGraph:
    """All colorings, joined whenever one tau-move relates them.

    Strong mode only uses cycles avoiding red or avoiding blue.
    """
    us = _moves(mode)
    nodes = enumerate_colorings(graph)
    index = {c: i for i, c in enumerate(nodes)}
    edges: set[tuple[int, int]] = set()
    for i, c in enumerate(nodes):
        for u in us:
            for C in bicolored_cycles(graph, c, u):
                j = index[tau(graph, c, C)]
                if i != j:
                    edges.add((min(i, j), max(i, j)))
    return KempeGraph(nodes, edges, mode)


def connected_components(g: KempeGraph) -> list[frozenset[int]]:
    adj = g.neighbours()
    seen = [False] * len(g.nodes)
    comps = []
    for s in range(len(g.nodes)):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class SquareVerdict:
    pairs: tuple[tuple[str, str], ...]  # opposite attachment pairs checked
    claims: int  # pairs with different colors, where the claim applies
    confirmed: bool
    witness: BicoloredCycle | None = None


def _attachments(web: WebMap, f: Face) -> list[str]:
    sides = {d.edge for d in f.darts}
    out = []
    for d in f.darts:
        rest = [x for x in web.rotation[web.base(d)] if x.edge not in sides]
        if len(rest) != 1:
            raise WebError(f"face {f.id} is not a square with four attachments")
        out.append(rest[0].edge)
    return out


def check_square_edges(web: WebMap, c: Mapping[str, Color], square: Face | int) -> SquareVerdict:
    """Opposite attachments of a square with different colors share no bicolored cycle."""
    f = square if isinstance(square, Face) else web.faces[int(square)]
    if f.size != 4:
        raise WebError(f"face {f.id} has {f.size} sides")
    att = _attachments(web, f)
    pairs = ((att[0], att[2]), (att[1], att[3]))
    claims = 0
    for e1, e2 in pairs:
        if c[e1] == c[e2]:
            continue
        claims += 1
        for u in Color:
            for C in bicolored_cycles(web, c, u):
                if e1 in C.edges and e2 in C.edges:
                    return SquareVerdict(pairs, claims, False, C)
    return SquareVerdict(pairs, claims, True)


_DOT = {Color.RED: "r", Color.GREEN: "g", Color.BLUE: "b"}


def kempe_dot(g: KempeGraph, graph: Graph | None = None) -> str:
    lines = [f'graph "kempe-{g.mode}" {{']
    for i, c in enumerate(g.nodes):
        keys = graph.edge_ids + graph.loop_ids if graph is not None else sorted(c)
        label = "".join(_DOT[c[k]] for k in keys)
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in sorted(g.edges):
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
