"""Proper 3-edge-colorings, bicolored configurations and their degrees."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, Union

from .errors import ImproperColoring
from .laurent import LaurentPoly, quantum_int
from .web import CubicGraph, Dart, LoopWalk, Orientation, WebMap, Winding, cycle_orientation

__all__ = [
    "Color",
    "Coloring",
    "ConfigCycle",
    "Configuration",
    "enumerate_colorings",
    "is_proper",
    "configuration",
    "config_degree",
    "total_degree",
    "bracket_enum",
    "quantum_int",
    "parse_coloring",
]

Graph = Union[WebMap, CubicGraph]


class Color(IntEnum):
    """The three colors, ordered red < green < blue."""

    RED = 0
    GREEN = 1
    BLUE = 2

    @property
    def letter(self) -> str:
        return "rgb"[self]

    @classmethod
    def parse(cls, token: str) -> "Color":
        t = token.strip().lower()
        for c in cls:
            if t in (c.letter, c.name.lower()):
                return c
        raise ValueError(f"unknown color {token!r}")

    def __str__(self) -> str:
        return self.name.lower()


def others(u: Color) -> tuple[Color, Color]:
    """The two colors other than ``u``, smaller first."""
    a, b = (c for c in Color if c != u)
    return a, b


class Coloring(Mapping):
    """Immutable assignment of a color to every edge and loop identifier."""

    __slots__ = ("_colors", "_hash")

    def __init__(self, colors: Mapping[str, Color]):
        self._colors = {k: Color(v) for k, v in colors.items()}
        self._hash = None

    def __getitem__(self, key: str) -> Color:
        return self._colors[key]

    def __iter__(self):
        return iter(self._colors)

    def __len__(self) -> int:
        return len(self._colors)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._colors.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Coloring):
            return self._colors == other._colors
        if isinstance(other, Mapping):
            return self._colors == dict(other)
        return NotImplemented

    def replace(self, changes: Mapping[str, Color]) -> "Coloring":
        new = dict(self._colors)
        new.update(changes)
        return Coloring(new)

    def permute(self, perm: Mapping[Color, Color]) -> "Coloring":
        """Apply a permutation of the color set."""
        return Coloring({k: perm[c] for k, c in self._colors.items()})

    def format(self, graph: Graph | None = None) -> str:
        if graph is None:
            keys = sorted(self._colors)
            return " ".join(f"{k}={self._colors[k]}" for k in keys)
        left = " ".join(f"{e}={self._colors[e]}" for e in graph.edge_ids)
        if graph.loop_ids:
            right = " ".join(f"{lid}={self._colors[lid]}" for lid in graph.loop_ids)
            return f"{left} / {right}" if left else f"/ {right}"
        return left

    def __repr__(self) -> str:
        return f"Coloring({self.format()})"


def parse_coloring(spec: str) -> Coloring:
    """Read ``"e1=r,e2=green,..."`` (commas, spaces or ``/`` separate)."""
    out = {}
    for tok in spec.replace(",", " ").replace("/", " ").split():
        if "=" not in tok:
            raise ValueError(f"bad coloring entry {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = Color.parse(v)
    return Coloring(out)


def is_proper(graph: Graph, c: Mapping[str, Color]) -> bool:
    if set(c) != set(graph.edges) | set(graph.loops):
        return False
    for v in graph.vertex_ids:
        cols = [c[e] for e in graph.incident_edges(v)]
        if len(set(cols)) != len(cols):
            return False
    return True


def require_proper(graph: Graph, c: Mapping[str, Color]) -> None:
    if not is_proper(graph, c):
        raise ImproperColoring("coloring is not a proper 3-edge-coloring of this graph")


def enumerate_colorings(graph: Graph) -> list[Coloring]:
    """All proper colorings in lexicographic order.

    Edges are taken in natural identifier order, then loops; each position
    tries red, green, blue in turn.  Backtracking with forward checks at the
    two endpoints of each edge.
    """
    return list(iter_colorings(graph))


def iter_colorings(graph: Graph) -> Iterator[Coloring]:
    edges = graph.edge_ids
    ends = [graph.edges[e] for e in edges]
    loops = graph.loop_ids
    used: dict[str, int] = {v: 0 for v in graph.vertex_ids}
    chosen = [0] * len(edges)

    def loop_part(prefix: dict):
        n = len(loops)
        if n == 0:
            yield Coloring(prefix)
            return
        for idx in range(3 ** n):
            d = dict(prefix)
            digits = []
            for _ in range(n):
                digits.append(idx % 3)
                idx //= 3
            for lid, col in zip(loops, reversed(digits)):
                d[lid] = Color(col)
            yield Coloring(d)

    def rec(i: int):
        if i == len(edges):
            yield from loop_part({e: Color(chosen[k]) for k, e in enumerate(edges)})
            return
        a, b = ends[i]
        for col in range(3):
            bit = 1 << col
            if used[a] & bit or used[b] & bit:
                continue
            used[a] |= bit
            used[b] |= bit
            chosen[i] = col
            yield from rec(i + 1)
            used[a] &= ~bit
            used[b] &= ~bit

    yield from rec(0)


@dataclass(frozen=True)
class ConfigCycle:
    """One oriented cycle of a configuration.

    ``darts`` follow the smaller color of the pair along its orientation and
    the greater one against it; a loop is stored as a :class:`LoopWalk`.
    """

    walk: tuple[Dart, ...] | LoopWalk
    sign: int

    @property
    def is_loop(self) -> bool:
        return isinstance(self.walk, LoopWalk)

    @property
    def edges(self) -> frozenset[str]:
        if isinstance(self.walk, LoopWalk):
            return frozenset([self.walk.loop])
        return frozenset(d.edge for d in self.walk)


@dataclass(frozen=True)
class Configuration:
    u: Color
    cycles: tuple[ConfigCycle, ...]

    @property
    def degree(self) -> int:
        return config_degree(self)


def bicolored_walks(graph: Graph, c: Mapping[str, Color], u: Color) -> list[tuple[Dart, ...] | LoopWalk]:
    """Cycles left after deleting color ``u``, traversed per the reversal rule.

    Works for both webs and abstract cubic graphs; for the latter the darts
    still follow the stored endpoint order of each edge.
    """
    small, big = others(u)
    walks: list = []
    seen: set[str] = set()
    is_web = isinstance(graph, WebMap)
    for e in graph.edge_ids:
        if e in seen or c[e] == u:
            continue
        d = Dart(e, "t" if c[e] == small else "h")
        walk = []
        while True:
            walk.append(d)
            seen.add(d.edge)
            src, dst = graph.edges[d.edge]
            here = dst if d.end == "t" else src
            nxt_edge = next(f for f in graph.incident_edges(here) if f != d.edge and c[f] != u)
            if nxt_edge in seen:
                break
            a, b = graph.edges[nxt_edge]
            if is_web:
                nd = Dart(nxt_edge, "t" if c[nxt_edge] == small else "h")
                if (a if nd.end == "t" else b) != here:
                    raise ImproperColoring(f"edges {d.edge}, {nxt_edge} do not chain coherently")
            else:
                nd = Dart(nxt_edge, "t" if a == here else "h")
            d = nd
        walks.append(tuple(walk))
    for lid in graph.loop_ids:
        col = c[lid]
        if col != u:
            walks.append(LoopWalk(lid, along=(col == small)))
    return walks


def configuration(web: WebMap, c: Mapping[str, Color], u: Color) -> Configuration:
    """The oriented configuration obtained by deleting the edges colored ``u``.

    Edges of the smaller remaining color keep their orientation and edges of
    the greater one are reversed; a loop is handled the same way through its
    winding.  Each cycle gets sign +1 when it then runs counterclockwise.
    """
    u = Color(u)
    cycles = tuple(
        ConfigCycle(w, int(cycle_orientation(web, w))) for w in bicolored_walks(web, c, u)
    )
    return Configuration(u, cycles)


def config_degree(D: Configuration) -> int:
    return sum(cyc.sign for cyc in D.cycles)


def total_degree(web: WebMap, c: Mapping[str, Color]) -> int:
    return sum(config_degree(configuration(web, c, u)) for u in Color)


def bracket_enum(web: WebMap) -> LaurentPoly:
    """Sum of ``q ** total_degree`` over every proper coloring."""
    return LaurentPoly.from_exponents(total_degree(web, c) for c in iter_colorings(web))
