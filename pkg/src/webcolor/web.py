"""Closed webs as combinatorial maps.

A closed web is stored as a rotation system: every edge ``e`` oriented from
its source vertex to its sink vertex owns two darts, ``Dart(e, "t")`` based
at the source and ``Dart(e, "h")`` based at the sink.  Each vertex lists its
three darts in counterclockwise order.  Vertexless loops are kept aside with
a winding flag, and every connected component with vertices carries one
*outer mark*: a dart whose face is the unbounded face of that component.

Faces are orbits of ``d -> sigma^-1(alpha(d))`` where ``alpha`` flips a dart
and ``sigma`` is the counterclockwise successor at the dart's base.  With
this walk the face lies on the left of every dart of its orbit, so bounded
faces are traversed counterclockwise and the outer face clockwise.
"""

from __future__ import annotations

import hashlib
import random
import re
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    CycleSeparationFailure,
    EmptyWeb,
    InvalidWeb,
    NotSimpleCycle,
    WebError,
)

__all__ = [
    "Role",
    "Winding",
    "Orientation",
    "Dart",
    "Face",
    "LoopWalk",
    "ReducibleFeature",
    "WebMap",
    "CubicGraph",
    "Violation",
    "ValidationReport",
    "validate_web",
    "faces",
    "find_reducible",
    "cycle_orientation",
    "reverse_cycle",
    "components",
    "mirror",
    "disjoint_union",
    "canonical_hash",
    "natural_key",
]


def natural_key(s: str):
    """Sort key ordering ``e2`` before ``e10``."""
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s))


class Role(Enum):
    SOURCE = "source"
    SINK = "sink"


class Winding(Enum):
    CCW = "ccw"
    CW = "cw"

    def reversed(self) -> "Winding":
        return Winding.CW if self is Winding.CCW else Winding.CCW


class Orientation(IntEnum):
    POSITIVE = 1
    NEGATIVE = -1


class Dart(NamedTuple):
    edge: str
    end: str  # "t" (based at the source) or "h" (based at the sink)

    def flip(self) -> "Dart":
        return Dart(self.edge, "h" if self.end == "t" else "t")

    def __str__(self) -> str:
        return f"{self.edge}{self.end}"

    @classmethod
    def parse(cls, token: str) -> "Dart":
        if len(token) < 2 or token[-1] not in "th":
            raise ValueError(f"bad dart token {token!r}")
        return cls(token[:-1], token[-1])


def _dart_key(d: Dart):
    return (natural_key(d.edge), d.end != "t")


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[Dart, ...]
    component: int

    @property
    def size(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class LoopWalk:
    """A vertexless loop traversed along (or against) its orientation."""

    loop: str
    along: bool = True


@dataclass(frozen=True)
class ReducibleFeature:
    kind: str  # "circle" | "digon" | "square"
    loop: str | None = None
    face: Face | None = None

    def __str__(self) -> str:
        if self.kind == "circle":
            return f"circle {self.loop}"
        return f"{self.kind} f={self.face.id}"


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class WebMap:
    """Rotation-system description of a closed web.

    Instances are treated as immutable; every surgery builds a new map.
    Construction does not validate, see :func:`validate_web`.
    """

    roles: dict[str, Role] = field(default_factory=dict)
    edges: dict[str, tuple[str, str]] = field(default_factory=dict)
    rotation: dict[str, tuple[Dart, ...]] = field(default_factory=dict)
    loops: dict[str, Winding] = field(default_factory=dict)
    outer: tuple[Dart, ...] = ()
    name: str = "web"

    # basic accessors

    @cached_property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.roles, key=natural_key))

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.edges, key=natural_key))

    @cached_property
    def loop_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.loops, key=natural_key))

    @cached_property
    def darts(self) -> tuple[Dart, ...]:
        return tuple(Dart(e, end) for e in self.edge_ids for end in "th")

    def is_empty(self) -> bool:
        return not self.roles and not self.loops

    def base(self, d: Dart) -> str:
        src, dst = self.edges[d.edge]
        return src if d.end == "t" else dst

    def tip(self, d: Dart) -> str:
        return self.base(d.flip())

    @cached_property
    def _rot_pos(self) -> dict[Dart, tuple[str, int]]:
        return {d: (v, i) for v, rot in self.rotation.items() for i, d in enumerate(rot)}

    def sigma(self, d: Dart) -> Dart:
        v, i = self._rot_pos[d]
        rot = self.rotation[v]
        return rot[(i + 1) % len(rot)]

    def sigma_inv(self, d: Dart) -> Dart:
        v, i = self._rot_pos[d]
        rot = self.rotation[v]
        return rot[(i - 1) % len(rot)]

    def face_next(self, d: Dart) -> Dart:
        return self.sigma_inv(d.flip())

    def incident_edges(self, v: str) -> tuple[str, ...]:
        return tuple(d.edge for d in self.rotation[v])

    # faces and components

    @cached_property
    def _faces(self) -> tuple[tuple[Face, ...], dict[Dart, int]]:
        face_of: dict[Dart, int] = {}
        out: list[Face] = []
        for start in self.darts:
            if start in face_of:
                continue
            orbit = []
            d = start
            while d not in face_of:
                face_of[d] = len(out)
                orbit.append(d)
                d = self.face_next(d)
            if d != start:
                raise WebError("face walk is not a permutation; rotation data is inconsistent")
            out.append(Face(len(out), tuple(orbit), self.component_of_vertex[self.base(start)]))
        return tuple(out), face_of

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._faces[0]

    def face_of(self, d: Dart) -> int:
        return self._faces[1][d]

    @cached_property
    def component_of_vertex(self) -> dict[str, int]:
        uf = _UnionFind()
        for v in self.vertex_ids:
            uf.find(v)
        for e in self.edge_ids:
            src, dst = self.edges[e]
            uf.union(src, dst)
        ids: dict[str, int] = {}
        out: dict[str, int] = {}
        for v in self.vertex_ids:
            r = uf.find(v)
            if r not in ids:
                ids[r] = len(ids)
            out[v] = ids[r]
        return out

    @property
    def num_components(self) -> int:
        return len(set(self.component_of_vertex.values()))

    def component_of_dart(self, d: Dart) -> int:
        return self.component_of_vertex[self.base(d)]

    @cached_property
    def outer_face_of_component(self) -> dict[int, int]:
        out = {}
        for d in self.outer:
            out[self.component_of_dart(d)] = self.face_of(d)
        return out

    def is_outer_face(self, face_id: int) -> bool:
        return face_id in self.outer_face_of_component.values()

    @cached_property
    def _orientation_cache(self) -> dict:
        return {}

    def check(self) -> "WebMap":
        """Raise :class:`InvalidWeb` unless the map is a closed web."""
        validate_web(self).raise_if_invalid()
        return self

    def __str__(self) -> str:
        return (
            f"WebMap({self.name!r}: {len(self.roles)} vertices, {len(self.edges)} edges, "
            f"{len(self.loops)} loops)"
        )


@dataclass(frozen=True)
class CubicGraph:
    """An abstract 3-regular multigraph with no embedding and no orientation."""

    vertices: tuple[str, ...]
    edges: dict[str, tuple[str, str]]
    name: str = "graph"

    @property
    def loops(self) -> dict:
        return {}

    @cached_property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.vertices, key=natural_key))

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.edges, key=natural_key))

    @property
    def loop_ids(self) -> tuple[str, ...]:
        return ()

    @cached_property
    def _incidence(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edge_ids:
            a, b = self.edges[e]
            inc.setdefault(a, []).append(e)
            if b != a:
                inc.setdefault(b, []).append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def incident_edges(self, v: str) -> tuple[str, ...]:
        return self._incidence[v]

    def validate(self) -> "ValidationReport":
        report = ValidationReport()
        vs = set(self.vertices)
        for e in self.edge_ids:
            a, b = self.edges[e]
            if a not in vs or b not in vs:
                report.add("DanglingDart", f"edge {e} has an unknown endpoint")
            if a == b:
                report.add("SelfLoop", f"edge {e} is a self-loop at {a}")
        for v in self.vertex_ids:
            deg = sum((a == v) + (b == v) for a, b in self.edges.values())
            if deg != 3:
                report.add("NotCubic", f"vertex {v} has degree {deg}")
        return report

    def check(self) -> "CubicGraph":
        self.validate().raise_if_invalid()
        return self


# validation


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    def add(self, kind: str, message: str) -> None:
        self.violations.append(Violation(kind, message))

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def raise_if_invalid(self) -> None:
        if self.violations:
            raise InvalidWeb(self)

    def __str__(self) -> str:
        if self.ok:
            return "valid closed web"
        return "\n".join(str(v) for v in self.violations)


def validate_web(web: WebMap) -> ValidationReport:
    """List every violated closed-web axiom of ``web``.

    Structural problems (unknown vertices, dangling or duplicated darts,
    wrong valence) are reported first; face-level checks (Euler identity per
    component, even face sizes, outer marks) only run on structurally sound
    rotation data.
    """
    report = ValidationReport()
    clash = set(web.edges) & set(web.loops)
    for x in sorted(clash, key=natural_key):
        report.add("DuplicateId", f"{x} is both an edge and a loop")

    for e in web.edge_ids:
        src, dst = web.edges[e]
        if src not in web.roles or dst not in web.roles:
            report.add("DanglingDart", f"edge {e} has an unknown endpoint")
            continue
        if src == dst:
            report.add("SelfLoop", f"edge {e} is a self-loop at {src}")
    for v in web.vertex_ids:
        role = web.roles[v]
        outs = sum(1 for s, _ in web.edges.values() if s == v)
        ins = sum(1 for _, t in web.edges.values() if t == v)
        if outs + ins != 3:
            report.add("NotCubic", f"vertex {v} has {outs + ins} incident edge ends")
        if (role is Role.SOURCE and ins) or (role is Role.SINK and outs):
            report.add(
                "MixedVertexOrientation",
                f"vertex {v} is declared {role.value} but has {outs} outgoing and {ins} incoming edges",
            )

    seen: dict[Dart, str] = {}
    for v in web.vertex_ids:
        rot = web.rotation.get(v)
        if rot is None:
            report.add("DanglingDart", f"vertex {v} has no rotation")
            continue
        if len(rot) != 3:
            report.add("NotCubic", f"rotation at {v} lists {len(rot)} darts")
        for d in rot:
            if d.edge not in web.edges or d.end not in ("t", "h"):
                report.add("DanglingDart", f"rotation at {v} names unknown dart {d}")
                continue
            if web.base(d) != v:
                report.add("DanglingDart", f"dart {d} is listed at {v} but based at {web.base(d)}")
            if d in seen:
                report.add("DanglingDart", f"dart {d} listed at both {seen[d]} and {v}")
            seen[d] = v
    for v in web.rotation:
        if v not in web.roles:
            report.add("DanglingDart", f"rotation given for unknown vertex {v}")
    for d in web.darts:
        if d not in seen and web.edges[d.edge][0] in web.roles and web.edges[d.edge][1] in web.roles:
            report.add("DanglingDart", f"dart {d} is not in any rotation")

    if not report.ok:
        return report

    comp = web.component_of_vertex
    ncomp = web.num_components
    nv = [0] * ncomp
    ne = [0] * ncomp
    nf = [0] * ncomp
    for v in web.vertex_ids:
        nv[comp[v]] += 1
    for e in web.edge_ids:
        ne[comp[web.edges[e][0]]] += 1
    for f in web.faces:
        nf[f.component] += 1
        if f.size % 2:
            report.add("OddFace", f"face {f.id} has {f.size} sides")
    for c in range(ncomp):
        chi = nf[c] - ne[c] + nv[c]
        if chi != 2:
            report.add(
                "EulerViolation",
                f"component {c}: F - E + V = {nf[c]} - {ne[c]} + {nv[c]} = {chi} (not planar)",
            )

    marked: dict[int, Dart] = {}
    for d in web.outer:
        if d.edge not in web.edges or d.end not in ("t", "h"):
            report.add("OuterMark", f"outer mark {d} is not a dart")
            continue
        c = web.component_of_dart(d)
        if c in marked:
            report.add("OuterMark", f"component {c} has two outer marks ({marked[c]}, {d})")
        marked[c] = d
    for c in range(ncomp):
        if c not in marked:
            report.add("OuterMark", f"component {c} has no outer mark")
    return report


def faces(web: WebMap) -> tuple[Face, ...]:
    return web.faces


def _is_inner(web: WebMap, f: Face) -> bool:
    return not web.is_outer_face(f.id)


def _distinct_corners(web: WebMap, f: Face) -> bool:
    corners = [web.base(d) for d in f.darts]
    return len(set(corners)) == len(corners)


def find_reducible(web: WebMap, rng: random.Random | None = None) -> ReducibleFeature:
    """Locate a circle, a digon or a square.

    Loops come first, then bounded faces of size two, then bounded faces of
    size four, each by smallest identifier.  Passing ``rng`` draws uniformly
    among every available feature instead (used to probe confluence).
    """
    if web.is_empty():
        raise EmptyWeb("the empty web has nothing to reduce")
    loops = [ReducibleFeature("circle", loop=lid) for lid in web.loop_ids]
    digons = []
    squares = []
    for f in web.faces:
        if not _is_inner(web, f):
            continue
        if f.size == 2:
            digons.append(ReducibleFeature("digon", face=f))
        elif f.size == 4 and _distinct_corners(web, f):
            squares.append(ReducibleFeature("square", face=f))
    if rng is not None:
        pool = loops + digons + squares
        if pool:
            return rng.choice(pool)
    for group in (loops, digons, squares):
        if group:
            return group[0]
    raise WebError("no circle, digon or square found; the map is not a closed web")


# orientation of cycles


def reverse_cycle(cycle: Sequence[Dart]) -> tuple[Dart, ...]:
    return tuple(d.flip() for d in reversed(cycle))


def _check_simple(web: WebMap, darts: Sequence[Dart]) -> None:
    if len(darts) < 2:
        raise NotSimpleCycle("a cycle needs at least two darts")
    for d in darts:
        if d.edge not in web.edges:
            raise NotSimpleCycle(f"unknown dart {d}")
    if len({d.edge for d in darts}) != len(darts):
        raise NotSimpleCycle("an edge is used twice")
    bases = [web.base(d) for d in darts]
    if len(set(bases)) != len(bases):
        raise NotSimpleCycle("a vertex is visited twice")
    for d, nxt in zip(darts, darts[1:] + tuple(darts[:1])):
        if web.tip(d) != web.base(nxt):
            raise NotSimpleCycle(f"dart {nxt} does not start where {d} ends")


def cycle_orientation(web: WebMap, cycle: Sequence[Dart] | LoopWalk) -> Orientation:
    """Positive iff the directed simple cycle runs counterclockwise.

    The cycle splits the faces of its component into two regions, found by
    joining faces across every edge not on the cycle.  The darts of the
    walk have the left region on their left; the cycle is counterclockwise
    exactly when the outer face lies in the other region.
    """
    if isinstance(cycle, LoopWalk):
        try:
            winding = web.loops[cycle.loop]
        except KeyError:
            raise NotSimpleCycle(f"unknown loop {cycle.loop}") from None
        ccw = (winding is Winding.CCW) == cycle.along
        return Orientation.POSITIVE if ccw else Orientation.NEGATIVE

    darts = tuple(cycle)
    key = frozenset(darts)
    cache = web._orientation_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    _check_simple(web, darts)
    comp = web.component_of_dart(darts[0])
    on_cycle = {d.edge for d in darts}
    uf = _UnionFind()
    for e in web.edge_ids:
        if e in on_cycle:
            continue
        t = Dart(e, "t")
        if web.component_of_dart(t) != comp:
            continue
        uf.union(web.face_of(t), web.face_of(t.flip()))
    left = {uf.find(web.face_of(d)) for d in darts}
    right = {uf.find(web.face_of(d.flip())) for d in darts}
    if len(left) != 1 or len(right) != 1 or left == right:
        raise CycleSeparationFailure("cycle does not separate its component into two regions")
    outer = uf.find(web.outer_face_of_component[comp])
    if outer in right:
        result = Orientation.POSITIVE
    elif outer in left:
        result = Orientation.NEGATIVE
    else:
        raise CycleSeparationFailure("outer face lies in neither region of the cycle")
    cache[key] = result
    return result


# whole-map operations


def components(web: WebMap) -> list[WebMap]:
    """Connected components (each with its outer mark), then one map per loop."""
    by_comp: dict[int, list[str]] = defaultdict(list)
    for v in web.vertex_ids:
        by_comp[web.component_of_vertex[v]].append(v)
    out = []
    for c in sorted(by_comp):
        vs = set(by_comp[c])
        out.append(
            WebMap(
                roles={v: web.roles[v] for v in by_comp[c]},
                edges={e: web.edges[e] for e in web.edge_ids if web.edges[e][0] in vs},
                rotation={v: web.rotation[v] for v in by_comp[c]},
                loops={},
                outer=tuple(d for d in web.outer if web.base(d) in vs),
                name=f"{web.name}#{len(out)}",
            )
        )
    for lid in web.loop_ids:
        out.append(WebMap(loops={lid: web.loops[lid]}, name=f"{web.name}#{len(out)}"))
    return out


def mirror(web: WebMap) -> WebMap:
    """Reflect the plane: rotations and loop windings reverse.

    The outer face, which lay on the left of the mark, now lies on its right,
    i.e. on the left of the flipped dart.
    """
    return WebMap(
        roles=dict(web.roles),
        edges=dict(web.edges),
        rotation={v: tuple(reversed(rot)) for v, rot in web.rotation.items()},
        loops={lid: w.reversed() for lid, w in web.loops.items()},
        outer=tuple(d.flip() for d in web.outer),
        name=f"mirror({web.name})",
    )


def disjoint_union(*webs: WebMap, name: str | None = None) -> WebMap:
    """Place webs side by side; identifiers get a ``w<i>.`` prefix."""
    roles, edges, rotation, loops, outer = {}, {}, {}, {}, []
    for i, w in enumerate(webs):
        p = f"w{i}."
        roles.update({p + v: r for v, r in w.roles.items()})
        edges.update({p + e: (p + s, p + t) for e, (s, t) in w.edges.items()})
        rotation.update({p + v: tuple(Dart(p + d.edge, d.end) for d in rot) for v, rot in w.rotation.items()})
        loops.update({p + lid: wd for lid, wd in w.loops.items()})
        outer.extend(Dart(p + d.edge, d.end) for d in w.outer)
    return WebMap(roles, edges, rotation, loops, tuple(outer), name or "+".join(w.name for w in webs))


def _component_code(web: WebMap, darts: Iterable[Dart]) -> tuple:
    darts = list(darts)
    best = None
    for start in darts:
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for nb in (d.flip(), web.sigma(d)):
                if nb not in label:
                    label[nb] = len(order)
                    order.append(nb)
        code = tuple(
            (label[d.flip()], label[web.sigma(d)], d.end == "t", web.is_outer_face(web.face_of(d)))
            for d in order
        )
        if best is None or code < best:
            best = code
    return best


def canonical_hash(web: WebMap) -> str:
    """Isomorphism-invariant digest of a web (dart relabelling, loop windings).

    Each component is encoded by the lexicographically least breadth-first
    relabelling over all starting darts; the digest covers the sorted list of
    component codes, loop windings and the outer face of each component.
    """
    by_comp: dict[int, list[Dart]] = defaultdict(list)
    for d in web.darts:
        by_comp[web.component_of_dart(d)].append(d)
    codes = sorted(_component_code(web, ds) for ds in by_comp.values())
    windings = sorted(w.value for w in web.loops.values())
    h = hashlib.sha1(repr((codes, windings)).encode()).hexdigest()
    return h[:16]


def fresh_ids(taken: Iterable[str], prefix: str, count: int) -> list[str]:
    taken = set(taken)
    out = []
    i = 0
    while len(out) < count:
        cand = f"{prefix}{i}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        i += 1
    return out
