"""Bracket evaluation by local rewriting, and the coloring lifts behind it.

Every surgery removes a small disc (a loop, a digon, or a square together
with its corners) and reconnects the dangling attachment edges along the
strands of the replacement picture.  Chains of attachment edges that close
up without reaching the outside become vertexless loops; their winding is
read off the original map by closing each strand along the side of the
removed face it runs next to.

The :class:`SurgeryWitness` records which old edges make up every new edge
or loop.  The lift maps use it to transport colorings back.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coloring import Color, Coloring, is_proper, others
from .errors import (
    CycleSeparationFailure,
    IncompatibleSurgeryWitness,
    NotADigon,
    NotALoop,
    NotASquare,
    DegenerateSquare,
    WebError,
)
from .laurent import LaurentPoly, quantum_int
from .web import (
    Dart,
    Face,
    Orientation,
    WebMap,
    Winding,
    _UnionFind,
    _dart_key,
    canonical_hash,
    cycle_orientation,
    find_reducible,
    natural_key,
    validate_web,
)

__all__ = [
    "SurgeryWitness",
    "Surgery",
    "ReductionTrace",
    "remove_circle",
    "reduce_digon",
    "smooth_square",
    "circle_surgery",
    "digon_surgery",
    "square_surgeries",
    "bracket_reduce",
    "digon_lift",
    "square_lift",
    "restrict",
    "SAME_COLOR_PARALLEL",
    "DIFFERENT_COLOR_TABLE",
]


@dataclass(frozen=True)
class SurgeryWitness:
    kind: str  # "circle" | "digon" | "square"
    loop: str | None = None
    face: Face | None = None
    corners: tuple[str, ...] = ()
    sides: tuple[str, ...] = ()  # side i joins corners i and i+1
    attachments: tuple[str, ...] = ()  # attachment edge at each corner
    pairing: tuple[tuple[str, str], ...] = ()
    chains: dict[str, tuple[str, ...]] = field(default_factory=dict)  # new id -> old edges
    new_loops: tuple[str, ...] = ()
    loop_walks: dict[str, tuple[Dart, ...]] = field(default_factory=dict)  # closed walk in the old map
    smoothing: int | None = None  # square only: 0 pairs corners (0,1),(2,3); 1 pairs (1,2),(3,0)

    def chain_of(self, old_edge: str) -> str:
        for new, olds in self.chains.items():
            if old_edge in olds:
                return new
        raise IncompatibleSurgeryWitness(f"edge {old_edge} is not part of any chain")


@dataclass(frozen=True)
class Surgery:
    before: WebMap
    after: WebMap
    witness: SurgeryWitness


def _third_dart(web: WebMap, x: str, sides: set[str]) -> Dart:
    rest = [d for d in web.rotation[x] if d.edge not in sides]
    if len(rest) != 1:
        raise WebError(f"corner {x} does not have exactly one attachment")
    return rest[0]


def _splice(
    web: WebMap,
    *,
    kind: str,
    face: Face,
    corners: Sequence[str],
    sides: Sequence[str],
    pairing: Sequence[tuple[str, str]],
    jump: Mapping[tuple[str, str], Dart],
    merges: Sequence[int],
    smoothing: int | None = None,
) -> Surgery:
    R = set(corners)
    side_set = set(sides)
    partner: dict[str, str] = {}
    for a, b in pairing:
        partner[a], partner[b] = b, a
    port = {x: _third_dart(web, x, side_set) for x in corners}

    used: set[Dart] = set()
    chains: list[list[Dart]] = []
    for x in corners:
        far = port[x].flip()
        if web.base(far) in R or far in used:
            continue
        seq = [far]
        d = far
        while web.tip(d) in R:
            d = port[partner[web.tip(d)]]
            seq.append(d)
        used.update(seq)
        used.update(s.flip() for s in seq)
        if len({s.end for s in seq}) != 1:
            raise IncompatibleSurgeryWitness("reconnected strand is not coherently oriented")
        if seq[0].end == "h":
            seq = [s.flip() for s in reversed(seq)]
        chains.append(seq)

    loop_seqs: list[list[Dart]] = []
    for x in corners:
        p = port[x]
        if p in used:
            continue
        seq = []
        d = p
        while True:
            seq.append(d)
            nd = port[partner[web.tip(d)]]
            if nd == p:
                break
            d = nd
        used.update(seq)
        used.update(s.flip() for s in seq)
        if len({s.end for s in seq}) != 1:
            raise IncompatibleSurgeryWitness("reconnected loop is not coherently oriented")
        if seq[0].end == "h":
            seq = [s.flip() for s in reversed(seq)]
        loop_seqs.append(seq)

    removed_edges = set(sides)
    for seq in chains + loop_seqs:
        removed_edges.update(s.edge for s in seq)

    edges = {e: ends for e, ends in web.edges.items() if e not in removed_edges}
    replace: dict[Dart, Dart] = {}
    origin: dict[Dart, Dart] = {}
    witness_chains: dict[str, tuple[str, ...]] = {}
    for seq in chains:
        new = seq[0].edge
        edges[new] = (web.base(seq[0]), web.tip(seq[-1]))
        replace[seq[-1].flip()] = Dart(new, "h")
        origin[Dart(new, "t")] = seq[0]
        origin[Dart(new, "h")] = seq[-1].flip()
        witness_chains[new] = tuple(s.edge for s in seq)

    loops = dict(web.loops)
    new_loops = []
    loop_walks = {}
    loop_sides: list[tuple[str, set[int], set[int]]] = []
    for seq in loop_seqs:
        lid = min((s.edge for s in seq), key=natural_key)
        walk: list[Dart] = []
        for s in seq:
            walk.append(s)
            z = web.tip(s)
            walk.append(jump[(z, partner[z])])
        wd = cycle_orientation(web, walk)
        loops[lid] = Winding.CCW if wd is Orientation.POSITIVE else Winding.CW
        new_loops.append(lid)
        loop_walks[lid] = tuple(walk)
        witness_chains[lid] = tuple(s.edge for s in seq)
        loop_sides.append(
            (lid, {web.face_of(s) for s in seq}, {web.face_of(s.flip()) for s in seq})
        )

    rotation = {
        v: tuple(replace.get(d, d) for d in rot) for v, rot in web.rotation.items() if v not in R
    }
    roles = {v: r for v, r in web.roles.items() if v not in R}
    comp = web.component_of_vertex[corners[0]]
    kept_outer = tuple(d for d in web.outer if web.component_of_dart(d) != comp)
    draft = WebMap(roles, edges, rotation, loops, kept_outer, web.name)

    outer = kept_outer + _new_outer_marks(
        web, draft, comp, origin, merges, loop_sides
    )
    after = WebMap(roles, edges, rotation, loops, outer, web.name)
    report = validate_web(after)
    if not report.ok:
        raise WebError(f"surgery produced an invalid web: {report}")
    witness = SurgeryWitness(
        kind=kind,
        face=face,
        corners=tuple(corners),
        sides=tuple(sides),
        attachments=tuple(port[x].edge for x in corners),
        pairing=tuple(pairing),
        chains=witness_chains,
        new_loops=tuple(new_loops),
        loop_walks=loop_walks,
        smoothing=smoothing,
    )
    return Surgery(web, after, witness)


def _new_outer_marks(old, draft, comp, origin, merges, loop_sides) -> tuple[Dart, ...]:
    """Outer marks for the pieces that replace component ``comp``.

    Every new face is labelled by the old faces its darts bordered; faces of
    the old map glued through the removed disc are unified explicitly.  The
    resulting regions and the new pieces form a tree rooted at the region
    holding the old outer face; each piece's outer face is the one facing
    its parent region.
    """
    old_vertices = {v for v, c in old.component_of_vertex.items() if c == comp}
    piece_faces: dict[int, list[Face]] = {}
    for f in draft.faces:
        if draft.base(f.darts[0]) in old_vertices:
            piece_faces.setdefault(f.component, []).append(f)

    uf = _UnionFind()
    for a, b in zip(merges, merges[1:]):
        uf.union(("F", a), ("F", b))
    nodes: dict[object, list] = {}
    for pc, fs in piece_faces.items():
        nodes[("P", pc)] = []
        for f in fs:
            node = ("N", f.id)
            nodes[("P", pc)].append((node, f))
            for d in f.darts:
                uf.union(node, ("F", old.face_of(origin.get(d, d))))
    for lid, left, right in loop_sides:
        nodes[("L", lid)] = []
        for side, labels in (("left", left), ("right", right)):
            node = ("S", lid, side)
            nodes[("L", lid)].append((node, None))
            for fid in labels:
                uf.union(node, ("F", fid))

    by_region: dict[object, list] = {}
    for piece, members in nodes.items():
        roots = [uf.find(n) for n, _ in members]
        if len(set(roots)) != len(roots):
            raise CycleSeparationFailure(f"two faces of piece {piece} fall in one region")
        for (n, f), r in zip(members, roots):
            by_region.setdefault(r, []).append((piece, f))

    start = uf.find(("F", old.outer_face_of_component[comp]))
    marks: dict[int, Dart] = {}
    seen = set()
    queue = deque([start])
    while queue:
        region = queue.popleft()
        for piece, f in by_region.get(region, []):
            if piece in seen:
                continue
            seen.add(piece)
            if piece[0] == "P":
                marks[piece[1]] = min(f.darts, key=_dart_key)
            for n, _ in nodes[piece]:
                r = uf.find(n)
                if r != region:
                    queue.append(r)
    if seen != set(nodes):
        raise CycleSeparationFailure("could not place every piece relative to the outer face")
    return tuple(marks[pc] for pc in sorted(marks))


# the three surgeries


def circle_surgery(web: WebMap, loop: str) -> Surgery:
    if loop not in web.loops:
        raise NotALoop(f"{loop} is not a vertexless loop of {web.name}")
    loops = {k: v for k, v in web.loops.items() if k != loop}
    after = WebMap(dict(web.roles), dict(web.edges), dict(web.rotation), loops, web.outer, web.name)
    return Surgery(web, after, SurgeryWitness("circle", loop=loop))


def remove_circle(web: WebMap, loop: str) -> WebMap:
    return circle_surgery(web, loop).after


def _face(web: WebMap, face: Face | int) -> Face:
    fid = face.id if isinstance(face, Face) else int(face)
    return web.faces[fid]


def digon_surgery(web: WebMap, face: Face | int) -> Surgery:
    f = _face(web, face)
    if f.size != 2:
        raise NotADigon(f"face {f.id} has {f.size} sides")
    d0, d1 = f.darts
    c0, c1 = web.base(d0), web.base(d1)
    if c0 == c1:
        raise NotADigon(f"face {f.id} has a repeated corner")
    if web.is_outer_face(f.id):
        raise NotADigon(f"face {f.id} is an outer face")
    return _splice(
        web,
        kind="digon",
        face=f,
        corners=(c0, c1),
        sides=(d0.edge, d1.edge),
        pairing=((c0, c1),),
        jump={(c0, c1): d0, (c1, c0): d0.flip()},
        merges=(),
    )


def reduce_digon(web: WebMap, face: Face | int) -> WebMap:
    return digon_surgery(web, face).after


def square_surgeries(web: WebMap, face: Face | int) -> tuple[Surgery, Surgery]:
    """Both smoothings of a square face.

    With the face darts ``d0..d3`` based at corners ``c0..c3``, smoothing 0
    joins the attachments of ``c0, c1`` and of ``c2, c3`` (strands alongside
    sides 0 and 2); smoothing 1 joins ``c1, c2`` and ``c3, c0``.
    """
    f = _face(web, face)
    if f.size != 4:
        raise NotASquare(f"face {f.id} has {f.size} sides")
    corners = tuple(web.base(d) for d in f.darts)
    if len(set(corners)) != 4:
        raise DegenerateSquare(f"face {f.id} repeats a corner vertex")
    if web.is_outer_face(f.id):
        raise NotASquare(f"face {f.id} is an outer face")
    sides = tuple(d.edge for d in f.darts)
    jump = {}
    for i, d in enumerate(f.darts):
        jump[(corners[i], corners[(i + 1) % 4])] = d
        jump[(corners[(i + 1) % 4], corners[i])] = d.flip()
    out = []
    for k in (0, 1):
        pairs = ((corners[k], corners[k + 1]), (corners[k + 2], corners[(k + 3) % 4]))
        across = [web.face_of(f.darts[(k + 1) % 4].flip()), web.face_of(f.darts[(k + 3) % 4].flip())]
        out.append(
            _splice(
                web,
                kind="square",
                face=f,
                corners=corners,
                sides=sides,
                pairing=pairs,
                jump=jump,
                merges=[f.id] + across,
                smoothing=k,
            )
        )
    return out[0], out[1]


def smooth_square(web: WebMap, face: Face | int) -> tuple[WebMap, WebMap]:
    first, second = square_surgeries(web, face)
    return first.after, second.after


# evaluation


@dataclass
class TraceStep:
    depth: int
    kind: str
    face: int | None
    result: str

    def line(self) -> str:
        pad = "  " * self.depth
        if self.kind == "circle":
            return f"{pad}CIRCLE ×[3]"
        if self.kind == "digon":
            return f"{pad}DIGON f={self.face} ×[2]"
        if self.kind == "square":
            return f"{pad}SQUARE f={self.face} (+)"
        return f"{pad}EMPTY"


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)
    expression: str = ""

    def render(self) -> str:
        lines = [s.line() for s in self.steps]
        if self.expression:
            lines.append(f"= {self.expression}")
        return "\n".join(lines)


def bracket_reduce(
    web: WebMap,
    *,
    trace: ReductionTrace | None = None,
    rng: random.Random | None = None,
    memo: dict | None = None,
) -> LaurentPoly:
    """Evaluate the bracket through the circle, digon and square relations.

    ``rng`` randomises which feature is reduced at each step; ``memo``, if a
    dict is given, caches results by canonical hash.
    """
    value, expr = _reduce(web, trace, rng, memo, 0)
    if trace is not None:
        trace.expression = expr
    return value


_Q3 = quantum_int(3)
_Q2 = quantum_int(2)


def _reduce(web, trace, rng, memo, depth):
    if web.is_empty():
        return LaurentPoly.constant(1), "1"
    key = None
    if memo is not None:
        key = canonical_hash(web)
        if key in memo:
            return memo[key]
    feat = find_reducible(web, rng)
    if feat.kind == "circle":
        after = remove_circle(web, feat.loop)
        _log(trace, depth, "circle", None, after)
        sub, e = _reduce(after, trace, rng, memo, depth + 1)
        out = (_Q3 * sub, f"[3]·{e}" if e != "1" else "[3]")
    elif feat.kind == "digon":
        after = reduce_digon(web, feat.face)
        _log(trace, depth, "digon", feat.face.id, after)
        sub, e = _reduce(after, trace, rng, memo, depth + 1)
        out = (_Q2 * sub, f"[2]·{e}" if e != "1" else "[2]")
    else:
        first, second = smooth_square(web, feat.face)
        _log(trace, depth, "square", feat.face.id, first)
        a, ea = _reduce(first, trace, rng, memo, depth + 1)
        b, eb = _reduce(second, trace, rng, memo, depth + 1)
        out = (a + b, f"({ea} + {eb})")
    if memo is not None:
        memo[key] = out
    return out


def _log(trace, depth, kind, face, after):
    if trace is not None:
        trace.steps.append(TraceStep(depth, kind, face, canonical_hash(after)))


# lifts


def _check_coloring(web: WebMap, c: Mapping[str, Color], what: str) -> None:
    if not is_proper(web, c):
        raise IncompatibleSurgeryWitness(f"{what} is not a proper coloring of the reduced web")


def _carry(surgery: Surgery, c: Mapping[str, Color]) -> dict[str, Color]:
    """Colors of every edge of ``before`` that survives or belongs to a chain."""
    w = surgery.witness
    out: dict[str, Color] = {}
    for e in surgery.before.edges:
        if e in w.sides:
            continue
        out[e] = c[e] if e in c and e not in w.chains else None
    for new, olds in w.chains.items():
        for e in olds:
            out[e] = c[new]
    for lid in surgery.before.loops:
        out[lid] = c[lid]
    return out


def digon_lift(surgery: Surgery, c: Mapping[str, Color], sign: int | str) -> Coloring:
    """Lift a coloring of the strand picture to the digon picture.

    The strand color ``s`` stays on both attachments; the digon takes the
    other two colors, arranged so that its cycle in the configuration
    without ``s`` has orientation ``sign``.  Sign +1 raises the total degree
    by one, sign -1 lowers it by one.
    """
    w = surgery.witness
    if w.kind != "digon":
        raise IncompatibleSurgeryWitness(f"expected a digon surgery, got {w.kind}")
    _check_coloring(surgery.after, c, "coloring")
    want = _sign(sign)
    colors = _carry(surgery, c)
    strand = colors[w.attachments[0]]
    small, big = others(strand)
    ea, eb = w.sides
    walk = (Dart(ea, "t"), Dart(eb, "h"))
    sgn = int(cycle_orientation(surgery.before, walk))
    if sgn == want:
        colors[ea], colors[eb] = small, big
    else:
        colors[ea], colors[eb] = big, small
    return Coloring(colors)


def _sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


R, G, B = Color.RED, Color.GREEN, Color.BLUE

# Both strands colored s: the two square sides running alongside the strands
# get SAME_COLOR_PARALLEL[s], the two crossing sides the remaining color.
SAME_COLOR_PARALLEL = {R: G, G: R, B: G}

# Strands colored (top, bottom) with top != bottom: colors of
# (side along the top strand, side along the bottom strand, crossing sides).
_DIFFERENT_BASE = {
    (R, G): (G, R, B),
    (G, B): (B, G, R),
    (R, B): (B, R, G),
}


def _rotate_half_turn(table):
    """Complete a table by the half-turn that swaps the two strands."""
    out = dict(table)
    for (top, bottom), (along_top, along_bottom, cross) in table.items():
        out[(bottom, top)] = (along_bottom, along_top, cross)
    return out


DIFFERENT_COLOR_TABLE = _rotate_half_turn(_DIFFERENT_BASE)


def square_lift(surgery: Surgery, c: Mapping[str, Color]) -> Coloring:
    """Lift a coloring of one smoothing back to the square picture.

    Smoothing 0 plays the role of the horizontal picture and smoothing 1 the
    vertical one; the same rule applies to both relative to the sides that
    run alongside the strands.
    """
    w = surgery.witness
    if w.kind != "square" or w.smoothing is None:
        raise IncompatibleSurgeryWitness(f"expected a square surgery, got {w.kind}")
    _check_coloring(surgery.after, c, "coloring")
    colors = _carry(surgery, c)
    k = w.smoothing
    top = colors[w.attachments[k]]
    bottom = colors[w.attachments[k + 2]]
    along = (w.sides[k], w.sides[k + 2])
    cross = (w.sides[(k + 1) % 4], w.sides[(k + 3) % 4])
    if top == bottom:
        p = SAME_COLOR_PARALLEL[top]
        rest = next(x for x in Color if x not in (top, p))
        colors[along[0]] = colors[along[1]] = p
        colors[cross[0]] = colors[cross[1]] = rest
    else:
        a_top, a_bottom, x = DIFFERENT_COLOR_TABLE[(top, bottom)]
        colors[along[0]], colors[along[1]] = a_top, a_bottom
        colors[cross[0]] = colors[cross[1]] = x
    out = Coloring(colors)
    if not is_proper(surgery.before, out):
        raise IncompatibleSurgeryWitness("lifted coloring is not proper")
    return out


def restrict(surgery: Surgery, c: Mapping[str, Color]) -> Coloring | None:
    """Forget the removed part; ``None`` if the chains are not monochrome."""
    w = surgery.witness
    out: dict[str, Color] = {}
    for e in surgery.after.edges:
        if e in w.chains:
            cols = {c[o] for o in w.chains[e]}
            if len(cols) != 1:
                return None
            out[e] = cols.pop()
        else:
            out[e] = c[e]
    for lid in surgery.after.loops:
        if lid in w.chains:
            cols = {c[o] for o in w.chains[lid]}
            if len(cols) != 1:
                return None
            out[lid] = cols.pop()
        else:
            out[lid] = c[lid]
    return Coloring(out)
