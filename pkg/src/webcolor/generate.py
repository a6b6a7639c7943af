"""Random closed webs built by running the local relations backwards.

Starting from a few circles, each step either adds a circle, replaces a
strand (or a whole loop) by a digon, or joins two strands that face each
other across a face by a square.  Every intermediate map is a valid web,
so the generator doubles as a fuzzer for the surgeries.
"""

from __future__ import annotations

import random

from .web import Dart, Role, WebMap, Winding, fresh_ids, validate_web
from .errors import WebError

__all__ = ["generate_web", "insert_digon", "insert_square", "add_circle", "loop_to_theta"]

_STEP_WEIGHTS = (("circle", 1), ("digon", 3), ("square", 4))


def _taken(web: WebMap) -> set[str]:
    return set(web.roles) | set(web.edges) | set(web.loops)


def _fix_outer(web: WebMap, wanted) -> WebMap:
    """One outer mark per component; any face may serve as the outer one."""
    darts = set(web.darts)
    keep = {}
    for d in wanted:
        if d in darts:
            keep.setdefault(web.component_of_dart(d), d)
    for d in web.darts:
        keep.setdefault(web.component_of_dart(d), d)
    outer = tuple(keep[c] for c in sorted(keep))
    return WebMap(web.roles, web.edges, web.rotation, web.loops, outer, web.name)


def _rebuild(web, roles, edges, rotation, loops, replaced: dict[Dart, Dart]) -> WebMap:
    wanted = [replaced.get(d, d) for d in web.outer]
    draft = WebMap(roles, edges, rotation, loops, (), web.name)
    return _fix_outer(draft, wanted)


def add_circle(web: WebMap, winding: Winding) -> WebMap:
    (lid,) = fresh_ids(_taken(web), "l", 1)
    loops = dict(web.loops)
    loops[lid] = winding
    return WebMap(web.roles, web.edges, web.rotation, loops, web.outer, web.name)


def insert_digon(web: WebMap, edge: str) -> WebMap:
    """Replace the strand ``edge`` (p -> q) by p -> a <= b -> q."""
    p, q = web.edges[edge]
    taken = _taken(web)
    a, b = fresh_ids(taken, "v", 2)
    x, y, f = fresh_ids(taken, "e", 3)
    roles = dict(web.roles)
    roles[a], roles[b] = Role.SINK, Role.SOURCE
    edges = dict(web.edges)
    edges[edge] = (p, a)
    edges[x] = (b, a)
    edges[y] = (b, a)
    edges[f] = (b, q)
    swap = {Dart(edge, "h"): Dart(f, "h")}
    rotation = {v: tuple(swap.get(d, d) for d in rot) for v, rot in web.rotation.items()}
    # strand drawn left to right, x above and y below the digon
    rotation[a] = (Dart(edge, "h"), Dart(y, "h"), Dart(x, "h"))
    rotation[b] = (Dart(f, "t"), Dart(x, "t"), Dart(y, "t"))
    return _rebuild(web, roles, edges, rotation, dict(web.loops), swap)


def loop_to_theta(web: WebMap, loop: str) -> WebMap:
    """Replace a vertexless loop by a theta (a loop with a digon inserted)."""
    taken = _taken(web)
    a, b = fresh_ids(taken, "v", 2)
    x, y, z = fresh_ids(taken, "e", 3)
    roles = dict(web.roles)
    roles[a], roles[b] = Role.SINK, Role.SOURCE
    edges = dict(web.edges)
    for e in (x, y, z):
        edges[e] = (b, a)
    rotation = dict(web.rotation)
    rotation[a] = (Dart(z, "h"), Dart(x, "h"), Dart(y, "h"))
    rotation[b] = (Dart(z, "t"), Dart(y, "t"), Dart(x, "t"))
    loops = {k: v for k, v in web.loops.items() if k != loop}
    return _rebuild(web, roles, edges, rotation, loops, {})


def insert_square(web: WebMap, d1: Dart, d2: Dart) -> WebMap:
    """Join the strands of ``d1`` and ``d2`` by a square.

    Both darts must have the same end letter and have a common face on
    their left (or lie in different components, one nested in a face of
    the other).  In the picture the first strand runs left to right along
    the bottom of the square and the second right to left along its top.
    """
    if d1.end != d2.end or d1.edge == d2.edge:
        raise WebError("square insertion needs two antiparallel strands on distinct edges")
    forward = d1.end == "t"
    taken = _taken(web)
    L1, R1, R2, L2 = fresh_ids(taken, "v", 4)
    bot, right, top, left, g1, g2 = fresh_ids(taken, "e", 6)
    sinks = {L1, R2} if forward else {R1, L2}
    roles = dict(web.roles)
    for v in (L1, R1, R2, L2):
        roles[v] = Role.SINK if v in sinks else Role.SOURCE

    def oriented(u, v):
        return (v, u) if u in sinks else (u, v)

    edges = dict(web.edges)
    edges[bot] = oriented(L1, R1)
    edges[right] = oriented(R1, R2)
    edges[top] = oriented(R2, L2)
    edges[left] = oriented(L2, L1)
    swap = {}
    for d, g, entry, exit_ in ((d1, g1, L1, R1), (d2, g2, R2, L2)):
        a, b = web.base(d), web.tip(d)
        if forward:  # edge runs a -> b
            edges[d.edge] = (a, entry)
            edges[g] = (exit_, b)
        else:  # edge runs b -> a
            edges[d.edge] = (b, exit_)
            edges[g] = (entry, a)
        swap[Dart(d.edge, "h")] = Dart(g, "h")
    rotation = {v: tuple(swap.get(x, x) for x in rot) for v, rot in web.rotation.items()}

    # neighbours of each corner listed counterclockwise
    around = {
        L1: (bot, left, d1.edge if forward else g1),
        R1: (g1 if forward else d1.edge, right, bot),
        R2: (d2.edge if forward else g2, top, right),
        L2: (top, g2 if forward else d2.edge, left),
    }
    for v, es in around.items():
        rotation[v] = tuple(Dart(e, "t" if edges[e][0] == v else "h") for e in es)
    return _rebuild(web, roles, edges, rotation, dict(web.loops), swap)


def _square_candidates(web: WebMap) -> list[tuple[Dart, Dart]]:
    out = []
    for f in web.faces:
        ds = f.darts
        for i, a in enumerate(ds):
            for b in ds[i + 1 :]:
                if a.end == b.end and a.edge != b.edge:
                    out.append((a, b))
    outer_faces = [web.faces[web.face_of(d)] for d in web.outer]
    for f in web.faces:
        for g in outer_faces:
            if g.component == f.component:
                continue
            for a in f.darts:
                for b in g.darts:
                    if a.end == b.end:
                        out.append((a, b))
    return out


def generate_web(seed: int, steps: int) -> WebMap:
    """Deterministic random web from ``seed`` after ``steps`` inverse moves."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    web = WebMap(name=f"gen-{seed}-{steps}")
    for _ in range(rng.randint(1, 2)):
        web = add_circle(web, rng.choice([Winding.CCW, Winding.CW]))
    for _ in range(steps):
        kinds = [k for k, _ in _STEP_WEIGHTS]
        weights = [w for _, w in _STEP_WEIGHTS]
        kind = rng.choices(kinds, weights)[0]
        if kind == "square":
            cands = _square_candidates(web)
            if not cands:
                kind = "digon"
            else:
                web = insert_square(web, *rng.choice(cands))
        if kind == "digon":
            targets = [("e", e) for e in web.edge_ids] + [("l", lid) for lid in web.loop_ids]
            if not targets:
                kind = "circle"
            else:
                what, ident = rng.choice(targets)
                web = insert_digon(web, ident) if what == "e" else loop_to_theta(web, ident)
        if kind == "circle":
            web = add_circle(web, rng.choice([Winding.CCW, Winding.CW]))
        report = validate_web(web)
        if not report.ok:
            raise WebError(f"generator produced an invalid web: {report}")
    return web
