import itertools
import random
from collections import Counter

import pytest

from webcolor.coloring import Color, bicolored_walks, enumerate_colorings
from webcolor.errors import EmptyWeb, NotSimpleCycle
from webcolor.generate import generate_web
from webcolor.io import parse
from webcolor.web import (
    Dart,
    LoopWalk,
    Orientation,
    Role,
    WebMap,
    Winding,
    canonical_hash,
    components,
    cycle_orientation,
    disjoint_union,
    find_reducible,
    mirror,
    reverse_cycle,
    validate_web,
)

from conftest import COORD_FIXTURES, WEB_FIXTURES, angle_order, coords_of, fixture_web, signed_area, walk_polygon


def test_single_loop_is_valid():
    w = fixture_web("circle.webx")
    assert validate_web(w).ok
    assert w.faces == ()
    assert find_reducible(w).kind == "circle"


def test_theta_faces_and_feature():
    w = fixture_web("theta.webx")
    assert validate_web(w).ok
    assert len(w.faces) == 3
    assert all(f.size == 2 for f in w.faces)
    assert find_reducible(w).kind == "digon"


def test_cube_faces_and_feature():
    w = fixture_web("cube.webx")
    assert len(w.faces) == 6
    assert all(f.size == 4 for f in w.faces)
    assert find_reducible(w).kind == "square"


def test_empty_web():
    w = WebMap()
    assert validate_web(w).ok
    assert components(w) == []
    with pytest.raises(EmptyWeb):
        find_reducible(w)


def _k33_web(rotation_choice):
    roles = {f"a{i}": Role.SOURCE for i in range(3)} | {f"b{j}": Role.SINK for j in range(3)}
    edges = {f"e{i}{j}": (f"a{i}", f"b{j}") for i in range(3) for j in range(3)}
    rotation = {}
    for k, v in enumerate(sorted(roles)):
        if v.startswith("a"):
            ds = [Dart(f"e{v[1]}{j}", "t") for j in range(3)]
        else:
            ds = [Dart(f"e{i}{v[1]}", "h") for i in range(3)]
        if rotation_choice[k]:
            ds = [ds[0], ds[2], ds[1]]
        rotation[v] = tuple(ds)
    return WebMap(roles, edges, rotation, {}, (Dart("e00", "t"),), "k33")


def test_k33_never_embeds():
    for choice in itertools.product([0, 1], repeat=6):
        report = validate_web(_k33_web(choice))
        assert "EulerViolation" in report.kinds


@pytest.mark.parametrize(
    "text, kind",
    [
        ("web x\nvertex a source\nvertex b sink\nedge e a b\nrot a et\nrot b eh\nouter et\n", "NotCubic"),
        (
            "web x\nvertex a source\nvertex b source\nedge e1 a b\nedge e2 a b\nedge e3 a b\n"
            "rot a e1t e2t e3t\nrot b e3h e2h e1h\nouter e1t\n",
            "MixedVertexOrientation",
        ),
        ("web x\nvertex a source\nedge e a a\nrot a et eh et\nouter et\n", "SelfLoop"),
        (
            "web x\nvertex s source\nvertex k sink\nedge e1 s k\nedge e2 s k\nedge e3 s k\n"
            "rot s e1t e2t e3t\nrot k e1h e2h e3h\nouter e1t\n",
            "EulerViolation",
        ),
        (
            "web x\nvertex s source\nvertex k sink\nedge e1 s k\nedge e2 s k\nedge e3 s k\n"
            "rot s e1t e2t e3t\nrot k e3h e2h e3h\nouter e1t\n",
            "DanglingDart",
        ),
        (
            "web x\nvertex s source\nvertex k sink\nedge e1 s k\nedge e2 s k\nedge e3 s k\n"
            "rot s e3t e2t e1t\nrot k e3h e1h e2h\nouter e1t\nouter e2t\n",
            "OuterMark",
        ),
    ],
)
def test_validation_reports(text, kind):
    report = validate_web(parse(text, validate=False).obj)
    assert kind in report.kinds


@pytest.mark.parametrize("name", WEB_FIXTURES)
def test_face_identities(name):
    w = fixture_web(name)
    assert validate_web(w).ok
    sizes = Counter(f.size for f in w.faces)
    assert all(i % 2 == 0 for i in sizes)
    assert sum(i * n for i, n in sizes.items()) == 2 * len(w.edges)
    assert 3 * len(w.roles) == 2 * len(w.edges)
    seen = [d for f in w.faces for d in f.darts]
    assert sorted(seen) == sorted(w.darts)
    for f in w.faces:
        d = f.darts[0]
        for _ in range(f.size):
            d = w.face_next(d)
        assert d == f.darts[0]
    # six-regularity count, one per non-circle component
    per_comp = Counter()
    for f in w.faces:
        per_comp[f.component] += 6 - f.size
    assert all(v == 12 for v in per_comp.values())


@pytest.mark.parametrize("seed", range(25))
def test_generated_webs_are_valid_and_reducible(seed):
    w = generate_web(seed, 5)
    assert validate_web(w).ok
    assert find_reducible(w).kind in ("circle", "digon", "square")


@pytest.mark.parametrize("name", COORD_FIXTURES)
def test_rotations_match_drawing(name):
    w, xy = fixture_web(name), coords_of(name)
    for v in w.vertex_ids:
        got = list(w.rotation[v])
        want = angle_order(w, xy, v)
        k = got.index(want[0])
        assert got[k:] + got[:k] == want


@pytest.mark.parametrize("name", COORD_FIXTURES)
def test_faces_lie_on_the_left(name):
    w, xy = fixture_web(name), coords_of(name)
    for f in w.faces:
        area = signed_area(walk_polygon(w, xy, f.darts))
        assert (area < 0) == w.is_outer_face(f.id)


@pytest.mark.parametrize("name", COORD_FIXTURES)
def test_cycle_orientation_matches_signed_area(name):
    w, xy = fixture_web(name), coords_of(name)
    checked = 0
    for c in enumerate_colorings(w):
        for u in Color:
            for walk in bicolored_walks(w, c, u):
                area = signed_area(walk_polygon(w, xy, walk))
                want = Orientation.POSITIVE if area > 0 else Orientation.NEGATIVE
                assert cycle_orientation(w, walk) is want
                assert cycle_orientation(w, reverse_cycle(walk)) is Orientation(-want)
                checked += 1
    assert checked > 0


def test_theta_digon_cycle_orientation():
    w = fixture_web("theta.webx")
    # e1 bends over the top and e2 runs straight, so e1 forward then e2 back turns clockwise
    walk = (Dart("e1", "t"), Dart("e2", "h"))
    area = signed_area(walk_polygon(w, coords_of("theta.webx"), walk))
    assert area < 0
    assert cycle_orientation(w, walk) is Orientation.NEGATIVE
    assert cycle_orientation(w, reverse_cycle(walk)) is Orientation.POSITIVE


def test_loop_orientation():
    w = fixture_web("circle.webx")
    assert cycle_orientation(w, LoopWalk("c", True)) is Orientation.POSITIVE
    assert cycle_orientation(w, LoopWalk("c", False)) is Orientation.NEGATIVE


def test_not_simple_cycle():
    w = fixture_web("theta.webx")
    with pytest.raises(NotSimpleCycle):
        cycle_orientation(w, (Dart("e1", "t"),))
    with pytest.raises(NotSimpleCycle):
        cycle_orientation(w, (Dart("e1", "t"), Dart("e1", "h")))


def test_components_and_union():
    theta, circle = fixture_web("theta.webx"), fixture_web("circle.webx")
    both = disjoint_union(circle, theta)
    assert validate_web(both).ok
    assert len(components(both)) == 2
    assert len(components(fixture_web("cube.webx"))) == 1


def test_mirror_is_valid_and_involutive():
    for name in WEB_FIXTURES:
        w = fixture_web(name)
        m = mirror(w)
        assert validate_web(m).ok
        assert mirror(m).rotation == w.rotation
        assert [m.loops[k] for k in m.loop_ids] == [w.loops[k].reversed() for k in w.loop_ids]


def _relabel(w: WebMap, rng: random.Random) -> WebMap:
    vs = list(w.roles)
    es = list(w.edges)
    vmap = dict(zip(vs, rng.sample([f"x{i}" for i in range(len(vs))], len(vs))))
    emap = dict(zip(es, rng.sample([f"f{i}" for i in range(len(es))], len(es))))
    rot = {}
    for v, r in w.rotation.items():
        k = rng.randrange(3)
        r = r[k:] + r[:k]
        rot[vmap[v]] = tuple(Dart(emap[d.edge], d.end) for d in r)
    return WebMap(
        {vmap[v]: r for v, r in w.roles.items()},
        {emap[e]: (vmap[a], vmap[b]) for e, (a, b) in w.edges.items()},
        rot,
        dict(w.loops),
        tuple(Dart(emap[d.edge], d.end) for d in w.outer),
        w.name,
    )


@pytest.mark.parametrize("name", WEB_FIXTURES)
def test_canonical_hash_ignores_labels(name):
    w = fixture_web(name)
    rng = random.Random(7)
    assert canonical_hash(_relabel(w, rng)) == canonical_hash(w)


def test_canonical_hash_separates_windings():
    a = WebMap(loops={"c": Winding.CCW})
    b = WebMap(loops={"c": Winding.CW})
    assert canonical_hash(a) != canonical_hash(b)
