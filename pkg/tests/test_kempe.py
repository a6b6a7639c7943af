import pytest

from webcolor.coloring import Color, Coloring, enumerate_colorings, is_proper, total_degree
from webcolor.errors import CycleNotBicoloredInColoring, GreenSwapUnsupported
from webcolor.generate import generate_web
from webcolor.io import load, load_coloring
from webcolor.kempe import (
    BicoloredCycle,
    bicolored_cycles,
    check_square_edges,
    connected_components,
    cycle_sign,
    delta_dt,
    kempe_dot,
    kempe_graph,
    tau,
)
from webcolor.web import WebMap, Winding

from conftest import WEB_FIXTURES, fixture_web

R, G, B = Color.RED, Color.GREEN, Color.BLUE


def rotate_fifth(edge: str) -> str:
    """Edge relabelling of the dodecahedron fixture for v_i -> v_(i+1) inside each ring of five."""
    k = int(edge[1:])
    return f"e{5 * (k // 5) + (k % 5 + 1) % 5}"


def is_color_permutation(a, b) -> bool:
    pairs = {(a[k], b[k]) for k in a}
    return len(pairs) == 3 and len({x for x, _ in pairs}) == 3 and len({y for _, y in pairs}) == 3


def test_theta_cycles_and_swap():
    w = fixture_web("theta.webx")
    c = Coloring({"e1": R, "e2": G, "e3": B})
    (C,) = bicolored_cycles(w, c, B)
    assert C.edges == {"e1", "e2"}
    assert tau(w, c, C) == {"e1": G, "e2": R, "e3": B}


def test_circle_cycles():
    w = WebMap(loops={"c": Winding.CCW})
    c = Coloring({"c": R})
    assert bicolored_cycles(w, c, R) == []
    (C,) = bicolored_cycles(w, c, G)
    assert tau(w, c, C) == {"c": B}


def test_tau_rejects_foreign_cycle():
    w = fixture_web("theta.webx")
    c = Coloring({"e1": R, "e2": G, "e3": B})
    with pytest.raises(CycleNotBicoloredInColoring):
        tau(w, c, BicoloredCycle(R, frozenset({"e1", "e2"})))
    with pytest.raises(CycleNotBicoloredInColoring):
        tau(w, c, BicoloredCycle(B, frozenset({"e1"})))


def test_delta_examples():
    w = WebMap(loops={"c": Winding.CCW})
    red, green = Coloring({"c": R}), Coloring({"c": G})
    (C,) = bicolored_cycles(w, red, B)
    assert delta_dt(w, red, C) == -2
    (C,) = bicolored_cycles(w, green, R)
    assert delta_dt(w, green, C) == -2
    (C,) = bicolored_cycles(w, red, G)
    with pytest.raises(GreenSwapUnsupported):
        delta_dt(w, red, C)


@pytest.mark.parametrize("name", WEB_FIXTURES)
def test_tau_is_a_proper_involution(name):
    w = fixture_web(name)
    for c in enumerate_colorings(w):
        for u in Color:
            for C in bicolored_cycles(w, c, u):
                d = tau(w, c, C)
                assert is_proper(w, d)
                assert tau(w, d, C) == c
                assert all(d[k] == c[k] for k in c if k not in C.edges)


@pytest.mark.parametrize("name", WEB_FIXTURES)
def test_grading_law(name):
    w = fixture_web(name)
    for c in enumerate_colorings(w):
        for u in (R, B):
            for C in bicolored_cycles(w, c, u):
                assert delta_dt(w, c, C) == -2 * cycle_sign(w, C)


def test_small_kempe_graphs():
    circle = WebMap(loops={"c": Winding.CCW})
    g = kempe_graph(circle)
    assert len(g.nodes) == 3 and len(g.edges) == 3
    g = kempe_graph(fixture_web("theta.webx"))
    assert len(g.nodes) == 6 and len(connected_components(g)) == 1
    assert connected_components(kempe_graph(WebMap())) == [frozenset({0})]


@pytest.mark.parametrize("name", WEB_FIXTURES)
def test_webs_are_kempe_connected(name):
    w = fixture_web(name)
    weak, strong = kempe_graph(w, "weak"), kempe_graph(w, "strong")
    assert strong.edges <= weak.edges
    assert len(connected_components(weak)) == 1
    assert set(connected_components(weak)) == set(connected_components(strong))


@pytest.mark.parametrize("seed", range(8))
def test_generated_webs_are_kempe_connected(seed):
    w = generate_web(seed, 4)
    assert len(connected_components(kempe_graph(w, "strong"))) == 1


def test_dodecahedron():
    g = load("dodecahedron.graphx")
    c = load_coloring("dodecahedron_c.coloring")
    c_rot = load_coloring("dodecahedron_c_rot.coloring")
    assert c_rot == Coloring({rotate_fifth(e): col for e, col in c.items()})
    assert is_proper(g, c) and is_proper(g, c_rot)
    for u in Color:
        (C,) = bicolored_cycles(g, c, u)
        assert len(C.edges) == 20
        assert is_color_permutation(c, tau(g, c, C))
    for mode in ("weak", "strong"):
        kg = kempe_graph(g, mode)
        comps = connected_components(kg)
        assert len(comps) >= 2
        i, j = kg.nodes.index(c), kg.nodes.index(c_rot)
        assert not any(i in cc and j in cc for cc in comps)


def test_k33():
    g = load("k33.graphx")
    kg = kempe_graph(g)
    assert len(kg.nodes) == 12
    assert len(connected_components(kg)) >= 2


@pytest.mark.parametrize("name", ["cube.webx", "hexprism.webx", "bisquare.webx"])
def test_square_edges_claim(name):
    w = fixture_web(name)
    claims = 0
    for c in enumerate_colorings(w):
        for f in w.faces:
            if f.size == 4 and not w.is_outer_face(f.id):
                v = check_square_edges(w, c, f)
                assert v.confirmed
                claims += v.claims
    assert claims > 0


def test_square_edges_same_color_is_vacuous():
    w = fixture_web("cube.webx")
    f = next(f for f in w.faces if not w.is_outer_face(f.id))
    for c in enumerate_colorings(w):
        v = check_square_edges(w, c, f)
        if all(c[a] == c[b] for a, b in v.pairs):
            assert v.claims == 0 and v.confirmed
            break
    else:
        pytest.fail("no coloring with equal opposite attachments")


def test_kempe_dot():
    w = fixture_web("theta.webx")
    text = kempe_dot(kempe_graph(w), w)
    assert text.startswith('graph "kempe-weak" {')
    assert text.count(" -- ") == len(kempe_graph(w).edges)
