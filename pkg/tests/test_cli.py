import io as _io
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from webcolor import io
from webcolor.cli import main
from webcolor.errors import DuplicateRotation, MissingOuter, ParseError, UnknownDart, ValidationFailure, WebxSyntaxError
from webcolor.generate import generate_web
from webcolor.web import CubicGraph

from conftest import WEB_FIXTURES

FIX = io.FIXTURES


def run(*argv):
    out = _io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


# parsing


def test_parse_examples():
    doc = io.parse_file(FIX / "circle.webx")
    assert doc.kind == "web" and len(doc.obj.loops) == 1
    k33 = io.parse_file(FIX / "k33.graphx")
    assert isinstance(k33.obj, CubicGraph)
    assert len(k33.obj.vertex_ids) == 6 and len(k33.obj.edges) == 9


THETA = """web t
vertex s source
vertex k sink
edge e1 s k
edge e2 s k
edge e3 s k
rot s e3t e2t e1t
rot k e3h e1h e2h
outer e1t
"""


@pytest.mark.parametrize(
    "text, error, line",
    [
        (THETA.replace("rot k e3h e1h e2h", "rot k e3h e1h e9h"), UnknownDart, 8),
        (THETA + "rot s e1t e2t e3t\n", DuplicateRotation, 10),
        (THETA.replace("outer e1t\n", ""), MissingOuter, None),
        (THETA.replace("vertex k sink", "vertex k drain"), WebxSyntaxError, 3),
        (THETA.replace("edge e3 s k", "edge e3 s"), WebxSyntaxError, 6),
        (THETA.replace("rot k e3h e1h e2h", "rot k e2h e1h e3h"), ValidationFailure, None),
        ("", WebxSyntaxError, 1),
        ("\x00\xff garbage ::", WebxSyntaxError, 1),
    ],
)
def test_parse_errors_carry_locations(text, error, line):
    with pytest.raises(error) as info:
        io.parse(text)
    if line is not None:
        assert info.value.line == line


@given(st.text(max_size=200))
@settings(max_examples=200)
def test_parsing_is_total(text):
    try:
        io.parse(text)
    except ParseError:
        pass


@pytest.mark.parametrize("name", WEB_FIXTURES + ["dodecahedron.graphx", "k33.graphx"])
def test_round_trip(name):
    doc = io.parse_file(FIX / name)
    again = io.parse(io.serialize(doc.obj))
    assert again.obj == doc.obj
    assert io.serialize(again.obj) == io.serialize(doc.obj)


@pytest.mark.parametrize("seed", range(10))
def test_generated_round_trip(seed):
    w = generate_web(seed, 5)
    assert io.parse(io.serialize(w)).obj == w


def test_all_shipped_files_parse():
    for p in sorted(FIX.glob("*.webx")) + sorted(FIX.glob("*.graphx")):
        io.parse_file(p)
    for p in sorted(FIX.glob("*.coords")):
        assert io.load_coords(p)


def test_dot_output():
    w = io.load("theta.webx")
    text = io.to_dot(w, {"e1": 0, "e2": 1, "e3": 2})
    assert text.startswith('digraph "theta"')
    assert 'label="e2=green", color=green' in text


# command line


def test_bracket_engines():
    for engine in ("enum", "reduce", "both"):
        assert run("bracket", FIX / "circle.webx", "--engine", engine) == (0, "-2:1 0:1 2:1\n")
    code, out = run("bracket", FIX / "theta.webx", "--trace")
    assert code == 0
    assert out.splitlines()[0] == "DIGON f=1 ×[2]"
    assert out.splitlines()[-1] == "-3:1 -1:2 1:2 3:1"


def test_validate_and_colorings():
    code, out = run("validate", FIX / "cube.webx")
    assert code == 0 and out.startswith("ok: web cube (8 vertices, 12 edges")
    assert run("colorings", FIX / "theta.webx", "--count") == (0, "6\n")
    code, out = run("colorings", FIX / "circle.webx")
    assert out.splitlines() == ["/ c=red", "/ c=green", "/ c=blue"]


def test_degree():
    code, out = run("degree", FIX / "circle.webx", "--coloring", "c=r")
    assert code == 0
    assert out.splitlines() == ["red 0", "green 1", "blue 1", "total 2"]
    code, _ = run("degree", FIX / "theta.webx", "--coloring", "e1=r,e2=r,e3=b")
    assert code == 1
    code, _ = run("degree", FIX / "theta.webx", "--coloring", "e1=purple")
    assert code == 2


def test_kempe_cli(tmp_path):
    code, out = run("kempe", FIX / "dodecahedron.graphx", "--components")
    assert code == 0
    count = int(next(line for line in out.splitlines() if line.startswith("components")).split()[1])
    assert count >= 2
    dot = tmp_path / "k.dot"
    code, out = run("kempe", FIX / "cube.webx", "--mode", "strong", "--dot", dot)
    assert code == 0 and "components 1" in out
    assert dot.read_text().startswith("graph")


def test_generate_and_export(tmp_path):
    target = tmp_path / "g.webx"
    assert run("generate", "--seed", 3, "--steps", 4, "--out", target)[0] == 0
    assert io.parse_file(target).obj == generate_web(3, 4)
    dot = tmp_path / "g.dot"
    assert run("export-dot", target, dot)[0] == 0
    assert dot.read_text().startswith("digraph")


def test_exit_codes(tmp_path):
    assert run("frobnicate")[0] == 2
    assert run("bracket")[0] == 2
    assert run("validate", tmp_path / "missing.webx")[0] == 1
    bad = tmp_path / "bad.webx"
    bad.write_text(THETA.replace("e2h", "e7h"))
    assert run("validate", bad)[0] == 1
    assert run("bracket", FIX / "k33.graphx")[0] == 1


def test_console_script_entry():
    res = subprocess.run(
        [sys.executable, "-m", "webcolor.cli", "bracket", str(FIX / "circle.webx"), "--engine", "both"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout == "-2:1 0:1 2:1\n"
