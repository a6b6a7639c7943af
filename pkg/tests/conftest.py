from __future__ import annotations

import math
import sys
from functools import lru_cache

from webcolor.generate import generate_web
from webcolor.io import FIXTURES, load, load_coords

WEB_FIXTURES = [
    "circle.webx",
    "circles2.webx",
    "theta.webx",
    "cube.webx",
    "hexprism.webx",
    "bisquare.webx",
    "cube_digon.webx",
    "theta_digon.webx",
]
COORD_FIXTURES = [n for n in WEB_FIXTURES if (FIXTURES / n.replace(".webx", ".coords")).exists()]
DIGON_FIXTURES = ["cube_digon.webx", "theta_digon.webx", "theta.webx"]
SQUARE_FIXTURES = ["cube.webx", "hexprism.webx", "bisquare.webx", "theta_digon.webx"]


@lru_cache(maxsize=None)
def fixture_web(name: str):
    return load(FIXTURES / name)


@lru_cache(maxsize=None)
def generated(seed: int, steps: int = 6):
    return generate_web(seed, steps)


def coords_of(name: str):
    return load_coords(FIXTURES / name.replace(".webx", ".coords"))


def walk_polygon(web, coords, walk):
    """Plane polygon traced by a dart walk, including edge bend points."""
    pts = []
    for d in walk:
        pts.append(coords[web.base(d)])
        if d.edge in coords:
            pts.append(coords[d.edge])
    return pts


def signed_area(pts) -> float:
    return 0.5 * sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]))


def angle_order(web, coords, v):
    """Darts at ``v`` sorted counterclockwise by the direction they leave in."""
    x, y = coords[v]
    out = []
    for d in web.rotation[v]:
        tx, ty = coords.get(d.edge, coords[web.tip(d)])
        out.append((math.atan2(ty - y, tx - x), d))
    return [d for _, d in sorted(out)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.report_line(n))
