"""Colored brackets of closed webs, their colorings and Kempe moves."""

from .coloring import (
    Color,
    Coloring,
    bracket_enum,
    configuration,
    config_degree,
    enumerate_colorings,
    is_proper,
    total_degree,
)
from .errors import WebError
from .generate import generate_web
from .io import load, parse, serialize
from .kempe import bicolored_cycles, connected_components, kempe_graph, tau
from .laurent import LaurentPoly, quantum_int
from .rewrite import bracket_reduce, reduce_digon, remove_circle, smooth_square
from .web import CubicGraph, Dart, WebMap, cycle_orientation, find_reducible, validate_web

__version__ = "0.1.0"

__all__ = [
    "Color",
    "Coloring",
    "CubicGraph",
    "Dart",
    "LaurentPoly",
    "WebError",
    "WebMap",
    "bicolored_cycles",
    "bracket_enum",
    "bracket_reduce",
    "config_degree",
    "configuration",
    "connected_components",
    "cycle_orientation",
    "enumerate_colorings",
    "find_reducible",
    "generate_web",
    "is_proper",
    "kempe_graph",
    "load",
    "parse",
    "quantum_int",
    "reduce_digon",
    "remove_circle",
    "serialize",
    "smooth_square",
    "tau",
    "total_degree",
    "validate_web",
]
