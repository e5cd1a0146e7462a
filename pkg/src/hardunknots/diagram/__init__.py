"""Planar diagrams: construction and Reidemeister moves, with hardness tests and SVG output."""
from .core import PlanarDiagram, DiagramError, face_orbits
from .build import (
    TangleDiagram, build_tangle_diagram, build_expr, closure, sum_diagram, vflip, hflip,
    rot, mirror as mirror_tangle, tangle_sum, tangle_product, integer_tangle, vertical_tangle,
)
from .moves import MoveSite, StaleMove, available_moves, growing_moves, apply_move, is_hard
from .tuck import TuckError, tuck
from .hard import HardSum, enumerate_hard_sums
from .render import render_svg
