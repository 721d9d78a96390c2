"""Circuits and rectangle tilings of orthogonal polygons."""
from .correspondence import TilingError, circuit_from_tiling, tiling_from_circuit, vertical_segments
from .criteria import HexagonError, dehn_check, hexagon_closure_problems, hexagon_square_tileable
from .geometry import GeometryError, OrthoPolygon, Rect, Tiling, VerticalSide, cover_problems, is_exact_cover
from .octagon import (
    OctagonShape,
    OctagonTiling,
    classify_octagon,
    port_frame,
    square_subdivision,
    tile_octagon,
    tile_octagon_min,
)
from .svg import render_svg

__all__ = [
    "GeometryError",
    "HexagonError",
    "OctagonShape",
    "OctagonTiling",
    "OrthoPolygon",
    "Rect",
    "Tiling",
    "TilingError",
    "VerticalSide",
    "circuit_from_tiling",
    "classify_octagon",
    "cover_problems",
    "dehn_check",
    "hexagon_closure_problems",
    "hexagon_square_tileable",
    "is_exact_cover",
    "port_frame",
    "render_svg",
    "square_subdivision",
    "tile_octagon",
    "tile_octagon_min",
    "tiling_from_circuit",
    "vertical_segments",
]
