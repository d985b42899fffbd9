"""Line and point transversals of planar convex families.

Exact rational geometry, chord-system line search over the simplex, matching
numbers, d-interval piercing, and exhaustive oracles for small inputs.
"""
from .config_space import ChordSystem, chord_system, cover_label, region_index, region_index_recursive
from .geometry import (
    ConvexSet,
    Family,
    GeometryError,
    InvalidSetError,
    Line2,
    Point2,
    convex_set,
    family,
    get_mode,
    intersect_convex,
    line_meets_set,
    normalize_to_disk,
    point_in_set,
    set_mode,
)
from .intervals import MultiInterval, PointTransversal, gallai_pierce, pierce_d_intervals, trace_on_lines
from .line_solver import LineTransversal, solve_colorful, solve_lines, verify_line_transversal
from .matching import has_pq_property, isolated_sets, matching_number, pairwise_intersections
from .pipeline import PipelineReport, theorem1_pierce

__version__ = "0.1.0"

__all__ = [
    "ChordSystem", "ConvexSet", "Family", "GeometryError", "InvalidSetError", "Line2",
    "LineTransversal", "MultiInterval", "PipelineReport", "Point2", "PointTransversal",
    "chord_system", "convex_set", "cover_label", "family", "gallai_pierce", "get_mode",
    "has_pq_property", "intersect_convex", "isolated_sets", "line_meets_set", "matching_number",
    "normalize_to_disk", "pairwise_intersections", "pierce_d_intervals", "point_in_set",
    "region_index", "region_index_recursive", "set_mode", "solve_colorful", "solve_lines",
    "theorem1_pierce", "trace_on_lines", "verify_line_transversal",
]
