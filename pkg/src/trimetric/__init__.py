"""Triangular ratio metric balls: distances, ball tracing, convexity and inclusion checks."""

from .geometry import (
    Angular,
    DomainError,
    HalfSpace,
    Polygon,
    PuncturedHalfSpace,
    PuncturedSpace,
    SampledBoundary,
    Segment,
    min_path_via_boundary_piece,
)
from .metrics import MetricKind, distance, j_distance, k_distance, rho_halfspace, s_distance
from .balls import (
    BoundaryTrace,
    ConvexityVerdict,
    Disk,
    TraceError,
    convexity_radius_estimate,
    halfspace_s_ball,
    polyline_is_convex,
    trace_ball_generic,
    trace_punctured_ball,
)
from .inclusions import CheckReport, ScanConfig

__all__ = [
    "Angular", "BoundaryTrace", "CheckReport", "ConvexityVerdict", "Disk", "DomainError",
    "HalfSpace", "MetricKind", "Polygon", "PuncturedHalfSpace", "PuncturedSpace",
    "SampledBoundary", "ScanConfig", "Segment", "TraceError", "convexity_radius_estimate",
    "distance", "halfspace_s_ball", "j_distance", "k_distance", "min_path_via_boundary_piece",
    "polyline_is_convex", "rho_halfspace", "s_distance", "trace_ball_generic", "trace_punctured_ball",
]

__version__ = "0.1.0"
