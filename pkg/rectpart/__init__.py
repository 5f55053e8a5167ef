"""Optimal rectangular partitions of rectilinear polygons."""

from .errors import (
    BadParams,
    CapacityExceeded,
    CycleDetected,
    GadgetConflict,
    InvalidInput,
    InvalidKey,
    NotPlanar,
    PointOnBoundary,
    RectPartError,
    SizeLimitExceeded,
    UnsatisfiedClause,
    UnsolvedDependency,
)
from .gadgets import build_gadget
from .geometry import PartitionResult, Point, Polygon, Rect, WidthCount, load_polygon, validate
from .ink import ink_partition
from .instances import (
    approx_ink_with_holes,
    assignment_to_partition,
    generate_th_instance,
    parse_dimacs,
    transform_point_holes,
)
from .oracle import enumerate_partitions, oracle_min_ink, oracle_th, oracle_thick
from .svg import render_svg
from .thick import at_partition, vt_partition
from .verify import verify

__all__ = [
    "BadParams",
    "CapacityExceeded",
    "CycleDetected",
    "GadgetConflict",
    "InvalidInput",
    "InvalidKey",
    "NotPlanar",
    "PartitionResult",
    "Point",
    "PointOnBoundary",
    "Polygon",
    "Rect",
    "RectPartError",
    "SizeLimitExceeded",
    "UnsatisfiedClause",
    "UnsolvedDependency",
    "WidthCount",
    "approx_ink_with_holes",
    "assignment_to_partition",
    "at_partition",
    "build_gadget",
    "enumerate_partitions",
    "generate_th_instance",
    "ink_partition",
    "load_polygon",
    "oracle_min_ink",
    "oracle_th",
    "oracle_thick",
    "parse_dimacs",
    "render_svg",
    "transform_point_holes",
    "validate",
    "verify",
    "vt_partition",
]
