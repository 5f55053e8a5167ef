"""
Exact-integer geometry for rectilinear polygons.

Holds the value types every solver shares (Point, Rect, Polygon, Grid,
PartitionResult), polygon validation, the canonical grid and the coarse
reflex-ray grid. Coordinates are Python integers; nothing here uses floats.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidInput

#############################
# VALUE TYPES
#############################


class Point(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True, order=True)
class Rect:
    lo: Point
    hi: Point

    def __post_init__(self):
        if not (self.lo.x < self.hi.x and self.lo.y < self.hi.y):
            raise ValueError(f"degenerate rectangle {self.lo}-{self.hi}")

    @classmethod
    def from_corners(cls, a, b):
        return cls(Point(min(a[0], b[0]), min(a[1], b[1])), Point(max(a[0], b[0]), max(a[1], b[1])))

    @property
    def width(self):
        return self.hi.x - self.lo.x

    @property
    def height(self):
        return self.hi.y - self.lo.y

    @property
    def min_side(self):
        return min(self.width, self.height)

    @property
    def perimeter(self):
        return 2 * (self.width + self.height)

    @property
    def area(self):
        return self.width * self.height

    def contains_open(self, p):
        return self.lo.x < p[0] < self.hi.x and self.lo.y < p[1] < self.hi.y

    def as_list(self):
        return [self.lo.x, self.lo.y, self.hi.x, self.hi.y]


def _ring(points):
    return tuple(Point(int(p[0]), int(p[1])) for p in points)


@dataclass(frozen=True)
class Polygon:
    """Outer ring counterclockwise, hole rings clockwise.

    weakly_simple marks boundary walks that touch themselves (zero-width
    chains); validation then skips the alternation and simplicity checks.
    """

    outer: tuple
    holes: tuple = ()
    point_holes: tuple = ()
    weakly_simple: bool = False

    @classmethod
    def make(cls, outer, holes=(), point_holes=(), weakly_simple=False):
        return cls(
            outer=_ring(outer),
            holes=tuple(_ring(h) for h in holes),
            point_holes=_ring(point_holes),
            weakly_simple=weakly_simple,
        )

    @property
    def n(self):
        return len(self.outer)

    @property
    def rings(self):
        return (self.outer,) + self.holes

    def vertices(self):
        for ring in self.rings:
            yield from ring

    def perimeter(self):
        return sum(ring_length(r) for r in self.rings)

    def bounding_rect(self):
        xs = [p.x for p in self.outer]
        ys = [p.y for p in self.outer]
        return Rect(Point(min(xs), min(ys)), Point(max(xs), max(ys)))

    def scaled(self, factor):
        return Polygon.make(
            [(p.x * factor, p.y * factor) for p in self.outer],
            [[(p.x * factor, p.y * factor) for p in h] for h in self.holes],
            [(p.x * factor, p.y * factor) for p in self.point_holes],
            self.weakly_simple,
        )

    def to_json(self):
        data = {"outer": [list(p) for p in self.outer]}
        data["holes"] = [[list(p) for p in h] for h in self.holes]
        data["pointHoles"] = [list(p) for p in self.point_holes]
        if self.weakly_simple:
            data["weaklySimple"] = True
        return data


def polygon_from_json(data):
    """Build a Polygon from the JSON/YAML record layout."""
    if not isinstance(data, dict) or "outer" not in data:
        raise InvalidInput("polygon record needs an 'outer' ring")
    try:
        for ring in [data["outer"]] + list(data.get("holes") or []):
            for p in ring:
                if len(p) != 2 or not all(isinstance(c, int) and not isinstance(c, bool) for c in p):
                    raise InvalidInput(f"non-integer coordinate {p!r}")
        return Polygon.make(
            data["outer"],
            data.get("holes") or (),
            data.get("pointHoles") or (),
            bool(data.get("weaklySimple", False)),
        )
    except (TypeError, ValueError) as e:
        raise InvalidInput(f"malformed polygon record: {e}") from e


def load_polygon(path):
    try:
        with open(path, "r") as file:
            data = json.load(file)
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidInput(f"cannot read polygon {path}: {e}") from e
    return polygon_from_json(data)


#############################
# RING HELPERS
#############################

def ring_edges(ring):
    for k in range(len(ring)):
        yield ring[k], ring[(k + 1) % len(ring)]


def ring_length(ring):
    return sum(abs(b.x - a.x) + abs(b.y - a.y) for a, b in ring_edges(ring))


def signed_area2(ring):
    """Twice the signed area; positive for counterclockwise rings."""
    return sum(a.x * b.y - b.x * a.y for a, b in ring_edges(ring))


def _turn(a, b, c):
    return (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)


def reflex_vertices(ring):
    """Vertices where the ring turns away from the interior (interior on the left)."""
    m = len(ring)
    return [ring[k] for k in range(m) if _turn(ring[k - 1], ring[k], ring[(k + 1) % m]) < 0]


def convex_vertices(ring):
    m = len(ring)
    return [ring[k] for k in range(m) if _turn(ring[k - 1], ring[k], ring[(k + 1) % m]) > 0]


def _segments_touch(a, b, c, d):
    """Closed axis-aligned segments ab and cd share a point."""
    return (
        max(min(a.x, b.x), min(c.x, d.x)) <= min(max(a.x, b.x), max(c.x, d.x))
        and max(min(a.y, b.y), min(c.y, d.y)) <= min(max(a.y, b.y), max(c.y, d.y))
    )


def point_in_ring(p, ring):
    """Strict interior test by ray casting; boundary points return False."""
    for a, b in ring_edges(ring):
        if _segments_touch(a, b, p, p):
            return False
    inside = False
    for a, b in ring_edges(ring):
        if a.x == b.x and (a.y > p.y) != (b.y > p.y) and a.x > p.x:
            inside = not inside
    return inside


#############################
# VALIDATION
#############################

@dataclass
class ValidationReport:
    valid: bool = True
    errors: list = field(default_factory=list)

    def fail(self, kind, message):
        self.valid = False
        self.errors.append(f"{kind}: {message}")

    def __bool__(self):
        return self.valid


def _check_ring(ring, label, report, strict):
    if len(ring) < 4:
        report.fail("size", f"{label} has {len(ring)} vertices, need at least 4")
        return False
    ok = True
    for k, (a, b) in enumerate(ring_edges(ring)):
        if a == b:
            report.fail("degenerate", f"{label} edge {k} has zero length at {tuple(a)}")
            ok = False
        elif a.x != b.x and a.y != b.y:
            report.fail("rectilinear", f"{label} edge {k} {tuple(a)}-{tuple(b)} is not axis-aligned")
            ok = False
    if not ok or not strict:
        return ok
    if len(ring) % 2:
        report.fail("size", f"{label} has an odd vertex count {len(ring)}")
        ok = False
    m = len(ring)
    for k in range(m):
        a, b, c = ring[k - 1], ring[k], ring[(k + 1) % m]
        if (a.x == b.x) == (b.x == c.x):
            report.fail("collinear", f"{label} vertex {tuple(b)} joins two collinear edges")
            ok = False
    return ok


def _check_simple(rings, report):
    edges = []
    for r, ring in enumerate(rings):
        m = len(ring)
        for k, (a, b) in enumerate(ring_edges(ring)):
            edges.append((r, k, m, a, b))
    for s in range(len(edges)):
        r1, k1, m1, a, b = edges[s]
        for t in range(s + 1, len(edges)):
            r2, k2, _, c, d = edges[t]
            if r1 == r2 and (k2 - k1 == 1 or (k1 == 0 and k2 == m1 - 1)):
                continue
            if _segments_touch(a, b, c, d):
                report.fail("simplicity", f"edges {tuple(a)}-{tuple(b)} and {tuple(c)}-{tuple(d)} touch")
                return


def _check_range(poly, report):
    for p in list(poly.vertices()) + list(poly.point_holes):
        if abs(p.x) > COORD_LIMIT or abs(p.y) > COORD_LIMIT:
            report.fail("range", f"coordinate {tuple(p)} is outside +-{COORD_LIMIT}")
            return


def validate(poly):
    """Check coordinate range, rectilinearity, orientation, simplicity and alternation.

    Returns a ValidationReport; never raises.
    """
    report = ValidationReport()
    strict = not poly.weakly_simple
    _check_range(poly, report)
    rings_ok = _check_ring(poly.outer, "outer", report, strict)
    for h, hole in enumerate(poly.holes):
        rings_ok = _check_ring(hole, f"hole {h}", report, strict) and rings_ok
    if not rings_ok:
        return report

    if signed_area2(poly.outer) <= 0:
        report.fail("orientation", "outer ring must be counterclockwise")
    for h, hole in enumerate(poly.holes):
        if signed_area2(hole) >= 0:
            report.fail("orientation", f"hole {h} must be clockwise")
        if not all(point_in_ring(p, poly.outer) for p in hole):
            report.fail("holes", f"hole {h} is not strictly inside the outer ring")
    if strict:
        _check_simple(poly.rings, report)
    for p in poly.point_holes:
        if not point_in_ring(p, poly.outer) or any(not _outside_hole(p, h) for h in poly.holes):
            report.fail("pointHoles", f"point hole {tuple(p)} is not strictly inside")
    return report


def _outside_hole(p, hole):
    return not point_in_ring(p, hole) and all(not _segments_touch(a, b, p, p) for a, b in ring_edges(hole))


def require_valid(poly, hole_free=False):
    report = validate(poly)
    if hole_free and poly.holes:
        report.fail("holes", "this solver needs a hole-free polygon")
    if not report.valid:
        raise InvalidInput("invalid polygon: " + "; ".join(report.errors), report.errors)
    return report


#############################
# GRIDS
#############################

@dataclass(frozen=True)
class Grid:
    xs: tuple
    ys: tuple

    @property
    def index_of_x(self):
        return {x: i for i, x in enumerate(self.xs)}

    @property
    def index_of_y(self):
        return {y: j for j, y in enumerate(self.ys)}

    @property
    def nx(self):
        """Number of cell columns."""
        return max(len(self.xs) - 1, 0)

    @property
    def ny(self):
        return max(len(self.ys) - 1, 0)

    def point(self, i, j):
        return Point(self.xs[i], self.ys[j])


def canonical_grid(poly, extra_xs=(), extra_ys=()):
    """Grid of all vertex coordinates (plus optional extra lines), ascending."""
    xs = {p.x for p in poly.vertices()} | {p.x for p in poly.point_holes} | set(extra_xs)
    ys = {p.y for p in poly.vertices()} | {p.y for p in poly.point_holes} | set(extra_ys)
    return Grid(tuple(sorted(xs)), tuple(sorted(ys)))


QUADRANTS = ("UR", "UL", "DL", "DR")

# rays shot from reflex vertices for each quadrant direction: (horizontal, vertical)
_RAYS = {"UR": ((-1, 0), (0, -1)), "UL": ((1, 0), (0, -1)), "DL": ((1, 0), (0, 1)), "DR": ((-1, 0), (0, 1))}


def coarse_grid(poly, direction):
    """Grid G' induced by rays from reflex vertices opposite to direction.

    A horizontal line is kept when the horizontal ray of a reflex vertex
    enters the interior, likewise for vertical lines.
    """
    if direction not in _RAYS:
        raise InvalidInput(f"unknown quadrant direction {direction!r}")
    hray, vray = _RAYS[direction]
    xs, ys = set(), set()
    for ring in poly.rings:
        m = len(ring)
        for k in range(m):
            a, b, c = ring[k - 1], ring[k], ring[(k + 1) % m]
            if _turn(a, b, c) >= 0:
                continue
            used = {_unit(b, a), _unit(b, c)}
            if hray not in used:
                ys.add(b.y)
            if vray not in used:
                xs.add(b.x)
    return Grid(tuple(sorted(xs)), tuple(sorted(ys)))


def _unit(a, b):
    return ((b.x > a.x) - (b.x < a.x), (b.y > a.y) - (b.y < a.y))


#############################
# RESULTS
#############################

class WidthCount(NamedTuple):
    """Smallest rectangle side and number of rectangles of a partition."""

    width: object
    count: object


@dataclass
class PartitionResult:
    objective: str
    value: Fraction
    count: int
    cuts: list
    rectangles: list
    scale: int = 1
    stats: dict = field(default_factory=dict)

    def to_json(self):
        value = Fraction(self.value)
        return {
            "objective": self.objective,
            "value": {"num": value.numerator, "den": value.denominator},
            "count": self.count,
            "cuts": [[list(a), list(b)] for a, b in self.cuts],
            "rectangles": [r.as_list() for r in self.rectangles],
            "scale": self.scale,
        }


def result_from_json(data):
    try:
        value = Fraction(data["value"]["num"], data["value"]["den"])
        rects = [Rect.from_corners((r[0], r[1]), (r[2], r[3])) for r in data["rectangles"]]
        cuts = [(Point(*c[0]), Point(*c[1])) for c in data.get("cuts", [])]
        return PartitionResult(
            objective=data.get("objective", "ink"),
            value=value,
            count=int(data.get("count", len(rects))),
            cuts=cuts,
            rectangles=rects,
            scale=int(data.get("scale", 1)),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InvalidInput(f"malformed partition record: {e}") from e


def partition_ink(rects, poly):
    """Total cut length from the perimeter identity 2*ink = sum perim(R) - perim(P)."""
    total = sum(r.perimeter for r in rects) - poly.perimeter()
    return Fraction(total, 2)


def segment_length(seg):
    a, b = seg
    return abs(b[0] - a[0]) + abs(b[1] - a[1])


#############################
# FRACTION ANCHORS
#############################

AT_SCALE = 6
# largest coordinate magnitude whose x6 differences still fit in int64
COORD_LIMIT = (2**63 - 1) // (2 * AT_SCALE)
FRACTIONS = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))


def fraction_grid(poly):
    """Scale poly by 6 and add grid lines at 1/3, 1/2, 2/3 between vertex coordinates.

    Returns (scaled polygon, grid). Anchors that coincide with existing lines
    collapse into one line.
    """
    scaled = poly.scaled(AT_SCALE)
    base = canonical_grid(scaled)
    extra = []
    for coords in (base.xs, base.ys):
        lines = set()
        for s, a in enumerate(coords):
            for b in coords[s + 1:]:
                for f in FRACTIONS:
                    lines.add(a + int((b - a) * f))
        extra.append(lines)
    return scaled, canonical_grid(scaled, extra[0], extra[1])
