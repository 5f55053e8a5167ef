"""
Solver-independent partition checker.

Works from the polygon rings and the rectangle list alone: tiling,
maximal cuts, cut incidence and optional (delta, k) thresholds. Returns a
report dict with an ok flag and the list of failures; never raises on a bad
partition.
"""

from fractions import Fraction

from .geometry import Point, partition_ink, point_in_ring, ring_edges, signed_area2

#############################
# BOUNDARY QUERIES
#############################


def _edges(poly):
    return [(a, b) for ring in poly.rings for a, b in ring_edges(ring)]


def _on_edge(p, a, b):
    return min(a.x, b.x) <= p[0] <= max(a.x, b.x) and min(a.y, b.y) <= p[1] <= max(a.y, b.y)


def on_boundary(poly, p):
    return any(_on_edge(p, a, b) for a, b in _edges(poly))


def strictly_inside(poly, p):
    if on_boundary(poly, p):
        return False
    return point_in_ring(p, poly.outer) and not any(point_in_ring(p, h) for h in poly.holes)


def reflex_points(poly):
    """Ring vertices turning away from the interior, slit tips included."""
    out = set()
    for ring in poly.rings:
        m = len(ring)
        for k in range(m):
            a, b, c = ring[k - 1], ring[k], ring[(k + 1) % m]
            u = (b.x - a.x, b.y - a.y)
            v = (c.x - b.x, c.y - b.y)
            cross = u[0] * v[1] - u[1] * v[0]
            dot = u[0] * v[0] + u[1] * v[1]
            if cross < 0 or (cross == 0 and dot < 0):
                out.add((b.x, b.y))
    return out


def _crosses_interior(rect, a, b):
    if a.x == b.x:
        return rect.lo.x < a.x < rect.hi.x and min(max(a.y, b.y), rect.hi.y) > max(min(a.y, b.y), rect.lo.y)
    return rect.lo.y < a.y < rect.hi.y and min(max(a.x, b.x), rect.hi.x) > max(min(a.x, b.x), rect.lo.x)


def _rect_inside(poly, rect):
    center = (Fraction(rect.lo.x + rect.hi.x, 2), Fraction(rect.lo.y + rect.hi.y, 2))
    if not strictly_inside(poly, Point(*center)):
        return False
    return not any(_crosses_interior(rect, a, b) for a, b in _edges(poly))


def _overlap(r, s):
    return min(r.hi.x, s.hi.x) > max(r.lo.x, s.lo.x) and min(r.hi.y, s.hi.y) > max(r.lo.y, s.lo.y)


#############################
# MAXIMAL CUTS
#############################

def _subtract(interval, covers):
    pieces = [interval]
    for c0, c1 in covers:
        nxt = []
        for a, b in pieces:
            if c1 <= a or c0 >= b:
                nxt.append((a, b))
                continue
            if a < c0:
                nxt.append((a, c0))
            if c1 < b:
                nxt.append((c1, b))
        pieces = nxt
    return pieces


def _merge(intervals):
    out = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def _boundary_stops(edges, kind, c):
    """Coordinates along line (kind, c) where the polygon boundary touches it."""
    stops = set()
    for a, b in edges:
        if kind == "h":
            if a.x == b.x and min(a.y, b.y) <= c <= max(a.y, b.y):
                stops.add(a.x)
            elif a.y == b.y == c:
                stops.update((a.x, b.x))
        elif a.y == b.y and min(a.x, b.x) <= c <= max(a.x, b.x):
            stops.add(a.y)
        elif a.x == b.x == c:
            stops.update((a.y, b.y))
    return stops


def maximal_runs(poly, rects):
    """Maximal collinear runs of rectangle sides not on the boundary, split at boundary points."""
    edges = _edges(poly)
    lines = {}
    for r in rects:
        sides = (
            ("h", r.lo.y, (r.lo.x, r.hi.x)),
            ("h", r.hi.y, (r.lo.x, r.hi.x)),
            ("v", r.lo.x, (r.lo.y, r.hi.y)),
            ("v", r.hi.x, (r.lo.y, r.hi.y)),
        )
        for kind, c, span in sides:
            if kind == "h":
                covers = [tuple(sorted((a.x, b.x))) for a, b in edges if a.y == b.y == c]
            else:
                covers = [tuple(sorted((a.y, b.y))) for a, b in edges if a.x == b.x == c]
            lines.setdefault((kind, c), []).extend(_subtract(span, covers))
    runs = []
    for (kind, c), pieces in sorted(lines.items()):
        touching = _boundary_stops(edges, kind, c)
        for a, b in _merge(pieces):
            stops = [a, *sorted(t for t in touching if a < t < b), b]
            for s, e in zip(stops, stops[1:]):
                runs.append(((s, c), (e, c)) if kind == "h" else ((c, s), (c, e)))
    return sorted(runs)


def _normal(seg):
    a, b = (tuple(int(v) for v in p) for p in seg)
    return (a, b) if a <= b else (b, a)


#############################
# REPORT
#############################

def verify(poly, result, incidence=None, delta=None, k=None):
    """Check a partition result against poly; returns {"ok", "failures", ...}."""
    failures = []
    scale = result.scale or 1
    target = poly.scaled(scale) if scale != 1 else poly
    rects = list(result.rectangles)

    for r in rects:
        if not _rect_inside(target, r):
            failures.append(f"tiling: rectangle {r.as_list()} leaves the polygon")
        for p in target.point_holes:
            if r.contains_open(p):
                failures.append(f"tiling: rectangle {r.as_list()} contains point hole {tuple(p)}")
    for s, r in enumerate(rects):
        for t in rects[s + 1:]:
            if _overlap(r, t):
                failures.append(f"tiling: rectangles {r.as_list()} and {t.as_list()} overlap")
    area2 = signed_area2(target.outer) + sum(signed_area2(h) for h in target.holes)
    if 2 * sum(r.area for r in rects) != area2:
        failures.append(f"tiling: rectangles cover area {sum(r.area for r in rects)}, polygon has {Fraction(area2, 2)}")
    if result.count != len(rects):
        failures.append(f"count: declared {result.count}, found {len(rects)} rectangles")

    runs = maximal_runs(target, rects)
    declared = sorted(_normal(c) for c in result.cuts)
    if declared != runs:
        failures.append(f"cuts: declared cuts are not the maximal cuts of the partition ({len(declared)} vs {len(runs)})")
    if incidence is not None:
        reflex = reflex_points(target)
        for seg in runs:
            if incidence == "vertex":
                ok = any(p in reflex for p in seg)
            else:
                ok = any(on_boundary(target, p) for p in seg)
            if not ok:
                failures.append(f"incidence: cut {seg} has no {incidence} endpoint")

    ink = partition_ink(rects, target) / scale if rects else Fraction(0)
    width = Fraction(min(r.min_side for r in rects), scale) if rects else Fraction(0)
    if result.objective == "ink" and Fraction(result.value) != ink:
        failures.append(f"value: declared ink {result.value}, perimeter identity gives {ink}")
    if result.objective == "thick" and Fraction(result.value) != width:
        failures.append(f"value: declared width {result.value}, rectangles give {width}")
    if delta is not None and width < delta:
        failures.append(f"threshold: width {width} below delta {delta}")
    if k is not None and len(rects) > k:
        failures.append(f"threshold: {len(rects)} rectangles exceed k={k}")
    return {"ok": not failures, "failures": failures, "count": len(rects), "width": width, "ink": ink}
