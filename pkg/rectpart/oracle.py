"""
Exhaustive ground truth at desk scale.

Partitions are built cell by cell: the lowest uncovered cell (row-major) is
always the bottom-left corner of the next rectangle, so every partition of
the polygon into grid rectangles comes out exactly once. Filters keep the
partitions whose maximal cuts are all incident to a reflex vertex (v-cut)
or to the boundary (a-cut).
"""

import math
from fractions import Fraction

from .cells import CellComplex, cut_is_incident, cut_runs, label_cells
from .config import assertions_enabled, get_logger, load_settings
from .errors import BadParams, SizeLimitExceeded
from .geometry import (
    AT_SCALE,
    PartitionResult,
    Polygon,
    Rect,
    WidthCount,
    canonical_grid,
    fraction_grid,
    partition_ink,
)

logger = get_logger(__name__)

FILTERS = {"none": None, "v-cut": "vertex", "a-cut": "boundary"}

#############################
# CELL COVERS
#############################


def _complex(poly, grid=None, limit=None):
    cx = CellComplex(poly, grid)
    bound = limit or load_settings().oracle_cells
    cells = cx.inside.bit_count()
    if cells > bound:
        raise SizeLimitExceeded(f"oracle handles at most {bound} cells, polygon has {cells}")
    return cx


def _hole_indices(cx, points):
    xi, yj = cx.grid.index_of_x, cx.grid.index_of_y
    return [(xi[p[0]], yj[p[1]]) for p in points]


def _rects_at(cx, remaining, i, j, holes=(), min_width=0):
    """Grid rectangles with bottom-left cell (i, j) inside remaining, no wall inside."""
    xs, ys = cx.grid.xs, cx.grid.ys
    out = []
    top = cx.ny
    i1 = i + 1
    while i1 <= cx.nx and cx.has(i1 - 1, j, remaining) and (i1 == i + 1 or cx.v_open(i1 - 1, j, cx.inside)):
        j1 = j + 1
        while j1 <= top:
            rmask = cx.rect_mask(i, i1, j, j1)
            if rmask & ~remaining or cx.interior_closed(rmask):
                break
            j1 += 1
        top = j1 - 1
        for h in range(j + 1, top + 1):
            if min(xs[i1] - xs[i], ys[h] - ys[j]) < min_width:
                continue
            if any(i < hi < i1 and j < hj < h for hi, hj in holes):
                continue
            out.append((i, i1, j, h))
        i1 += 1
    return out


def _covers(cx, holes=(), min_width=0, max_count=math.inf):
    """Yield every partition of the polygon's cells as a list of index rectangles."""
    chosen = []

    def walk(remaining):
        if not remaining:
            yield list(chosen)
            return
        if len(chosen) >= max_count:
            return
        low = remaining & -remaining
        c = low.bit_length() - 1
        i, j = c % cx.nx, c // cx.nx
        for rect in _rects_at(cx, remaining, i, j, holes, min_width):
            chosen.append(rect)
            yield from walk(remaining & ~cx.rect_mask(*rect))
            chosen.pop()

    yield from walk(cx.inside)


def _to_rects(cx, index_rects):
    g = cx.grid
    return [Rect(g.point(i0, j0), g.point(i1, j1)) for i0, i1, j0, j1 in index_rects]


def passes_filter(cx, rects, filter="none"):
    incidence = FILTERS[filter]
    if incidence is None:
        return True
    cuts = cut_runs(cx, label_cells(cx, rects))
    return all(cut_is_incident(cx, seg, incidence) for seg in cuts)


def enumerate_partitions(poly, grid=None, filter="none", limit=None, min_width=0):
    """Stream every rectangular partition of poly on grid that passes the filter.

    min_width drops partitions with a rectangle side below it.
    """
    if filter not in FILTERS:
        raise BadParams(f"unknown filter {filter!r}")
    cx = _complex(poly, grid, limit)
    holes = _hole_indices(cx, poly.point_holes)
    for index_rects in _covers(cx, holes, min_width):
        rects = sorted(_to_rects(cx, index_rects))
        if not passes_filter(cx, rects, filter):
            continue
        cuts = cut_runs(cx, label_cells(cx, rects))
        yield PartitionResult("partition", partition_ink(rects, poly), len(rects), cuts, rects)


#############################
# MINIMUM INK
#############################

def _min_perimeter(cx, holes=()):
    """Least total rectangle perimeter over all covers, memoized on the uncovered mask."""
    xs, ys = cx.grid.xs, cx.grid.ys
    memo = {0: 0}

    def best(remaining):
        found = memo.get(remaining)
        if found is not None:
            return found
        low = remaining & -remaining
        c = low.bit_length() - 1
        i, j = c % cx.nx, c // cx.nx
        value = math.inf
        for i0, i1, j0, j1 in _rects_at(cx, remaining, i, j, holes):
            perim = 2 * (xs[i1] - xs[i0] + ys[j1] - ys[j0])
            value = min(value, perim + best(remaining & ~cx.rect_mask(i0, i1, j0, j1)))
        memo[remaining] = value
        return value

    return best(cx.inside)


def oracle_min_ink(poly, filter="none", limit=None):
    """Minimum total cut length over all grid partitions (optionally filtered)."""
    if filter != "none":
        return min(r.value for r in enumerate_partitions(poly, None, filter, limit))
    cx = _complex(poly, None, limit)
    value = Fraction(_min_perimeter(cx) - poly.perimeter(), 2)
    if assertions_enabled() and not poly.holes:
        filtered = min(r.value for r in enumerate_partitions(poly, None, "v-cut", limit))
        assert filtered == value, f"v-cut minimum {filtered} differs from unfiltered {value}"
    logger.debug("oracle ink: %s", value)
    return value


def oracle_min_ink_holes(rect, pts, limit=None):
    """Minimum ink of a rectangle whose rectangles must keep point holes off their open interiors."""
    poly = Polygon.make(
        [(rect.lo.x, rect.lo.y), (rect.hi.x, rect.lo.y), (rect.hi.x, rect.hi.y), (rect.lo.x, rect.hi.y)],
        point_holes=pts,
    )
    cx = _complex(poly, canonical_grid(poly), limit)
    holes = _hole_indices(cx, pts)
    return Fraction(_min_perimeter(cx, holes) - rect.perimeter, 2)


#############################
# THICK AND TH
#############################

def _width_levels(cx):
    xs, ys = cx.grid.xs, cx.grid.ys
    levels = {b - a for coords in (xs, ys) for s, a in enumerate(coords) for b in coords[s + 1:]}
    return sorted(levels, reverse=True)


def oracle_thick(poly, incidence="vertex", limit=None):
    """(width, count) of the best thick partition with the given cut incidence.

    Thresholds are tried from the widest down; the first one admitting a
    filtered partition is the width, and the fewest rectangles among those
    partitions is the count.
    """
    if incidence == "boundary":
        scaled, grid = fraction_grid(poly)
        cx, scale, filter = _complex(scaled, grid, limit), AT_SCALE, "a-cut"
    else:
        cx, scale, filter = _complex(poly, None, limit), 1, "v-cut"
    for level in _width_levels(cx):
        best = math.inf
        for index_rects in _covers(cx, min_width=level):
            if len(index_rects) >= best:
                continue
            if passes_filter(cx, _to_rects(cx, index_rects), filter):
                best = len(index_rects)
        if best < math.inf:
            return WidthCount(Fraction(level, scale), best)
    return WidthCount(-math.inf, math.inf)


def count_partitions(poly, min_width=0, filter="v-cut", limit=None):
    """Number of filtered partitions whose rectangles are all at least min_width wide."""
    cx = _complex(poly, None, limit)
    return sum(
        1 for rs in _covers(cx, min_width=min_width) if passes_filter(cx, _to_rects(cx, rs), filter)
    )


def oracle_th(poly, delta, k, limit=None):
    """Is there a v-cut partition with width at least delta and at most k rectangles?"""
    if delta <= 0 or k <= 0:
        raise BadParams("delta and k must be positive")
    cx = _complex(poly, None, limit)
    for index_rects in _covers(cx, min_width=delta, max_count=k):
        if passes_filter(cx, _to_rects(cx, index_rects), "v-cut"):
            return True
    return False
