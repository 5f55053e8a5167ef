"""
Query structures built once per polygon.

- ContainmentIndex: two label matrices (rows / columns of grid points) so a
  grid rectangle is tested against the polygon with four label comparisons.
- BoundaryOverlap: prefix sums of boundary length along every grid line.
- SegmentTree / LineAggregates: per grid line, values of the 1-cut
  subpolygons hanging off that line, combined by a monoid ((ink, bad) sums,
  min width, count sums or cell counts) and filled lazily in DP order.
"""

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .cells import CellComplex
from .errors import UnsolvedDependency

#############################
# CONTAINMENT
#############################


@dataclass
class ContainmentIndex:
    grid: object
    mx: np.ndarray
    my: np.ndarray


def _cell_array(cx):
    cells = np.zeros((cx.ny, cx.nx), dtype=bool)
    for i, j in cx.cells_of(cx.inside):
        cells[j, i] = True
    return cells


def build_containment(poly, grid=None, cx=None):
    """Label matrices: equal labels on a row (column) mean the segment lies in P."""
    cx = cx or CellComplex(poly, grid)
    cells = _cell_array(cx)
    padded_rows = np.zeros((cx.ny + 2, cx.nx), dtype=bool)
    padded_rows[1:-1] = cells
    h_in = padded_rows[:-1] | padded_rows[1:]
    padded_cols = np.zeros((cx.ny, cx.nx + 2), dtype=bool)
    padded_cols[:, 1:-1] = cells
    v_in = padded_cols[:, :-1] | padded_cols[:, 1:]
    mx = np.zeros((cx.ny + 1, cx.nx + 1), dtype=np.int64)
    mx[:, 1:] = np.cumsum(~h_in, axis=1)
    my = np.zeros((cx.ny + 1, cx.nx + 1), dtype=np.int64)
    my[1:, :] = np.cumsum(~v_in, axis=0)
    return ContainmentIndex(cx.grid, mx, my)


def rect_in_polygon(idx, rect):
    """Closed containment of a grid rectangle, from its four sides."""
    xi, yj = idx.grid.index_of_x, idx.grid.index_of_y
    i0, i1 = xi[rect.lo.x], xi[rect.hi.x]
    j0, j1 = yj[rect.lo.y], yj[rect.hi.y]
    return rect_in_polygon_idx(idx, i0, i1, j0, j1)


def rect_in_polygon_idx(idx, i0, i1, j0, j1):
    mx, my = idx.mx, idx.my
    return bool(
        mx[j0, i0] == mx[j0, i1]
        and mx[j1, i0] == mx[j1, i1]
        and my[j0, i0] == my[j1, i0]
        and my[j0, i1] == my[j1, i1]
    )


#############################
# BOUNDARY OVERLAP
#############################

class BoundaryOverlap:
    """Prefix sums of boundary-edge length lying on each grid line."""

    def __init__(self, cx):
        self.grid = cx.grid
        self.xs = np.asarray(cx.grid.xs, dtype=np.int64)
        self.ys = np.asarray(cx.grid.ys, dtype=np.int64)
        inside = cx.inside
        self.h_prefix = []
        for j in range(cx.ny + 1):
            lengths = [
                cx.widths[i] if _is_boundary_h(cx, i, j, inside) else 0 for i in range(cx.nx)
            ]
            self.h_prefix.append(np.concatenate(([0], np.cumsum(lengths, dtype=np.int64))))
        self.v_prefix = []
        for i in range(cx.nx + 1):
            lengths = [
                cx.heights[j] if _is_boundary_v(cx, i, j, inside) else 0 for j in range(cx.ny)
            ]
            self.v_prefix.append(np.concatenate(([0], np.cumsum(lengths, dtype=np.int64))))

    def query(self, line, a, b):
        """line is ("h", y) or ("v", x); a <= b are grid coordinates along it."""
        kind, coord = line
        if kind == "h":
            k = int(np.searchsorted(self.ys, coord))
            along, prefix = self.xs, self.h_prefix
        else:
            k = int(np.searchsorted(self.xs, coord))
            along, prefix = self.ys, self.v_prefix
        ia = int(np.searchsorted(along, a))
        ib = int(np.searchsorted(along, b))
        return int(prefix[k][ib] - prefix[k][ia])

    def along(self, orientation, line, lo, hi):
        """Boundary length on grid line `line` between grid indices lo and hi."""
        prefix = self.h_prefix[line] if orientation == "h" else self.v_prefix[line]
        return int(prefix[hi] - prefix[lo])


def _is_boundary_h(cx, i, j, mask):
    below, above = cx.has(i, j - 1, mask), cx.has(i, j, mask)
    return (below != above) or (below and above and (i, j) in cx.wall_h)


def _is_boundary_v(cx, i, j, mask):
    left, right = cx.has(i - 1, j, mask), cx.has(i, j, mask)
    return (left != right) or (left and right and (i, j) in cx.wall_v)


def boundary_overlap(overlap, line, a, b):
    return overlap.query(line, a, b)


#############################
# SEGMENT TREE
#############################

class SegmentTree:
    """Iterative segment tree over a monoid (combine, neutral)."""

    def __init__(self, size, combine, neutral):
        self.size = max(1, size)
        self.combine = combine
        self.neutral = neutral
        self.tree = [neutral] * (2 * self.size)

    def update(self, pos, value):
        k = pos + self.size
        self.tree[k] = value
        k //= 2
        while k:
            self.tree[k] = self.combine(self.tree[2 * k], self.tree[2 * k + 1])
            k //= 2

    def query(self, lo, hi):
        """Combine of positions [lo, hi)."""
        left, right = self.neutral, self.neutral
        lo += self.size
        hi += self.size
        while lo < hi:
            if lo & 1:
                left = self.combine(left, self.tree[lo])
                lo += 1
            if hi & 1:
                hi -= 1
                right = self.combine(self.tree[hi], right)
            lo //= 2
            hi //= 2
        return self.combine(left, right)

    def get(self, pos):
        return self.tree[pos + self.size]


def _add(a, b):
    return a + b


def _add_pair(a, b):
    return (a[0] + b[0], a[1] + b[1])


MONOIDS = {
    "ink": (_add_pair, (0, 0)),
    "width": (min, math.inf),
    "count": (_add, 0),
    "area": (_add, 0),
}


#############################
# LINE AGGREGATES
#############################

class LineAggregates:
    """Per grid line and side: values of the 1-cut subpolygons hanging off it.

    Chords on one line are disjoint, so each (orientation, line, side) keeps
    its chords sorted by start; values arrive through register() as the DP
    solves them.
    """

    def __init__(self, by_key, objective="ink"):
        self.combine, self.neutral = MONOIDS[objective]
        self.objective = objective
        groups = {}
        self.slot = {}
        self.mask_of = {}
        self.same_region = {}
        for key, sub in by_key.items():
            self.mask_of[key] = sub.mask
            if key.d not in ("LEFT", "DOWN"):
                continue
            self.same_region.setdefault(sub.mask, []).append(key)
            (gi, gj), end = key.g, sub.endpoints[0]
            if key.d == "LEFT":
                group, span = ("h", gj, key.t), (end[0], gi)
            else:
                group, span = ("v", gi, key.t), (end[1], gj)
            groups.setdefault(group, []).append((span, key))
        self.lines = {}
        for group, chords in groups.items():
            chords.sort()
            starts = [span[0] for span, _ in chords]
            ends = [span[1] for span, _ in chords]
            values = SegmentTree(len(chords), self.combine, self.neutral)
            known = SegmentTree(len(chords), _add, 0)
            self.lines[group] = (starts, ends, values, known, [k for _, k in chords])
            for pos, (_, key) in enumerate(chords):
                self.slot[key] = (group, pos)

    def register(self, key, value):
        """Store the value of a solved subpolygon on every chord bounding the same region."""
        for chord in self.same_region.get(self.mask_of.get(key), ()):
            group, pos = self.slot[chord]
            _, _, values, known, _ = self.lines[group]
            values.update(pos, value)
            known.update(pos, 1)

    def fill(self, values):
        """Register known values up front, e.g. cell counts of every region."""
        for key, value in values.items():
            if key in self.slot:
                self.register(key, value)

    def _range(self, orientation, line, side, a, b):
        entry = self.lines.get((orientation, line, side))
        if entry is None:
            return None, 0, 0
        starts, ends = entry[0], entry[1]
        return entry, bisect.bisect_left(starts, a), bisect.bisect_right(ends, b)

    def chords_in(self, orientation, line, side, a, b):
        """Keys of the chords lying within grid-index range [a, b] on a line."""
        entry, lo, hi = self._range(orientation, line, side, a, b)
        return entry[4][lo:hi] if hi > lo else []

    def missing(self, orientation, line, side, a, b):
        """Chords within [a, b] whose value has not been registered yet."""
        entry, lo, hi = self._range(orientation, line, side, a, b)
        if hi <= lo:
            return []
        known, keys = entry[3], entry[4]
        return [keys[p] for p in range(lo, hi) if not known.get(p)]

    def side_aggregate(self, orientation, line, side, a, b):
        """Monoid value of all chords within [a, b]; neutral when none."""
        entry, lo, hi = self._range(orientation, line, side, a, b)
        if hi <= lo:
            return self.neutral
        values, known = entry[2], entry[3]
        if known.query(lo, hi) != hi - lo:
            missing = self.missing(orientation, line, side, a, b)
            raise UnsolvedDependency(f"side values not yet solved: {missing}")
        return values.query(lo, hi)
