"""
Minimum-ink rectangular partitions.

The solver recurses over <=2-cut subpolygons. For a subpolygon Q it fixes
the origin point(s), walks the partner points p with R_op inside Q that the
partner rules admit, tries every cutset shape of R_op, and keeps the
uni-rectangle partition of least ink. Every piece left over must itself be a
<=2-cut subpolygon of P (the 2-cut property).

The pieces of Q - R_op split in two groups. Pieces touching a corner of R_op
are found by a flood from the cells around the corners and looked up in the
table of decoded keys. Pieces hanging off a side of R_op strictly inside it
are 1-cut chords of that grid line, read as one range query on the line
aggregates. Cut length comes from prefix sums of boundary overlap.

Engine holds the machinery shared with the thick solvers; InkSolver adds the
objective, the incremental 2R sweep and reconstruction.
"""

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .cells import ONE_CUT, QUADRANT_OF, ROOT, TWO_CUT, CellComplex, SubKey, cut_runs, label_cells
from .config import assertions_enabled, get_logger
from .errors import CycleDetected, UnsolvedDependency
from .geometry import PartitionResult, Rect, coarse_grid, require_valid, segment_length
from .preprocess import BoundaryOverlap, LineAggregates, build_containment, rect_in_polygon_idx

logger = get_logger(__name__)

INF = float("inf")

# x and y sign of the wedge quadrant of a 2-cut key
WEDGE_SIGNS = {"UR": (1, 1), "UL": (-1, 1), "DL": (-1, -1), "DR": (1, -1)}

#############################
# TYPES
#############################


class UniChoice(NamedTuple):
    origin: tuple
    partner: tuple
    shape: int


class Shape(NamedTuple):
    id: int
    edges: tuple
    length: int = 0


@dataclass
class UniEval:
    """One evaluated uni-rectangle partition (Q, R_op, L)."""

    rect: tuple
    children: list
    sides: list
    cut_length: int
    runs: list
    non_incident: int


class Candidate(NamedTuple):
    rank: tuple
    value: tuple
    choice: UniChoice
    parts: tuple


@dataclass
class SweepLine:
    """State of one partner line of a 2R sweep, handed from origin to origin.

    carried is the best partition whose pieces move with the origin only
    through the piece beyond the far corner on the origin's line; special
    holds (partner, shape id) pairs that are re-evaluated at every origin.
    """

    size: int
    carried: Candidate = None
    special: list = field(default_factory=list)
    best: Candidate = None


@dataclass
class Frame:
    """Axis reflection that maps a quadrant direction onto up-right."""

    flip_x: bool
    flip_y: bool

    @classmethod
    def for_direction(cls, direction):
        return cls(direction in ("UL", "DL"), direction in ("DL", "DR"))

    def apply(self, i, j, nx, ny):
        return (nx - i if self.flip_x else i, ny - j if self.flip_y else j)


def quadrant(o, p):
    """Quadrant index of p around o (0 UR, 1 UL, 2 DL, 3 DR)."""
    if p[0] > o[0]:
        return 0 if p[1] > o[1] else 3
    return 1 if p[1] > o[1] else 2


def rect_indices(o, p):
    return min(o[0], p[0]), max(o[0], p[0]), min(o[1], p[1]), max(o[1], p[1])


def rect_sides(rect):
    """(orientation, line, lo, hi, outward side) of the four sides of a grid rectangle."""
    i0, i1, j0, j1 = rect
    return (("h", j0, i0, i1, False), ("h", j1, i0, i1, True), ("v", i0, j0, j1, False), ("v", i1, j0, j1, True))


def corner_points(rect):
    i0, i1, j0, j1 = rect
    return ((i0, j0), (i1, j0), (i1, j1), (i0, j1))


def _sign(v):
    return (v > 0) - (v < 0)


def _better(a, b):
    if a is None:
        return b
    if b is None or a.rank <= b.rank:
        return a
    return b


#############################
# ENGINE
#############################

class Engine:
    """Subpolygon table, partner enumeration and uni-rectangle evaluation."""

    def __init__(self, poly, grid=None, incidence="vertex", objective="ink", assertions=None):
        self.poly = poly
        self.cx = CellComplex(poly, grid)
        self.by_key, self.by_mask = self.cx.subpolygon_table()
        self.containment = build_containment(poly, cx=self.cx)
        self.overlap = BoundaryOverlap(self.cx)
        self.aggregates = LineAggregates(self.by_key, objective)
        self.areas = LineAggregates(self.by_key, "area")
        self.areas.fill({key: sub.mask.bit_count() for key, sub in self.by_key.items()})
        self.incidence = incidence
        self.targets = self.cx.reflex_points if incidence == "vertex" else self.cx.boundary_points
        self.assertions = assertions_enabled() if assertions is None else assertions
        self.stats = {"states": 0, "origins": 0, "triplets": 0, "shapes": 0, "rejected": 0, "types": {}}
        self._origins = {}
        self._spans = {}
        self._closure = {}

    #############################
    # ORIGINS AND KITTY CORNERS
    #############################

    def origin_points(self, sub):
        cached = self._origins.get(sub.key)
        if cached is not None:
            return cached
        cx = self.cx
        if sub.kind == "P":
            low = min(self.poly.outer, key=lambda v: (v.y, v.x))
            origins = [(cx.grid.index_of_x[low.x], cx.grid.index_of_y[low.y])]
        elif sub.kind in ("2C", "2R"):
            origins = [sub.key.g]
        elif sub.kind == "1C":
            origins = [e for e in sub.endpoints if 1 in (cx.sectors(*e, sub.mask) or [])][:1]
        else:
            (gi, gj), d = sub.key.g, sub.key.d
            if d == "LEFT":
                origins = [(i, gj) for i in range(cx.nx + 1) if cx.touches(i, gj, sub.mask)]
            else:
                origins = [(gi, j) for j in range(cx.ny + 1) if cx.touches(gi, j, sub.mask)]
        self._origins[sub.key] = origins
        return origins

    def corner_quadrant(self, sub, o):
        """Quadrant of Q forming a 90 degree corner at o, if any."""
        if sub.kind in ("2C", "2R"):
            return QUADRANT_OF[sub.key.d]
        cx = self.cx
        quads = cx.quadrants(o[0], o[1], sub.mask)
        for q in range(4):
            if quads[q] and not cx.arm_open(o[0], o[1], q, sub.mask) and not cx.arm_open(o[0], o[1], (q - 1) % 4, sub.mask):
                return q
        return None

    def kitty_corner(self, sub, o=None):
        o = o if o is not None else self.origin_points(sub)[0]
        q = self.corner_quadrant(sub, o)
        if q is None:
            return None
        sx = 1 if q in (0, 3) else -1
        sy = 1 if q in (0, 1) else -1
        hx, _ = self.cx.boundary_walk(o[0], o[1], (sx, 0), sub.mask)
        _, vy = self.cx.boundary_walk(o[0], o[1], (0, sy), sub.mask)
        if hx == o[0] or vy == o[1]:
            return None
        return hx, vy

    def closure(self, sub):
        """2Cc, 2Ch or 2Co by how many of the corners t, t' of R_o-kappa are reflex; None off vertices."""
        if sub.key in self._closure:
            return self._closure[sub.key]
        label = None
        o = sub.key.g
        kappa = self.kitty_corner(sub, o)
        if kappa is not None:
            reflex = 0
            for point in ((kappa[0], o[1]), (o[0], kappa[1])):
                sizes = self.cx.sectors(point[0], point[1], sub.mask)
                if not sizes:
                    reflex = None
                    break
                if max(sizes) >= 3:
                    reflex += 1
                elif 1 not in sizes:
                    reflex = None
                    break
            if reflex is not None:
                label = ("2Cc", "2Ch", "2Co")[reflex]
        self._closure[sub.key] = label
        return label

    #############################
    # PARTNERS
    #############################

    def partners(self, sub, o):
        """Grid points p with R_op inside Q, quadrant by quadrant, as a staircase walk."""
        cx, mask = self.cx, sub.mask
        out = []
        for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
            limit = cx.ny if sy > 0 else 0
            pi = o[0] + sx
            while 0 <= pi <= cx.nx:
                pj = o[1] + sy
                found = False
                while (pj <= limit) if sy > 0 else (pj >= limit):
                    i0, i1, j0, j1 = rect_indices(o, (pi, pj))
                    if not rect_in_polygon_idx(self.containment, i0, i1, j0, j1):
                        break
                    rmask = cx.rect_mask(i0, i1, j0, j1)
                    if rmask & ~mask or cx.interior_closed(rmask):
                        break
                    out.append((pi, pj))
                    found = True
                    pj += sy
                if not found:
                    break
                limit = pj - sy
                pi += sx
        return out

    def side_touches(self, sub, o, p):
        """A side of R_op incident to p meets the boundary of Q in a segment."""
        cx, mask = self.cx, sub.mask
        i0, i1, j0, j1 = rect_indices(o, p)
        pi, pj = p
        for i in range(i0, i1):
            if not cx.h_open(i, pj, mask):
                return True
        for j in range(j0, j1):
            if not cx.v_open(pi, j, mask):
                return True
        return False

    def admitted(self, sub, o, p):
        kind = sub.kind
        if kind == "P":
            return True
        if kind == "1R":
            (gi, gj), end = sub.key.g, sub.endpoints[0]
            i0, i1, j0, j1 = rect_indices(o, p)
            if sub.key.d == "LEFT":
                # R_op strictly inside the cut's span leaves both cut ends uncovered
                return gj in (j0, j1) and min(i1, gi) > max(i0, end[0]) and not (end[0] < i0 and i1 < gi)
            return gi in (i0, i1) and min(j1, gj) > max(j0, end[1]) and not (end[1] < j0 and j1 < gj)
        if self.side_touches(sub, o, p):
            return True
        kappa = self.kitty_corner(sub, o)
        if kappa is None:
            return True
        if kind in ("2C", "1C"):
            ki0, ki1, kj0, kj1 = rect_indices(o, kappa)
            return not (ki0 < p[0] < ki1 and kj0 < p[1] < kj1)
        qk, qp = quadrant(o, kappa), quadrant(o, p)
        return qp != qk and qp != (qk + 2) % 4

    def triplet_type(self, sub, o, p):
        """Label of an admitted triplet: subpolygon type, refined by the rule that admits p."""
        kind = sub.kind
        if kind in ("P", "1R"):
            return kind
        if self.side_touches(sub, o, p):
            return kind + "/side"
        if kind == "2R":
            return "2Rv" if self.sweep_side(sub, o, p) else "2Ri"
        if kind == "2C":
            return self.closure(sub) or "2C"
        return kind

    def count_triplet(self, sub, o, p, label=None):
        self.stats["triplets"] += 1
        label = label or self.triplet_type(sub, o, p)
        types = self.stats["types"]
        types[label] = types.get(label, 0) + 1

    def shapes(self, sub, o, p):
        """Cutset shapes of R_op: per corner, which outward extensions are drawn."""
        cx, mask = self.cx, sub.mask
        xs, ys = cx.grid.xs, cx.grid.ys
        i0, i1, j0, j1 = rect_indices(o, p)
        corners = (
            ((i0, j0), (("h", i0, j0), (-1, 0)), (("v", i0, j0), (0, -1))),
            ((i1, j0), (("h", i1 - 1, j0), (1, 0)), (("v", i1, j0), (0, -1))),
            ((i1, j1), (("h", i1 - 1, j1), (1, 0)), (("v", i1, j1 - 1), (0, 1))),
            ((i0, j1), (("h", i0, j1), (-1, 0)), (("v", i0, j1 - 1), (0, 1))),
        )
        per_corner = []
        for point, *arms in corners:
            found = []
            for side_edge, step in arms:
                kind, ei, ej = side_edge
                free = cx.h_open(ei, ej, mask) if kind == "h" else cx.v_open(ei, ej, mask)
                hit = cx.ray(point[0], point[1], step, mask) if free else None
                if hit:
                    end, edges = hit
                    length = abs(xs[end[0]] - xs[point[0]]) + abs(ys[end[1]] - ys[point[1]])
                    found.append((tuple(edges), length))
                else:
                    found.append(None)
            options = [(0, (), 0)]
            if found[0]:
                options.append((1, *found[0]))
            if found[1]:
                options.append((2, *found[1]))
            if found[0] and found[1]:
                options.append((3, found[0][0] + found[1][0], found[0][1] + found[1][1]))
            per_corner.append(options)
        shapes = [Shape(0, (), 0)]
        for c, options in enumerate(per_corner):
            shapes = [
                Shape(s.id + code * 4 ** c, s.edges + edges, s.length + length)
                for s in shapes
                for code, edges, length in options
            ]
        return shapes

    def candidates(self, sub, o, skip_swept=False):
        """Admitted partners of o in Q with their cutset shapes."""
        for p in self.partners(sub, o):
            if skip_swept and self.sweep_side(sub, o, p):
                continue
            if self.admitted(sub, o, p):
                yield p, self.shapes(sub, o, p)

    #############################
    # EVALUATION
    #############################

    def cut_spans(self, sub):
        """Boundary cuts of a subpolygon as (orientation, line, lo, hi) in grid indices."""
        spans = self._spans.get(sub.key)
        if spans is not None:
            return spans
        key = sub.key
        if key.d in ONE_CUT:
            (gi, gj), end = key.g, sub.endpoints[0]
            spans = [("h", gj, end[0], gi)] if key.d == "LEFT" else [("v", gi, end[1], gj)]
        elif key.d in TWO_CUT:
            i, j = key.g
            horizontal, vertical = sub.endpoints
            spans = [
                ("h", j, min(i, horizontal[0]), max(i, horizontal[0])),
                ("v", i, min(j, vertical[1]), max(j, vertical[1])),
            ]
        else:
            spans = []
        self._spans[key] = spans
        return spans

    def cut_length(self, sub, rect, shape):
        """Free length of the sides of R plus the extensions of the shape."""
        xs, ys = self.cx.grid.xs, self.cx.grid.ys
        total = shape.length
        spans = self.cut_spans(sub)
        for orientation, line, lo, hi, _ in rect_sides(rect):
            along = xs if orientation == "h" else ys
            total += along[hi] - along[lo] - self.overlap.along(orientation, line, lo, hi)
            for c_orientation, c_line, c_lo, c_hi in spans:
                if c_orientation == orientation and c_line == line and min(hi, c_hi) > max(lo, c_lo):
                    total -= along[min(hi, c_hi)] - along[max(lo, c_lo)]
        return total

    def side_ranges(self, sub, rect):
        """Chord ranges strictly inside the sides of R, split around the subpolygon's own cut."""
        own = self.cut_spans(sub) if sub.key.d in ONE_CUT else ()
        ranges = []
        for orientation, line, lo, hi, side in rect_sides(rect):
            a, b = lo + 1, hi - 1
            if b <= a:
                continue
            split = next((s for s in own if s[0] == orientation and s[1] == line and a <= s[2] and s[3] <= b), None)
            if split is None:
                ranges.append((orientation, line, side, a, b))
            else:
                ranges.append((orientation, line, side, a, split[2]))
                ranges.append((orientation, line, side, split[3], b))
        return ranges

    def evaluate(self, sub, o, p, shape):
        """Corner pieces, side chord ranges, cut length and incidence of one uni-rectangle partition, or None."""
        cx = self.cx
        self.stats["shapes"] += 1
        rect = rect_indices(o, p)
        i0, i1, j0, j1 = rect
        rmask = cx.rect_mask(i0, i1, j0, j1)
        region = sub.mask & ~rmask
        ro_cut, uo_cut = cx.cut_masks(shape.edges)
        ro, uo = cx.ro & ~ro_cut, cx.uo & ~uo_cut
        seeds = 0
        for ci, cj in corner_points(rect):
            for a, b in ((ci, cj), (ci - 1, cj), (ci - 1, cj - 1), (ci, cj - 1)):
                if cx.has(a, b, region):
                    seeds |= 1 << cx.cell(a, b)
        children, covered = [], rmask.bit_count()
        while seeds:
            piece = cx.flood(seeds & -seeds, region, ro, uo)
            seeds &= ~piece
            key = self.by_mask.get(piece)
            if key is None:
                self.stats["rejected"] += 1
                return None
            children.append(key)
            covered += piece.bit_count()
        sides = self.side_ranges(sub, rect)
        covered += sum(self.areas.side_aggregate(*r) for r in sides)
        if covered != sub.mask.bit_count():
            # some piece touches neither a corner nor a single side
            self.stats["rejected"] += 1
            return None
        edges = self._free_side_edges(sub.mask, i0, i1, j0, j1) + list(shape.edges)
        runs = self._runs(edges)
        g = sub.key.g if sub.kind == "2R" else None
        non_incident = sum(1 for a, b in runs if not (a in self.targets or b in self.targets or g in (a, b)))
        ev = UniEval(rect, children, sides, self.cut_length(sub, rect, shape), runs, non_incident)
        if self.assertions:
            self._check_pieces(sub, rmask, ro, uo, ev)
        return ev

    def chords_of(self, ev):
        """Chord keys behind the side ranges of an evaluation."""
        return [k for r in ev.sides for k in self.areas.chords_in(*r)]

    def _check_pieces(self, sub, rmask, ro, uo, ev):
        cx = self.cx
        pieces = cx.components(sub.mask & ~rmask, ro, uo)
        found = [self.by_key[k].mask for k in ev.children + self.chords_of(ev)]
        assert sorted(found) == sorted(pieces), f"pieces of {ev.rect} in {sub.key} disagree with a full flood"
        total = cx.perimeter(rmask) + sum(cx.perimeter(pc) for pc in pieces) - cx.perimeter(sub.mask)
        assert total // 2 == ev.cut_length, f"cut length {ev.cut_length} != perimeter accounting {total // 2}"

    def _free_side_edges(self, mask, i0, i1, j0, j1):
        cx = self.cx
        edges = [("h", i, j) for j in (j0, j1) for i in range(i0, i1) if cx.h_open(i, j, mask)]
        edges += [("v", i, j) for i in (i0, i1) for j in range(j0, j1) if cx.v_open(i, j, mask)]
        return edges

    def _runs(self, edges):
        """Merge cut edges into maximal collinear runs (index-space endpoints)."""
        lines = {}
        for kind, i, j in edges:
            if kind == "h":
                lines.setdefault(("h", j), set()).add(i)
            else:
                lines.setdefault(("v", i), set()).add(j)
        boundary = self.cx.boundary_points
        runs = []
        for (kind, line), positions in sorted(lines.items()):
            order = sorted(positions)
            start = prev = order[0]
            for pos in order[1:] + [None]:
                joint = (prev + 1, line) if kind == "h" else (line, prev + 1)
                if pos == prev + 1 and joint not in boundary:
                    prev = pos
                    continue
                if kind == "h":
                    runs.append(((start, line), (prev + 1, line)))
                else:
                    runs.append(((line, start), (line, prev + 1)))
                if pos is not None:
                    start = prev = pos
        return runs

    #############################
    # 2R SWEEP LINES
    #############################

    def sweep_side(self, sub, o, p):
        """"B" for a partner seen across the horizontal cut of a 2R subpolygon, "A" across the vertical one."""
        if sub.kind != "2R":
            return None
        sx, sy = WEDGE_SIGNS[sub.key.d]
        dx, dy = _sign(p[0] - o[0]), _sign(p[1] - o[1])
        if dx == sx and dy == -sy and (sub.endpoints[0][0] - p[0]) * sx >= 0:
            return "B"
        if dx == -sx and dy == sy and (sub.endpoints[1][1] - p[1]) * sy >= 0:
            return "A"
        return None

    def sweep_lines(self, sub):
        """Cut-visible partners of a 2R origin: columns ("B", x) and rows ("A", y), nearest first."""
        o = sub.key.g
        lines = {}
        for p in self.partners(sub, o):
            side = self.sweep_side(sub, o, p)
            if side == "B":
                lines.setdefault(("B", p[0]), []).append(p)
            elif side == "A":
                lines.setdefault(("A", p[1]), []).append(p)
        return lines

    def sweep_neighbour(self, key, side):
        """2R key one grid step back along the sweep, or None off the table."""
        (i, j), (sx, sy) = key.g, WEDGE_SIGNS[key.d]
        g = (i, j - sy) if side == "B" else (i - sx, j)
        nb = SubKey(g, key.d, False)
        return nb if nb in self.by_key else None

    def newest_partner(self, key, side, line):
        (i, j), (sx, sy) = key.g, WEDGE_SIGNS[key.d]
        return (line, j - sy) if side == "B" else (i - sx, line)

    def line_structure(self, sub, o, p, side, shape_id, ev):
        """(generic, moving key) of a swept partition.

        The moving piece lies beyond the far corner of R on the origin's line.
        A partition is generic when it changes with the origin only through
        that piece: no extension at the corners on the origin's line, the
        moving piece stays on the origin's side of p, and no chord hangs off
        the sides of R that grow with the origin.
        """
        cx = self.cx
        rect = rect_indices(o, p)
        sx, sy = WEDGE_SIGNS[sub.key.d]
        points = corner_points(rect)
        if side == "B":
            on_line = [c for c in range(4) if points[c][1] == o[1]]
            seed = (p[0] if sx > 0 else p[0] - 1, o[1] - 1 if sy > 0 else o[1])
            band = cx.rect_mask(0, cx.nx, 0, p[1]) if sy > 0 else cx.rect_mask(0, cx.nx, p[1], cx.ny)
            parallel = "v"
        else:
            on_line = [c for c in range(4) if points[c][0] == o[0]]
            seed = (o[0] - 1 if sx > 0 else o[0], p[1] if sy > 0 else p[1] - 1)
            band = cx.rect_mask(0, p[0], 0, cx.ny) if sx > 0 else cx.rect_mask(p[0], cx.nx, 0, cx.ny)
            parallel = "h"
        moving = None
        if cx.has(seed[0], seed[1], sub.mask):
            bit = 1 << cx.cell(*seed)
            moving = next((k for k in ev.children if self.by_key[k].mask & bit), None)
        generic = all((shape_id // 4 ** c) % 4 == 0 for c in on_line)
        if generic and moving is not None and self.by_key[moving].mask & band:
            generic = False
        if generic and any(self.areas.chords_in(*r) for r in ev.sides if r[0] == parallel):
            generic = False
        return generic, moving

    #############################
    # OUTPUT
    #############################

    def rect_of(self, rect):
        i0, i1, j0, j1 = rect
        g = self.cx.grid
        return Rect(g.point(i0, j0), g.point(i1, j1))

    def result(self, objective, value, rect_indices_list, stats=None):
        rects = sorted(self.rect_of(r) for r in rect_indices_list)
        labels = label_cells(self.cx, rects)
        cuts = cut_runs(self.cx, labels)
        return PartitionResult(objective, Fraction(value), len(rects), cuts, rects, 1, dict(stats or self.stats))

    def coarse_origins(self, direction):
        """Interior grid points on the coarse grid G' of a quadrant direction."""
        cg = coarse_grid(self.poly, direction)
        xi, yj = self.cx.grid.index_of_x, self.cx.grid.index_of_y
        frame = Frame.for_direction(direction)
        points = [
            (xi[x], yj[y])
            for x in cg.xs
            for y in cg.ys
            if x in xi and y in yj and self.cx.touches(xi[x], yj[y]) and not self.cx.is_boundary(xi[x], yj[y])
        ]
        return sorted(points, key=lambda pt: frame.apply(pt[0], pt[1], self.cx.nx, self.cx.ny))


#############################
# INK SOLVER
#############################

class InkSolver:
    """Memoized minimum-ink DP over <=2-cut subpolygons."""

    def __init__(self, poly, grid=None, assertions=None):
        self.engine = Engine(poly, grid, "vertex", "ink", assertions)
        self.memo = {}
        self._active = set()
        self._tables = {}
        self._lines = {}

    def solve(self, key=ROOT):
        """(ink, non-incident cut count) of a subpolygon, lexicographically minimal."""
        found = self.memo.get(key)
        if found is not None:
            return found[0]
        if key in self._active:
            raise CycleDetected(f"subpolygon {key} depends on itself")
        self._active.add(key)
        engine = self.engine
        sub = engine.by_key[key]
        engine.stats["states"] += 1
        if engine.assertions:
            assert engine.cx.cut_chain(sub.mask) is not None, f"{key} is not a <=2-cut subpolygon"
        swept = sub.kind == "2R"
        best = None
        for oi, o in enumerate(engine.origin_points(sub)):
            engine.stats["origins"] += 1
            for p, shapes in engine.candidates(sub, o, skip_swept=swept):
                engine.count_triplet(sub, o, p)
                for shape in shapes:
                    best = _better(best, self.candidate(sub, o, p, shape, oi))
        if swept:
            for cand in self.sweep_table(key).values():
                best = _better(best, cand)
        self._active.discard(key)
        value = best.value if best is not None else (INF, INF)
        self.memo[key] = (value, best.choice if best else None, best.parts if best else None)
        engine.aggregates.register(key, value)
        return value

    def candidate(self, sub, o, p, shape, oi=0):
        value, parts, _ = self._value(sub, o, p, shape)
        if value is None:
            return None
        return Candidate((value, oi, p[1], p[0], shape.id), value, UniChoice(o, p, shape.id), parts)

    def value_of(self, sub, o, p, shape):
        value, parts, _ = self._value(sub, o, p, shape)
        return value, parts

    def _value(self, sub, o, p, shape):
        ev = self.engine.evaluate(sub, o, p, shape)
        if ev is None:
            return None, None, None
        ink, bad = ev.cut_length, ev.non_incident
        for child in ev.children:
            c_ink, c_bad = self.solve(child)
            ink += c_ink
            bad += c_bad
        for chord_range in ev.sides:
            s_ink, s_bad = self.side_value(chord_range)
            ink += s_ink
            bad += s_bad
        return (ink, bad), (ev.rect, tuple(ev.children), tuple(ev.sides)), ev

    def side_value(self, chord_range):
        """Summed (ink, bad) of the chord pieces in a range, solving the ones not known yet."""
        aggregates = self.engine.aggregates
        try:
            return aggregates.side_aggregate(*chord_range)
        except UnsolvedDependency:
            for key in aggregates.missing(*chord_range):
                self.solve(key)
            return aggregates.side_aggregate(*chord_range)

    def ink_of_uni(self, sub, o, p, shape):
        """Ink of one uni-rectangle partition, children solved on demand."""
        value, _ = self.value_of(sub, o, p, shape)
        return None if value is None else value[0]

    #############################
    # 2R SWEEP
    #############################

    def sweep_table(self, key):
        """Best cut-visible partner per partner line of a 2R subpolygon.

        A column of partners across the horizontal cut is carried over from
        the origin one step back across that cut, a row across the vertical
        cut from the origin one step back across the vertical cut. Per line
        only the newest partner, the carried best and the special partners
        are evaluated at this origin.
        """
        table = self._tables.get(key)
        if table is not None:
            return table
        sub = self.engine.by_key[key]
        table = {}
        for (side, line), partners in sorted(self.engine.sweep_lines(sub).items()):
            state = self._advance(sub, side, line, partners)
            self._lines[(key, side, line)] = state
            if state.best is not None:
                table[(side, line)] = state.best
        self._tables[key] = table
        return table

    def _advance(self, sub, side, line, partners):
        engine = self.engine
        key = sub.key
        prev = None
        nb = engine.sweep_neighbour(key, side)
        if nb is not None and engine.by_key[nb].mask & ~sub.mask:
            nb = None
        if nb is not None:
            self.sweep_table(nb)
            prev = self._lines.pop((nb, side, line), None)
        state = None
        if prev is not None and prev.size + 1 == len(partners) and partners[0] == engine.newest_partner(key, side, line):
            state = self._step(sub, side, partners, prev)
        if state is None:
            state = self._scan(sub, side, partners)
        if engine.assertions:
            direct = self._scan(sub, side, partners, count=False)
            found = state.best.value if state.best else None
            expected = direct.best.value if direct.best else None
            assert found == expected, f"sweep of {key} on {side}{line}: {found} != direct {expected}"
        return state

    def _swept(self, sub, o, p, shape, side):
        value, parts, ev = self._value(sub, o, p, shape)
        if value is None:
            return None, False
        generic, _ = self.engine.line_structure(sub, o, p, side, shape.id, ev)
        return Candidate((value, 0, p[1], p[0], shape.id), value, UniChoice(o, p, shape.id), parts), generic

    def _scan(self, sub, side, partners, count=True):
        o = sub.key.g
        state = SweepLine(len(partners))
        for p in partners:
            if count:
                self.engine.count_triplet(sub, o, p, "2Rv")
            for shape in self.engine.shapes(sub, o, p):
                cand, generic = self._swept(sub, o, p, shape, side)
                if cand is None:
                    continue
                state.best = _better(state.best, cand)
                if generic:
                    state.carried = _better(state.carried, cand)
                else:
                    state.special.append((p, shape.id))
        return state

    def _step(self, sub, side, partners, prev):
        engine = self.engine
        o = sub.key.g
        state = SweepLine(len(partners))
        newest = partners[0]
        engine.count_triplet(sub, o, newest, "2Rv")
        for shape in engine.shapes(sub, o, newest):
            cand, generic = self._swept(sub, o, newest, shape, side)
            if cand is None:
                continue
            state.best = _better(state.best, cand)
            if generic:
                state.carried = _better(state.carried, cand)
            else:
                state.special.append((newest, shape.id))
        again = [] if prev.carried is None else [prev.carried.choice[1:]]
        for k, (p, shape_id) in enumerate(again + prev.special):
            engine.count_triplet(sub, o, p, "2Rv")
            shape = next((s for s in engine.shapes(sub, o, p) if s.id == shape_id), None)
            cand, generic = self._swept(sub, o, p, shape, side) if shape else (None, False)
            if k < len(again):
                if cand is None or not generic:
                    return None
                state.carried = _better(state.carried, cand)
            else:
                state.special.append((p, shape_id))
            state.best = _better(state.best, cand)
        return state

    def sweep_2rv(self, direction):
        """Best cut-visible partner of every coarse-grid origin of one quadrant direction."""
        out = {}
        for o in self.engine.coarse_origins(direction):
            key = SubKey(o, direction, False)
            if key in self.engine.by_key:
                out[o] = min(self.sweep_table(key).values(), key=lambda c: c.rank, default=None)
        return out

    def reconstruct(self, key=ROOT):
        """Rectangles of the optimal partition, by walking the stored choices."""
        rects, stack, seen = [], [key], set()
        while stack:
            k = stack.pop()
            if k in seen:
                raise CycleDetected(f"subpolygon {k} reached twice during reconstruction")
            seen.add(k)
            if k not in self.memo:
                self.solve(k)
            _, choice, parts = self.memo[k]
            if choice is None:
                raise CycleDetected(f"subpolygon {k} has no partition")
            rect, children, sides = parts
            rects.append(rect)
            stack.extend(children)
            for chord_range in sides:
                stack.extend(self.engine.aggregates.chords_in(*chord_range))
        return rects


def ink_partition(poly, assertions=None):
    """Minimum-ink rectangular partition of a hole-free polygon."""
    require_valid(poly, hole_free=True)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20000))
    try:
        solver = InkSolver(poly, assertions=assertions)
        value = solver.solve(ROOT)
        rects = solver.reconstruct(ROOT)
    finally:
        sys.setrecursionlimit(old_limit)
    result = solver.engine.result("ink", value[0], rects)
    total = sum(segment_length(c) for c in result.cuts)
    if total != value[0]:
        raise CycleDetected(f"reconstructed cut length {total} differs from the optimum {value[0]}")
    logger.info(
        "ink solve: value=%s rectangles=%d states=%d triplets=%d",
        value[0], result.count, solver.engine.stats["states"], solver.engine.stats["triplets"],
    )
    return result
