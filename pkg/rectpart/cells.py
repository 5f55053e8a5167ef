"""
Cell complex of a rectilinear polygon over a grid.

The polygon's rings are rasterised onto the cells of a grid: cells are
numbered j*nx+i and regions are Python int bitmasks over them. Unit grid
edges traversed by a ring with interior cells on both sides become walls,
which is how weakly-simple boundary walks (zero-width chains) are kept
apart. Subpolygon keys, point classification, flood fill and the maximal
cut extraction all work on this representation.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InvalidKey
from .geometry import Point, canonical_grid, ring_edges

ONE_CUT = ("LEFT", "DOWN")
TWO_CUT = ("UR", "UL", "DL", "DR")

# quadrant index around a grid point: 0 top-right, 1 top-left, 2 bottom-left, 3 bottom-right
QUADRANT_OF = {"UR": 0, "UL": 1, "DL": 2, "DR": 3}
# arm k separates quadrant k from quadrant k+1: 0 up, 1 left, 2 down, 3 right
ARM_STEP = {0: (0, 1), 1: (-1, 0), 2: (0, -1), 3: (1, 0)}
STEP_ARM = {v: k for k, v in ARM_STEP.items()}
# the two arms bounding each quadrant
QUADRANT_ARMS = {0: (3, 0), 1: (1, 0), 2: (1, 2), 3: (3, 2)}


class SubKey(NamedTuple):
    g: tuple
    d: str
    t: bool


ROOT = SubKey((-1, -1), "ROOT", True)


@dataclass
class SubPolygon:
    key: SubKey
    mask: int
    kind: str
    cuts: list = field(default_factory=list)
    cut_edges: list = field(default_factory=list)
    endpoints: tuple = ()


class CellComplex:
    """Polygon rasterised on a grid, with open-edge masks for flood fill."""

    def __init__(self, poly, grid=None):
        self.poly = poly
        self.grid = grid or canonical_grid(poly)
        xs, ys = self.grid.xs, self.grid.ys
        self.nx, self.ny = len(xs) - 1, len(ys) - 1
        self.ncells = self.nx * self.ny
        self.full = (1 << self.ncells) - 1
        self.widths = [xs[i + 1] - xs[i] for i in range(self.nx)]
        self.heights = [ys[j + 1] - ys[j] for j in range(self.ny)]
        self.row_masks = [((1 << self.nx) - 1) << (j * self.nx) for j in range(self.ny)]
        col = sum(1 << (j * self.nx) for j in range(self.ny))
        self.col_masks = [col << i for i in range(self.nx)]
        self._rasterise()
        self._band = {}
        self._rows = {}
        self._reflex = None
        self._boundary = None

    #############################
    # RASTERISATION
    #############################

    def _rasterise(self):
        xi, yj = self.grid.index_of_x, self.grid.index_of_y
        vcount, hcount = {}, {}
        for ring in self.poly.rings:
            for a, b in ring_edges(ring):
                if a.x == b.x:
                    i = xi[a.x]
                    lo, hi = sorted((yj[a.y], yj[b.y]))
                    for j in range(lo, hi):
                        vcount[(i, j)] = vcount.get((i, j), 0) + 1
                else:
                    j = yj[a.y]
                    lo, hi = sorted((xi[a.x], xi[b.x]))
                    for i in range(lo, hi):
                        hcount[(i, j)] = hcount.get((i, j), 0) + 1
        inside = 0
        for j in range(self.ny):
            on = False
            for i in range(self.nx):
                if vcount.get((i, j), 0) % 2:
                    on = not on
                if on:
                    inside |= 1 << (j * self.nx + i)
        self.inside = inside
        self.wall_v = {e for e in vcount if 0 < e[0] < self.nx and self.has(e[0] - 1, e[1]) and self.has(*e)}
        self.wall_h = {e for e in hcount if 0 < e[1] < self.ny and self.has(e[0], e[1] - 1) and self.has(*e)}
        ro = uo = 0
        for j in range(self.ny):
            for i in range(self.nx):
                if not self.has(i, j):
                    continue
                if i + 1 < self.nx and self.has(i + 1, j) and (i + 1, j) not in self.wall_v:
                    ro |= 1 << self.cell(i, j)
                if j + 1 < self.ny and self.has(i, j + 1) and (i, j + 1) not in self.wall_h:
                    uo |= 1 << self.cell(i, j)
        self.ro, self.uo = ro, uo

    def cell(self, i, j):
        return j * self.nx + i

    def has(self, i, j, mask=None):
        if not (0 <= i < self.nx and 0 <= j < self.ny):
            return False
        return bool(((self.inside if mask is None else mask) >> (j * self.nx + i)) & 1)

    def coord(self, i, j):
        return self.grid.point(i, j)

    def cells_of(self, mask):
        while mask:
            low = mask & -mask
            c = low.bit_length() - 1
            yield c % self.nx, c // self.nx
            mask ^= low

    #############################
    # MASK ARITHMETIC
    #############################

    def rect_mask(self, i0, i1, j0, j1):
        """Cells with column in [i0, i1) and row in [j0, j1)."""
        band = self._band.get((i0, i1))
        if band is None:
            band = 0
            for i in range(i0, i1):
                band |= self.col_masks[i]
            self._band[(i0, i1)] = band
        rows = self._rows.get((j0, j1))
        if rows is None:
            rows = 0
            for j in range(j0, j1):
                rows |= self.row_masks[j]
            self._rows[(j0, j1)] = rows
        return band & rows

    def flood(self, seed, region, ro=None, uo=None):
        ro = self.ro if ro is None else ro
        uo = self.uo if uo is None else uo
        nx = self.nx
        cur = seed & region
        while True:
            nxt = cur | ((cur & ro) << 1) | ((cur >> 1) & ro) | ((cur & uo) << nx) | ((cur >> nx) & uo)
            nxt &= region
            if nxt == cur:
                return cur
            cur = nxt

    def components(self, region, ro=None, uo=None):
        pieces = []
        while region:
            seed = region & -region
            piece = self.flood(seed, region, ro, uo)
            pieces.append(piece)
            region &= ~piece
        return pieces

    def perimeter(self, mask):
        """Boundary length of a region; both sides of a wall count."""
        ro, uo, nx = self.ro, self.uo, self.nx
        right_b = mask & ~(ro & (mask >> 1))
        left_b = mask & ~((ro << 1) & (mask << 1))
        up_b = mask & ~(uo & (mask >> nx))
        down_b = mask & ~((uo << nx) & (mask << nx))
        vert = 0
        for j in range(self.ny):
            row = self.row_masks[j]
            vert += self.heights[j] * ((right_b & row).bit_count() + (left_b & row).bit_count())
        horiz = 0
        for i in range(self.nx):
            col = self.col_masks[i]
            horiz += self.widths[i] * ((up_b & col).bit_count() + (down_b & col).bit_count())
        return vert + horiz

    def interior_closed(self, mask):
        """True if some edge between two cells of mask is a wall."""
        ro, uo, nx = self.ro, self.uo, self.nx
        return bool((mask & (mask >> 1) & ~ro & self._not_last_col()) | (mask & (mask >> nx) & ~uo))

    def _not_last_col(self):
        value = getattr(self, "_nlc", None)
        if value is None:
            value = self.full & ~self.col_masks[self.nx - 1] if self.nx else 0
            self._nlc = value
        return value

    def cut_masks(self, edges):
        """ro/uo bits to clear so flood fill does not cross the given edges."""
        ro_cut = uo_cut = 0
        for kind, i, j in edges:
            if kind == "h":
                uo_cut |= 1 << self.cell(i, j - 1)
            else:
                ro_cut |= 1 << self.cell(i - 1, j)
        return ro_cut, uo_cut

    #############################
    # EDGES AND POINTS
    #############################

    def h_open(self, i, j, mask):
        """Horizontal unit edge on line j over column i lies inside mask."""
        return self.has(i, j - 1, mask) and self.has(i, j, mask) and (i, j) not in self.wall_h

    def v_open(self, i, j, mask):
        """Vertical unit edge on line i over row j lies inside mask."""
        return self.has(i - 1, j, mask) and self.has(i, j, mask) and (i, j) not in self.wall_v

    def arm_open(self, i, j, arm, mask):
        if arm == 0:
            return self.v_open(i, j, mask)
        if arm == 1:
            return self.h_open(i - 1, j, mask)
        if arm == 2:
            return self.v_open(i, j - 1, mask)
        return self.h_open(i, j, mask)

    def arm_edge(self, i, j, arm):
        if arm == 0:
            return ("v", i, j)
        if arm == 1:
            return ("h", i - 1, j)
        if arm == 2:
            return ("v", i, j - 1)
        return ("h", i, j)

    def quadrants(self, i, j, mask):
        return [self.has(i, j, mask), self.has(i - 1, j, mask), self.has(i - 1, j - 1, mask), self.has(i, j - 1, mask)]

    def sectors(self, i, j, mask=None):
        """Sector sizes (in quarter turns) at a grid point, None if interior."""
        mask = self.inside if mask is None else mask
        quads = self.quadrants(i, j, mask)
        arms = [self.arm_open(i, j, k, mask) for k in range(4)]
        if all(arms):
            return None
        start = arms.index(False)
        sizes, cur = [], 0
        for step in range(4):
            q = (start + 1 + step) % 4
            if quads[q]:
                cur += 1
            if not arms[q]:
                if cur:
                    sizes.append(cur)
                cur = 0
        return sizes

    def is_boundary(self, i, j, mask=None):
        return self.sectors(i, j, mask) is not None

    def is_reflex(self, i, j, mask=None):
        sizes = self.sectors(i, j, mask)
        return sizes is not None and bool(sizes) and max(sizes) >= 3

    def touches(self, i, j, mask=None):
        return any(self.quadrants(i, j, self.inside if mask is None else mask))

    @property
    def reflex_points(self):
        if self._reflex is None:
            self._classify()
        return self._reflex

    @property
    def boundary_points(self):
        if self._boundary is None:
            self._classify()
        return self._boundary

    def _classify(self):
        reflex, boundary = set(), set()
        for j in range(self.ny + 1):
            for i in range(self.nx + 1):
                if not self.touches(i, j):
                    continue
                sizes = self.sectors(i, j)
                if sizes is None:
                    continue
                boundary.add((i, j))
                if sizes and max(sizes) >= 3:
                    reflex.add((i, j))
        self._reflex, self._boundary = reflex, boundary

    def ray(self, i, j, step, mask=None):
        """Walk from (i, j) along step until the first boundary point of mask.

        Returns (end point, edges) or None when the first edge leaves mask.
        """
        mask = self.inside if mask is None else mask
        arm = STEP_ARM[step]
        if not self.arm_open(i, j, arm, mask):
            return None
        edges = []
        while True:
            edges.append(self.arm_edge(i, j, arm))
            i, j = i + step[0], j + step[1]
            if self.is_boundary(i, j, mask) or not self.arm_open(i, j, arm, mask):
                return (i, j), edges

    def boundary_walk(self, i, j, step, mask):
        """Follow boundary edges of mask from (i, j) in one direction; return the far point."""
        arm = STEP_ARM[step]
        while True:
            if arm in (0, 2):
                e = ("v", i, j if arm == 0 else j - 1)
                left, right = self.has(e[1] - 1, e[2], mask), self.has(e[1], e[2], mask)
                is_bd = (left or right) and not self.v_open(e[1], e[2], mask)
            else:
                e = ("h", i if arm == 3 else i - 1, j)
                below, above = self.has(e[1], e[2] - 1, mask), self.has(e[1], e[2], mask)
                is_bd = (below or above) and not self.h_open(e[1], e[2], mask)
            if not is_bd:
                return i, j
            i, j = i + step[0], j + step[1]

    #############################
    # SUBPOLYGON KEYS
    #############################

    def decode(self, key):
        """Region, boundary cuts and type tag of a subpolygon key."""
        if key == ROOT:
            return SubPolygon(ROOT, self.inside, "P")
        (i, j), d, t = key
        if d in ONE_CUT:
            return self._decode_one_cut(i, j, d, t)
        if d in TWO_CUT:
            return self._decode_two_cut(i, j, d, t)
        raise InvalidKey(f"unknown direction {d!r}")

    def _seed_pair(self, i, j, d):
        if d == "LEFT":
            return self.cell(i - 1, j), self.cell(i - 1, j - 1)
        return self.cell(i, j - 1), self.cell(i - 1, j - 1)

    def _decode_one_cut(self, i, j, d, t):
        if not (0 <= i <= self.nx and 0 <= j <= self.ny) or not self.is_boundary(i, j):
            raise InvalidKey(f"{(i, j)} is not a boundary point")
        step = (-1, 0) if d == "LEFT" else (0, -1)
        hit = self.ray(i, j, step)
        if hit is None:
            raise InvalidKey(f"no cut leaves {(i, j)} going {d}")
        end, edges = hit
        ro_cut, uo_cut = self.cut_masks(edges)
        ro, uo = self.ro & ~ro_cut, self.uo & ~uo_cut
        pos, neg = self._seed_pair(i, j, d)
        mine, other = (pos, neg) if t else (neg, pos)
        region = self.flood(1 << mine, self.inside, ro, uo)
        if region >> other & 1:
            raise InvalidKey(f"cut from {(i, j)} going {d} does not separate the polygon")
        ends = (end, (i, j))
        kind = "1R"
        for (pi, pj) in ends:
            sizes = self.sectors(pi, pj, region)
            if sizes and 1 in sizes:
                kind = "1C"
                break
        seg = (self.coord(*end), self.coord(i, j))
        return SubPolygon(SubKey((i, j), d, t), region, kind, [seg], list(edges), ends)

    def _decode_two_cut(self, i, j, d, t):
        if not (0 < i < self.nx and 0 < j < self.ny) or self.sectors(i, j) is not None:
            raise InvalidKey(f"{(i, j)} is not an interior point")
        q = QUADRANT_OF[d]
        cuts, edges, ends = [], [], []
        for arm in QUADRANT_ARMS[q]:
            hit = self.ray(i, j, ARM_STEP[arm])
            if hit is None:
                raise InvalidKey(f"degenerate cut at {(i, j)}")
            end, es = hit
            edges.extend(es)
            ends.append(end)
            cuts.append((self.coord(i, j), self.coord(*end)))
        ro_cut, uo_cut = self.cut_masks(edges)
        ro, uo = self.ro & ~ro_cut, self.uo & ~uo_cut
        qi = [(i, j), (i - 1, j), (i - 1, j - 1), (i, j - 1)]
        wedge = self.cell(*qi[q])
        opposite = self.cell(*qi[(q + 2) % 4])
        convex = self.flood(1 << wedge, self.inside, ro, uo)
        if convex >> opposite & 1:
            raise InvalidKey(f"cuts at {(i, j)} going {d} do not separate the polygon")
        region = convex if t else self.flood(1 << opposite, self.inside, ro, uo)
        return SubPolygon(SubKey((i, j), d, t), region, "2C" if t else "2R", cuts, edges, tuple(ends))

    def all_keys(self):
        """Every decodable key of the polygon, ROOT first, in canonical order."""
        yield ROOT
        for j in range(self.ny + 1):
            for i in range(self.nx + 1):
                if not self.touches(i, j):
                    continue
                if self.is_boundary(i, j):
                    for d in ONE_CUT:
                        step = (-1, 0) if d == "LEFT" else (0, -1)
                        if self.ray(i, j, step) is not None:
                            yield SubKey((i, j), d, True)
                            yield SubKey((i, j), d, False)
                else:
                    for d in TWO_CUT:
                        yield SubKey((i, j), d, True)
                        yield SubKey((i, j), d, False)

    def cut_chain(self, mask):
        """Interior boundary of a region as maximal segments, or None if it is no <=2-cut chain.

        Segments are ("h" | "v", a, b) between grid points, read off the region
        alone: boundary edges of mask that are open in P, merged along their
        line. A chain has at most two segments, each running through interior
        points between boundary points of P; two segments turn at a shared
        interior point.
        """
        runs = {"h": {}, "v": {}}
        for i, j in self.cells_of(mask):
            if not self.has(i, j - 1, mask) and self.h_open(i, j, self.inside):
                runs["h"].setdefault(j, []).append(i)
            if not self.has(i, j + 1, mask) and self.h_open(i, j + 1, self.inside):
                runs["h"].setdefault(j + 1, []).append(i)
            if not self.has(i - 1, j, mask) and self.v_open(i, j, self.inside):
                runs["v"].setdefault(i, []).append(j)
            if not self.has(i + 1, j, mask) and self.v_open(i + 1, j, self.inside):
                runs["v"].setdefault(i + 1, []).append(j)
        segments = []
        for kind, lines in runs.items():
            for line, spots in sorted(lines.items()):
                spots.sort()
                start = prev = spots[0]
                for spot in spots[1:] + [None]:
                    if spot == prev + 1:
                        prev = spot
                        continue
                    if kind == "h":
                        segments.append((kind, (start, line), (prev + 1, line)))
                    else:
                        segments.append((kind, (line, start), (line, prev + 1)))
                    start = prev = spot
        if len(segments) > 2:
            return None
        ends = []
        for kind, a, b in segments:
            step = (1, 0) if kind == "h" else (0, 1)
            point = (a[0] + step[0], a[1] + step[1])
            while point != b:
                if self.is_boundary(*point):
                    return None
                point = (point[0] + step[0], point[1] + step[1])
            ends.extend((a, b))
        if len(segments) == 2:
            joint = {p for p in ends if ends.count(p) == 2}
            if segments[0][0] == segments[1][0] or len(joint) != 1 or self.is_boundary(*joint.pop()):
                return None
        if any(ends.count(p) == 1 and not self.is_boundary(*p) for p in ends):
            return None
        return segments

    def subpolygon_table(self):
        """Decode all keys; returns (key -> SubPolygon, mask -> key)."""
        by_key, by_mask = {}, {}
        for key in self.all_keys():
            try:
                sub = self.decode(key)
            except InvalidKey:
                continue
            by_key[key] = sub
            by_mask.setdefault(sub.mask, key)
        return by_key, by_mask

    #############################
    # RINGS
    #############################

    def rings_of(self, mask):
        """Trace the boundary of a region into rings (interior on the left)."""
        outgoing = {}
        xs, ys = self.grid.xs, self.grid.ys
        for (i, j) in self.cells_of(mask):
            if not (self.has(i, j - 1, mask) and self.h_open(i, j, mask)):
                outgoing.setdefault((i, j), []).append(((i + 1, j), (1, 0)))
            if not (self.has(i + 1, j, mask) and self.v_open(i + 1, j, mask)):
                outgoing.setdefault((i + 1, j), []).append(((i + 1, j + 1), (0, 1)))
            if not (self.has(i, j + 1, mask) and self.h_open(i, j + 1, mask)):
                outgoing.setdefault((i + 1, j + 1), []).append(((i, j + 1), (-1, 0)))
            if not (self.has(i - 1, j, mask) and self.v_open(i, j, mask)):
                outgoing.setdefault((i, j + 1), []).append(((i, j), (0, -1)))
        rings = []
        while outgoing:
            start = min(outgoing)
            path, dirs = [start], []
            cur, direction = start, None
            while True:
                options = outgoing.get(cur)
                if not options:
                    break
                choice = options[0] if direction is None else _pick_turn(direction, options)
                options.remove(choice)
                if not options:
                    del outgoing[cur]
                cur, direction = choice
                dirs.append(direction)
                if cur == start:
                    break
                path.append(cur)
            corners = [path[k] for k in range(len(path)) if dirs[k - 1] != dirs[k]]
            rings.append(tuple(Point(xs[i], ys[j]) for i, j in corners))
        return rings


def decode_sub(poly, key, grid=None):
    """Region, cuts and type tag of one subpolygon key of poly.

    Raises InvalidKey when the key names no <=2-cut subpolygon.
    """
    if not isinstance(key, SubKey):
        try:
            g, d, t = key
            key = SubKey(tuple(g), d, bool(t))
        except (TypeError, ValueError) as exc:
            raise InvalidKey(f"malformed key {key!r}") from exc
    return CellComplex(poly, grid).decode(key)


def _pick_turn(direction, options):
    dx, dy = direction
    for want in ((-dy, dx), (dx, dy), (dy, -dx), (-dx, -dy)):
        for option in options:
            if option[1] == want:
                return option
    return options[0]


#############################
# MAXIMAL CUTS
#############################

def label_cells(cx, rects):
    """Map cell index -> rectangle index; cells covered twice map to -1."""
    xi, yj = cx.grid.index_of_x, cx.grid.index_of_y
    labels = {}
    for r, rect in enumerate(rects):
        for j in range(yj[rect.lo.y], yj[rect.hi.y]):
            for i in range(xi[rect.lo.x], xi[rect.hi.x]):
                c = cx.cell(i, j)
                labels[c] = -1 if c in labels else r
    return labels


def cut_runs(cx, labels):
    """Maximal collinear runs of edges separating different rectangles.

    Runs continue through crossings and stop at boundary points of the
    polygon. Returned as coordinate segments in canonical order.
    """
    boundary = cx.boundary_points
    runs = []

    def is_cut(kind, i, j):
        if kind == "h":
            if not cx.h_open(i, j, cx.inside):
                return False
            a, b = labels.get(cx.cell(i, j - 1)), labels.get(cx.cell(i, j))
        else:
            if not cx.v_open(i, j, cx.inside):
                return False
            a, b = labels.get(cx.cell(i - 1, j)), labels.get(cx.cell(i, j))
        return a is not None and b is not None and a != b

    for j in range(1, cx.ny):
        start = None
        for i in range(cx.nx + 1):
            cut = i < cx.nx and is_cut("h", i, j)
            if start is not None and (not cut or (i, j) in boundary):
                runs.append((cx.coord(start, j), cx.coord(i, j)))
                start = None
            if cut and start is None:
                start = i
    for i in range(1, cx.nx):
        start = None
        for j in range(cx.ny + 1):
            cut = j < cx.ny and is_cut("v", i, j)
            if start is not None and (not cut or (i, j) in boundary):
                runs.append((cx.coord(i, start), cx.coord(i, j)))
                start = None
            if cut and start is None:
                start = j
    return sorted(runs)


def maximal_cuts(poly, rects, cx=None):
    """Maximal cuts of a partition of poly given by its rectangles."""
    if cx is None:
        grid = canonical_grid(
            poly,
            [x for r in rects for x in (r.lo.x, r.hi.x)],
            [y for r in rects for y in (r.lo.y, r.hi.y)],
        )
        cx = CellComplex(poly, grid)
    return cut_runs(cx, label_cells(cx, rects))


def cut_is_incident(cx, seg, incidence):
    """Cut has an endpoint on a reflex vertex (vertex) or on the boundary (boundary)."""
    xi, yj = cx.grid.index_of_x, cx.grid.index_of_y
    targets = cx.reflex_points if incidence == "vertex" else cx.boundary_points
    return any((xi[p[0]], yj[p[1]]) in targets for p in seg)
