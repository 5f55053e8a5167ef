"""
Windmill hole networks on a tile lattice.

Lengths are in units of u = delta / 2. A tile is a 5u square. A holed tile
carries a u-square hole at local [2, 3] x [2, 3]; every partition of width
delta cuts it as a windmill, either v (True) or h (False). Hole lines sit at
2 and 3 mod 5 and walls at 0, 2 or 3 mod 5, so two parallel lines are either
the same line or at least delta apart. Only shared lines couple holes:

- wire: two holes that see each other along a corridor (through empty
  tiles too) take different states; an empty tile flips the phase of a run;
- junction: a tile with one corner notched out puts a wall vertex on a line
  of two wire ends, one arriving sideways and one from below or above. The
  pair of states where neither end cuts to that vertex has no partition;
- saver: a 2u bump next to a wire end puts a wall vertex on one hole line;
  the state that cuts to it saves one rectangle.

witness_partition turns a state per hole into the partition: corner cuts
that land on a vertex first, the other corner cuts next, then one cut from
every wall vertex still uncovered.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .cells import STEP_ARM, CellComplex, cut_runs, label_cells
from .config import get_logger
from .errors import BadParams, GadgetConflict
from .geometry import Grid, PartitionResult, Point, Polygon, Rect, signed_area2

logger = get_logger(__name__)

TILE = 5
HOLE, EMPTY, JUNCTION = "hole", "empty", "junction"
STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))

# corner -> direction of its cut, per windmill state
CORNER_CUTS = {
    True: {"BL": (0, -1), "BR": (1, 0), "TR": (0, 1), "TL": (-1, 0)},
    False: {"BL": (-1, 0), "BR": (0, -1), "TR": (1, 0), "TL": (0, 1)},
}
CORNER_OFFSETS = {"BL": (0, 0), "BR": (1, 0), "TR": (1, 1), "TL": (0, 1)}

# v-windmill pieces of a holed tile, local u coordinates
_WINDMILL_V = ((0, 0, 2, 3), (2, 0, 5, 2), (3, 2, 5, 5), (0, 3, 3, 5))
_WINDMILL_H = ((0, 0, 3, 2), (3, 0, 5, 3), (2, 3, 5, 5), (0, 2, 2, 5))


def _r(x0, y0, x1, y1):
    return Rect.from_corners((x0, y0), (x1, y1))


def _add(a, b):
    return a[0] + b[0], a[1] + b[1]


def polygon_of(rects):
    """Polygon (with holes) whose interior is the union of interior-disjoint rectangles."""
    xs = sorted({c for r in rects for c in (r.lo.x, r.hi.x)})
    ys = sorted({c for r in rects for c in (r.lo.y, r.hi.y)})
    box = Polygon.make([(xs[0], ys[0]), (xs[-1], ys[0]), (xs[-1], ys[-1]), (xs[0], ys[-1])])
    cx = CellComplex(box, Grid(tuple(xs), tuple(ys)))
    xi, yj = cx.grid.index_of_x, cx.grid.index_of_y
    mask = 0
    for r in rects:
        mask |= cx.rect_mask(xi[r.lo.x], xi[r.hi.x], yj[r.lo.y], yj[r.hi.y])
    rings = cx.rings_of(mask)
    outer = [ring for ring in rings if signed_area2(ring) > 0]
    holes = [ring for ring in rings if signed_area2(ring) < 0]
    if len(outer) != 1:
        raise BadParams(f"rectangles form {len(outer)} separate regions")
    return Polygon.make(outer[0], holes)


#############################
# BOARD
#############################

class Board:
    """Tiles, corridor links, junctions, savers and the wire networks they carry."""

    def __init__(self):
        self.tiles = {}
        self.links = set()
        self.junctions = {}  # junction tile -> (sideways end, vertical end)
        self.savers = {}     # wire end -> which half of its side the bump takes (+1 / -1)
        self.roots = {}      # network name -> root hole

    def add(self, tile, kind=HOLE):
        if tile in self.tiles:
            raise GadgetConflict(f"tile {tile} placed twice")
        self.tiles[tile] = kind

    def link(self, a, b):
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            raise GadgetConflict(f"tiles {a} and {b} are not neighbours")
        self.links.add(frozenset((a, b)))

    def linked(self, a, b):
        return frozenset((a, b)) in self.links

    def path(self, *tiles, kind=HOLE):
        """Add the missing tiles of a corridor and link consecutive ones."""
        for t in tiles:
            if t not in self.tiles:
                self.add(t, kind)
        for a, b in zip(tiles, tiles[1:]):
            self.link(a, b)

    def junction(self, tile, side, vertical):
        if abs(tile[0] - side[0]) != 1 or tile[1] != side[1]:
            raise GadgetConflict(f"junction {tile}: {side} is not a sideways neighbour")
        if abs(tile[1] - vertical[1]) != 1 or tile[0] != vertical[0]:
            raise GadgetConflict(f"junction {tile}: {vertical} is not a vertical neighbour")
        self.add(tile, JUNCTION)
        self.link(tile, side)
        self.link(tile, vertical)
        self.junctions[tile] = (side, vertical)

    def saver(self, end, side=1):
        self.savers[end] = side

    def network(self, name, root):
        self.roots[name] = root

    def invert(self, tile):
        """Empty a straight wire tile; the holes beyond it switch phase."""
        nbrs = self.neighbours(tile)
        straight = len(nbrs) == 2 and (nbrs[0][0] == nbrs[1][0] or nbrs[0][1] == nbrs[1][1])
        if self.tiles.get(tile) != HOLE or not straight or any(self.tiles[n] != HOLE for n in nbrs):
            raise GadgetConflict(f"tile {tile} is not a straight wire tile between two holes")
        self.tiles[tile] = EMPTY

    def neighbours(self, tile):
        return sorted(n for n in (_add(tile, s) for s in STEPS) if self.linked(tile, n))

    def holes_at(self):
        return sorted(t for t, kind in self.tiles.items() if kind == HOLE)

    #############################
    # LOCAL GEOMETRY
    #############################

    def away(self, end):
        nbrs = self.neighbours(end)
        if len(nbrs) != 1:
            raise GadgetConflict(f"saver end {end} has {len(nbrs)} links")
        return end[0] - nbrs[0][0], end[1] - nbrs[0][1]

    def bump(self, end):
        """Bump rectangle and its wall vertex on the end hole's line."""
        (a, b), side = end, self.savers[end]
        dx, dy = self.away(end)
        x, y = TILE * a, TILE * b
        if dx:
            x0, x1 = (x + 5, x + 7) if dx > 0 else (x - 2, x)
            y0, y1 = (y + 3, y + 5) if side > 0 else (y, y + 2)
            point = (x + 5 if dx > 0 else x, y + 3 if side > 0 else y + 2)
        else:
            y0, y1 = (y + 5, y + 7) if dy > 0 else (y - 2, y)
            x0, x1 = (x + 3, x + 5) if side > 0 else (x, x + 2)
            point = (x + 3 if side > 0 else x + 2, y + 5 if dy > 0 else y)
        return (x0, y0, x1, y1), point

    def notch(self, tile):
        """Corner of a junction tile cut away: away from both wire ends."""
        side, vertical = self.junctions[tile]
        return tile[0] - side[0], tile[1] - vertical[1]

    def corner_point(self, tile):
        nx_, ny_ = self.notch(tile)
        return TILE * tile[0] + (3 if nx_ > 0 else 2), TILE * tile[1] + (3 if ny_ > 0 else 2)

    def help_state(self, tile, point):
        """State of the hole in tile whose corner cut runs along a hole line to point."""
        x0, y0 = TILE * tile[0] + 2, TILE * tile[1] + 2
        px, py = point
        if py in (y0, y0 + 1) and not x0 <= px <= x0 + 1:
            right = px > x0 + 1
            corner = ("T" if py == y0 + 1 else "B") + ("R" if right else "L")
            step = (1 if right else -1, 0)
        elif px in (x0, x0 + 1) and not y0 <= py <= y0 + 1:
            up = py > y0 + 1
            corner = ("T" if up else "B") + ("R" if px == x0 + 1 else "L")
            step = (0, 1 if up else -1)
        else:
            raise GadgetConflict(f"point {point} is not on a line of the hole in tile {tile}")
        return next(s for s in (True, False) if CORNER_CUTS[s][corner] == step)

    def _pieces(self, tile):
        a, b = tile
        x, y = TILE * a, TILE * b
        kind = self.tiles[tile]
        if kind == HOLE:
            return [(x + p, y + q, x + r, y + s) for p, q, r, s in _WINDMILL_V]
        if kind == EMPTY:
            return [(x, y, x + 5, y + 5)]
        nx_, ny_ = self.notch(tile)
        main, strip = ((x, y, x + 3, y + 5), (x + 3, x + 5)) if nx_ > 0 else ((x + 2, y, x + 5, y + 5), (x, x + 2))
        side = (strip[0], y, strip[1], y + 3) if ny_ > 0 else (strip[0], y + 2, strip[1], y + 5)
        return [main, side]

    def rects(self, u=1):
        boxes = [p for t in sorted(self.tiles) for p in self._pieces(t)]
        boxes += [self.bump(end)[0] for end in sorted(self.savers)]
        return [_r(x0 * u, y0 * u, x1 * u, y1 * u) for x0, y0, x1, y1 in boxes]

    def polygon(self, u=1):
        return polygon_of(self.rects(u))

    def hole_rects(self, u=1):
        return [
            _r((TILE * a + 2) * u, (TILE * b + 2) * u, (TILE * a + 3) * u, (TILE * b + 3) * u)
            for a, b in self.holes_at()
        ]

    #############################
    # CHECKS AND STATES
    #############################

    def check(self):
        """Tiles only touch where they are linked; raise GadgetConflict otherwise."""
        bumps = {_add(end, self.away(end)): end for end in self.savers}
        for end in self.savers:
            if self.tiles.get(end) != HOLE:
                raise GadgetConflict(f"saver end {end} is not a holed tile")
        for tile, (side, vertical) in self.junctions.items():
            if self.tiles.get(side) != HOLE or self.tiles.get(vertical) != HOLE:
                raise GadgetConflict(f"junction {tile} needs holed tiles on both ends")
        for link in self.links:
            for t in link:
                if t not in self.tiles:
                    raise GadgetConflict(f"link to missing tile {t}")
        occupied = set(self.tiles) | set(bumps)
        if len(occupied) != len(self.tiles) + len(bumps):
            raise GadgetConflict("a saver bump overlaps a tile")
        for t in sorted(occupied):
            for s in ((1, 0), (0, 1)):
                n = _add(t, s)
                if n not in occupied or self.linked(t, n):
                    continue
                if bumps.get(t) == n or bumps.get(n) == t:
                    continue
                raise GadgetConflict(f"tiles {t} and {n} touch without a link")
            for s in ((1, 1), (1, -1)):
                n = _add(t, s)
                if n in occupied and (t[0] + s[0], t[1]) not in self.tiles and (t[0], t[1] + s[1]) not in self.tiles:
                    raise GadgetConflict(f"tiles {t} and {n} touch at a corner")

    def aligned_pairs(self):
        """Holes that see each other along a corridor, through empty tiles."""
        pairs = []
        for t in self.holes_at():
            for s in ((1, 0), (0, 1)):
                cur = t
                while True:
                    nxt = _add(cur, s)
                    if not self.linked(cur, nxt):
                        break
                    if self.tiles[nxt] == HOLE:
                        pairs.append((t, nxt))
                        break
                    if self.tiles[nxt] != EMPTY:
                        break
                    cur = nxt
        return pairs

    def parity(self):
        """hole -> (network, phase relative to the network root)."""
        graph = nx.Graph()
        graph.add_nodes_from(self.holes_at())
        graph.add_edges_from(self.aligned_pairs())
        out = {}
        for name, root in self.roots.items():
            if root in out:
                raise GadgetConflict(f"networks {out[root][0]} and {name} share a wire")
            out[root] = (name, 0)
            for parent, child in nx.bfs_edges(graph, root):
                if child in out:
                    raise GadgetConflict(f"networks {out[child][0]} and {name} share a wire")
                out[child] = (name, 1 - out[parent][1])
        for a, b in graph.edges:
            if out.get(a, (None, 0))[1] == out.get(b, (None, 1))[1]:
                raise GadgetConflict(f"wire holes {a} and {b} close an odd cycle")
        missing = set(graph) - set(out)
        if missing:
            raise GadgetConflict(f"holes {sorted(missing)[:3]} belong to no network")
        return out

    def states(self, root_states, parity=None):
        parity = parity or self.parity()
        return {t: root_states[name] != bool(phase) for t, (name, phase) in parity.items()}

    def unmet(self, states):
        """Junctions where neither wire end cuts to the notch vertex."""
        bad = []
        for tile, ends in sorted(self.junctions.items()):
            point = self.corner_point(tile)
            if not any(states[e] == self.help_state(e, point) for e in ends):
                bad.append(tile)
        return bad


@dataclass
class Terminal:
    """A wire end that must reach its vertex exactly when its network root is `want`."""

    network: object
    tile: tuple
    point: tuple
    want: bool
    slot: tuple = None


def place_inverters(board, terminals):
    """Empty one slot tile per terminal whose phase is wrong, in order."""
    inverted = []
    for term in terminals:
        phase = board.parity()[term.tile][1]
        need = term.want != board.help_state(term.tile, term.point)
        if bool(phase) == need:
            continue
        if term.slot is None:
            raise GadgetConflict(f"terminal {term.tile} of {term.network} has the wrong phase and no slot")
        board.invert(term.slot)
        inverted.append(term.slot)
    parity = board.parity()
    for term in terminals:
        if bool(parity[term.tile][1]) != (term.want != board.help_state(term.tile, term.point)):
            raise GadgetConflict(f"terminal {term.tile} of {term.network} is still out of phase")
    return inverted


#############################
# CLAUSE TEMPLATE
#############################

def add_clause(board, name, legs, row, flip=False):
    """Three selector wires over the leg tops at (L, row - 1), pairwise exclusive.

    Selector i meets leg i at a junction, so a picked selector needs a true
    literal; every pair of selectors meets at a junction, so at most one is
    picked; each selector ends at a saver, so picking one saves a rectangle.
    Occupies columns L1 - 2 .. L3 + 2 and rows row - 1 .. row + 10 (mirrored
    below the bars when flip). Returns the terminals and, per selector, its
    root hole and that root's state when picked.
    """
    def at(a, b):
        return (a, -b if flip else b)

    L1, L2, L3 = legs
    if L2 - L1 < 6 or L3 - L2 < 6:
        raise GadgetConflict(f"legs {legs} are too close for a clause")
    R = row
    c1, c2, c3 = L1 - 2, L2 - 2, L3 - 2
    roots = {}
    for i, (L, c) in enumerate(zip(legs, (c1, c2, c3))):
        board.path(at(c, R), at(L - 1, R))
        board.junction(at(L, R), at(L - 1, R), at(L, R - 1))
        board.network((name, i), at(L - 1, R))
    # first selector: column with branches to the (1, 2) and (1, 3) junctions
    board.path(*[at(c1, b) for b in range(R, R + 10)])
    board.path(*[at(a, R + 6) for a in range(c1, c2)])
    board.path(*[at(a, R + 8) for a in range(c1, L3)])
    board.saver(at(c1, R + 9))
    # second selector
    board.path(*[at(c2, b) for b in range(R, R + 6)])
    board.path(at(c2, R + 2), at(c2 - 1, R + 2), at(c2 - 2, R + 2))
    board.saver(at(c2 - 2, R + 2))
    board.path(*[at(a, R + 4) for a in range(c2, c3)])
    board.junction(at(c2, R + 6), at(c2 - 1, R + 6), at(c2, R + 5))
    # third selector
    board.path(*[at(c3, b) for b in range(R, R + 4)])
    board.path(*[at(a, R + 2) for a in range(c3, L3 + 2)])
    board.saver(at(L3 + 1, R + 2))
    board.path(*[at(L3, b) for b in range(R + 2, R + 8)])
    board.junction(at(c3, R + 4), at(c3 - 1, R + 4), at(c3, R + 3))
    board.junction(at(L3, R + 8), at(L3 - 1, R + 8), at(L3, R + 7))

    helps = {}
    for i, L in enumerate(legs):
        port = at(L - 1, R)
        helps[i] = board.help_state(port, board.corner_point(at(L, R)))
        roots[(name, i)] = (port, not helps[i])

    def term(i, tile, point, saver, slot):
        return Terminal((name, i), at(*tile), point, (not helps[i]) if saver else helps[i], at(*slot))

    def corner(a, b):
        return board.corner_point(at(a, b))

    def bump(a, b):
        return board.bump(at(a, b))[1]

    terminals = [
        term(0, (c1, R + 9), bump(c1, R + 9), True, (c1, R + 2)),
        term(0, (c2 - 1, R + 6), corner(c2, R + 6), False, (c1 + 2, R + 6)),
        term(0, (L3 - 1, R + 8), corner(L3, R + 8), False, (c1 + 2, R + 8)),
        term(1, (c2 - 2, R + 2), bump(c2 - 2, R + 2), True, (c2 - 1, R + 2)),
        term(1, (c2, R + 5), corner(c2, R + 6), False, (c2, R + 3)),
        term(1, (c3 - 1, R + 4), corner(c3, R + 4), False, (c2 + 2, R + 4)),
        term(2, (c3, R + 3), corner(c3, R + 4), False, (c3, R + 1)),
        term(2, (L3 + 1, R + 2), bump(L3 + 1, R + 2), True, (c3 + 1, R + 2)),
        term(2, (L3, R + 7), corner(L3, R + 8), False, (L3, R + 4)),
    ]
    return terminals, roots


#############################
# WITNESS
#############################

def _walk(cx, start, step, stop):
    """Edges from start along step up to the first boundary or stop point."""
    arm = STEP_ARM[step]
    i, j = start
    if not cx.arm_open(i, j, arm, cx.inside):
        return None
    boundary = cx.boundary_points
    edges = []
    while True:
        edges.append(cx.arm_edge(i, j, arm))
        i, j = i + step[0], j + step[1]
        if (i, j) in stop or (i, j) in boundary or not cx.arm_open(i, j, arm, cx.inside):
            return (i, j), edges


def witness_partition(board, states, delta, poly=None):
    """Partition of the board polygon with the given windmill state per hole."""
    u = delta // 2
    poly = poly or board.polygon(u)
    cx = CellComplex(poly)
    xi, yj = cx.grid.index_of_x, cx.grid.index_of_y
    reflex = cx.reflex_points

    corners, shots = set(), []
    for a, b in board.holes_at():
        for name, (ox, oy) in CORNER_OFFSETS.items():
            pt = (xi[(TILE * a + 2 + ox) * u], yj[(TILE * b + 2 + oy) * u])
            corners.add(pt)
            step = CORNER_CUTS[states[(a, b)]][name]
            free = cx.ray(pt[0], pt[1], step)
            shots.append((free is None or free[0] not in reflex, pt, step))
    shots.sort(key=lambda s: s[0])

    taken, edges = set(), set()

    def place(start, end, path):
        taken.add(start)
        taken.add(end)
        for kind, i, j in path:
            taken.add((i, j))
        edges.update(path)

    for _, pt, step in shots:
        walk = _walk(cx, pt, step, taken)
        if walk is None:
            raise GadgetConflict(f"corner cut at {cx.coord(*pt)} leaves the polygon")
        end, path = walk
        if path[0] in edges:
            continue
        place(pt, end, path)

    for pt in sorted(reflex - corners):
        if pt in taken:
            continue
        options = []
        for rank, step in enumerate(STEPS):
            walk = _walk(cx, pt, step, taken)
            if walk is None or walk[0] in corners:
                continue
            options.append((len(walk[1]), rank, walk))
        if not options:
            raise GadgetConflict(f"wall vertex {cx.coord(*pt)} has no usable cut")
        end, path = min(options)[2]
        place(pt, end, path)

    ro_cut, uo_cut = cx.cut_masks(edges)
    rects = []
    for piece in cx.components(cx.inside, cx.ro & ~ro_cut, cx.uo & ~uo_cut):
        cells = list(cx.cells_of(piece))
        i0, i1 = min(c[0] for c in cells), max(c[0] for c in cells)
        j0, j1 = min(c[1] for c in cells), max(c[1] for c in cells)
        if len(cells) != (i1 - i0 + 1) * (j1 - j0 + 1):
            raise GadgetConflict(f"piece at {cx.coord(i0, j0)} is not a rectangle")
        rects.append(Rect(cx.coord(i0, j0), cx.coord(i1 + 1, j1 + 1)))
    rects.sort()
    cuts = cut_runs(cx, label_cells(cx, rects))
    width = min(r.min_side for r in rects)
    logger.debug("witness: %d holes, %d rectangles, width %s", len(board.holes_at()), len(rects), width)
    return PartitionResult("thick", Fraction(width), len(rects), cuts, rects)


def hole_state(rects, hole):
    """True (v) when the cut at the hole's lower-left corner runs down."""
    x, y = hole.lo.x, hole.lo.y
    below = Fraction(2 * y - 1, 2)
    owners = []
    for px in (Fraction(2 * x - 1, 2), Fraction(2 * x + 1, 2)):
        owners.append(next((k for k, r in enumerate(rects) if r.contains_open(Point(px, below))), None))
    return owners[0] != owners[1]


#############################
# STANDALONE GADGETS
#############################

@dataclass
class GadgetLayout:
    delta: int
    board: Board
    polygon: Polygon
    k: int
    kind: str = "instance"
    truth: dict = field(default_factory=dict)  # network -> root state that means true
    formula: object = None
    order: tuple = ()
    sides: tuple = ()
    legs: dict = field(default_factory=dict)  # clause -> literals in leg order

    @property
    def holes(self):
        return self.board.hole_rects(self.delta // 2)

    def root_states(self, values):
        """network -> root state from network -> truth value."""
        return {name: truth if values[name] else not truth for name, truth in self.truth.items()}

    def feasible(self):
        """Every truth-value choice whose hole states meet all junctions."""
        names = sorted(self.truth, key=str)
        parity = self.board.parity()
        for bits in itertools.product((False, True), repeat=len(names)):
            values = dict(zip(names, bits))
            states = self.board.states(self.root_states(values), parity)
            if not self.board.unmet(states):
                yield values, states


GADGET_KINDS = ("variable", "inverter", "turn", "split", "phase-shifter", "clause")


def _closure(kind, steps, arm):
    board = Board()
    truth = {}
    terminals = []
    if kind == "variable":
        board.path(*[(a, 0) for a in range(steps + 1)])
        board.network("wire", (0, 0))
    elif kind == "inverter":
        board.path((0, 0), (1, 0), (2, 0))
        board.invert((1, 0))
        board.network("wire", (0, 0))
    elif kind == "turn":
        board.path(*[(a, 0) for a in range(arm + 1)] + [(arm, b) for b in range(1, arm + 1)])
        board.network("wire", (0, 0))
    elif kind == "split":
        board.path(*[(a, 0) for a in range(2 * arm + 1)])
        board.path(*[(arm, b) for b in range(arm + 1)])
        board.network("wire", (0, 0))
    elif kind == "phase-shifter":
        board.path((0, 0))
        board.path((1, -1))
        board.junction((1, 0), (0, 0), (1, -1))
        board.network("side", (0, 0))
        board.network("vertical", (1, -1))
        point = board.corner_point((1, 0))
        truth = {"side": board.help_state((0, 0), point), "vertical": board.help_state((1, -1), point)}
    elif kind == "clause":
        legs = (2, 8, 14)
        for i, L in enumerate(legs):
            board.path((L, 0), (L, 1))
            board.network(("leg", i), (L, 1))
        terminals, roots = add_clause(board, "t", legs, 2)
        for i, L in enumerate(legs):
            truth[("leg", i)] = board.help_state((L, 1), board.corner_point((L, 2)))
        truth.update({name: picked for name, (_, picked) in roots.items()})
    else:
        raise BadParams(f"unknown gadget kind {kind!r}; expected one of {', '.join(GADGET_KINDS)}")
    truth = truth or {"wire": True}
    board.check()
    place_inverters(board, terminals)
    return board, truth


def build_gadget(kind, delta=2, steps=2, arm=1):
    """Standalone gadget closure; k is its least witness count over feasible states."""
    if delta <= 0 or delta % 2:
        raise BadParams(f"delta must be a positive even integer, got {delta}")
    if steps < 1 or arm < 1:
        raise BadParams("steps and arm must be at least 1")
    board, truth = _closure(kind, steps, arm)
    poly = board.polygon(delta // 2)
    layout = GadgetLayout(delta, board, poly, 0, kind, truth)
    layout.k = min(witness_partition(board, states, delta, poly).count for _, states in layout.feasible())
    return layout


def windmill_polygon(delta=2):
    """5u square with a centred u-square hole (u = delta/2): the windmill test polygon."""
    board = Board()
    board.add((0, 0))
    return board.polygon(delta // 2)


def windmill_partitions(delta=2):
    u = delta // 2
    v = tuple(_r(p * u, q * u, r * u, s * u) for p, q, r, s in _WINDMILL_V)
    h = tuple(_r(p * u, q * u, r * u, s * u) for p, q, r, s in _WINDMILL_H)
    return v, h
