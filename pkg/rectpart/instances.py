"""
Instance factory.

- Point holes: a rectangle with point holes becomes a weakly-simple polygon
  by drawing a slit from every hole to the rectangle boundary (or to an
  earlier slit). The minimum-ink partition of that polygon plus the slits is
  a hole-avoiding partition of the rectangle.
- Formulas: DIMACS CNF reading/writing and the planarity check of the
  variable-clause graph.
- Thick-partition hardness instances: variable bars, legs and clause
  selectors built from windmill hole networks (see gadgets), laid out as a
  laminar bus over the variable row. k is the witness count of the
  all-false reference state less one saving per clause.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .cells import maximal_cuts
from .config import get_logger
from .errors import BadParams, CapacityExceeded, NotPlanar, PointOnBoundary, UnsatisfiedClause
from .gadgets import (
    EMPTY,
    Board,
    GadgetLayout,
    Terminal,
    add_clause,
    place_inverters,
    polygon_of,
    witness_partition,
)
from .geometry import PartitionResult, Point, Polygon, Rect, segment_length
from .ink import ink_partition

logger = get_logger(__name__)

#############################
# POINT HOLES
#############################

# tie order when two sides are equally near
_SIDE_STEPS = ((-1, 0), (1, 0), (0, -1), (0, 1))


def rect_polygon(rect, point_holes=()):
    return Polygon.make(
        [(rect.lo.x, rect.lo.y), (rect.hi.x, rect.lo.y), (rect.hi.x, rect.hi.y), (rect.lo.x, rect.hi.y)],
        point_holes=point_holes,
    )


def _on_segment(p, seg):
    a, b = seg
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def _side_distance(rect, p, step):
    return {
        (-1, 0): p.x - rect.lo.x,
        (1, 0): rect.hi.x - p.x,
        (0, -1): p.y - rect.lo.y,
        (0, 1): rect.hi.y - p.y,
    }[step]


def _slit_end(rect, h, step, slits):
    """Walk from h along step to the rectangle side or the first earlier slit."""
    reach = _side_distance(rect, h, step)
    for a, b in slits:
        if step[0]:
            if a.x == b.x and min(a.y, b.y) <= h.y <= max(a.y, b.y):
                dist = (a.x - h.x) * step[0]
            elif a.y == b.y == h.y:
                dist = min((q.x - h.x) * step[0] for q in (a, b))
            else:
                continue
        else:
            if a.y == b.y and min(a.x, b.x) <= h.x <= max(a.x, b.x):
                dist = (a.y - h.y) * step[1]
            elif a.x == b.x == h.x:
                dist = min((q.y - h.y) * step[1] for q in (a, b))
            else:
                continue
        if 0 < dist < reach:
            reach = dist
    return Point(h.x + step[0] * reach, h.y + step[1] * reach)


def _trace_face(rect, slits):
    """Walk the inner face of rectangle + slits with the interior on the left."""
    corners = [rect.lo, Point(rect.hi.x, rect.lo.y), rect.hi, Point(rect.lo.x, rect.hi.y)]
    segments = [(corners[k], corners[(k + 1) % 4]) for k in range(4)] + list(slits)
    nodes = set(corners) | {p for s in slits for p in s}
    adj = defaultdict(dict)
    for seg in segments:
        on = sorted(p for p in nodes if _on_segment(p, seg))
        for a, b in zip(on, on[1:]):
            d = ((b.x > a.x) - (b.x < a.x), (b.y > a.y) - (b.y < a.y))
            adj[a][d] = b
            adj[b][(-d[0], -d[1])] = a
    start, direction = rect.lo, (1, 0)
    cur, ring, prev = start, [], None
    while True:
        if direction != prev:
            ring.append(cur)
        cur, prev = adj[cur][direction], direction
        dx, dy = direction
        for want in ((-dy, dx), (dx, dy), (dy, -dx), (-dx, -dy)):
            if want in adj[cur]:
                direction = want
                break
        if cur == start and direction == (1, 0):
            break
    return ring


def transform_point_holes(rect, pts):
    """Weakly-simple polygon whose boundary walk passes through every point hole."""
    holes = [Point(*p) for p in pts]
    for h in holes:
        if not rect.contains_open(h):
            raise PointOnBoundary(f"point hole {tuple(h)} is not strictly inside {rect.as_list()}")
    if len(set(holes)) != len(holes):
        raise PointOnBoundary("point holes must be pairwise distinct")
    if not holes:
        return rect_polygon(rect)
    slits = []
    for h in sorted(holes, key=lambda p: (p.y, p.x)):
        if any(_on_segment(h, s) for s in slits):
            continue
        step = min(_SIDE_STEPS, key=lambda s: _side_distance(rect, h, s))
        slits.append((h, _slit_end(rect, h, step, slits)))
    ring = _trace_face(rect, slits)
    logger.debug("point-hole transform: %d holes, %d slits, %d vertices", len(holes), len(slits), len(ring))
    return Polygon.make(ring, weakly_simple=True)


def approx_ink_with_holes(rect, pts, assertions=None):
    """Hole-avoiding partition of a rectangle within three times the optimal ink."""
    transformed = transform_point_holes(rect, pts)
    res = ink_partition(transformed, assertions=assertions)
    original = rect_polygon(rect, pts)
    cuts = maximal_cuts(original, res.rectangles)
    value = sum(segment_length(c) for c in cuts)
    return PartitionResult("ink", Fraction(value), res.count, cuts, res.rectangles, 1, res.stats)


#############################
# FORMULAS
#############################

@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple

    def first_unsatisfied(self, assignment):
        for j, clause in enumerate(self.clauses):
            if not any(assignment[abs(lit)] == (lit > 0) for lit in clause):
                return j
        return None


def check_formula(formula):
    if formula.num_vars < 1 or not formula.clauses:
        raise BadParams("formula needs at least one variable and one clause")
    used = set()
    for j, clause in enumerate(formula.clauses):
        variables = {abs(lit) for lit in clause}
        if len(clause) != 3 or len(variables) != 3 or 0 in variables:
            raise BadParams(f"clause {j} {clause} must hold 3 literals over distinct variables")
        if max(variables) > formula.num_vars:
            raise BadParams(f"clause {j} uses a variable above {formula.num_vars}")
        used |= variables
    if len(used) != formula.num_vars:
        raise BadParams(f"variables {sorted(set(range(1, formula.num_vars + 1)) - used)} are never used")
    return formula


def parse_dimacs(text):
    """Formula from DIMACS CNF text (comments, a p-line, 0-terminated clauses)."""
    header, literals = None, []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise BadParams(f"bad problem line {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        try:
            literals.extend(int(tok) for tok in line.split())
        except ValueError as e:
            raise BadParams(f"bad clause line {line!r}") from e
    if header is None:
        raise BadParams("missing 'p cnf' line")
    clauses, cur = [], []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    if len(clauses) != header[1]:
        raise BadParams(f"header announces {header[1]} clauses, found {len(clauses)}")
    return check_formula(Formula(header[0], tuple(clauses)))


def write_dimacs(formula):
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    lines += [" ".join(str(lit) for lit in clause) + " 0" for clause in formula.clauses]
    return "\n".join(lines) + "\n"


def incidence_graph(formula):
    graph = nx.Graph()
    graph.add_nodes_from(("x", v) for v in range(1, formula.num_vars + 1))
    for j, clause in enumerate(formula.clauses):
        graph.add_node(("c", j))
        graph.add_edges_from((("x", abs(lit)), ("c", j)) for lit in clause)
    return graph


def check_planar(formula):
    planar, _ = nx.check_planarity(incidence_graph(formula))
    if not planar:
        raise NotPlanar("the variable-clause graph of the formula is not planar")


def parse_assignment(text, num_vars):
    """'1,-2,3' style literal list -> {var: bool}; unlisted variables are False."""
    assignment = {v: False for v in range(1, num_vars + 1)}
    for tok in text.replace(",", " ").split():
        lit = int(tok)
        if lit == 0 or abs(lit) > num_vars:
            raise BadParams(f"literal {lit} outside 1..{num_vars}")
        assignment[abs(lit)] = lit > 0
    return assignment


#############################
# TH INSTANCE LAYOUT
#############################

MAX_VARIABLES = 8
MAX_CLAUSES = 6
MAX_TRIALS = 200000
ABOVE, BELOW = True, False

# all lengths in tiles of 5u
SLOT0 = 2
SLOT_PITCH = 6
MAX_SLOTS = 6
BAR_TAIL = 3
BAR_GAP = 2
BASE_ROW = 4
LEVEL_PITCH = 12
INVERTER_ROW = 2


def _leg_key(pos, clause_vars, v, j):
    xs = sorted(pos[w] for w in clause_vars)
    span = xs[-1] - xs[0]
    if pos[v] == xs[-1]:
        return (0, span, j)
    if pos[v] == xs[0]:
        return (2, -span, j)
    return (1, 0, j)


def _plan(formula, order, sides):
    """Bars per variable, legs and levels per clause, or None if the layout is not laminar."""
    pos = {v: p for p, v in enumerate(order)}
    per_side = {ABOVE: defaultdict(list), BELOW: defaultdict(list)}
    for j, clause in enumerate(formula.clauses):
        for lit in clause:
            per_side[sides[j]][abs(lit)].append(j)
    bars, x = {}, 0
    for v in order:
        slots = max(len(per_side[ABOVE][v]), len(per_side[BELOW][v]), 1)
        if slots > MAX_SLOTS:
            return None
        width = SLOT0 + SLOT_PITCH * (slots - 1) + BAR_TAIL
        bars[v] = (x, width)
        x += width + BAR_GAP
    legs = defaultdict(list)
    for side in (ABOVE, BELOW):
        for v, js in per_side[side].items():
            vars_of = {j: [abs(lit) for lit in formula.clauses[j]] for j in js}
            js.sort(key=lambda j: _leg_key(pos, vars_of[j], v, j))
            for s, j in enumerate(js):
                lit = next(lit for lit in formula.clauses[j] if abs(lit) == v)
                legs[j].append((bars[v][0] + SLOT0 + SLOT_PITCH * s, lit))
    cols = {j: sorted(c for c, _ in legs[j]) for j in legs}
    levels = {}
    for side in (ABOVE, BELOW):
        group = [j for j in range(len(formula.clauses)) if sides[j] == side]
        for a, b in itertools.combinations(group, 2):
            if not _compatible(cols[a], cols[b]):
                return None
        group.sort(key=lambda j: (cols[j][-1] - cols[j][0], j))
        for idx, j in enumerate(group):
            lo, hi = _extent(cols[j])
            inside = [levels[d] for d in group[:idx] if _extent(cols[d])[0] <= hi and lo <= _extent(cols[d])[1]]
            levels[j] = 1 + max(inside, default=0)
    return bars, {j: (sorted(legs[j]), levels[j]) for j in legs}


def _extent(cols):
    return cols[0] - 2, cols[-1] + 2


def _nested(inner, outer):
    lo, hi = _extent(inner)
    return any(outer[k] + 2 <= lo and hi + 2 <= outer[k + 1] for k in range(len(outer) - 1))


def _compatible(a, b):
    (la, ha), (lb, hb) = _extent(a), _extent(b)
    if ha + 2 <= lb or hb + 2 <= la:
        return True
    return _nested(a, b) or _nested(b, a)


def search_layout(formula):
    """First laminar (variable order, clause sides) in search order."""
    trials = 0
    for order in itertools.permutations(range(1, formula.num_vars + 1)):
        for sides in itertools.product((ABOVE, BELOW), repeat=len(formula.clauses)):
            trials += 1
            if trials > MAX_TRIALS:
                raise CapacityExceeded("no laminar layout found within the search budget")
            plan = _plan(formula, order, sides)
            if plan is not None:
                return order, sides, plan
    raise CapacityExceeded("formula admits no laminar bus layout")


def _selector(j, i):
    return (("c", j), i)


def generate_th_instance(formula, delta=2):
    """Polygon with holes, delta and k: a width-delta partition with k rectangles exists iff formula is satisfiable.

    Each variable is a bar of holed tiles with one leg per clause; the bar's
    phase is its truth value. A leg ends at a junction with one selector of
    its clause, and an empty tile on the leg flips its phase where the literal
    needs it. Selectors are pairwise exclusive and each saves one rectangle
    when picked, so k allows one saving per clause and no more.
    """
    check_formula(formula)
    if delta <= 0 or delta % 2:
        raise BadParams(f"delta must be a positive even integer, got {delta}")
    check_planar(formula)
    if formula.num_vars > MAX_VARIABLES or len(formula.clauses) > MAX_CLAUSES:
        raise CapacityExceeded(
            f"layout supports {MAX_VARIABLES} variables and {MAX_CLAUSES} clauses, "
            f"got {formula.num_vars} and {len(formula.clauses)}"
        )
    order, sides, (bars, plan) = search_layout(formula)
    board = Board()
    truth = {}
    for v in order:
        x, width = bars[v]
        board.path(*[(a, 0) for a in range(x, x + width)])
        board.network(("x", v), (x, 0))
        truth[("x", v)] = True
    for v, w in zip(order, order[1:]):
        end, start = bars[v][0] + bars[v][1] - 1, bars[w][0]
        board.path((end, 0), *[(a, -1) for a in range(end, start + 1)], (start, 0), kind=EMPTY)

    terminals, legs = [], {}
    for j in range(len(formula.clauses)):
        placed, level = plan[j]
        row = BASE_ROW + LEVEL_PITCH * (level - 1)
        sign = -1 if sides[j] == BELOW else 1
        for col, lit in placed:
            board.path(*[(col, sign * b) for b in range(row)])
        clause_terms, roots = add_clause(board, ("c", j), [c for c, _ in placed], row, sides[j] == BELOW)
        for col, lit in placed:
            top = (col, sign * (row - 1))
            point = board.corner_point((col, sign * row))
            terminals.append(Terminal(("x", abs(lit)), top, point, lit > 0, (col, sign * INVERTER_ROW)))
        terminals.extend(clause_terms)
        truth.update({name: picked for name, (_, picked) in roots.items()})
        legs[j] = tuple(lit for _, lit in placed)
    board.check()
    inverters = place_inverters(board, terminals)

    u = delta // 2
    poly = board.polygon(u)
    layout = GadgetLayout(delta, board, poly, 0, "instance", truth, formula, tuple(order), tuple(sides), legs)
    reference = stitch_partition(layout, {v: False for v in range(1, formula.num_vars + 1)}, picks={})
    layout.k = reference.count - len(formula.clauses)
    logger.info(
        "TH instance: %d variables, %d clauses, %d tiles, %d holes, %d inverters, k=%d, %d vertices",
        formula.num_vars, len(formula.clauses), len(board.tiles), len(poly.holes), len(inverters),
        layout.k, poly.n,
    )
    return layout


def _picks(layout, assignment):
    """Per clause, the leg index of its first true literal."""
    picks = {}
    for j, lits in layout.legs.items():
        i = next((i for i, lit in enumerate(lits) if assignment[abs(lit)] == (lit > 0)), None)
        if i is not None:
            picks[j] = i
    return picks


def stitch_partition(layout, assignment, picks=None):
    """Partition for an assignment and one picked selector per clause (default: first true literal).

    Clauses without a pick cost one rectangle over k.
    """
    picks = _picks(layout, assignment) if picks is None else picks
    values = {("x", v): assignment[v] for v in range(1, layout.formula.num_vars + 1)}
    for j, lits in layout.legs.items():
        for i in range(len(lits)):
            values[_selector(j, i)] = picks.get(j) == i
    states = layout.board.states(layout.root_states(values))
    unmet = layout.board.unmet(states)
    if unmet:
        raise BadParams(f"picks {picks} leave junctions {unmet[:3]} uncut")
    return witness_partition(layout.board, states, layout.delta, layout.polygon)


def assignment_to_partition(layout, assignment):
    """Witness partition with exactly k rectangles for a satisfying assignment."""
    formula = layout.formula
    bad = formula.first_unsatisfied(assignment)
    if bad is not None:
        raise UnsatisfiedClause(bad, formula.clauses[bad])
    return stitch_partition(layout, assignment)


#############################
# RANDOM CORPUS
#############################

def random_polygon(rng, cells=8, board=5):
    """Simply connected, hole-free union of `cells` unit cells grown on a board.

    rng is a numpy Generator; growth only accepts cells that keep the
    complement connected to the outside.
    """
    if not 1 <= cells <= board * board:
        raise BadParams(f"cannot grow {cells} cells on a {board}x{board} board")
    frame = nx.grid_2d_graph(board + 2, board + 2)
    chosen = {(int(rng.integers(board)) + 1, int(rng.integers(board)) + 1)}
    while len(chosen) < cells:
        frontier = sorted(
            {(x + dx, y + dy) for x, y in chosen for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))}
            - chosen
        )
        frontier = [c for c in frontier if 1 <= c[0] <= board and 1 <= c[1] <= board]
        for idx in rng.permutation(len(frontier)):
            cell = frontier[int(idx)]
            if nx.is_connected(frame.subgraph(set(frame) - chosen - {cell})):
                chosen.add(cell)
                break
        else:
            break
    rects = [Rect.from_corners((x - 1, y - 1), (x, y)) for x, y in sorted(chosen)]
    return polygon_of(rects)
