"""
Thick rectangular partitions.

A thick partition maximizes the smallest rectangle side (its width) and,
among partitions of that width, uses the fewest rectangles. Every cut must
be incident to a reflex vertex (vt) or to the boundary (at).

Processes:
- Phase 1 computes the bottleneck width W(Q) of every subpolygon over the
  uni-rectangle choices of the shared engine.
- Phase 2 computes the least rectangle count at the threshold W(P).
- Cut-visible partners of 2R subpolygons are swept line by line: every
  partner column (row) keeps an envelope chain that is handed from one
  origin to the next along the sweep, so each origin inserts one partner
  and answers with a bending-key split, a ray shot and two range queries.
- at-partitions run the same machinery on the x6 scaled polygon refined by
  the fraction anchor lines.
"""

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from sortedcontainers import SortedDict

from .cells import ROOT, SubKey
from .config import get_logger, load_settings
from .errors import CycleDetected, InvalidInput, SizeLimitExceeded, UnsolvedDependency
from .geometry import AT_SCALE, PartitionResult, WidthCount, fraction_grid, require_valid
from .ink import WEDGE_SIGNS, Engine
from .preprocess import LineAggregates, SegmentTree

logger = get_logger(__name__)

INF = math.inf

NO_PARTITION = WidthCount(-INF, INF)


#############################
# ENVELOPE CHAIN
#############################

class LineEntry(NamedTuple):
    width: float
    count: float
    partner: tuple
    shape: int


def _leaf_max(a, b):
    return a if a >= b else b


def _leaf_min(a, b):
    return a if a <= b else b


class EnvelopeChain:
    """Swept partners of one line, keyed far to near.

    chain maps key -> LineEntry; the segment tree keeps (width, -key) per key
    for range maxima or, in fewest mode, (count, key) for range minima.
    Every leaf starts at the sentinel.
    """

    def __init__(self, size, fewest=False):
        self.size = max(1, size)
        self.fewest = fewest
        self.sentinel = (INF, INF) if fewest else (-INF, -INF)
        self.chain = SortedDict()
        self.tree = SegmentTree(self.size, _leaf_min if fewest else _leaf_max, self.sentinel)

    def _leaf(self, key, entry):
        return (entry.count, key) if self.fewest else (entry.width, -key)

    def put(self, key, entry):
        self.chain[key] = entry
        self.tree.update(key, self._leaf(key, entry))

    def query(self, lo, hi):
        """Key of the widest (fewest) entry with key in [lo, hi), or None."""
        if hi <= lo:
            return None
        top = self.tree.query(max(lo, 0), min(hi, self.size))
        if top == self.sentinel:
            return None
        return top[1] if self.fewest else -top[1]


def ray_shoot(state, key_from, depth):
    """First chain key at or after key_from whose width reaches depth(key), else None."""
    for key in state.chain.irange(minimum=key_from):
        if state.chain[key].width >= depth(key):
            return key
    return None


def bending_key(state, depth, level):
    """Last chain key whose depth is still at least level, -1 when there is none."""
    keys = state.chain.keys()
    lo, hi = 0, len(keys)
    while lo < hi:
        mid = (lo + hi) // 2
        if depth(keys[mid]) >= level:
            lo = mid + 1
        else:
            hi = mid
    return keys[lo - 1] if lo else -1


def advance_envelope(state, depth, lid):
    """Best (width, key) of a line for the current origin, or None.

    A key scores min(depth(key), lid, width). depth falls as keys approach
    the origin and lid is common to the line. Up to the bending key the depth
    reaches the lid and the best score is min(lid, max width). Past it the
    first key whose width reaches its depth is found by a ray shot; keys
    before that hit score their width and keys after it score less than it.
    """
    bend = bending_key(state, depth, lid)
    best = None
    top = state.query(0, bend + 1)
    if top is not None:
        best = (min(lid, state.chain[top].width), top)
    hit = ray_shoot(state, bend + 1, depth)
    if hit is not None and (best is None or depth(hit) > best[0]):
        best = (depth(hit), hit)
    low = state.query(bend + 1, hit if hit is not None else state.size)
    if low is not None and (best is None or state.chain[low].width > best[0]):
        best = (state.chain[low].width, low)
    return best


@dataclass
class SweepState:
    """Envelope of one partner line plus the partners it cannot hold."""

    size: int
    chain: EnvelopeChain
    special: list = field(default_factory=list)
    best: object = None


class LineBest(NamedTuple):
    width: float
    count: float
    partner: tuple
    shape: int
    ev: object


#############################
# THICK SOLVER
#############################

class ThickSolver:
    """Two-phase thick DP over the shared uni-rectangle engine."""

    def __init__(self, poly, grid=None, incidence="vertex", assertions=None):
        self.engine = Engine(poly, grid, incidence, "width", assertions)
        self.widths = {}
        self.counts = {}
        self._evals = {}
        self._active = set()
        self._tallies = {}
        self._tables = {}
        self._lines = {}

    def rect_width(self, rect):
        i0, i1, j0, j1 = rect
        xs, ys = self.engine.cx.grid.xs, self.engine.cx.grid.ys
        return min(xs[i1] - xs[i0], ys[j1] - ys[j0])

    def choices(self, key):
        """Incidence-respecting uni-rectangle partitions of a subpolygon, in tie-break order.

        Cut-visible partners of a 2R subpolygon are left to the sweep.
        """
        found = self._evals.get(key)
        if found is not None:
            return found
        engine = self.engine
        sub = engine.by_key[key]
        engine.stats["states"] += 1
        out = []
        for oi, o in enumerate(engine.origin_points(sub)):
            engine.stats["origins"] += 1
            for p, shapes in engine.candidates(sub, o, skip_swept=sub.kind == "2R"):
                engine.count_triplet(sub, o, p)
                for shape in shapes:
                    ev = engine.evaluate(sub, o, p, shape)
                    if ev is None or ev.non_incident:
                        continue
                    out.append(((oi, p[1], p[0], shape.id), ev))
        out.sort(key=lambda item: item[0])
        self._evals[key] = out
        return out

    #############################
    # PHASE 1: WIDTH
    #############################

    def width(self, key=ROOT):
        """Phase 1: the largest achievable minimum width of a subpolygon."""
        if key in self.widths:
            return self.widths[key]
        if key in self._active:
            raise CycleDetected(f"subpolygon {key} depends on itself")
        self._active.add(key)
        best = -INF
        for _, ev in self.choices(key):
            best = max(best, self.width_of(ev, best))
        if self.engine.by_key[key].kind == "2R":
            for entry in self.sweep_table(key).values():
                best = max(best, entry.width)
        self._active.discard(key)
        self.widths[key] = best
        self.engine.aggregates.register(key, best)
        return best

    def width_of(self, ev, floor=-INF):
        """Smallest rectangle side of one uni-rectangle partition; stops early at floor."""
        w = self.rect_width(ev.rect)
        for child in ev.children:
            if w <= floor:
                return w
            w = min(w, self.width(child))
        for chord_range in ev.sides:
            w = min(w, self.side_width(chord_range))
        return w

    def rest_width(self, ev, skip):
        """Width of the pieces of a partition other than skip, rectangle excluded."""
        w = INF
        for child in ev.children:
            if child != skip:
                w = min(w, self.width(child))
        for chord_range in ev.sides:
            w = min(w, self.side_width(chord_range))
        return w

    def side_width(self, chord_range):
        aggregates = self.engine.aggregates
        try:
            return aggregates.side_aggregate(*chord_range)
        except UnsolvedDependency:
            for key in aggregates.missing(*chord_range):
                self.width(key)
            return aggregates.side_aggregate(*chord_range)

    #############################
    # PHASE 2: COUNT
    #############################

    def tally(self, threshold):
        """Line aggregates of rectangle counts at one threshold."""
        lines = self._tallies.get(threshold)
        if lines is None:
            lines = self._tallies[threshold] = LineAggregates(self.engine.by_key, "count")
        return lines

    def count_at(self, key, threshold):
        """Phase 2: fewest rectangles with every side at least threshold (inf if none)."""
        memo_key = (key, threshold)
        found = self.counts.get(memo_key)
        if found is not None:
            return found[0]
        best, best_ev = INF, None
        for _, ev in self.choices(key):
            total = self.count_of(ev, threshold, best)
            if total < best:
                best, best_ev = total, ev
        if self.engine.by_key[key].kind == "2R":
            for entry in self.sweep_table(key, threshold).values():
                if entry.count < best:
                    best, best_ev = entry.count, entry.ev
        self.counts[memo_key] = (best, best_ev)
        self.tally(threshold).register(key, best)
        return best

    def count_of(self, ev, threshold, ceiling=INF):
        """Rectangles of one uni-rectangle partition at threshold; stops early at ceiling."""
        if self.rect_width(ev.rect) < threshold:
            return INF
        total = 1
        for child in ev.children:
            total += self.count_at(child, threshold)
            if total >= ceiling:
                return total
        for chord_range in ev.sides:
            total += self.side_count(chord_range, threshold)
        return total

    def rest_count(self, ev, skip, threshold):
        total = 0
        for child in ev.children:
            if child != skip:
                total += self.count_at(child, threshold)
        for chord_range in ev.sides:
            total += self.side_count(chord_range, threshold)
        return total

    def side_count(self, chord_range, threshold):
        lines = self.tally(threshold)
        try:
            return lines.side_aggregate(*chord_range)
        except UnsolvedDependency:
            for key in lines.missing(*chord_range):
                self.count_at(key, threshold)
            return lines.side_aggregate(*chord_range)

    def width_of_uni(self, sub, o, p, shape):
        """WidthCount of one uni-rectangle partition, children solved on demand."""
        ev = self.engine.evaluate(sub, o, p, shape)
        if ev is None or ev.non_incident:
            return NO_PARTITION
        w = self.width_of(ev)
        return WidthCount(w, self.count_of(ev, w))

    def solve(self):
        w = self.width(ROOT)
        if w == -INF:
            raise InvalidInput("no partition satisfies the incidence rule")
        return WidthCount(w, self.count_at(ROOT, w))

    def reconstruct(self, threshold):
        rects, stack, seen = [], [ROOT], set()
        while stack:
            key = stack.pop()
            if key in seen:
                raise CycleDetected(f"subpolygon {key} reached twice during reconstruction")
            seen.add(key)
            self.count_at(key, threshold)
            _, ev = self.counts[(key, threshold)]
            if ev is None:
                raise CycleDetected(f"subpolygon {key} has no partition at width {threshold}")
            rects.append(ev.rect)
            stack.extend(ev.children)
            stack.extend(self.engine.chords_of(ev))
        return rects

    #############################
    # 2R SWEEP
    #############################

    def sweep_table(self, key, threshold=None):
        """Best cut-visible partner per partner line of a 2R subpolygon.

        Without a threshold entries are the widest partitions (phase 1); with
        one they are the fewest-rectangle partitions at that threshold.
        """
        memo_key = (threshold, key)
        table = self._tables.get(memo_key)
        if table is not None:
            return table
        sub = self.engine.by_key[key]
        table = {}
        for (side, line), partners in sorted(self.engine.sweep_lines(sub).items()):
            state = self._advance(sub, side, line, partners, threshold)
            self._lines[(threshold, key, side, line)] = state
            if state.best is not None:
                table[(side, line)] = state.best
        self._tables[memo_key] = table
        return table

    def _frame(self, sub, side):
        """(key of a partner, depth of a key, extent across the line) for one line of o."""
        cx = self.engine.cx
        xs, ys = cx.grid.xs, cx.grid.ys
        o = sub.key.g
        sx, sy = WEDGE_SIGNS[sub.key.d]
        if side == "B":
            flip, top, along, at = sy < 0, cx.ny, ys, o[1]
        else:
            flip, top, along, at = sx < 0, cx.nx, xs, o[0]

        def key_of(p):
            coord = p[1] if side == "B" else p[0]
            return top - coord if flip else coord

        def depth(key):
            coord = top - key if flip else key
            return abs(along[at] - along[coord])

        def across(p):
            return abs(xs[p[0]] - xs[o[0]]) if side == "B" else abs(ys[p[1]] - ys[o[1]])

        return key_of, depth, across

    def _advance(self, sub, side, line, partners, threshold):
        engine = self.engine
        key = sub.key
        prev = None
        nb = engine.sweep_neighbour(key, side)
        if nb is not None and engine.by_key[nb].mask & ~sub.mask:
            nb = None
        if nb is not None:
            self.sweep_table(nb, threshold)
            prev = self._lines.pop((threshold, nb, side, line), None)
        state = None
        if prev is not None and prev.size + 1 == len(partners) and partners[0] == engine.newest_partner(key, side, line):
            state = self._step(sub, side, partners, prev, threshold)
        if state is None:
            state = self._scan(sub, side, partners, threshold)
        if engine.assertions:
            direct = self._scan(sub, side, partners, threshold, count=False)
            assert _score(state.best, threshold) == _score(direct.best, threshold), (
                f"envelope of {key} on {side}{line} disagrees with a scan"
            )
        return state

    def _entry(self, sub, o, p, shape, side, threshold):
        """(direct LineBest, chain LineEntry or None when special, moving key) of one partition, or None."""
        engine = self.engine
        ev = engine.evaluate(sub, o, p, shape)
        if ev is None or ev.non_incident:
            return None
        generic, moving = engine.line_structure(sub, o, p, side, shape.id, ev)
        if threshold is None:
            best = LineBest(self.width_of(ev), 0, p, shape.id, ev)
            entry = LineEntry(self.rest_width(ev, moving), 0, p, shape.id) if generic else None
        else:
            best = LineBest(threshold, self.count_of(ev, threshold), p, shape.id, ev)
            entry = LineEntry(threshold, self.rest_count(ev, moving, threshold), p, shape.id) if generic else None
        return best, entry, moving

    def _insert(self, sub, o, p, side, state, threshold, key_of):
        """Evaluate a partner at o, file it in the chain or as special; returns (best, moving keys)."""
        best, movers, top = None, set(), None
        for shape in self.engine.shapes(sub, o, p):
            found = self._entry(sub, o, p, shape, side, threshold)
            if found is None:
                continue
            direct, entry, moving = found
            best = _pick(best, direct, threshold)
            if entry is None:
                state.special.append((p, shape.id))
                continue
            movers.add(moving)
            if top is None or (entry.count < top.count if threshold is not None else entry.width > top.width):
                top = entry
        if top is not None:
            state.chain.put(key_of(p), top)
        return best, movers

    def _scan(self, sub, side, partners, threshold, count=True):
        o = sub.key.g
        key_of, _, _ = self._frame(sub, side)
        size = max(self.engine.cx.nx, self.engine.cx.ny) + 1
        state = SweepState(len(partners), EnvelopeChain(size, fewest=threshold is not None))
        for p in partners:
            if count:
                self.engine.count_triplet(sub, o, p, "2Rv")
            best, _ = self._insert(sub, o, p, side, state, threshold, key_of)
            state.best = _pick(state.best, best, threshold)
        return state

    def _step(self, sub, side, partners, prev, threshold):
        engine = self.engine
        o = sub.key.g
        key_of, depth, across = self._frame(sub, side)
        state = SweepState(len(partners), prev.chain, [])
        newest = partners[0]
        engine.count_triplet(sub, o, newest, "2Rv")
        best, movers = self._insert(sub, o, newest, side, state, threshold, key_of)
        if len(movers) != 1:
            return None
        moving = movers.pop()
        for p, shape_id in prev.special:
            engine.count_triplet(sub, o, p, "2Rv")
            state.special.append((p, shape_id))
            shape = next((s for s in engine.shapes(sub, o, p) if s.id == shape_id), None)
            found = self._entry(sub, o, p, shape, side, threshold) if shape else None
            if found is not None:
                best = _pick(best, found[0], threshold)
        g = across(newest)
        if threshold is None:
            lid = min(g, self.width(moving)) if moving is not None else g
            top = advance_envelope(state.chain, depth, lid)
            predicted = None if top is None else top[0]
        else:
            extra = self.count_at(moving, threshold) if moving is not None else 0
            bend = bending_key(state.chain, depth, threshold)
            top = None
            if g >= threshold and extra < INF:
                k = state.chain.query(0, bend + 1)
                if k is not None:
                    top = (1 + extra + state.chain.chain[k].count, k)
            predicted = None if top is None or top[0] >= INF else top[0]
        if predicted is not None:
            entry = state.chain.chain[top[1]]
            engine.count_triplet(sub, o, entry.partner, "2Rv")
            shape = next((s for s in engine.shapes(sub, o, entry.partner) if s.id == entry.shape), None)
            found = self._entry(sub, o, entry.partner, shape, side, threshold) if shape else None
            actual = None if found is None else (found[0].width if threshold is None else found[0].count)
            if actual != predicted:
                return None
            best = _pick(best, found[0], threshold)
        state.best = best
        return state

    def sweep_2rv(self, direction):
        """Widest cut-visible partner of every coarse-grid origin of one quadrant direction."""
        out = {}
        for o in self.engine.coarse_origins(direction):
            key = SubKey(o, direction, False)
            if key in self.engine.by_key:
                out[o] = max(self.sweep_table(key).values(), key=lambda e: e.width, default=None)
        return out


def _pick(a, b, threshold):
    if a is None:
        return b
    if b is None:
        return a
    if threshold is None:
        return b if b.width > a.width else a
    return b if b.count < a.count else a


def _score(entry, threshold):
    if entry is None:
        return None
    return entry.width if threshold is None else entry.count


#############################
# ENTRY POINTS
#############################

def _run(poly, grid, incidence, assertions=None):
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20000))
    try:
        solver = ThickSolver(poly, grid, incidence, assertions)
        best = solver.solve()
        rects = solver.reconstruct(best.width)
    finally:
        sys.setrecursionlimit(old_limit)
    return solver, best, rects


def vt_partition(poly, assertions=None):
    """Thick partition whose cuts all touch a reflex vertex."""
    require_valid(poly, hole_free=True)
    solver, best, rects = _run(poly, None, "vertex", assertions)
    result = solver.engine.result("thick", best.width, rects)
    logger.info(
        "vt solve: width=%s count=%d states=%d triplets=%d",
        best.width, best.count, solver.engine.stats["states"], solver.engine.stats["triplets"],
    )
    return result


def at_partition(poly, max_vertices=None, assertions=None):
    """Thick partition whose cuts all touch the boundary, on the fraction-anchor grid.

    Coordinates of the result are scaled by 6; the width is reported exactly
    over the original scale.
    """
    require_valid(poly, hole_free=True)
    limit = max_vertices or load_settings().at_max_vertices
    if poly.n > limit:
        raise SizeLimitExceeded(f"at-partition supports at most {limit} vertices, got {poly.n}")
    scaled, grid = fraction_grid(poly)
    solver, best, rects = _run(scaled, grid, "boundary", assertions)
    res = solver.engine.result("thick", best.width, rects)
    logger.info(
        "at solve: width=%s/%d count=%d triplets=%d",
        best.width, AT_SCALE, best.count, solver.engine.stats["triplets"],
    )
    return PartitionResult(
        "thick", Fraction(best.width, AT_SCALE), res.count, res.cuts, res.rectangles, AT_SCALE, res.stats
    )
