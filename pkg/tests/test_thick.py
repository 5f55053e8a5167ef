import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectpart.cells import ROOT
from rectpart.errors import InvalidInput, SizeLimitExceeded
from rectpart.geometry import Polygon, WidthCount, canonical_grid
from rectpart.instances import random_polygon
from rectpart.oracle import enumerate_partitions, oracle_thick
from rectpart.thick import (
    EnvelopeChain,
    LineEntry,
    ThickSolver,
    advance_envelope,
    at_partition,
    bending_key,
    ray_shoot,
    vt_partition,
)
from rectpart.verify import verify

from .conftest import box, rng, stretch

# two offset steps: every v-cut partition keeps a slab of width 1 between x=2 and x=3
OFFSET_STEPS = [(0, 1), (3, 1), (3, 0), (5, 0), (5, 5), (2, 5), (2, 6), (0, 6)]


def test_vt_lshape(lshape):
    res = vt_partition(lshape)
    assert res.value == 1
    assert res.count == 2
    report = verify(lshape, res, incidence="vertex")
    assert report["ok"], report["failures"]


def test_vt_rectangle_is_one_piece(rectangle):
    res = vt_partition(rectangle)
    assert (res.value, res.count) == (2, 1)


@pytest.mark.parametrize("name", ["lshape", "cross", "staircase", "ushape"])
def test_vt_matches_oracle(shapes, name):
    poly = shapes[name]
    res = vt_partition(poly)
    assert (Fraction(res.value), res.count) == oracle_thick(poly, "vertex")


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 6))
def test_vt_random_polygons(seed, cells):
    poly = stretch(random_polygon(rng(seed), cells=cells, board=4), rng(seed + 1))
    res = vt_partition(poly)
    assert (Fraction(res.value), res.count) == oracle_thick(poly, "vertex")
    assert verify(poly, res, incidence="vertex")["ok"]


@pytest.mark.parametrize("name", ["lshape", "cross", "staircase"])
def test_vt_assertion_mode(shapes, name):
    poly = shapes[name]
    res = vt_partition(poly, assertions=True)
    assert (Fraction(res.value), res.count) == oracle_thick(poly, "vertex")


#############################
# AT-PARTITIONS
#############################

@pytest.mark.parametrize("w,h", [(1, 1), (2, 1)])
def test_at_on_small_rectangles(w, h):
    poly = box(w, h)
    res = at_partition(poly)
    assert res.scale == 6
    assert res.value == Fraction(min(w, h))
    assert res.count == 1
    assert (res.value, res.count) == oracle_thick(poly, "boundary")
    report = verify(poly, res, incidence="boundary")
    assert report["ok"], report["failures"]


@pytest.mark.parametrize(
    "outer",
    [
        [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
        [(0, 0), (2, 0), (2, 2), (1, 2), (1, 1), (0, 1)],
    ],
)
def test_at_matches_boundary_oracle(outer):
    poly = Polygon.make(outer)
    res = at_partition(poly)
    assert (res.value, res.count) == oracle_thick(poly, "boundary", limit=64)
    report = verify(poly, res, incidence="boundary")
    assert report["ok"], report["failures"]


def test_boundary_cut_beats_vertex_cuts():
    poly = Polygon.make(OFFSET_STEPS)
    assert vt_partition(poly).value == 1
    assert oracle_thick(poly, "vertex").width == 1

    # one anchored line halfway up is enough to stop both step cuts
    grid = canonical_grid(poly, extra_ys=[3])
    solver = ThickSolver(poly, grid, "boundary")
    best = solver.solve()
    assert best == WidthCount(2, 4)
    res = solver.engine.result("thick", best.width, solver.reconstruct(best.width))
    report = verify(poly, res, incidence="boundary")
    assert report["ok"], report["failures"]

    widest = max(
        min(r.min_side for r in part.rectangles)
        for part in enumerate_partitions(poly, grid, "a-cut")
    )
    assert widest == 2


def test_at_vertex_limit(cross):
    with pytest.raises(SizeLimitExceeded):
        at_partition(cross, max_vertices=8)


def test_thick_rejects_holes(windmill):
    with pytest.raises(InvalidInput):
        vt_partition(windmill)


#############################
# ENVELOPE
#############################

SIZE = 10


@st.composite
def envelopes(draw):
    keys = draw(st.lists(st.integers(0, SIZE - 1), unique=True, max_size=SIZE))
    widths = draw(st.lists(st.integers(0, 9), min_size=len(keys), max_size=len(keys)))
    depths = sorted(draw(st.lists(st.integers(0, 12), min_size=SIZE, max_size=SIZE)), reverse=True)
    lid = draw(st.integers(0, 12))
    return dict(zip(keys, widths)), depths, lid


@settings(max_examples=200, deadline=None)
@given(envelopes())
def test_advance_envelope_matches_brute_force(case):
    widths, depths, lid = case
    state = EnvelopeChain(SIZE)
    for key, w in widths.items():
        state.put(key, LineEntry(w, 0, (key, 0), 0))
    depth = depths.__getitem__
    found = advance_envelope(state, depth, lid)
    if not widths:
        assert found is None
        return
    expected = max(min(depth(k), lid, w) for k, w in widths.items())
    score, key = found
    assert score == expected
    assert min(depth(key), lid, widths[key]) == expected


def test_envelope_carries_over_one_insert():
    depths = [9, 8, 6, 4, 2, 1]
    state = EnvelopeChain(len(depths))
    state.put(0, LineEntry(3, 0, (0, 0), 0))
    state.put(2, LineEntry(5, 0, (2, 0), 0))
    assert advance_envelope(state, depths.__getitem__, 7) == (5, 2)
    # the next origin only adds its newest partner
    state.put(4, LineEntry(9, 0, (4, 0), 0))
    assert advance_envelope(state, depths.__getitem__, 7) == (5, 2)
    assert advance_envelope(state, depths.__getitem__, 4) == (4, 2)


def test_bending_key_and_ray_shoot():
    depths = [9, 7, 5, 3, 1, 0]
    state = EnvelopeChain(len(depths))
    for key, w in ((1, 1), (3, 4), (4, 0)):
        state.put(key, LineEntry(w, 0, (key, 0), 0))
    depth = depths.__getitem__
    assert bending_key(state, depth, 6) == 1
    assert bending_key(state, depth, 10) == -1
    assert bending_key(state, depth, 0) == 4
    assert ray_shoot(state, 0, depth) == 3
    assert ray_shoot(state, 4, depth) is None


def test_fewest_chain_returns_smallest_count():
    state = EnvelopeChain(6, fewest=True)
    assert state.query(0, 6) is None
    state.put(1, LineEntry(2, 5, (1, 0), 0))
    state.put(3, LineEntry(2, 2, (3, 0), 0))
    state.put(5, LineEntry(2, 2, (5, 0), 0))
    assert state.query(0, 6) == 3
    assert state.query(4, 6) == 5
    assert state.query(0, 2) == 1


#############################
# 2R SWEEP
#############################

def _direct_lines(solver, key, threshold=None):
    engine = solver.engine
    sub = engine.by_key[key]
    o = sub.key.g
    out = {}
    for line, partners in engine.sweep_lines(sub).items():
        scores = []
        for p in partners:
            for shape in engine.shapes(sub, o, p):
                ev = engine.evaluate(sub, o, p, shape)
                if ev is None or ev.non_incident:
                    continue
                scores.append(solver.width_of(ev) if threshold is None else solver.count_of(ev, threshold))
        best = max(scores, default=-math.inf) if threshold is None else min(scores, default=math.inf)
        if math.isfinite(best):
            out[line] = best
    return out


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10_000), st.integers(5, 9))
def test_sweep_tables_match_direct_scan(seed, cells):
    poly = stretch(random_polygon(rng(seed), cells=cells, board=4), rng(seed + 7))
    solver = ThickSolver(poly)
    best = solver.solve()
    for key, sub in solver.engine.by_key.items():
        if sub.kind != "2R":
            continue
        widths = {line: e.width for line, e in solver.sweep_table(key).items() if math.isfinite(e.width)}
        assert widths == _direct_lines(solver, key)
        counts = {
            line: e.count for line, e in solver.sweep_table(key, best.width).items() if math.isfinite(e.count)
        }
        assert counts == _direct_lines(solver, key, best.width)


def test_staircase_sweep_uses_the_origin_line(shapes):
    solver = ThickSolver(shapes["staircase"])
    out = solver.sweep_2rv("UR")
    assert set(out) == {(1, 1)}
    assert out[(1, 1)].width == 1
    assert solver.width(ROOT) == 1


def test_width_of_uni(lshape):
    solver = ThickSolver(lshape)
    root = solver.engine.by_key[ROOT]
    flat = solver.engine.shapes(root, (0, 0), (2, 1))[0]
    assert solver.width_of_uni(root, (0, 0), (2, 1), flat) == WidthCount(1, 2)
    assert solver.solve() == WidthCount(1, 2)

