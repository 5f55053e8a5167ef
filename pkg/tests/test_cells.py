import pytest

from rectpart.cells import ROOT, CellComplex, SubKey, decode_sub, maximal_cuts
from rectpart.errors import InvalidKey
from rectpart.geometry import Polygon
from rectpart.instances import random_polygon

from .conftest import box, rect, rng


def test_lshape_points(lshape):
    cx = CellComplex(lshape)
    assert cx.inside.bit_count() == 3
    assert cx.reflex_points == {(1, 1)}
    assert (0, 0) in cx.boundary_points
    assert not cx.is_reflex(0, 0)


def test_root_decodes_to_whole_polygon(lshape):
    cx = CellComplex(lshape)
    sub = cx.decode(ROOT)
    assert sub.kind == "P"
    assert sub.mask == cx.inside


def test_one_cut_key_from_reflex_vertex(lshape):
    cx = CellComplex(lshape)
    above = cx.decode(SubKey((1, 1), "LEFT", True))
    below = cx.decode(SubKey((1, 1), "LEFT", False))
    assert above.mask == 1 << cx.cell(0, 1)
    assert above.mask | below.mask == cx.inside
    assert above.endpoints[0] == (0, 1)
    assert above.kind in ("1C", "1R")


def test_two_cut_key_needs_interior_point(lshape):
    cx = CellComplex(lshape)
    with pytest.raises(InvalidKey):
        cx.decode(SubKey((0, 0), "UR", True))


def test_two_cut_keys_of_staircase(shapes):
    cx = CellComplex(shapes["staircase"])
    wedge = cx.decode(SubKey((1, 1), "UR", True))
    rest = cx.decode(SubKey((1, 1), "UR", False))
    assert wedge.kind == "2C" and rest.kind == "2R"
    assert wedge.mask == 1 << cx.cell(1, 1)
    assert wedge.mask | rest.mask == cx.inside
    assert not wedge.mask & rest.mask


def test_slit_becomes_wall():
    poly = Polygon.make([(0, 0), (2, 0), (2, 1), (2, 0), (4, 0), (4, 2), (0, 2)], weakly_simple=True)
    cx = CellComplex(poly)
    assert cx.inside == cx.full
    assert (1, 0) in cx.wall_v
    assert cx.is_reflex(1, 1)
    assert cx.perimeter(cx.inside) == 14


def test_rings_of_region_with_hole(windmill):
    cx = CellComplex(windmill)
    rings = cx.rings_of(cx.inside)
    assert len(rings) == 2
    assert set(rings[0]) == set(windmill.outer)
    assert set(rings[1]) == set(windmill.holes[0])


def test_maximal_cut_of_lshape(lshape):
    cuts = maximal_cuts(lshape, [rect(0, 0, 2, 1), rect(0, 1, 1, 2)])
    assert cuts == [((0, 1), (1, 1))]


def test_cuts_run_through_crossings():
    cuts = maximal_cuts(box(2, 2), [rect(0, 0, 1, 1), rect(1, 0, 2, 1), rect(0, 1, 1, 2), rect(1, 1, 2, 2)])
    assert cuts == [((0, 1), (2, 1)), ((1, 0), (1, 2))]


def test_cuts_stop_at_boundary_points(cross):
    rects = [rect(1, 0, 2, 3), rect(0, 1, 1, 2), rect(2, 1, 3, 2)]
    assert maximal_cuts(cross, rects) == [((1, 1), (1, 2)), ((2, 1), (2, 2))]


def test_decode_sub_accepts_plain_tuples(shapes):
    poly = shapes["staircase"]
    sub = decode_sub(poly, ((1, 1), "UR", True))
    assert sub.key == SubKey((1, 1), "UR", True)
    assert sub.kind == "2C"
    assert decode_sub(poly, ROOT).kind == "P"


@pytest.mark.parametrize("key", [((1, 1), "UP", True), ((0, 0), "UR", False), ("bad",), ((9, 9), "LEFT", True)])
def test_decode_sub_rejects_bad_keys(shapes, key):
    with pytest.raises(InvalidKey):
        decode_sub(shapes["staircase"], key)


@pytest.mark.parametrize("name", ["lshape", "cross", "staircase", "ushape"])
def test_every_key_decodes_to_a_cut_chain(shapes, name):
    poly = shapes[name]
    assert poly.n <= 16
    cx = CellComplex(poly)
    by_key, _ = cx.subpolygon_table()
    assert by_key
    for key, sub in by_key.items():
        chain = cx.cut_chain(sub.mask)
        assert chain is not None, key
        expected = 0 if key == ROOT else 1 if key.d in ("LEFT", "DOWN") else 2
        assert len(chain) == expected, key
        assert decode_sub(poly, key).mask == sub.mask


def test_random_keys_round_trip():
    poly = random_polygon(rng(11), cells=9, board=4)
    cx = CellComplex(poly)
    by_key, by_mask = cx.subpolygon_table()
    for key, sub in by_key.items():
        assert cx.cut_chain(sub.mask) is not None, key
        assert by_key[by_mask[sub.mask]].mask == sub.mask


def test_cut_chain_rejects_three_cuts(cross):
    cx = CellComplex(cross)
    # the centre cell alone is cut off by four unit cuts
    assert cx.cut_chain(1 << cx.cell(1, 1)) is None
    # two opposite arms together are bounded by two parallel cuts
    arms = (1 << cx.cell(0, 1)) | (1 << cx.cell(2, 1))
    assert cx.cut_chain(arms) is None
    assert cx.cut_chain(1 << cx.cell(0, 1)) == [("v", (1, 1), (1, 2))]
