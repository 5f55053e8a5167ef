from fractions import Fraction

import pytest

from rectpart.errors import BadParams, SizeLimitExceeded
from rectpart.gadgets import build_gadget
from rectpart.geometry import Point, Rect, WidthCount, canonical_grid
from rectpart.oracle import (
    count_partitions,
    enumerate_partitions,
    oracle_min_ink,
    oracle_min_ink_holes,
    oracle_th,
    oracle_thick,
)

from .conftest import box


def test_lshape_has_three_partitions(lshape):
    parts = list(enumerate_partitions(lshape))
    assert len(parts) == 3
    assert sorted(p.count for p in parts) == [2, 2, 3]
    assert len(list(enumerate_partitions(lshape, filter="v-cut"))) == 3


def test_a_cut_filter_on_rectangle():
    poly = box(2, 1)
    grid = canonical_grid(poly, extra_xs=[1])
    assert len(list(enumerate_partitions(poly, grid, filter="none"))) == 2
    assert len(list(enumerate_partitions(poly, grid, filter="v-cut"))) == 1
    assert len(list(enumerate_partitions(poly, grid, filter="a-cut"))) == 2


def test_unknown_filter(lshape):
    with pytest.raises(BadParams):
        list(enumerate_partitions(lshape, filter="diagonal"))


@pytest.mark.parametrize("name,ink", [("rectangle", 0), ("lshape", 1), ("cross", 2), ("ushape", 2)])
def test_min_ink(shapes, name, ink):
    assert oracle_min_ink(shapes[name]) == ink


def test_min_ink_assertion_mode(cross, monkeypatch):
    monkeypatch.setenv("RECTPART_ASSERT", "1")
    assert oracle_min_ink(cross) == 2


def test_size_limit(cross):
    with pytest.raises(SizeLimitExceeded):
        oracle_min_ink(cross, limit=3)


def test_env_size_limit(cross, monkeypatch):
    monkeypatch.setenv("RECTPART_ORACLE_CELLS", "4")
    with pytest.raises(SizeLimitExceeded):
        oracle_min_ink(cross)


def test_point_hole_forces_a_full_cut():
    square = Rect(Point(0, 0), Point(2, 2))
    assert oracle_min_ink_holes(square, [(1, 1)]) == 2
    assert oracle_min_ink_holes(Rect(Point(0, 0), Point(4, 4)), [(1, 2)]) == 4


def test_thick_oracle(lshape, rectangle):
    assert oracle_thick(lshape) == WidthCount(Fraction(1), 2)
    assert oracle_thick(rectangle) == WidthCount(Fraction(2), 1)


def test_windmill_has_two_wide_partitions(windmill):
    assert count_partitions(windmill, min_width=2) == 2
    assert count_partitions(windmill, min_width=2, filter="none") == 2
    assert oracle_th(windmill, 2, 4)
    assert not oracle_th(windmill, 2, 3)
    assert not oracle_th(windmill, 3, 10)


def test_variable_closure_has_two_minimum_partitions():
    layout = build_gadget("variable", delta=2, steps=1)
    assert count_partitions(layout.polygon, min_width=2) == 2
    counts = [p.count for p in enumerate_partitions(layout.polygon, filter="v-cut", min_width=2)]
    assert counts == [layout.k, layout.k]
    assert oracle_th(layout.polygon, 2, layout.k)
    assert not oracle_th(layout.polygon, 2, layout.k - 1)


def test_th_rejects_bad_params(windmill):
    with pytest.raises(BadParams):
        oracle_th(windmill, 0, 4)
