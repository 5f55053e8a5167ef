from fractions import Fraction

import pytest

from rectpart.ink import ink_partition
from rectpart.instances import random_polygon
from rectpart.oracle import oracle_min_ink, oracle_thick
from rectpart.thick import vt_partition
from rectpart.verify import verify

from .conftest import polyominoes, rng, stretch

BOARD = polyominoes(3)


def test_board_corpus_is_complete():
    # fixed polyominoes of size 1..9 fitting a 3 x 3 board, holes and pinches removed
    assert len(BOARD) == len({p.outer for p in BOARD})
    assert len({p.n for p in BOARD}) >= 4


@pytest.mark.parametrize("poly", BOARD, ids=lambda p: "-".join(f"{v.x}{v.y}" for v in p.outer))
def test_board_corpus_matches_oracles(poly):
    ink = ink_partition(poly)
    assert Fraction(ink.value) == oracle_min_ink(poly)
    vt = vt_partition(poly)
    assert (Fraction(vt.value), vt.count) == oracle_thick(poly, "vertex")
    assert verify(poly, vt, incidence="vertex")["ok"]


@pytest.mark.parametrize("seed", range(200))
def test_seeded_polygons_match_oracles(seed):
    poly = stretch(random_polygon(rng(seed), cells=3 + seed % 8, board=4), rng(10_000 + seed))
    ink = ink_partition(poly)
    assert Fraction(ink.value) == oracle_min_ink(poly)
    report = verify(poly, ink, incidence="vertex")
    assert report["ok"], report["failures"]
    vt = vt_partition(poly)
    assert (Fraction(vt.value), vt.count) == oracle_thick(poly, "vertex")
