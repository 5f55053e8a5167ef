import pytest

from rectpart.errors import BadParams, GadgetConflict
from rectpart.gadgets import (
    EMPTY,
    GADGET_KINDS,
    Board,
    build_gadget,
    hole_state,
    polygon_of,
    witness_partition,
    windmill_partitions,
    windmill_polygon,
)
from rectpart.geometry import validate
from rectpart.oracle import enumerate_partitions, oracle_th
from rectpart.verify import verify

from .conftest import rect

# closures small enough for the exhaustive oracle
ORACLE_KINDS = ("variable", "inverter", "turn", "split", "phase-shifter")


def _witness_counts(layout):
    """hole-state tuple -> witness count over the feasible states."""
    out = {}
    for _, states in layout.feasible():
        key = tuple(states[t] for t in layout.board.holes_at())
        out[key] = witness_partition(layout.board, states, layout.delta, layout.polygon).count
    return out


def _oracle_counts(poly, holes, delta=2):
    """hole-state tuple -> fewest rectangles over all width-delta v-cut partitions."""
    best = {}
    for part in enumerate_partitions(poly, filter="v-cut", min_width=delta):
        key = tuple(hole_state(part.rectangles, h) for h in holes)
        best[key] = min(best.get(key, part.count), part.count)
    return best


def _saver_board():
    board = Board()
    board.path((0, 0), (1, 0))
    board.saver((1, 0))
    board.network("wire", (0, 0))
    board.check()
    return board


#############################
# CLOSURES
#############################


@pytest.mark.parametrize("kind", GADGET_KINDS)
def test_feasible_witnesses_verify(kind):
    layout = build_gadget(kind, delta=2)
    assert validate(layout.polygon).valid
    counts = []
    for _, states in layout.feasible():
        witness = witness_partition(layout.board, states, 2, layout.polygon)
        report = verify(layout.polygon, witness, incidence="vertex", delta=2, k=witness.count)
        assert report["ok"], (kind, report["failures"])
        assert witness.value == 2
        assert all(hole_state(witness.rectangles, h) == states[t]
                   for t, h in zip(layout.board.holes_at(), layout.holes))
        counts.append(witness.count)
    assert min(counts) == layout.k


@pytest.mark.parametrize("kind", ORACLE_KINDS)
def test_witness_states_match_oracle(kind):
    layout = build_gadget(kind, delta=2)
    assert _oracle_counts(layout.polygon, layout.holes) == _witness_counts(layout)


def test_saver_saves_one_rectangle():
    board = _saver_board()
    poly = board.polygon()
    point = board.bump((1, 0))[1]
    helping = board.help_state((1, 0), point)
    assert helping is False
    counts = {}
    for root in (True, False):
        states = board.states({"wire": root})
        counts[states[(1, 0)]] = witness_partition(board, states, 2, poly).count
    assert counts[helping] + 1 == counts[not helping]
    oracle = _oracle_counts(poly, board.hole_rects())
    assert oracle == {(not helping, helping): counts[helping], (helping, not helping): counts[not helping]}
    assert oracle_th(poly, 2, counts[helping])
    assert not oracle_th(poly, 2, counts[helping] - 1)


def test_inverter_flips_the_far_end():
    wire = build_gadget("variable", steps=2).board.parity()
    inverted = build_gadget("inverter").board.parity()
    assert wire[(2, 0)] == ("wire", 0)
    assert inverted[(2, 0)] == ("wire", 1)


def test_phase_shifter_needs_one_helping_end():
    layout = build_gadget("phase-shifter")
    pairs = {(values["side"], values["vertical"]) for values, _ in layout.feasible()}
    assert pairs == {(True, True), (True, False), (False, True)}


def test_clause_needs_a_true_leg():
    layout = build_gadget("clause")
    best = {}
    for values, states in layout.feasible():
        picked = [i for i in range(3) if values[("t", i)]]
        assert len(picked) <= 1
        assert all(values[("leg", i)] for i in picked)
        legs = tuple(values[("leg", i)] for i in range(3))
        count = witness_partition(layout.board, states, 2, layout.polygon).count
        best[legs] = min(best.get(legs, count), count)
    assert len(best) == 8
    for legs, count in best.items():
        assert count == (layout.k if any(legs) else layout.k + 1), legs


def test_gadgets_scale_with_delta():
    small = build_gadget("turn", delta=2)
    wide = build_gadget("turn", delta=6)
    assert wide.k == small.k
    assert wide.polygon.bounding_rect().hi.x == 3 * small.polygon.bounding_rect().hi.x


@pytest.mark.parametrize("delta,steps", [(0, 2), (3, 2), (2, 0)])
def test_gadget_params(delta, steps):
    with pytest.raises(BadParams):
        build_gadget("variable", delta=delta, steps=steps)


def test_unknown_gadget():
    with pytest.raises(BadParams):
        build_gadget("crossover")


#############################
# BOARD
#############################


def test_unlinked_tiles_must_not_touch():
    board = Board()
    board.add((0, 0))
    board.add((1, 0))
    with pytest.raises(GadgetConflict):
        board.check()


def test_diagonal_tiles_must_not_touch():
    board = Board()
    board.add((0, 0))
    board.add((1, 1))
    with pytest.raises(GadgetConflict):
        board.check()


def test_tile_placed_twice():
    board = Board()
    board.add((0, 0))
    with pytest.raises(GadgetConflict):
        board.add((0, 0), EMPTY)


@pytest.mark.parametrize("tiles,slot", [(((0, 0), (1, 0)), (1, 0)), (((0, 0), (1, 0), (1, 1)), (1, 0))])
def test_only_straight_tiles_invert(tiles, slot):
    board = Board()
    board.path(*tiles)
    with pytest.raises(GadgetConflict):
        board.invert(slot)


def test_networks_may_not_share_a_wire():
    board = Board()
    board.path((0, 0), (1, 0))
    board.network("a", (0, 0))
    board.network("b", (1, 0))
    with pytest.raises(GadgetConflict):
        board.parity()


def test_junction_needs_neighbours():
    board = Board()
    board.path((0, 0))
    board.path((3, -1))
    with pytest.raises(GadgetConflict):
        board.junction((1, 0), (0, 0), (3, -1))


def test_help_state_off_the_hole_lines():
    with pytest.raises(GadgetConflict):
        Board().help_state((0, 0), (4, 4))


#############################
# WINDMILLS
#############################


def test_windmill_polygon():
    poly = windmill_polygon(2)
    assert poly.bounding_rect() == rect(0, 0, 5, 5)
    assert poly.holes[0] and set(poly.holes[0]) == {(2, 2), (3, 2), (3, 3), (2, 3)}
    v, h = windmill_partitions(2)
    assert len(v) == len(h) == 4
    assert set(v) != set(h)


def test_single_hole_witness_is_a_windmill():
    board = Board()
    board.add((0, 0))
    board.network("wire", (0, 0))
    v, h = windmill_partitions(2)
    hole = board.hole_rects()[0]
    for state, expected in ((True, v), (False, h)):
        witness = witness_partition(board, {(0, 0): state}, 2)
        assert set(witness.rectangles) == set(expected)
        assert hole_state(witness.rectangles, hole) is state


def test_polygon_of_rejects_disconnected():
    with pytest.raises(BadParams):
        polygon_of([rect(0, 0, 1, 1), rect(2, 0, 3, 1)])
