import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectpart.errors import BadParams, CapacityExceeded, NotPlanar, PointOnBoundary, UnsatisfiedClause
from rectpart.geometry import Point, Rect, signed_area2, validate
from rectpart.instances import (
    Formula,
    approx_ink_with_holes,
    assignment_to_partition,
    check_planar,
    generate_th_instance,
    parse_assignment,
    parse_dimacs,
    random_polygon,
    rect_polygon,
    stitch_partition,
    transform_point_holes,
    write_dimacs,
)
from rectpart.oracle import oracle_min_ink_holes
from rectpart.verify import verify

from .conftest import rng

SQUARE = Rect(Point(0, 0), Point(4, 4))


#############################
# POINT HOLES
#############################


def test_transform_single_hole():
    poly = transform_point_holes(SQUARE, [(1, 2)])
    assert poly.weakly_simple
    assert poly.outer == (
        Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4), Point(0, 2), Point(1, 2), Point(0, 2),
    )
    assert validate(poly).valid


def test_transform_without_holes_is_the_rectangle():
    assert transform_point_holes(SQUARE, []).n == 4


@pytest.mark.parametrize("pts", [[(0, 2)], [(4, 4)], [(1, 1), (1, 1)]])
def test_holes_must_be_strictly_inside_and_distinct(pts):
    with pytest.raises(PointOnBoundary):
        transform_point_holes(SQUARE, pts)


def test_approx_single_hole():
    res = approx_ink_with_holes(SQUARE, [(1, 2)])
    assert res.value == 4
    assert res.count == 2
    report = verify(rect_polygon(SQUARE, [(1, 2)]), res)
    assert report["ok"], report["failures"]


def test_approx_with_sample_shape(shapes):
    poly = shapes["pointholes"]
    box = poly.bounding_rect()
    res = approx_ink_with_holes(box, poly.point_holes)
    assert verify(poly, res)["ok"]
    assert res.value <= 3 * oracle_min_ink_holes(box, poly.point_holes)


hole_sets = st.sets(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=3)


@settings(max_examples=20, deadline=None)
@given(hole_sets)
def test_approx_within_three_times_optimum(pts):
    pts = sorted(pts)
    res = approx_ink_with_holes(SQUARE, pts)
    report = verify(rect_polygon(SQUARE, pts), res)
    assert report["ok"], report["failures"]
    assert not any(r.contains_open(p) for r in res.rectangles for p in pts)
    assert res.value <= 3 * oracle_min_ink_holes(SQUARE, pts)


#############################
# FORMULAS
#############################

SAMPLE = """c sample
p cnf 4 2
1 -2 3 0
-1 2 4 0
"""


def test_dimacs_parse_and_write():
    formula = parse_dimacs(SAMPLE)
    assert formula == Formula(4, ((1, -2, 3), (-1, 2, 4)))
    assert parse_dimacs(write_dimacs(formula)) == formula


@pytest.mark.parametrize(
    "text",
    [
        "1 2 3 0\n",
        "p cnf 3 2\n1 2 3 0\n",
        "p cnf 3 1\n1 2 0\n",
        "p cnf 3 1\n1 1 2 0\n",
        "p cnf 4 1\n1 2 3 0\n",
        "p cnf 3 1\n1 x 3 0\n",
    ],
)
def test_dimacs_errors(text):
    with pytest.raises(BadParams):
        parse_dimacs(text)


def test_parse_assignment():
    assert parse_assignment("1,-2", 3) == {1: True, 2: False, 3: False}
    with pytest.raises(BadParams):
        parse_assignment("4", 3)


K33 = Formula(3, ((1, 2, 3), (-1, 2, 3), (1, -2, 3)))


def test_non_planar_formula():
    with pytest.raises(NotPlanar):
        check_planar(K33)
    with pytest.raises(NotPlanar):
        generate_th_instance(K33)


def test_capacity():
    formula = Formula(9, ((1, 2, 3), (4, 5, 6), (7, 8, 9)))
    with pytest.raises(CapacityExceeded):
        generate_th_instance(formula)




#############################
# TH INSTANCES
#############################


def _assignments(n):
    for bits in itertools.product((False, True), repeat=n):
        yield {v + 1: b for v, b in enumerate(bits)}


def _check_witness(layout, witness, k):
    report = verify(layout.polygon, witness, incidence="vertex", delta=layout.delta, k=k)
    assert report["ok"], report["failures"]


def test_single_clause_instance():
    formula = Formula(3, ((1, 2, 3),))
    layout = generate_th_instance(formula, delta=2)
    assert validate(layout.polygon).valid
    assert layout.legs == {0: (1, 2, 3)}
    for assignment in _assignments(3):
        if not any(assignment.values()):
            continue
        witness = assignment_to_partition(layout, assignment)
        assert witness.count == layout.k
        assert witness.value == 2
        _check_witness(layout, witness, layout.k)


def test_negative_literals_are_honoured():
    layout = generate_th_instance(Formula(3, ((-1, -2, -3),)))
    witness = assignment_to_partition(layout, {1: True, 2: False, 3: True})
    assert witness.count == layout.k
    _check_witness(layout, witness, layout.k)
    with pytest.raises(UnsatisfiedClause):
        assignment_to_partition(layout, {1: True, 2: True, 3: True})


def test_signs_change_the_polygon():
    plain = generate_th_instance(Formula(3, ((1, 2, 3),)))
    negated = generate_th_instance(Formula(3, ((-1, -2, -3),)))
    assert plain.polygon != negated.polygon


def test_falsifying_assignment_misses_k():
    layout = generate_th_instance(Formula(3, ((1, 2, 3),)))
    partition = stitch_partition(layout, {1: False, 2: False, 3: False})
    assert partition.count == layout.k + 1
    report = verify(layout.polygon, partition, incidence="vertex", delta=2, k=layout.k)
    assert not report["ok"]
    assert all(f.startswith("threshold") for f in report["failures"])


def test_picking_a_false_literal_is_rejected():
    layout = generate_th_instance(Formula(3, ((1, 2, 3),)))
    with pytest.raises(BadParams):
        stitch_partition(layout, {1: True, 2: False, 3: False}, picks={0: 1})


def test_clauses_on_both_sides():
    formula = Formula(3, ((1, 2, 3), (-1, 2, -3)))
    layout = generate_th_instance(formula)
    assert layout.sides == (True, False)
    witness = assignment_to_partition(layout, {1: True, 2: True, 3: False})
    assert witness.count == layout.k
    _check_witness(layout, witness, layout.k)


def test_unsatisfied_clause():
    layout = generate_th_instance(Formula(3, ((1, 2, 3),)))
    with pytest.raises(UnsatisfiedClause) as info:
        assignment_to_partition(layout, {1: False, 2: False, 3: False})
    assert info.value.clause_index == 0
    assert info.value.clause == (1, 2, 3)


def test_odd_delta_is_rejected():
    with pytest.raises(BadParams):
        generate_th_instance(Formula(3, ((1, 2, 3),)), delta=3)


def test_wider_delta_scales_the_instance():
    layout = generate_th_instance(Formula(3, ((1, -2, 3),)), delta=4)
    witness = assignment_to_partition(layout, {1: False, 2: False, 3: False})
    assert witness.value == 4
    _check_witness(layout, witness, layout.k)


FORMULAS = [
    Formula(3, ((1, 2, 3),)),
    Formula(3, ((-1, -2, -3),)),
    Formula(3, ((1, -2, 3),)),
    Formula(3, ((-1, 2, -3),)),
    Formula(3, ((1, 2, 3), (-1, 2, -3))),
    Formula(3, ((1, 2, 3), (-1, -2, -3))),
    Formula(4, ((1, -2, 3), (-1, 2, 4))),
    Formula(4, ((-1, 2, 3), (1, -3, 4))),
    Formula(5, ((1, 2, 3), (-3, 4, 5))),
    Formula(4, ((1, 2, 3), (2, -3, 4), (-1, -2, -4))),
]


@pytest.mark.parametrize("formula", FORMULAS, ids=lambda f: "|".join(" ".join(map(str, c)) for c in f.clauses))
def test_witnesses_meet_k_exactly_when_satisfied(formula):
    layout = generate_th_instance(formula)
    satisfying, falsifying = [], []
    for assignment in _assignments(formula.num_vars):
        bad = formula.first_unsatisfied(assignment)
        (satisfying if bad is None else falsifying).append(assignment)
    assert satisfying
    for assignment in satisfying[:2]:
        witness = assignment_to_partition(layout, assignment)
        assert witness.count == layout.k
        _check_witness(layout, witness, layout.k)
    if falsifying:
        partition = stitch_partition(layout, falsifying[0])
        assert partition.count > layout.k
        report = verify(layout.polygon, partition, incidence="vertex", delta=2, k=layout.k)
        assert not report["ok"]


#############################
# RANDOM CORPUS
#############################


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 9))
def test_random_polygon_is_simple(seed, cells):
    poly = random_polygon(rng(seed), cells=cells, board=4)
    assert validate(poly).valid
    assert not poly.holes
    assert 0 < signed_area2(poly.outer) <= 2 * cells


def test_random_polygon_bounds():
    with pytest.raises(BadParams):
        random_polygon(rng(0), cells=30, board=4)
