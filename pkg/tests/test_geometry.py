import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumcrit.errors import DimensionMismatch, EmptyOperand, OutsideHull, DegenerateSimplex
from sumcrit.geometry import (
    Location,
    PointSet,
    affine_dimension,
    barycentric,
    carrier,
    convex_hull,
    simplex_volume,
)

from helpers import CUBE, OCTAHEDRON, P, PRISM, SQUARE, SQUARE_CENTER, TRIANGLE, simplex
from oracle import affine_rank, in_hull, pts
from strategies import pointsets, points, spanning_sets


def test_pointset_sorted_and_deduplicated():
    S = PointSet([(1, 0), (0, 1), (1, 0)])
    assert len(S) == 2
    assert list(S) == [(0, 1), (1, 0)]
    assert S.index((1, 0)) == 1
    assert S == PointSet([(F(1), F(0)), (0, 1)])


def test_pointset_errors():
    with pytest.raises(EmptyOperand):
        PointSet([])
    with pytest.raises(DimensionMismatch):
        PointSet([(0, 0), (1,)])


def test_affine_dimension():
    assert affine_dimension(SQUARE) == 2
    assert affine_dimension(P((0, 0), (1, 1), (2, 2))) == 1
    assert affine_dimension(P((3, 3))) == 0


def test_square_hull():
    H = convex_hull(SQUARE_CENTER)
    assert H.dim == 2
    assert len(H.vertices) == 4
    assert len(H.facets) == 4
    assert H.locate(("1/2", "1/2")).location is Location.INTERIOR
    assert H.locate((0, "1/2")).location is Location.BOUNDARY
    assert H.locate((2, 0)).location is Location.OUTSIDE


@pytest.mark.parametrize(
    "S, f",
    [
        (simplex(3), [4, 6, 4]),
        (CUBE, [8, 12, 6]),
        (OCTAHEDRON, [6, 12, 8]),
        (PRISM, [6, 9, 5]),
    ],
)
def test_face_counts(S, f):
    H = convex_hull(S)
    assert [len(H.faces(j)) for j in range(3)] == f
    # Euler relation for 3-polytopes
    assert f[0] - f[1] + f[2] == 2


def test_lower_dimensional_hull():
    seg = convex_hull(P((0, 0, 0), (1, 1, 1), ("1/2", "1/2", "1/2")))
    assert seg.dim == 1
    assert len(seg.vertices) == 2
    assert seg.contains(("1/3", "1/3", "1/3"))
    assert not seg.contains(("1/3", "1/3", 0))


def test_carrier():
    H = convex_hull(SQUARE)
    edge = carrier(H, pts((0, "1/3"), (0, "2/3")))
    assert H.face_dim(edge) == 1
    assert carrier(H, pts(("1/2", "1/2"))) == H.all_vertices
    with pytest.raises(OutsideHull):
        carrier(H, pts((2, 2)))


def test_simplex_volume():
    assert simplex_volume((0, 1, 2), TRIANGLE) == F(1, 2)
    with pytest.raises(DegenerateSimplex):
        simplex_volume((0, 1, 2), P((0, 0), (1, 1), (2, 2)))


def test_barycentric():
    cell = [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]
    assert barycentric(cell, (F(1, 4), F(1, 4))) == [F(1, 2), F(1, 4), F(1, 4)]


@given(pointsets(2, 1, 7), points(2))
@settings(max_examples=80, deadline=None)
def test_membership_matches_caratheodory_2d(S, x):
    assert convex_hull(S).contains(x) == in_hull(x, S)


@given(pointsets(3, 1, 6, den=2), points(3, den=2))
@settings(max_examples=60, deadline=None)
def test_membership_matches_caratheodory_3d(S, x):
    assert convex_hull(S).contains(x) == in_hull(x, S)


@given(pointsets(3, 1, 7, den=2))
@settings(max_examples=60, deadline=None)
def test_vertices_are_extreme(S):
    H = convex_hull(S)
    assert H.dim == affine_rank(S)
    for v in S:
        rest = [p for p in S if p != v]
        extreme = not rest or not in_hull(v, rest)
        assert (v in H.vertices) == extreme
    # lexicographic maximum is always a vertex
    assert S[-1] in H.vertices


@given(spanning_sets(2, 7, den=2))
@settings(max_examples=60, deadline=None)
def test_polygon_facets_cover_vertices(S):
    H = convex_hull(S)
    assert len(H.facets) == len(H.vertices)
    for f in H.facets:
        assert len(f.vertices) == 2
