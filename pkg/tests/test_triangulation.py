import random
from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumcrit.errors import EquivalenceViolation, InvalidPlacingOrder, NotAShelling, RankDeficient
from sumcrit.geometry import PointSet
from sumcrit.triangulation import (
    ShapeTag,
    Triangulation,
    classify_shape,
    dual_graph,
    f_vector,
    find_shelling,
    h_from_f,
    h_from_shelling,
    h_vector,
    is_stacked,
    is_totally_stackable,
    is_unimodular,
    loaded_edges,
    placing_triangulation,
    pulling_simplices,
    random_placing_order,
    shelling_of,
    verify_triangulation,
)
from sumcrit.geometry import convex_hull

from helpers import CUBE, OCTAHEDRON, P, PRISM, SQUARE, SQUARE_CENTER, TRIANGLE, TRI_MID, simplex
from oracle import faces_of_complex, polygon_area, simplex_volume
from strategies import spanning_sets


def test_square_placing():
    T, sh = placing_triangulation(SQUARE)
    assert T.cells == ((0, 1, 2), (1, 2, 3))
    assert h_from_shelling(T, sh) == (1, 1, 0)
    assert h_vector(T) == (1, 1, 0)
    assert f_vector(T) == (1, 4, 5, 2)
    assert is_stacked(T).stacked
    assert is_unimodular(T)


def test_square_center_not_stacked():
    T, sh = placing_triangulation(SQUARE_CENTER)
    assert len(T.cells) == 4
    assert h_vector(T) == (1, 2, 1)
    rep = is_stacked(T)
    assert not rep.stacked and not rep.dual_tree and not rep.cell_count
    # the centre refines the lattice, so every cell has the minimal volume
    assert is_unimodular(T)


def test_placing_order_validation():
    with pytest.raises(InvalidPlacingOrder):
        placing_triangulation(SQUARE, [0, 1])
    with pytest.raises(InvalidPlacingOrder):
        placing_triangulation(SQUARE, [0, 0, 1, 2])


def test_explicit_order_changes_triangulation():
    T1, _ = placing_triangulation(SQUARE, [0, 1, 2, 3])
    T2, _ = placing_triangulation(SQUARE, [0, 1, 3, 2])
    assert verify_triangulation(SQUARE, T1) and verify_triangulation(SQUARE, T2)
    assert T1.cells != T2.cells


def test_overlapping_cells_rejected():
    bad = Triangulation(SQUARE, ((0, 1, 2), (0, 1, 3)))
    check = verify_triangulation(SQUARE, bad)
    assert not check.ok and check.reason


def test_missing_vertex_rejected():
    T = Triangulation(SQUARE_CENTER, ((0, 1, 3), (0, 3, 4)))
    assert not verify_triangulation(SQUARE_CENTER, T)


def test_shelling_validation():
    T, _ = placing_triangulation(SQUARE_CENTER)
    with pytest.raises(NotAShelling):
        shelling_of(T, (0, 0, 1, 2))
    sh = find_shelling(T)
    assert sh is not None
    assert h_from_shelling(T, sh) == h_vector(T)


def test_unshellable_order_detected():
    # two triangles meeting only at a vertex cannot follow each other
    S = P((0, 0), (2, 0), (1, 1), (0, 2), (2, 2))
    T, _ = placing_triangulation(S)
    for order in [(i, j) for i in range(len(T.cells)) for j in range(len(T.cells)) if i != j]:
        a, b = (frozenset(T.cells[x]) for x in order)
        if len(a & b) == 1:
            rest = [c for c in range(len(T.cells)) if c not in order]
            with pytest.raises(NotAShelling):
                shelling_of(T, order + tuple(rest))
            return


def test_h_from_f_simplex():
    T, _ = placing_triangulation(simplex(3))
    assert f_vector(T) == (1, 4, 6, 4, 1)
    assert h_from_f(f_vector(T), 3) == (1, 0, 0, 0)


def test_cube_and_octahedron():
    for S in (CUBE, OCTAHEDRON):
        T, sh = placing_triangulation(S)
        assert verify_triangulation(S, T)
        assert h_from_shelling(T, sh) == h_vector(T)
    T, _ = placing_triangulation(OCTAHEDRON)
    assert len(T.cells) == 4 and not is_stacked(T).stacked


def test_pulling_volume_matches_hull():
    for S in (SQUARE_CENTER, TRI_MID, P((0, 0), (3, 0), (3, 1), (1, 2), (0, 1))):
        H = convex_hull(S)
        cells = [[H.vertices[i] for i in c] for c in pulling_simplices(H)]
        total = sum(simplex_volume(c) for c in cells) / 2
        assert total == polygon_area(S)


def test_dual_graph_square():
    T, _ = placing_triangulation(SQUARE)
    assert dual_graph(T) == [(0, 1)]


def test_unimodular_requires_full_rank_lattice():
    T, _ = placing_triangulation(SQUARE)
    from sumcrit.lattice import difference_lattice

    L = difference_lattice(P((0, 0, 0), (1, 0, 0)))
    with pytest.raises(RankDeficient):
        is_unimodular(T, L)


@given(spanning_sets(2, 7), st.randoms(use_true_random=False))
@settings(max_examples=50, deadline=None)
def test_placing_invariants_2d(B, r):
    T, sh = placing_triangulation(B, random_placing_order(B, r))
    assert verify_triangulation(B, T)
    cells = [[B[i] for i in c] for c in T.cells]
    assert sum(simplex_volume(c) for c in cells) / 2 == polygon_area(B)
    used = {i for c in T.cells for i in c}
    assert used == set(range(len(B)))
    h = h_from_shelling(T, sh)
    assert h == h_from_f(f_vector(T), 2) == h_vector(T)
    assert h[0] == 1 and h[1] == len(B) - 3 and sum(h) == len(T.cells)
    counts = faces_of_complex(T.cells)
    assert list(f_vector(T)[1:]) == [counts[j] for j in range(3)]


@given(spanning_sets(3, 7, den=1), st.randoms(use_true_random=False))
@settings(max_examples=30, deadline=None)
def test_placing_invariants_3d(B, r):
    T, sh = placing_triangulation(B, random_placing_order(B, r))
    assert verify_triangulation(B, T)
    h = h_from_shelling(T, sh)
    assert h == h_vector(T)
    assert h[1] == len(B) - 4
    rep = is_stacked(T)
    assert rep.stacked == rep.cell_count == rep.h_vanishing == rep.dual_tree == rep.low_faces_on_boundary
    assert rep.stacked == (len(T.cells) == len(B) - 3)


def test_loaded_edges():
    B = P((0, 0), (2, 0), (0, 2), (1, 0))
    H = convex_hull(B)
    le = loaded_edges(H, B)
    assert le == {(0, 3): [2]}
    assert loaded_edges(convex_hull(SQUARE_CENTER), SQUARE_CENTER) is None


@pytest.mark.parametrize(
    "S, tag",
    [
        (TRIANGLE, ShapeTag.SIMPLEX_LOADED_AT_VERTEX),
        (SQUARE, ShapeTag.PYRAMID_OVER_POLYGON),
        (TRI_MID, ShapeTag.PYRAMID_OVER_POLYGON),
        (P((0, 0), (3, 0), (3, 1), (1, 2), (0, 1)), ShapeTag.PYRAMID_OVER_POLYGON),
        (SQUARE_CENTER, ShapeTag.NOT_TOTALLY_STACKABLE),
        (OCTAHEDRON, ShapeTag.NOT_TOTALLY_STACKABLE),
        (CUBE, ShapeTag.NOT_TOTALLY_STACKABLE),
        (PRISM, ShapeTag.PYRAMID_OVER_PRISM),
        (PRISM.union([(0, 0, "1/2")]), ShapeTag.PYRAMID_OVER_PRISM),
        (PRISM.union([("1/2", 0, 0)]), ShapeTag.NOT_TOTALLY_STACKABLE),
        (simplex(3).union([(0, 0, "1/2"), ("1/2", 0, 0)]), ShapeTag.SIMPLEX_LOADED_AT_VERTEX),
        (P((0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 1)), ShapeTag.PYRAMID_OVER_POLYGON),
    ],
)
def test_shape_classification(S, tag):
    shape = classify_shape(S)
    assert shape.tag is tag
    assert is_totally_stackable(S) == shape.totally_stackable


def test_simplex_with_triangle_of_loaded_edges():
    S = simplex(3).union([("1/2", "1/2", 0), ("1/2", 0, 0), (0, "1/2", 0)])
    shape = classify_shape(S)
    assert shape.tag is ShapeTag.PYRAMID_OVER_POLYGON
    assert len(shape.apex_indices) == 1


def test_totally_stackable_sets_have_stacked_placings():
    rng = random.Random(7)
    for S in (PRISM.union([(0, 0, "1/2"), (1, 0, "1/2")]), TRI_MID, SQUARE):
        for _ in range(5):
            T, _ = placing_triangulation(S, random_placing_order(S, rng))
            assert is_stacked(T).stacked


def test_disconnected_dual_graph_is_a_defect():
    S = P((0, 0), (2, 0), (1, 1), (0, 2), (2, 2))
    T = Triangulation(S, ((0, 1, 2), (2, 3, 4)))
    with pytest.raises(EquivalenceViolation):
        is_stacked(T)
