import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumcrit.errors import BadDirection, NotInterior, OutsideHull
from sumcrit.geometry import PointSet
from sumcrit.lattice import (
    ap_decompose,
    difference_lattice,
    dim1_critical,
    interior_stability_count,
    is_stable,
    rational_gcd,
    stable_closure,
)
from sumcrit.sumsets import sum_with_fold

from helpers import P, SQUARE, SQUARE_CENTER, TRI_MID
from oracle import brute_sum, lattice_orbit_stable_1d, pts


def line(*xs) -> PointSet:
    return PointSet([(F(x),) for x in xs])


def test_rational_gcd():
    assert rational_gcd([F(1, 2), F(1, 3)]) == F(1, 6)
    assert rational_gcd([F(4), F(6)]) == 2
    assert rational_gcd([F(0), F(3, 4)]) == F(3, 4)


def test_difference_lattice_square():
    L = difference_lattice(SQUARE)
    assert L.full_rank and L.determinant == 1
    assert (1, 0) in L and ("1/2", 0) not in L


def test_difference_lattice_midpoints():
    L = difference_lattice(TRI_MID)
    assert L.determinant == 1
    L2 = difference_lattice(P((0, 0), (2, 0), (0, 2)))
    assert L2.determinant == 4


def test_difference_lattice_rank_deficient():
    L = difference_lattice(P((0, 0, 0), (1, 1, 0), (2, 2, 0)))
    assert L.rank == 1 and not L.full_rank and L.determinant is None


def test_stability_examples():
    assert is_stable(SQUARE, SQUARE)
    assert is_stable(SQUARE_CENTER, SQUARE)
    assert not is_stable(SQUARE.union(pts(("1/2", 0))), SQUARE)
    closed = stable_closure(SQUARE.union(pts(("1/2", 0))), SQUARE)
    assert closed == SQUARE.union(pts(("1/2", 0), ("1/2", 1)))
    assert is_stable(closed, SQUARE)


def test_stable_closure_on_a_line():
    B = line(0, F(1, 3), 1)
    assert stable_closure(line(F(1, 3)), B) == line(0, F(1, 3), F(2, 3), 1)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=5, unique=True),
       st.lists(st.integers(1, 5), min_size=0, max_size=3, unique=True))
@settings(max_examples=80, deadline=None)
def test_stability_matches_orbit_oracle_1d(a, inner):
    B = line(0, *[F(x, 6) for x in inner], 1)
    A = line(*[F(x, 6) for x in a])
    assert is_stable(A, B) == lattice_orbit_stable_1d(A, B)
    C = stable_closure(A, B)
    assert A.issubset(C) and is_stable(C, B)


def test_ap_decompose():
    aps = ap_decompose(pts((0, 0), (1, 1), (2, 2), (4, 4)), (1, 1))
    assert [a.length for a in aps] == [3, 1]
    assert aps[1].terms() == [(4, 4)]
    with pytest.raises(BadDirection):
        ap_decompose(pts((0, 0), (1, 0)), (0, 1))
    with pytest.raises(BadDirection):
        ap_decompose(pts((0, 0)), (0, 0))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=8, unique=True))
def test_ap_decompose_partitions(ts):
    w = (F(1, 2), F(1))
    points = [(F(t) * w[0], F(t) * w[1]) for t in ts]
    aps = ap_decompose(points, w)
    terms = [p for a in aps for p in a.terms()]
    assert sorted(terms) == sorted(points)
    for a, b in zip(aps, aps[1:]):
        # maximality: consecutive progressions leave a gap
        last = a.terms()[-1]
        assert (last[0] + w[0], last[1] + w[1]) != b.start


def test_dim1_critical_examples():
    B = line(0, F(1, 2), 1)
    assert dim1_critical(line(0, F(1, 2), 1), B, 2)
    assert not dim1_critical(line(0, 1), B, 1)
    assert not dim1_critical(line(0, F(1, 2)), B, 1)
    with pytest.raises(OutsideHull):
        dim1_critical(line(2), B, 1)


def test_interior_count_brute_force_values():
    B = line(0, F(1, 3), 1)
    rep, stable = interior_stability_count(line(F(1, 3), F(2, 3)), B, 1)
    assert rep.lhs_cardinality == len(brute_sum(line(F(1, 3), F(2, 3)), B, 1)) == 5
    assert rep.rhs_bound == 4 and not stable
    rep, stable = interior_stability_count(line(F(1, 6), F(1, 2), F(5, 6)), line(0, F(1, 3), 1), 1)
    assert rep.lhs_cardinality == rep.rhs_bound == 6 and stable


def test_interior_count_requires_interior():
    with pytest.raises(NotInterior):
        interior_stability_count(line(0), line(0, 1), 1)


@pytest.mark.parametrize("k", [1, 2])
def test_interior_count_bound_holds(k):
    B = line(0, F(1, 4), 1)
    inner = [F(i, 8) for i in range(1, 8)]
    for r in range(1, 4):
        for C in itertools.combinations(inner, r):
            rep, stable = interior_stability_count(line(*C), B, k)
            assert rep.slack >= 0
            assert stable == lattice_orbit_stable_1d(line(*C), B)
