"""Hypothesis strategies for small rational configurations."""

from fractions import Fraction

from hypothesis import strategies as st

from sumcrit.geometry import PointSet, affine_dimension


def coords(den: int = 4, hi: int = 2):
    return st.integers(0, hi * den).map(lambda n: Fraction(n, den))


def points(d: int, den: int = 4, hi: int = 2):
    return st.tuples(*[coords(den, hi)] * d)


def pointsets(d: int, min_size: int = 1, max_size: int = 6, den: int = 4, hi: int = 2):
    return st.lists(points(d, den, hi), min_size=min_size, max_size=max_size, unique=True).map(PointSet)


def spanning_sets(d: int, max_size: int = 6, den: int = 2, hi: int = 2):
    return pointsets(d, d + 1, max_size, den, hi).filter(lambda S: affine_dimension(S) == d)


@st.composite
def pairs_in_hull(draw, d: int, max_b: int = 6, max_a: int = 6):
    """``(A, B)`` with ``B`` spanning and ``A`` drawn from a grid inside ``[B]``."""
    from sumcrit.geometry import convex_hull

    B = draw(spanning_sets(d, max_b))
    P = convex_hull(B)
    cand = draw(st.lists(points(d, 4, 2), min_size=0, max_size=max_a * 2, unique=True))
    inside = [c for c in cand if P.contains(c)]
    keep_b = draw(st.lists(st.sampled_from(list(B)), unique=True, max_size=len(B)))
    A = inside[:max_a] + keep_b
    if not A:
        A = [B[0]]
    return PointSet(A), B
