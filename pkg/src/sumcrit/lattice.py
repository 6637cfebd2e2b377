"""Difference lattices, stability and one-dimensional arithmetic structure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, lcm
from typing import Iterable, Optional, Sequence

from . import linalg
from .errors import (
    BadDirection,
    DimensionMismatch,
    EquivalenceViolation,
    InputError,
    NotInterior,
    OutsideHull,
    ZeroInput,
)
from .geometry import Point, PointSet, as_pointset, convex_hull, make_point
from .sumsets import BoundKind, BoundReport, sum_with_fold


@dataclass(frozen=True)
class DiffLattice:
    """The additive group generated by ``B - B``.

    ``basis`` is in Hermite normal form (echelon, positive pivots, reduced
    entries above pivots), so two equal lattices have equal bases.
    """

    ambient_dim: int
    basis: tuple  # tuple of rank vectors of Fractions

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @property
    def determinant(self) -> Optional[Fraction]:
        if not self.full_rank:
            return None
        return abs(linalg.det(self.basis))

    def coefficients(self, v: Sequence[Fraction]) -> Optional[list]:
        """Coordinates of ``v`` in the basis (None if outside the span)."""
        a = [[self.basis[j][i] for j in range(self.rank)] for i in range(self.ambient_dim)]
        return linalg.solve(a, list(v))

    def __contains__(self, v) -> bool:
        c = self.coefficients(make_point(v))
        return c is not None and all(x.denominator == 1 for x in c)


def lattice_from_generators(gens: Iterable[Sequence[Fraction]], ambient_dim: int) -> DiffLattice:
    gens = [make_point(g) for g in gens]
    den = 1
    for g in gens:
        for c in g:
            den = lcm(den, c.denominator)
    ints = [[int(c * den) for c in g] for g in gens]
    hnf = linalg.hermite_normal_form(ints) if ints else []
    basis = tuple(tuple(Fraction(x, den) for x in row) for row in hnf)
    return DiffLattice(ambient_dim, basis)


def difference_lattice(B) -> DiffLattice:
    """``Lambda(B)``: the subgroup generated by all differences of ``B``."""
    B = as_pointset(B)
    if len(B) < 1:
        raise InputError("difference lattice needs at least one point")
    b0 = B[0]
    return lattice_from_generators((linalg.sub(b, b0) for b in B[1:]), B.ambient_dim)


def rational_gcd(values: Iterable) -> Fraction:
    """Largest positive rational ``w`` with every ``value / w`` an integer."""
    vals = [linalg.as_fraction(v) for v in values]
    if not vals:
        raise InputError("gcd of an empty sequence")
    if all(v == 0 for v in vals):
        raise ZeroInput("gcd of zeros is undefined")
    den = lcm(*(v.denominator for v in vals))
    g = 0
    for v in vals:
        g = gcd(g, int(v * den))
    return Fraction(g, den)


def _orbit_in_chart(a: Point, lat: DiffLattice, P, inv) -> list:
    """Points of ``(a + lat) cap P`` in chart coordinates."""
    basis = [list(r) for r in lat.basis]
    coeffs = [linalg.vecmat(linalg.sub(v, a), inv) for v in P._vchart]
    ranges = []
    for i in range(lat.ambient_dim):
        lo = min(c[i] for c in coeffs)
        hi = max(c[i] for c in coeffs)
        ranges.append(range(ceil(lo), floor(hi) + 1))
    out = []
    for z in itertools.product(*ranges):
        y = linalg.add(a, linalg.vecmat(z, basis))
        if P.contains_chart(y):
            out.append(y)
    return out


def _stable_in_chart(A_pts: Sequence[Point], lat: DiffLattice, P) -> bool:
    """Check ``(A + lat) cap P == A`` with everything in chart coordinates."""
    aset = set(A_pts)
    inv = linalg.inverse([list(r) for r in lat.basis])
    done: set = set()
    for a in A_pts:
        if a in done:
            continue
        for y in _orbit_in_chart(a, lat, P, inv):
            if y not in aset:
                return False
            done.add(y)
    return True


def _chart_setup(A, B) -> tuple:
    A, B = as_pointset(A), as_pointset(B)
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("A and B live in different dimensions")
    P = convex_hull(B)
    a_chart = []
    for a in A:
        c = P.chart.coords(a)
        if c is None or not P.contains_chart(c):
            raise OutsideHull(f"point {a} of A is not in the convex hull of B")
        a_chart.append(c)
    return A, B, P, a_chart


def stable_closure(A, B) -> PointSet:
    """Smallest ``B``-stable set containing ``A``: ``(A + Lambda(B)) cap [B]``."""
    A, B, P, a_chart = _chart_setup(A, B)
    if P.dim == 0:
        return A
    bc = [P.chart.coords(b) for b in B]
    lat = lattice_from_generators((linalg.sub(b, bc[0]) for b in bc[1:]), P.dim)
    inv = linalg.inverse([list(r) for r in lat.basis])
    out: set = set()
    for a in a_chart:
        if a not in out:
            out.update(_orbit_in_chart(a, lat, P, inv))
    return PointSet((P.chart.lift(c) for c in out), B.ambient_dim)


def is_stable(A, B) -> bool:
    """Whether ``(A + Lambda(B)) cap [B] == A``."""
    A, B, P, a_chart = _chart_setup(A, B)
    if P.dim == 0:
        return True
    if P.dim == 1:
        return _stable_1d([c[0] for c in a_chart], [P.chart.coords(b)[0] for b in B])
    bc = [P.chart.coords(b) for b in B]
    lat = lattice_from_generators((linalg.sub(b, bc[0]) for b in bc[1:]), P.dim)
    return _stable_in_chart(a_chart, lat, P)


def _stable_1d(a_vals: Sequence[Fraction], b_vals: Sequence[Fraction]) -> bool:
    lo, hi = min(b_vals), max(b_vals)
    w = rational_gcd([b - lo for b in b_vals])
    aset = set(a_vals)
    for a in a_vals:
        start = a - floor((a - lo) / w) * w
        t = start
        while t <= hi:
            if t not in aset:
                return False
            t += w
    return True


@dataclass(frozen=True)
class ArithProgression:
    start: Point
    difference: tuple
    length: int

    def terms(self) -> list:
        return [
            tuple(s + i * w for s, w in zip(self.start, self.difference)) for i in range(self.length)
        ]


def _line_parameter(p: Point, base: Point, w: Sequence[Fraction]) -> Optional[Fraction]:
    diff = linalg.sub(p, base)
    j = next(i for i, x in enumerate(w) if x != 0)
    t = diff[j] / w[j]
    if any(dx != t * wx for dx, wx in zip(diff, w)):
        return None
    return t


def ap_decompose(points, w: Sequence) -> list:
    """Split collinear points into maximal arithmetic progressions of
    difference ``w``, ordered along ``w``."""
    pts = [make_point(p) for p in points]
    w = make_point(w)
    if not pts:
        return []
    if all(x == 0 for x in w):
        raise BadDirection("difference vector must be nonzero")
    if len(w) != len(pts[0]):
        raise DimensionMismatch("difference vector has the wrong dimension")
    base = pts[0]
    params = []
    for p in pts:
        t = _line_parameter(p, base, w)
        if t is None:
            raise BadDirection("points are not on a common line parallel to w")
        params.append(t)
    params = sorted(set(params))
    tset = set(params)
    out = []
    for t in params:
        if t - 1 in tset:
            continue
        n = 1
        while t + n in tset:
            n += 1
        start = tuple(b + t * x for b, x in zip(base, w))
        out.append(ArithProgression(start, w, n))
    return out


def _normalized_1d(A, B) -> tuple:
    A, B = as_pointset(A), as_pointset(B)
    if A.ambient_dim != 1 or B.ambient_dim != 1:
        raise DimensionMismatch("one-dimensional criteria need points in R^1")
    lo, hi = B[0][0], B[-1][0]
    if lo == hi:
        raise InputError("B must contain two distinct points")
    span = hi - lo
    a = [(p[0] - lo) / span for p in A]
    b = [(p[0] - lo) / span for p in B]
    if any(x < 0 or x > 1 for x in a):
        raise OutsideHull("A is not inside the convex hull of B")
    return a, b


def dim1_critical(A, B, k: int) -> bool:
    """Criticality in dimension one, decided structurally.

    After normalising ``[B] = [0, 1]`` the pair is critical exactly when
    both endpoints belong to ``A`` and ``A`` is ``B``-stable.  The verdict is
    cross-checked against ``|A + kB| == (k+1)(|A|-1) + 1``.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    a, b = _normalized_1d(A, B)
    structural = 0 in a and 1 in a and _stable_1d(a, b)
    aps, bps = PointSet([(x,) for x in a]), PointSet([(x,) for x in b])
    enumerated = len(sum_with_fold(aps, bps, k)) == (k + 1) * (len(a) - 1) + 1
    if structural != enumerated:
        raise EquivalenceViolation(
            f"one-dimensional criticality disagrees: structural={structural}, enumeration={enumerated}"
        )
    return structural


def interior_stability_count(C, B, k: int) -> tuple:
    """Compare ``|C + kB|`` with ``(k+1)|C|`` for ``C`` inside ``(0, 1)``.

    Returns ``(report, stable)``; equality in the report holds exactly when
    ``C`` is stable, which is cross-checked.
    """
    c, b = _normalized_1d(C, B)
    if any(x <= 0 or x >= 1 for x in c):
        raise NotInterior("C must lie in the open interval")
    cps, bps = PointSet([(x,) for x in c]), PointSet([(x,) for x in b])
    lhs = len(sum_with_fold(cps, bps, k))
    report = BoundReport(lhs, (k + 1) * len(c), BoundKind.DIM1)
    stable = _stable_1d(c, b)
    if report.tight != stable:
        raise EquivalenceViolation(f"interior count equality={report.tight} but stable={stable}")
    return report, stable
