"""Exact point sets, convex hulls and face queries.

Coordinates are ``Fraction`` throughout.  Every polytope is computed inside
its own affine hull: a point set spanning a ``q``-flat of ``R^d`` gets an
:class:`AffineChart` onto ``Q^q`` and the hull is built there, so degenerate
inputs (points on a segment, a triangle in space) need no special cases
downstream.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, NamedTuple, Optional, Sequence

from . import linalg
from .errors import DegenerateSimplex, DimensionMismatch, EmptyOperand, InputError, OutsideHull

Point = tuple  # tuple[Fraction, ...]


def make_point(coords: Iterable) -> Point:
    return tuple(linalg.as_fraction(c) for c in coords)


class PointSet:
    """An immutable, duplicate-free, lexicographically sorted set of points.

    Points are compared by coordinate value, so the lexicographically largest
    point of any set is always a vertex of its convex hull.
    """

    __slots__ = ("_points", "_dim", "_index", "_hash")

    def __init__(self, points: Iterable[Sequence] = (), ambient_dim: Optional[int] = None):
        pts = sorted({make_point(p) for p in points})
        if ambient_dim is None:
            if not pts:
                raise EmptyOperand("cannot infer the ambient dimension of an empty point set")
            ambient_dim = len(pts[0])
        if ambient_dim < 1:
            raise InputError("ambient dimension must be at least 1")
        for p in pts:
            if len(p) != ambient_dim:
                raise DimensionMismatch(f"point {p} does not have {ambient_dim} coordinates")
        self._points = tuple(pts)
        self._dim = ambient_dim
        self._index = None
        self._hash = None

    @classmethod
    def _from_sorted(cls, pts: tuple, ambient_dim: int) -> "PointSet":
        obj = cls.__new__(cls)
        obj._points = pts
        obj._dim = ambient_dim
        obj._index = None
        obj._hash = None
        return obj

    @property
    def ambient_dim(self) -> int:
        return self._dim

    @property
    def points(self) -> tuple:
        return self._points

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self):
        return iter(self._points)

    def __getitem__(self, i):
        return self._points[i]

    def _idx(self) -> dict:
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self._points)}
        return self._index

    def __contains__(self, p) -> bool:
        return make_point(p) in self._idx()

    def index(self, p) -> int:
        return self._idx()[make_point(p)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._dim == other._dim and self._points == other._points

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, self._points))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("(" + ", ".join(str(c) for c in p) + ")" for p in self._points)
        return f"PointSet({{{body}}})"

    def issubset(self, other: "PointSet") -> bool:
        idx = other._idx()
        return all(p in idx for p in self._points)

    def union(self, other: Iterable) -> "PointSet":
        return PointSet(itertools.chain(self._points, other), self._dim)

    def difference(self, other: Iterable) -> "PointSet":
        drop = {make_point(p) for p in other}
        return PointSet._from_sorted(tuple(p for p in self._points if p not in drop), self._dim)

    def subset(self, indices: Iterable[int]) -> "PointSet":
        return PointSet((self._points[i] for i in indices), self._dim)

    def filter(self, keep) -> "PointSet":
        return PointSet._from_sorted(tuple(p for p in self._points if keep(p)), self._dim)

    def translate(self, v: Sequence) -> "PointSet":
        v = make_point(v)
        return PointSet._from_sorted(tuple(linalg.add(p, v) for p in self._points), self._dim)


def as_pointset(x, ambient_dim: Optional[int] = None) -> PointSet:
    if isinstance(x, PointSet):
        return x
    return PointSet(x, ambient_dim)


def origin(d: int) -> Point:
    return tuple(Fraction(0) for _ in range(d))


class AffineChart:
    """Affine coordinates on the flat spanned by a finite point set.

    For a full-dimensional set the chart is the identity.  Otherwise the
    directions are the reduced-row-echelon basis of the difference vectors,
    so chart coordinates are read off the pivot columns directly.
    """

    def __init__(self, points: Sequence[Point]):
        if not points:
            raise EmptyOperand("a chart needs at least one point")
        d = len(points[0])
        self.ambient_dim = d
        base = points[0]
        diffs = [linalg.sub(p, base) for p in points[1:]]
        if diffs:
            red, pivots = linalg.rref(diffs, d)
        else:
            red, pivots = [], []
        self.dim = len(pivots)
        self.identity = self.dim == d
        if self.identity:
            self.base = origin(d)
            self.basis = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
            self.pivots = list(range(d))
        else:
            self.base = base
            self.basis = [tuple(r) for r in red]
            self.pivots = pivots

    def coords(self, x: Point) -> Optional[Point]:
        """Chart coordinates of ``x``, or None when ``x`` is off the flat."""
        if self.identity:
            return x
        diff = linalg.sub(x, self.base)
        c = tuple(diff[p] for p in self.pivots)
        if self.lift(c) != tuple(x):
            return None
        return c

    def lift(self, c: Sequence[Fraction]) -> Point:
        if self.identity:
            return tuple(c)
        if not self.basis:
            return tuple(self.base)
        return linalg.add(self.base, linalg.vecmat(c, self.basis))


def affine_dimension(S) -> int:
    """Dimension of the affine hull of a nonempty point set (0 for one point)."""
    pts = list(S)
    if not pts:
        raise EmptyOperand("affine dimension of an empty set is undefined")
    base = pts[0]
    return linalg.rank([linalg.sub(p, base) for p in pts[1:]])


def _affine_rank(pts: Sequence[Point]) -> int:
    if not pts:
        return -1
    base = pts[0]
    return linalg.rank([linalg.sub(p, base) for p in pts[1:]])


@dataclass(frozen=True)
class Facet:
    """Supporting hyperplane ``normal . x <= offset`` in chart coordinates."""

    normal: tuple
    offset: Fraction
    vertices: frozenset  # indices into Polytope.vertices

    def value(self, x: Point) -> Fraction:
        return linalg.dot(self.normal, x) - self.offset


class Location(enum.Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


class Membership(NamedTuple):
    location: Location
    face: Optional[frozenset] = None


def _hyperplane(pts: Sequence[Point], q: int, inside: Point) -> tuple:
    """Primitive normal and offset of the hyperplane through ``pts``.

    Oriented so that ``inside`` satisfies the strict inequality.
    """
    base = pts[0]
    rows = [linalg.sub(p, base) for p in pts[1:]]
    ns = linalg.nullspace(rows, q)
    if len(ns) != 1:
        raise ValueError("points do not span a hyperplane")
    n = linalg.primitive(ns[0])
    c = linalg.dot(n, base)
    if linalg.dot(n, inside) > c:
        n = tuple(-x for x in n)
        c = -c
    return n, c


def _hull_in_chart(pts: Sequence[Point], q: int):
    """Beneath-beyond convex hull of full-dimensional points in ``Q^q``.

    Returns ``(vertex_ids, facets)`` where facets are ``(normal, offset,
    frozenset(point ids))``.
    """
    # Initial simplex, greedily.
    frame = [0]
    for i in range(1, len(pts)):
        if _affine_rank([pts[j] for j in frame] + [pts[i]]) == len(frame):
            frame.append(i)
            if len(frame) == q + 1:
                break
    inside = tuple(sum(pts[j][c] for j in frame) / (q + 1) for c in range(q))
    facets: dict = {}
    for drop in frame:
        ids = [j for j in frame if j != drop]
        facets[_hyperplane([pts[j] for j in ids], q, inside)] = set(ids)
    verts = set(frame)
    in_frame = set(frame)
    for i in range(len(pts)):
        if i in in_frame:
            continue
        p = pts[i]
        vals = {key: linalg.dot(key[0], p) - key[1] for key in facets}
        visible = [key for key, v in vals.items() if v > 0]
        if not visible:
            continue
        vis_set = set(visible)
        new_facets: dict = {}
        for key, ids in facets.items():
            if key in vis_set:
                continue
            ids = set(ids)
            if vals[key] == 0:
                ids.add(i)
            new_facets[key] = ids
        for fk in visible:
            fids = facets[fk]
            for gk, gids in facets.items():
                if gk in vis_set or vals[gk] == 0:
                    continue
                ridge = fids & gids
                if _affine_rank([pts[j] for j in ridge]) != q - 2:
                    continue
                key = _hyperplane([pts[j] for j in ridge] + [p], q, inside)
                new_facets.setdefault(key, set()).update(ridge)
                new_facets[key].add(i)
        facets = new_facets
        verts.add(i)
        # Drop former vertices that are no longer extreme.
        keep = set()
        for v in verts:
            normals = [key[0] for key, ids in facets.items() if v in ids]
            if normals and linalg.rank(normals) == q:
                keep.add(v)
        verts = keep
        for key in facets:
            facets[key] = facets[key] & verts
    return sorted(verts), [(key[0], key[1], frozenset(ids)) for key, ids in facets.items()]


class Polytope:
    """Convex hull of a finite point set, with vertex/facet incidences.

    ``vertices`` is the minimal vertex set (a :class:`PointSet`), ``facets``
    hold exact supporting hyperplanes in chart coordinates, and ``dim`` is
    the intrinsic dimension.  Faces are reported as frozensets of indices
    into ``vertices``.
    """

    def __init__(self, points: PointSet):
        self.points = points
        self.chart = AffineChart(points.points)
        self.dim = self.chart.dim
        self.ambient_dim = points.ambient_dim
        chart_pts = [self.chart.coords(p) for p in points]
        if self.dim == 0:
            ids, raw = [0], []
        else:
            ids, raw = _hull_in_chart(chart_pts, self.dim)
        self.vertex_ids = tuple(ids)
        self.vertices = PointSet._from_sorted(tuple(points[i] for i in ids), points.ambient_dim)
        remap = {pid: k for k, pid in enumerate(ids)}
        self._vchart = [chart_pts[i] for i in ids]
        facets = [Facet(n, c, frozenset(remap[j] for j in fids)) for n, c, fids in raw]
        facets.sort(key=lambda f: (sorted(f.vertices), f.normal))
        self.facets = tuple(facets)

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    @property
    def all_vertices(self) -> frozenset:
        return frozenset(range(len(self.vertices)))

    def to_chart(self, x) -> Optional[Point]:
        return self.chart.coords(make_point(x))

    def locate(self, x) -> Membership:
        x = make_point(x)
        if len(x) != self.ambient_dim:
            raise DimensionMismatch("point and polytope live in different dimensions")
        c = self.chart.coords(x)
        if c is None:
            return Membership(Location.OUTSIDE)
        if self.dim == 0:
            return Membership(Location.INTERIOR, self.all_vertices)
        on = []
        for f in self.facets:
            v = f.value(c)
            if v > 0:
                return Membership(Location.OUTSIDE)
            if v == 0:
                on.append(f)
        if not on:
            return Membership(Location.INTERIOR, self.all_vertices)
        face = frozenset.intersection(*(f.vertices for f in on))
        return Membership(Location.BOUNDARY, face)

    def contains(self, x) -> bool:
        return self.locate(x).location is not Location.OUTSIDE

    def contains_chart(self, c: Point) -> bool:
        return all(f.value(c) <= 0 for f in self.facets)

    def face_dim(self, face: Iterable[int]) -> int:
        return _affine_rank([self._vchart[i] for i in face])

    @cached_property
    def _face_lattice(self) -> dict:
        by_dim: dict[int, set] = {self.dim: {self.all_vertices}}
        if self.dim == 0:
            return {0: [self.all_vertices]}
        seen = {f.vertices for f in self.facets}
        frontier = list(seen)
        facet_sets = [f.vertices for f in self.facets]
        while frontier:
            nxt = []
            for a in frontier:
                for b in facet_sets:
                    c = a & b
                    if c and c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        for f in seen:
            by_dim.setdefault(self.face_dim(f), set()).add(f)
        return {j: sorted(fs, key=sorted) for j, fs in by_dim.items()}

    def faces(self, j: int) -> list:
        if not 0 <= j <= self.dim:
            raise InputError(f"face dimension {j} outside [0, {self.dim}]")
        return list(self._face_lattice.get(j, []))

    @cached_property
    def edges(self) -> list:
        if self.dim == 0:
            return []
        return self.faces(1)

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1


def convex_hull(S) -> Polytope:
    """Convex hull of a nonempty point set, computed in its affine hull.

    Results are cached by point set; a :class:`Polytope` is never mutated
    after construction, so sharing is safe.
    """
    S = as_pointset(S)
    if len(S) == 0:
        raise EmptyOperand("convex hull of an empty set")
    return _cached_hull(S)


@functools.lru_cache(maxsize=512)
def _cached_hull(S: PointSet) -> Polytope:
    return Polytope(S)


def faces(P: Polytope, j: int) -> list:
    """All ``j``-dimensional faces of ``P`` as vertex-index sets."""
    return P.faces(j)


def membership(P: Polytope, x) -> Membership:
    return P.locate(x)


def carrier(P: Polytope, C) -> frozenset:
    """Minimal face of ``P`` containing every point of ``C``.

    Returns ``P.all_vertices`` when only the whole polytope contains ``C``.
    """
    pts = [make_point(x) for x in C]
    charts = []
    for x in pts:
        if not P.contains(x):
            raise OutsideHull(f"point {x} lies outside the polytope")
        charts.append(P.chart.coords(x))
    face = P.all_vertices
    for f in P.facets:
        if all(f.value(c) == 0 for c in charts):
            face = face & f.vertices
    return face


def simplex_volume(S: Sequence[int], ctx: PointSet) -> Fraction:
    """Euclidean volume of the ``d``-simplex on ``S`` (indices into ``ctx``)."""
    d = ctx.ambient_dim
    if len(S) != d + 1:
        raise DegenerateSimplex(f"a {d}-simplex needs {d + 1} vertices, got {len(S)}")
    v0 = ctx[S[0]]
    m = [linalg.sub(ctx[i], v0) for i in S[1:]]
    vol = abs(linalg.det(m)) / factorial(d)
    if vol == 0:
        raise DegenerateSimplex("simplex vertices are affinely dependent")
    return vol


def barycentric(cell: Sequence[Point], x: Point) -> Optional[list]:
    """Barycentric coordinates of ``x`` with respect to an affinely
    independent tuple of points, or None when ``x`` is off their flat."""
    v0 = cell[0]
    cols = [linalg.sub(v, v0) for v in cell[1:]]
    if not cols:
        return [Fraction(1)] if tuple(x) == tuple(v0) else None
    a = [[cols[j][i] for j in range(len(cols))] for i in range(len(v0))]
    sol = linalg.solve(a, linalg.sub(x, v0))
    if sol is None:
        return None
    return [1 - sum(sol, Fraction(0))] + list(sol)
