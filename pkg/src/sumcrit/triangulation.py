"""Triangulations of point configurations.

A triangulation is a list of full-dimensional cells, each a sorted tuple of
indices into the configuration.  All geometry happens in the affine chart of
the configuration, so lower-dimensional inputs behave like full-dimensional
ones of their own dimension.
"""

from __future__ import annotations

import enum
import itertools
import os
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Optional, Sequence

from . import linalg
from .errors import (
    EquivalenceViolation,
    InputError,
    InvalidPlacingOrder,
    NotAShelling,
    RankDeficient,
)
from .geometry import PointSet, _affine_rank, as_pointset, barycentric, convex_hull, simplex_volume
from .lattice import DiffLattice, lattice_from_generators

DEFAULT_BUDGET = 10**6


def shelling_budget() -> int:
    return int(os.environ.get("SUMCRIT_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class Triangulation:
    points: PointSet
    cells: tuple  # tuple of sorted index tuples

    @cached_property
    def hull(self):
        return convex_hull(self.points)

    @property
    def dim(self) -> int:
        return self.hull.dim

    @cached_property
    def chart_points(self) -> list:
        ch = self.hull.chart
        return [ch.coords(p) for p in self.points]

    def cell_volume(self, cell: Sequence[int]) -> Fraction:
        """Volume of a cell measured in chart coordinates."""
        cp = self.chart_points
        v0 = cp[cell[0]]
        return abs(linalg.det([linalg.sub(cp[i], v0) for i in cell[1:]])) / factorial(self.dim)


@dataclass(frozen=True)
class Shelling:
    order: tuple
    indices: tuple


# -- placing -----------------------------------------------------------------


def _facets_of(cell: tuple) -> list:
    return [cell[:i] + cell[i + 1:] for i in range(len(cell))]


def _step_index(cell: frozenset, prior: Sequence[frozenset], r: int) -> Optional[int]:
    """Shelling index of ``cell`` after ``prior``, or None if gluing is not
    along a nonempty union of facets.  ``r + 1`` is the cell size."""
    inters = [cell & p for p in prior]
    inters = [i for i in inters if i]
    shared = {i for i in inters if len(i) == r}
    if not shared:
        return None
    for i in inters:
        if len(i) < r and not any(i <= s for s in shared):
            return None
    return len(shared)


def _order_extension(prefix: list, new: list, r: int, budget: list) -> Optional[list]:
    """Order ``new`` cells so that ``prefix + ordered`` stays a shelling."""
    if not new:
        return []
    for k, c in enumerate(new):
        budget[0] -= 1
        if budget[0] < 0:
            return None
        if _step_index(c, prefix, r) is None:
            continue
        rest = _order_extension(prefix + [c], new[:k] + new[k + 1:], r, budget)
        if rest is not None:
            return [c] + rest
    return None


def placing_triangulation(B, order: Optional[Sequence[int]] = None) -> tuple:
    """Placing triangulation of ``B`` together with the shelling it induces.

    Points are inserted in ``order`` (default: lexicographic).  A point that
    raises the affine dimension is coned over every current cell; otherwise
    it is joined to every boundary facet it strictly sees.
    """
    B = as_pointset(B)
    n = len(B)
    if order is None:
        order = list(range(n))
    order = list(order)
    if sorted(order) != list(range(n)):
        raise InvalidPlacingOrder("order must be a permutation of the point indices")
    ch = convex_hull(B).chart
    cp = [ch.coords(p) for p in B]
    if len(cp) < 2 or _affine_rank(cp) < 1:
        raise InputError("placing needs a configuration of dimension at least one")
    cells: list = [frozenset([order[0]])]
    frame = [order[0]]
    for x in order[1:]:
        if _affine_rank([cp[j] for j in frame] + [cp[x]]) > len(frame) - 1:
            cells = [c | {x} for c in cells]
            frame.append(x)
            continue
        r = len(frame) - 1
        owners = defaultdict(list)
        for c in cells:
            for o in c:
                owners[c - {o}].append((c, o))
        visible = []
        for F, own in owners.items():
            if len(own) != 1:
                continue
            c, o = own[0]
            verts = sorted(c)
            lam = barycentric([cp[j] for j in verts], cp[x])
            if lam[verts.index(o)] < 0:
                visible.append(F)
        if not visible:
            raise InvalidPlacingOrder(f"point {B[x]} lies in the hull of the points placed before it")
        new = sorted((F | {x} for F in visible), key=sorted)
        ordered = _order_extension(cells, new, r, [shelling_budget()])
        if ordered is None:
            raise InvalidPlacingOrder("could not order the new cells as a shelling")
        cells.extend(ordered)
    tcells = tuple(tuple(sorted(c)) for c in cells)
    T = Triangulation(B, tcells)
    return T, shelling_of(T, range(len(tcells)))


def random_placing_order(B, rng: random.Random) -> list:
    """A valid placing order: sort by a random integer linear functional,
    ties broken lexicographically, so every point is a vertex of the hull of
    its prefix."""
    B = as_pointset(B)
    weights = [rng.randint(-50, 50) for _ in range(B.ambient_dim)]
    key = lambda i: (linalg.dot(weights, B[i]), B[i])
    return sorted(range(len(B)), key=key)


# -- shellings ---------------------------------------------------------------


def shelling_of(T: Triangulation, order: Sequence[int]) -> Shelling:
    """Validate a cell order as a shelling and compute its indices."""
    order = tuple(order)
    if sorted(order) != list(range(len(T.cells))):
        raise NotAShelling("order must be a permutation of the cells")
    r = T.dim
    prior: list = []
    indices = []
    for pos, ci in enumerate(order):
        c = frozenset(T.cells[ci])
        if pos == 0:
            indices.append(0)
        else:
            idx = _step_index(c, prior, r)
            if idx is None:
                raise NotAShelling(f"cell {T.cells[ci]} is not glued along a union of facets")
            indices.append(idx)
        prior.append(c)
    return Shelling(order, tuple(indices))


def h_from_shelling(T: Triangulation, sh: Shelling) -> tuple:
    """Histogram of shelling indices."""
    checked = shelling_of(T, sh.order)
    if checked.indices != tuple(sh.indices):
        raise NotAShelling("stored indices do not match the cell order")
    counts = Counter(checked.indices)
    return tuple(counts.get(i, 0) for i in range(T.dim + 1))


def find_shelling(T: Triangulation, budget: Optional[int] = None) -> Optional[Shelling]:
    """Search for a shelling by greedy backtracking.

    Returns None when the node budget runs out; that does not prove the
    triangulation is unshellable.
    """
    r = T.dim
    cells = [frozenset(c) for c in T.cells]
    left = [shelling_budget() if budget is None else budget]
    m = len(cells)

    def extend(prefix: list, used: list) -> Optional[list]:
        if len(prefix) == m:
            return prefix
        pcells = [cells[i] for i in prefix]
        for i in range(m):
            if used[i]:
                continue
            left[0] -= 1
            if left[0] < 0:
                return None
            if _step_index(cells[i], pcells, r) is None:
                continue
            used[i] = True
            got = extend(prefix + [i], used)
            if got is not None:
                return got
            used[i] = False
            if left[0] < 0:
                return None
        return None

    for start in range(m):
        used = [False] * m
        used[start] = True
        got = extend([start], used)
        if got is not None:
            return shelling_of(T, got)
        if left[0] < 0:
            return None
    return None


# -- f- and h-vectors --------------------------------------------------------


def all_faces(T: Triangulation) -> set:
    faces = set()
    for c in T.cells:
        for k in range(1, len(c) + 1):
            faces.update(itertools.combinations(c, k))
    return faces


def f_vector(T: Triangulation) -> tuple:
    """``(f_{-1}, f_0, ..., f_d)`` with ``f_{-1} = 1``."""
    counts = Counter(len(f) for f in all_faces(T))
    return (1,) + tuple(counts.get(i + 1, 0) for i in range(T.dim + 1))


def h_from_f(f: Sequence[int], d: int) -> tuple:
    """``h_k = sum_i (-1)^(k-i) C(d+1-i, k-i) f_{i-1}``."""
    if len(f) != d + 2:
        raise InputError(f"f-vector for dimension {d} needs {d + 2} entries")
    return tuple(
        sum((-1) ** (k - i) * comb(d + 1 - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def h_vector(T: Triangulation) -> tuple:
    h = h_from_f(f_vector(T), T.dim)
    if sum(h) != len(T.cells) or h[0] != 1 or (T.dim >= 1 and h[1] != len(T.points) - T.dim - 1):
        raise EquivalenceViolation(f"h-vector {h} fails the basic identities")
    return h


# -- verification ------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def pulling_simplices(P) -> list:
    """Simplices of a pulling triangulation of a polytope, built from its face
    lattice alone.  Used as an independent volume oracle."""
    lattice = P._face_lattice

    def pull(face: frozenset, dim: int) -> list:
        if dim == 0:
            return [tuple(face)]
        v = min(face)
        out = []
        for g in lattice.get(dim - 1, []):
            if g <= face and v not in g:
                out.extend(s + (v,) for s in pull(g, dim - 1))
        return out

    return pull(P.all_vertices, P.dim)


def _hull_volume(P) -> Fraction:
    vc = P._vchart
    total = Fraction(0)
    for s in pulling_simplices(P):
        v0 = vc[s[0]]
        total += abs(linalg.det([linalg.sub(vc[i], v0) for i in s[1:]]))
    return total / factorial(P.dim)


def _properly_intersect(s: tuple, t: tuple, cp: list, q: int) -> bool:
    """Whether two full-dimensional simplices meet exactly in the face
    spanned by their common vertices.

    Searches for a hyperplane through the common vertices with the other
    vertices of ``s`` strictly on one side and those of ``t`` strictly on the
    other, by enumerating vertices of the (pointed) feasible region.
    """
    common = set(s) & set(t)
    only_s = [i for i in s if i not in common]
    only_t = [i for i in t if i not in common]
    if not only_s or not only_t:
        return False
    if len(common) == q:
        verts = sorted(s)
        lam = barycentric([cp[j] for j in verts], cp[only_t[0]])
        return lam[verts.index(only_s[0])] < 0
    row = lambda i: list(cp[i]) + [Fraction(-1)]
    eq = [row(i) for i in common]
    ineq = [(row(i), 1) for i in only_s] + [([-x for x in row(i)], 1) for i in only_t]
    need = q + 1 - len(eq)
    for chosen in itertools.combinations(range(len(ineq)), need):
        a = eq + [ineq[k][0] for k in chosen]
        if linalg.rank(a) < q + 1:
            continue
        b = [Fraction(0)] * len(eq) + [Fraction(1)] * need
        y = linalg.solve(a, b)
        if all(linalg.dot(r, y) >= rhs for r, rhs in ineq):
            return True
    return False


def verify_triangulation(B, T: Triangulation) -> Check:
    """Exact check that ``T`` triangulates ``B``: full-dimensional cells,
    every point used, volumes summing to the hull volume, and every pair of
    cells meeting in a common face."""
    B = as_pointset(B)
    if T.points != B:
        return Check(False, "triangulation is over a different point set")
    q = T.dim
    n = len(B)
    for c in T.cells:
        if len(c) != q + 1 or len(set(c)) != q + 1 or any(not 0 <= i < n for i in c):
            return Check(False, f"cell {c} is not a {q}-simplex on valid indices")
        if T.cell_volume(c) == 0:
            return Check(False, f"cell {c} is flat")
    if len(set(T.cells)) != len(T.cells):
        return Check(False, "duplicate cells")
    used = set(itertools.chain.from_iterable(T.cells))
    if used != set(range(n)):
        missing = sorted(set(range(n)) - used)
        return Check(False, f"points {missing} are not vertices of any cell")
    total = sum((T.cell_volume(c) for c in T.cells), Fraction(0))
    hull_vol = _hull_volume(T.hull)
    if total != hull_vol:
        kind = "overlap" if total > hull_vol else "coverage gap"
        return Check(False, f"{kind}: cell volumes sum to {total}, hull volume is {hull_vol}")
    cp = T.chart_points
    for s, t in itertools.combinations(T.cells, 2):
        if not _properly_intersect(s, t, cp, q):
            return Check(False, f"cells {s} and {t} overlap or meet improperly")
    return Check(True)


# -- stackedness -------------------------------------------------------------


@dataclass(frozen=True)
class StackedReport:
    stacked: bool
    cell_count: bool
    h_vanishing: bool
    dual_tree: bool
    low_faces_on_boundary: bool

    def __bool__(self) -> bool:
        return self.stacked

    def as_dict(self) -> dict:
        return {
            "stacked": self.stacked,
            "certificates": {
                "cell_count": self.cell_count,
                "h_vanishing": self.h_vanishing,
                "dual_tree": self.dual_tree,
                "low_faces_on_boundary": self.low_faces_on_boundary,
            },
        }


def dual_graph(T: Triangulation) -> list:
    """Edges ``(i, j)`` between cells sharing a facet."""
    owners = defaultdict(list)
    for ci, c in enumerate(T.cells):
        for f in _facets_of(c):
            owners[f].append(ci)
    return sorted(tuple(v) for v in owners.values() if len(v) == 2)


def _is_tree(m: int, edges: list) -> bool:
    if len(edges) != m - 1:
        return False
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def _connected(m: int, edges: list) -> bool:
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen, stack = {0}, [0]
    while stack:
        for b in adj[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == m


def _boundary_masks(P, pts_chart: list) -> list:
    masks = []
    for c in pts_chart:
        m = 0
        for k, f in enumerate(P.facets):
            if f.value(c) == 0:
                m |= 1 << k
        masks.append(m)
    return masks


def is_stacked(T: Triangulation) -> StackedReport:
    """Evaluate the four equivalent characterisations of stackedness and
    insist that they agree."""
    d = T.dim
    n = len(T.points)
    m = len(T.cells)
    c1 = m == n - d
    h = h_vector(T)
    c2 = all(x == 0 for x in h[2:])
    dual = dual_graph(T)
    if not _connected(m, dual):
        # a triangulation of a convex region always has a connected dual graph
        raise EquivalenceViolation("dual graph of the triangulation is disconnected")
    c3 = _is_tree(m, dual)
    masks = _boundary_masks(T.hull, T.chart_points)
    full = (1 << len(T.hull.facets)) - 1
    c4 = True
    for face in all_faces(T):
        if len(face) <= d - 1:
            acc = full
            for i in face:
                acc &= masks[i]
            if acc == 0:
                c4 = False
                break
    verdicts = {c1, c2, c3, c4}
    if len(verdicts) != 1:
        raise EquivalenceViolation(
            f"stackedness certificates disagree: count={c1} h={c2} tree={c3} boundary={c4}"
        )
    return StackedReport(c1, c1, c2, c3, c4)


# -- total stackability ------------------------------------------------------


class ShapeTag(str, enum.Enum):
    SIMPLEX_LOADED_AT_VERTEX = "SimplexLoadedAtVertex"
    PYRAMID_OVER_POLYGON = "IteratedPyramidOverPolygon"
    PYRAMID_OVER_PRISM = "IteratedPyramidOverPrism"
    NOT_TOTALLY_STACKABLE = "NotTotallyStackable"


@dataclass(frozen=True)
class StackableShape:
    tag: ShapeTag
    apex_indices: tuple = ()
    base: dict = field(default_factory=dict)
    loaded_edges: tuple = ()

    @property
    def totally_stackable(self) -> bool:
        return self.tag is not ShapeTag.NOT_TOTALLY_STACKABLE

    def as_dict(self) -> dict:
        return {
            "tag": self.tag.value,
            "apex_indices": list(self.apex_indices),
            "base": self.base,
            "loaded_edges": [list(e) for e in self.loaded_edges],
        }


def _subsets_on_boundary(P, pts_chart: list, d: int) -> bool:
    if d <= 1:
        return True
    masks = _boundary_masks(P, pts_chart)
    full = (1 << len(P.facets)) - 1
    for sub in itertools.combinations(range(len(pts_chart)), d - 1):
        acc = full
        for i in sub:
            acc &= masks[i]
        if acc == 0:
            return False
    return True


def is_totally_stackable(B, cross_check: bool = True) -> bool:
    """Every subset of at most ``d-1`` points spans a simplex inside the
    boundary of ``[B]``.  Cross-checked against :func:`classify_shape`."""
    B = as_pointset(B)
    P = convex_hull(B)
    pts = [P.chart.coords(p) for p in B]
    verdict = _subsets_on_boundary(P, pts, P.dim)
    if cross_check:
        shape = classify_shape(B)
        if shape.totally_stackable != verdict:
            raise EquivalenceViolation(
                f"subset test says {verdict} but shape classification gives {shape.tag.value}"
            )
    return verdict


def loaded_edges(P, B: PointSet) -> Optional[dict]:
    """Map each loaded edge (pair of B-indices of its endpoints) to the
    B-indices of its relative-interior points.  None if some point of ``B``
    is neither a vertex nor on an edge."""
    vid = P.vertex_ids
    out: dict = {}
    vset = set(vid)
    for i, p in enumerate(B):
        if i in vset:
            continue
        loc = P.locate(p)
        face = loc.face
        if face is None or len(face) != 2 or P.face_dim(face) != 1:
            return None
        e = tuple(sorted(vid[j] for j in face))
        out.setdefault(e, []).append(i)
    return out


def pyramid_apexes(P) -> list:
    """Vertex indices (into ``P.vertices``) that are pyramid apexes: all
    other vertices lie in a common hyperplane."""
    vc = P._vchart
    if P.is_simplex():
        return list(range(len(vc)))
    return [i for i in range(len(vc)) if _affine_rank(vc[:i] + vc[i + 1:]) == P.dim - 1]


def prism_pairings(P, base: frozenset) -> list:
    """All ways of reading the face with vertex set ``base`` as a prism over
    a simplex.  Each pairing is a list of ``(bottom, top)`` vertex-index pairs
    (indices into ``P.vertices``), one per vertical edge."""
    q = P.face_dim(base)
    if q < 2 or len(base) != 2 * q:
        return []
    facets = [f for f in P.faces(q - 1) if f <= base]
    edges = {f for f in P.faces(1) if f <= base}
    simplex_facets = [f for f in facets if len(f) == q]
    out = []
    for bot, top in itertools.combinations(simplex_facets, 2):
        if bot & top or (bot | top) != base:
            continue
        vertical = [e for e in edges if len(e & bot) == 1 and len(e & top) == 1]
        if len(vertical) != q:
            continue
        if len({min(e & bot) for e in vertical}) != q or len({min(e & top) for e in vertical}) != q:
            continue
        expected = {frozenset(p) for p in itertools.combinations(bot, 2)}
        expected |= {frozenset(p) for p in itertools.combinations(top, 2)}
        expected |= set(vertical)
        if expected != edges or len(facets) != q + 2:
            continue
        out.append(sorted((min(e & bot), min(e & top)) for e in vertical))
    return out


def _polygon_cycle(P, base: frozenset) -> list:
    adj = defaultdict(list)
    for e in P.faces(1):
        if e <= base:
            a, b = sorted(e)
            adj[a].append(b)
            adj[b].append(a)
    start = min(base)
    cycle = [start]
    prev, cur = None, start
    while True:
        nxt = [x for x in adj[cur] if x != prev]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        cycle.append(cur)
    return cycle


def classify_shape(B) -> StackableShape:
    """Which of the three totally-stackable shapes ``B`` has, if any.

    For non-simplices a base of dimension at least three must be a prism
    with loaded vertical edges, and a two-dimensional base is read as a
    polygon (a quadrilateral is never reported as a prism).  For a simplex, loaded edges sharing a common vertex give the
    loaded-simplex shape; loaded edges forming the sides of a triangle give
    the pyramid-over-polygon shape.
    """
    B = as_pointset(B)
    P = convex_hull(B)
    d = P.dim
    vid = P.vertex_ids
    loaded = loaded_edges(P, B)
    if loaded is None:
        return StackableShape(ShapeTag.NOT_TOTALLY_STACKABLE)
    ledges = tuple(sorted(loaded))
    to_local = {g: k for k, g in enumerate(vid)}
    if P.is_simplex():
        if not ledges:
            return StackableShape(
                ShapeTag.SIMPLEX_LOADED_AT_VERTEX, base={"simplex": list(vid)}, loaded_edges=ledges
            )
        common = set(ledges[0]).intersection(*ledges)
        if common:
            return StackableShape(
                ShapeTag.SIMPLEX_LOADED_AT_VERTEX,
                base={"simplex": list(vid), "loading_vertex": min(common)},
                loaded_edges=ledges,
            )
        touched = set(itertools.chain.from_iterable(ledges))
        if len(touched) == 3:
            apex = tuple(v for v in vid if v not in touched)
            tri = sorted(touched)
            return StackableShape(
                ShapeTag.PYRAMID_OVER_POLYGON, apex, {"cycle": tri}, ledges
            )
        return StackableShape(ShapeTag.NOT_TOTALLY_STACKABLE, loaded_edges=ledges)
    apexes = pyramid_apexes(P)
    base = frozenset(range(len(vid))) - set(apexes)
    apex_b = tuple(vid[a] for a in apexes)
    local_loaded = [frozenset(to_local[v] for v in e) for e in ledges]
    if any(not e <= base for e in local_loaded):
        return StackableShape(ShapeTag.NOT_TOTALLY_STACKABLE, apex_b, loaded_edges=ledges)
    q = P.face_dim(base)
    for pairing in prism_pairings(P, base) if q >= 3 else []:
        vertical = {frozenset(p) for p in pairing}
        if all(e in vertical for e in local_loaded):
            return StackableShape(
                ShapeTag.PYRAMID_OVER_PRISM,
                apex_b,
                {"vertical_edges": [[vid[a], vid[b]] for a, b in pairing]},
                ledges,
            )
    if q == 2:
        cycle = _polygon_cycle(P, base)
        return StackableShape(
            ShapeTag.PYRAMID_OVER_POLYGON, apex_b, {"cycle": [vid[c] for c in cycle]}, ledges
        )
    return StackableShape(ShapeTag.NOT_TOTALLY_STACKABLE, apex_b, loaded_edges=ledges)


# -- unimodularity -----------------------------------------------------------


def is_unimodular(T: Triangulation, L: Optional[DiffLattice] = None) -> bool:
    """Whether every cell has volume ``det(L) / d!``.

    With ``L`` omitted the difference lattice of the configuration is used,
    measured in the configuration's own affine chart.
    """
    d = T.dim
    if L is None:
        cp = T.chart_points
        L = lattice_from_generators((linalg.sub(p, cp[0]) for p in cp[1:]), d)
        if not L.full_rank:
            raise RankDeficient("difference lattice is not full rank")
        target = L.determinant / factorial(d)
        return all(T.cell_volume(c) == target for c in T.cells)
    if not L.full_rank or L.ambient_dim != d:
        raise RankDeficient("lattice must have full rank in the ambient dimension")
    target = L.determinant / factorial(d)
    return all(simplex_volume(c, T.points) == target for c in T.cells)
