"""Critical pairs: decision by enumeration, the shelling criterion, and a
structural classifier audited against enumeration."""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .errors import (
    ClassifierDefect,
    EquivalenceViolation,
    InputError,
    OutsideHull,
    TheoremViolation,
)
from .geometry import AffineChart, Location, PointSet, affine_dimension, as_pointset, convex_hull
from .lattice import ap_decompose, is_stable, rational_gcd
from .sumsets import (
    check_bound,
    corollary_kA_bound,
    intrinsic_pair,
    k_fold,
    sum_with_fold,
)
from .triangulation import (
    Shelling,
    Triangulation,
    is_stacked,
    is_unimodular,
    loaded_edges,
    placing_triangulation,
    prism_pairings,
    pyramid_apexes,
    random_placing_order,
    shelling_of,
)


def is_k_critical(A, B, k: int) -> bool:
    """``|A + kB|`` meets the lower bound exactly (at the dimension of ``B``)."""
    return check_bound(A, B, k).tight


# -- shelling criterion ------------------------------------------------------


@dataclass(frozen=True)
class RegionRecord:
    cell: tuple  # point indices C_i
    removed: tuple  # indices of vertices opposite the facets glued to earlier cells
    points: PointSet  # A_i = A cap T_i


class _CellFrame:
    """Barycentric coordinates for one cell, with the inverse precomputed."""

    def __init__(self, verts: Sequence[tuple]):
        self.v0 = verts[0]
        q = len(verts) - 1
        m = [[verts[j + 1][i] - self.v0[i] for j in range(q)] for i in range(q)]
        self.inv = linalg.inverse(m)

    def coords(self, y: Sequence[Fraction], total: Fraction) -> list:
        """Coordinates ``mu`` with ``sum(mu) = total`` and ``sum(mu_j v_j) = y``."""
        diff = [a - total * b for a, b in zip(y, self.v0)]
        rest = [linalg.dot(row, diff) for row in self.inv]
        return [total - sum(rest, Fraction(0))] + rest


def _in_scaled_region(mu: list, removed_pos: Sequence[int]) -> bool:
    return all(x >= 0 for x in mu) and all(mu[j] > 0 for j in removed_pos)


def shelling_decomposition(A, T: Triangulation, sh: Shelling) -> list:
    """Split ``A`` along the half-open regions ``T_i`` of a shelling."""
    checked = shelling_of(T, sh.order)
    ch = T.hull.chart
    a_chart = []
    for a in as_pointset(A):
        c = ch.coords(a)
        if c is None or not T.hull.contains_chart(c):
            raise OutsideHull(f"point {a} is outside the triangulated region")
        a_chart.append((a, c))
    cp = T.chart_points
    prior: list = []
    out = []
    seen: set = set()
    for ci in checked.order:
        cell = T.cells[ci]
        cset = frozenset(cell)
        removed = tuple(
            v for v in cell if any((cset - {v}) <= p for p in prior)
        )
        frame = _CellFrame([cp[j] for j in cell])
        pos = [cell.index(v) for v in removed]
        members = [a for a, c in a_chart if _in_scaled_region(frame.coords(c, Fraction(1)), pos)]
        for a in members:
            if a in seen:
                raise EquivalenceViolation(f"point {a} lies in two shelling regions")
            seen.add(a)
        out.append(RegionRecord(cell, removed, PointSet(members, T.points.ambient_dim)))
        prior.append(cset)
    if len(seen) != len(a_chart):
        raise EquivalenceViolation("shelling regions do not cover A")
    return out


def shelling_criterion(A, B, k: int, T: Triangulation, sh: Shelling, cross_check: bool = True) -> bool:
    """Decide criticality region by region along a shelling.

    The pair is critical iff the first cell's vertices lie in ``A`` and for
    every region ``A_i + kC_i = (A + kB) cap (k+1)T_i``.  With
    ``cross_check`` the answer is compared with :func:`is_k_critical`.
    """
    A, B = as_pointset(A), as_pointset(B)
    if T.points != B:
        raise InputError("triangulation is not over B")
    if k < 1:
        raise InputError("k must be at least 1")
    regions = shelling_decomposition(A, T, sh)
    first = regions[0].cell
    verdict = all(B[j] in A for j in first)
    if verdict:
        ch = T.hull.chart
        cp = T.chart_points
        total = sum_with_fold(A, B, k)
        tot_chart = [(p, ch.coords(p)) for p in total]
        for reg in regions:
            frame = _CellFrame([cp[j] for j in reg.cell])
            pos = [reg.cell.index(v) for v in reg.removed]
            target = {p for p, c in tot_chart if _in_scaled_region(frame.coords(c, Fraction(k + 1)), pos)}
            if len(reg.points):
                got = set(sum_with_fold(reg.points, B.subset(reg.cell), k))
            else:
                got = set()
            if got != target:
                verdict = False
                break
    if cross_check:
        truth = is_k_critical(A, B, k)
        if truth != verdict:
            raise EquivalenceViolation(
                f"shelling criterion gives {verdict} but enumeration gives {truth}"
            )
    return verdict


# -- classification ----------------------------------------------------------


class CriticalCase(str, enum.Enum):
    SIMPLEX = "Simplex_i"
    SIMPLEX_EDGE_AP = "SimplexEdgeAP_ii"
    PRISM = "Prism_iii"
    TRIANGLE_MIDPOINTS = "TriangleMidpoints_iv"
    PARALLELOGRAM = "Parallelogram_v"
    PYRAMID = "PyramidOverLower_vi"
    NOT_CRITICAL = "NotCritical"


@dataclass(frozen=True)
class CriticalVerdict:
    critical: bool
    k_tested: int
    case: CriticalCase
    witness: dict = field(default_factory=dict)


_NOT = CriticalCase.NOT_CRITICAL


def _no(reason: str) -> tuple:
    return _NOT, {"reason": reason}


def _decide_loaded_edge(A: PointSet, B: PointSet, P, edge: tuple, inner: list) -> tuple:
    """One loaded edge ``[u, v]``: the full progression ``D`` from ``u`` to
    ``v`` lies in ``A``, and every other point of ``A`` off the vertex set
    sits in a maximal progression of exactly ``m`` terms, where ``m`` is
    the number of steps of ``D``."""
    u, v = B[edge[0]], B[edge[1]]
    e = linalg.sub(v, u)
    j = next(i for i, x in enumerate(e) if x != 0)
    g = rational_gcd([(B[i][j] - u[j]) / e[j] for i in inner] + [Fraction(1)])
    m = int(1 / g)
    w = linalg.scale(g, e)
    D = [linalg.add(u, linalg.scale(Fraction(i), w)) for i in range(m + 1)]
    if any(p not in A for p in D):
        return _no("the progression along the loaded edge is not contained in A")
    skip = set(D) | set(P.vertices)
    lines: dict = {}
    for a in A:
        if a in skip:
            continue
        key = linalg.sub(a, linalg.scale(a[j] / w[j], w))
        lines.setdefault(key, []).append(a)
    for pts in lines.values():
        for ap in ap_decompose(pts, w):
            if ap.length != m:
                return _no("a point off the loaded progression is not in a translate of it")
    return CriticalCase.SIMPLEX_EDGE_AP, {"edge": [u, v], "w": w, "D": D, "m": m}


def _decide_simplex(A: PointSet, B: PointSet, P, loaded: dict) -> tuple:
    d = P.dim
    if not loaded:
        return CriticalCase.SIMPLEX, {"vertices": list(P.vertices)}
    edges = sorted(loaded)
    if len(edges) == 1:
        return _decide_loaded_edge(A, B, P, edges[0], loaded[edges[0]])
    touched = sorted(set(itertools.chain.from_iterable(edges)))
    if len(touched) != 3:
        return _no("loaded edges do not lie in a common triangle")
    tri = [B[i] for i in touched]
    mids = [tuple((x + y) / 2 for x, y in zip(p, q)) for p, q in itertools.combinations(tri, 2)]
    expected = set(P.vertices) | set(mids)
    if set(A) != expected:
        return _no("A is not the vertex set plus the midpoints of the loaded triangle")
    witness = {"triangle": tri, "midpoints": mids, "b_underdetermined": True}
    if d == 2:
        return CriticalCase.TRIANGLE_MIDPOINTS, witness
    apexes = [p for p in P.vertices if p not in tri]
    return CriticalCase.PYRAMID, {"apexes": apexes, "base_case": CriticalCase.TRIANGLE_MIDPOINTS.value, "base": witness}


def _is_parallelogram(P) -> bool:
    if len(P.vertices) != 4 or P.dim != 2:
        return False
    vc = P._vchart
    for a, b, c, d in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)):
        if linalg.add(vc[a], vc[b]) == linalg.add(vc[c], vc[d]):
            return True
    return False


def _on_segment(x: tuple, a: tuple, b: tuple) -> bool:
    lam = None
    for xi, ai, bi in zip(x, a, b):
        if ai == bi:
            if xi != ai:
                return False
            continue
        t = (xi - ai) / (bi - ai)
        if lam is None:
            lam = t
        elif t != lam:
            return False
    return lam is not None and 0 <= lam <= 1


def _decide_base(A: PointSet, B: PointSet, P) -> tuple:
    """Full-dimensional non-simplex without apexes: quadrilateral or prism."""
    if not is_stable(A, B):
        return _no("A is not stable with respect to B")
    verts = P.vertices
    q = P.dim
    if q == 2 and len(verts) != 4:
        return _no("a polygon base with more than four vertices")
    if q == 2 and _is_parallelogram(P):
        if all(P.locate(a).location is Location.BOUNDARY for a in A):
            return CriticalCase.PARALLELOGRAM, {"vertices": list(verts)}
        return _no("A meets the interior of the parallelogram")
    for pairing in prism_pairings(P, P.all_vertices):
        vecs = [linalg.sub(verts[t], verts[b]) for b, t in pairing]
        ref = vecs[0]
        parallel = True
        for vv in vecs[1:]:
            j = next(i for i, x in enumerate(ref) if x != 0)
            r = vv[j] / ref[j]
            if r <= 0 or linalg.scale(r, ref) != vv:
                parallel = False
                break
        if not parallel:
            continue
        segs = [(verts[b], verts[t]) for b, t in pairing]
        if all(any(_on_segment(a, s, t) for s, t in segs) for a in A):
            return CriticalCase.PRISM, {"vertical_edges": [list(s) for s in segs]}
    return _no("no prism reading with parallel vertical edges carries A")


def _decide(A: PointSet, B: PointSet) -> tuple:
    """Structural decision for full-dimensional ``B`` in its own chart."""
    if not B.issubset(A):
        return _no("B is not contained in A")
    P = convex_hull(B)
    loaded = loaded_edges(P, B)
    if loaded is None:
        return _no("B is not contained in the union of the edges of its hull")
    if P.is_simplex():
        return _decide_simplex(A, B, P, loaded)
    apexes = pyramid_apexes(P)
    if not apexes:
        return _decide_base(A, B, P)
    X = [P.vertices[i] for i in apexes]
    base_pts = [P.vertices[i] for i in range(len(P.vertices)) if i not in apexes]
    flat = AffineChart(base_pts)
    rest = A.difference(X)
    if any(flat.coords(a) is None for a in rest):
        return _no("A has points off the apexes and the base")
    A2, B2, _ = intrinsic_pair(rest, B.difference(X))
    sub_case, sub_w = _decide_base(A2, B2, convex_hull(B2))
    if sub_case is _NOT:
        return sub_case, sub_w
    return CriticalCase.PYRAMID, {"apexes": X, "base_case": sub_case.value, "base": sub_w}


def _lift_witness(obj, chart: AffineChart):
    if isinstance(obj, dict):
        return {k: (v if k == "w" else _lift_witness(v, chart)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_lift_witness(x, chart) for x in obj]
    if isinstance(obj, tuple) and obj and isinstance(obj[0], Fraction):
        return chart.lift(obj)
    return obj


def classify(A, B, audit_k: Sequence[int] = (1, 2, 3)) -> CriticalVerdict:
    """Structural classification of ``(A, B)`` into a critical case.

    The verdict is audited against exact enumeration for every ``k`` in
    ``audit_k``; a disagreement raises :class:`ClassifierDefect`.
    """
    A, B = as_pointset(A), as_pointset(B)
    A2, B2, q = intrinsic_pair(A, B)
    case, witness = _decide(A2, B2)
    chart = convex_hull(B).chart
    if not chart.identity:
        witness = _lift_witness(witness, chart)
        if "w" in witness:
            witness["w"] = linalg.vecmat(witness["w"], chart.basis)
    critical = case is not _NOT
    for k in audit_k:
        truth = is_k_critical(A, B, k)
        if truth != critical:
            raise ClassifierDefect(
                f"classifier says {case.value} but enumeration at k={k} says critical={truth}"
            )
    return CriticalVerdict(critical, max(audit_k, default=0), case, witness)


# -- consequence checks ------------------------------------------------------


@dataclass(frozen=True)
class MonotonicityReport:
    subsets_checked: int
    k_values_checked: tuple


def check_monotonicity(A, B, k: int, rng: Optional[random.Random] = None, samples: int = 64) -> MonotonicityReport:
    """Sub-configurations and smaller ``k`` of a critical pair stay critical.

    All spanning subsets ``B'`` are tried when there are few, otherwise a
    random sample.  Failures raise :class:`TheoremViolation`.
    """
    A, B = as_pointset(A), as_pointset(B)
    if not is_k_critical(A, B, k):
        raise InputError("the pair is not k-critical")
    rng = rng or random.Random(0)
    n = len(B)
    if 2**n <= 4 * samples:
        subsets = [s for r in range(2, n + 1) for s in itertools.combinations(range(n), r)]
    else:
        subsets = []
        for _ in range(samples):
            r = rng.randint(2, n)
            subsets.append(tuple(sorted(rng.sample(range(n), r))))
    checked = 0
    for s in subsets:
        Bs = B.subset(s)
        if affine_dimension(Bs) < 1:
            continue
        P = convex_hull(Bs)
        As = A.filter(P.contains)
        if not is_k_critical(As, Bs, k):
            raise TheoremViolation(f"sub-pair on B' = {list(Bs)} is not {k}-critical")
        checked += 1
    for kk in range(1, k):
        if not is_k_critical(A, B, kk):
            raise TheoremViolation(f"pair is {k}-critical but not {kk}-critical")
    return MonotonicityReport(checked, tuple(range(1, k)))


@dataclass(frozen=True)
class KAReport:
    cardinality: int
    bound: int
    equality: bool
    stacked: bool
    unimodular: bool


def check_corollary_kA(A, k: int, rng: Optional[random.Random] = None, orders: int = 0) -> KAReport:
    """``|kA|`` meets its lower bound iff the placing triangulation of ``A``
    is stacked and unimodular.  With ``orders`` > 0 that many random placing
    orders must give the same triangulation verdict."""
    A = as_pointset(A)
    if k < 2:
        raise InputError("k must be at least 2")
    P = convex_hull(A)
    d = P.dim
    if d < 2:
        raise InputError("A must span at least two dimensions")
    size = len(k_fold(A, k))
    bound = corollary_kA_bound(d, k, len(A))
    T, _ = placing_triangulation(A)
    st = is_stacked(T).stacked
    uni = is_unimodular(T)
    if (size == bound) != (st and uni):
        raise TheoremViolation(
            f"|kA| equality is {size == bound} but stacked={st}, unimodular={uni}"
        )
    rng = rng or random.Random(0)
    for _ in range(orders):
        T2, _ = placing_triangulation(A, random_placing_order(A, rng))
        if (is_stacked(T2).stacked and is_unimodular(T2)) != (st and uni):
            raise TheoremViolation("placing triangulations disagree on stacked unimodularity")
    return KAReport(size, bound, size == bound, st, uni)
