"""Minkowski sumsets and the cardinality bounds they are measured against."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Sequence

from .errors import DimensionMismatch, EmptyOperand, InputError, OutsideHull
from .geometry import PointSet, as_pointset, barycentric, convex_hull, origin


def _common_denominator(*sets: PointSet) -> int:
    den = 1
    for s in sets:
        for p in s:
            for c in p:
                den = lcm(den, c.denominator)
    return den


def _scaled(s: PointSet, den: int) -> list:
    return [tuple(int(c * den) for c in p) for p in s]


def minkowski_sum(A, B) -> PointSet:
    """The set ``{a + b}`` as a canonical :class:`PointSet`."""
    A, B = as_pointset(A), as_pointset(B)
    if not len(A) or not len(B):
        raise EmptyOperand("Minkowski sum with an empty operand")
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("operands live in different dimensions")
    # Work on integers scaled by a common denominator: hashing and adding
    # Fractions dominates the cost otherwise.
    den = _common_denominator(A, B)
    ia, ib = _scaled(A, den), _scaled(B, den)
    sums = {tuple(x + y for x, y in zip(a, b)) for a in ia for b in ib}
    pts = sorted(tuple(Fraction(c, den) for c in p) for p in sums)
    return PointSet._from_sorted(tuple(pts), A.ambient_dim)


def sumset_size(A, B) -> int:
    """``|A + B|`` without materialising Fractions."""
    A, B = as_pointset(A), as_pointset(B)
    if not len(A) or not len(B):
        raise EmptyOperand("Minkowski sum with an empty operand")
    den = _common_denominator(A, B)
    ia, ib = _scaled(A, den), _scaled(B, den)
    return len({tuple(x + y for x, y in zip(a, b)) for a in ia for b in ib})


def k_fold(B, k: int) -> PointSet:
    """``kB = B + ... + B`` (k summands); ``0B`` is the origin."""
    B = as_pointset(B)
    if k < 0:
        raise InputError("k must be nonnegative")
    if not len(B):
        raise EmptyOperand("k-fold sum of an empty set")
    if k == 0:
        return PointSet([origin(B.ambient_dim)])
    den = _common_denominator(B)
    ib = _scaled(B, den)
    acc = set(ib)
    for _ in range(k - 1):
        acc = {tuple(x + y for x, y in zip(a, b)) for a in acc for b in ib}
    pts = sorted(tuple(Fraction(c, den) for c in p) for p in acc)
    return PointSet._from_sorted(tuple(pts), B.ambient_dim)


def sum_with_fold(A, B, k: int) -> PointSet:
    """``A + kB``."""
    if k == 0:
        return as_pointset(A)
    return minkowski_sum(A, k_fold(B, k))


def mr_bound(d: int, k: int, n: int) -> int:
    """Lower bound ``C(d+k,k) n - k C(d+k,k+1)`` for ``|A + kB|``."""
    if d < 1 or k < 0 or n < 0:
        raise InputError("need d >= 1, k >= 0, n >= 0")
    return comb(d + k, k) * n - k * comb(d + k, k + 1)


def freiman_bound(d: int, n: int) -> int:
    """Freiman's ``|A + A| >= (d+1) n - d(d+1)/2``."""
    if d < 1 or n < 0:
        raise InputError("need d >= 1, n >= 0")
    return (d + 1) * n - d * (d + 1) // 2


def _check_h(h: Sequence[int], d: int) -> list:
    h = [int(x) for x in h]
    if len(h) != d + 1:
        raise InputError(f"h-vector must have {d + 1} entries")
    if any(x < 0 for x in h) or h[0] != 1:
        raise InputError("h-vector must have h_0 = 1 and nonnegative entries")
    return h


def refined_bound(d: int, k: int, n: int, h: Sequence[int]) -> int:
    """The Matolcsi-Ruzsa bound plus the h-vector correction
    ``sum_{j=2}^{min(d,k+1)} h_j C(d+k+1-j, k+1-j)``."""
    h = _check_h(h, d)
    extra = sum(h[j] * comb(d + k + 1 - j, k + 1 - j) for j in range(2, min(d, k + 1) + 1))
    return mr_bound(d, k, n) + extra


def corollary_kA_bound(d: int, k: int, n: int) -> int:
    """Lower bound for ``|kA|``: ``C(d+k-1,k-1) n - (k-1) C(d+k-1,k)``."""
    if d < 1 or k < 1 or n < 0:
        raise InputError("need d >= 1, k >= 1, n >= 0")
    return comb(d + k - 1, k - 1) * n - (k - 1) * comb(d + k - 1, k)


def corollary_kA_h_bound(d: int, k: int, h: Sequence[int]) -> int:
    """Lower bound for ``|kA|`` from an h-vector of a shellable
    triangulation of ``A``: ``sum_{j=0}^{min(d,k)} h_j C(d+k-j, k-j)``."""
    h = _check_h(h, d)
    return sum(h[j] * comb(d + k - j, k - j) for j in range(0, min(d, k) + 1))


def simplex_sum_cardinality(A, C: Sequence[int], k: int, ctx: PointSet = None) -> int:
    """Exact ``|A + kC|`` for ``A`` inside the simplex with vertex set ``C``.

    ``C`` is either a :class:`PointSet` of ``d+1`` affinely independent
    points or a sequence of indices into ``ctx``.
    """
    A = as_pointset(A)
    if ctx is not None:
        verts = [ctx[i] for i in C]
    else:
        verts = list(as_pointset(C))
    d = len(verts) - 1
    if d != A.ambient_dim:
        raise DimensionMismatch("simplex must be full-dimensional in the ambient space")
    for a in A:
        lam = barycentric(verts, a)
        if lam is None or any(x < 0 for x in lam):
            raise OutsideHull(f"point {a} is outside the simplex")
    top = comb(d + k, k)
    hits = sum(1 for v in verts if v in A)
    return top * len(A) - sum(top - comb(d + k + 1 - i, k) for i in range(1, hits + 1))


class BoundKind(str, enum.Enum):
    FREIMAN = "Freiman"
    MR = "MR"
    REFINED = "Refined"
    DIM1 = "Dim1"
    INTERIOR_MR = "InteriorMR"


@dataclass(frozen=True)
class BoundReport:
    lhs_cardinality: int
    rhs_bound: int
    bound_kind: BoundKind

    @property
    def slack(self) -> int:
        return self.lhs_cardinality - self.rhs_bound

    @property
    def violation(self) -> bool:
        return self.slack < 0

    @property
    def tight(self) -> bool:
        return self.slack == 0

    def as_dict(self) -> dict:
        return {
            "lhs_cardinality": self.lhs_cardinality,
            "rhs_bound": self.rhs_bound,
            "slack": self.slack,
            "violation": self.violation,
            "bound_kind": self.bound_kind.value,
        }


def intrinsic_pair(A, B):
    """Express ``A`` and ``B`` in the affine chart of ``B``.

    Returns ``(A', B', q)`` with ``q`` the affine dimension of ``B``.  Raises
    :class:`OutsideHull` if some point of ``A`` is not in the convex hull of
    ``B``.
    """
    A, B = as_pointset(A), as_pointset(B)
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch("A and B live in different dimensions")
    if not len(A) or not len(B):
        raise EmptyOperand("A and B must be nonempty")
    P = convex_hull(B)
    if P.dim == 0:
        raise InputError("B must span at least one dimension")
    ac = []
    for a in A:
        c = P.chart.coords(a)
        if c is None or not P.contains_chart(c):
            raise OutsideHull(f"point {a} of A is not in the convex hull of B")
        ac.append(c)
    if P.chart.identity:
        return A, B, P.dim
    bc = [P.chart.coords(b) for b in B]
    return PointSet(ac, P.dim), PointSet(bc, P.dim), P.dim


def check_bound(A, B, k: int) -> BoundReport:
    """Compare ``|A + kB|`` with the Matolcsi-Ruzsa bound at the intrinsic
    dimension of ``B``."""
    if k < 1:
        raise InputError("k must be at least 1")
    A2, B2, q = intrinsic_pair(A, B)
    lhs = len(sum_with_fold(A2, B2, k))
    return BoundReport(lhs, mr_bound(q, k, len(A2)), BoundKind.MR)
