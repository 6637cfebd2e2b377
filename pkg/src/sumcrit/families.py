"""Generators for every family of critical pairs.

Each generator builds a concrete rational pair, validates the parameters
and audits criticality by enumeration before returning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .criticality import is_k_critical
from .errors import BadParams
from .geometry import PointSet, convex_hull
from .lattice import is_stable

CASES = ("i", "ii", "iii", "iv", "v", "vi")


@dataclass(frozen=True)
class FamilyParams:
    """Parameters of a generated critical pair.

    ``offsets`` depends on the case: scalars ``t`` giving extra points
    ``t(1,...,1)`` for (i); pairs ``(x, s)`` placing a translate of the
    progression at ``x e_1 + s w`` for (ii); fractional shifts in ``(0, 1)``
    repeated along every vertical edge for (iii); pairs ``("h"|"v", t)`` of
    stable boundary pairs for (v).
    """

    case: str
    dim: int = 2
    q: int = 2
    ap_len: int = 3
    w: Fraction = Fraction(1)
    heights: tuple = ()
    offsets: tuple = ()
    base_case: str = "v"
    midpoints: int = 3
    shear: Fraction = Fraction(0)
    audit_k: tuple = field(default=(1,))


def _unit(d: int, i: int) -> tuple:
    return tuple(Fraction(int(j == i)) for j in range(d))


def _zero(d: int) -> tuple:
    return tuple(Fraction(0) for _ in range(d))


def _simplex(p: FamilyParams) -> tuple:
    d = p.dim
    B = [_zero(d)] + [_unit(d, i) for i in range(d)]
    extra = []
    for t in p.offsets:
        t = Fraction(t)
        if t < 0 or t * d > 1:
            raise BadParams(f"offset {t} puts a point outside the simplex")
        extra.append(tuple(t for _ in range(d)))
    return B + extra, B


def _edge_ap(p: FamilyParams) -> tuple:
    d = p.dim
    if p.ap_len < 3:
        raise BadParams("an edge progression needs at least three points")
    m = p.ap_len - 1
    w = Fraction(p.w)
    if w <= 0:
        raise BadParams("w must be positive")
    top = m * w
    verts = [_zero(d)] + [_unit(d, i) for i in range(d - 1)]
    verts.append(tuple(Fraction(0) for _ in range(d - 1)) + (top,))
    D = [tuple(Fraction(0) for _ in range(d - 1)) + (j * w,) for j in range(m + 1)]
    B = verts + D
    A = list(B)
    for off in p.offsets:
        x, s = (Fraction(c) for c in off)
        if d == 1 and x != 0:
            raise BadParams("in dimension one translates must lie on the segment")
        for j in range(m):
            pt = [Fraction(0)] * d
            if d > 1:
                pt[0] = x
            pt[-1] = (s + j) * w
            # inside the simplex: nonnegative and x + z/top <= 1
            if any(c < 0 for c in pt) or pt[0] + pt[-1] / top > 1 or (d == 1 and pt[-1] > top):
                raise BadParams(f"translate at {off} leaves the simplex")
            A.append(tuple(pt))
    return A, B


def _prism(p: FamilyParams) -> tuple:
    d = p.dim
    if d < 2:
        raise BadParams("a prism needs dimension at least two")
    heights = tuple(p.heights) or tuple([1] * d)
    if len(heights) != d or any(int(h) != h or h < 1 for h in heights):
        raise BadParams(f"need {d} positive integer heights")
    w = Fraction(p.w)
    if w <= 0:
        raise BadParams("w must be positive")
    base = [_zero(d)] + [_unit(d, i) for i in range(d - 1)]
    up = lambda v, t: v[:-1] + (v[-1] + t * w,)
    verts = [v for v in base] + [up(v, h) for v, h in zip(base, heights)]
    B = list(verts)
    g = 0
    for h in heights:
        g = gcd(g, int(h))
    if g > 1:
        B.append(up(base[0], 1))
    A = list(B)
    for v, h in zip(base, heights):
        A.extend(up(v, t) for t in range(int(h) + 1))
        for om in p.offsets:
            om = Fraction(om)
            if not 0 < om < 1:
                raise BadParams("prism offsets must lie in (0, 1)")
            A.extend(up(v, t + om) for t in range(int(h)))
    return A, B


def _midpoints(p: FamilyParams) -> tuple:
    if p.dim != 2:
        raise BadParams("the midpoint family is planar")
    tri = [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(0)), (Fraction(0), Fraction(2))]
    mids = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))]
    if not 0 <= p.midpoints <= 3:
        raise BadParams("between zero and three midpoints may go into B")
    return tri + mids, tri + mids[: p.midpoints]


def _parallelogram(p: FamilyParams) -> tuple:
    if p.dim != 2:
        raise BadParams("the parallelogram family is planar")
    s = Fraction(p.shear)
    f = lambda x, y: (Fraction(x) + s * Fraction(y), Fraction(y))
    B = [f(0, 0), f(1, 0), f(0, 1), f(1, 1)]
    A = list(B)
    for side, t in p.offsets:
        t = Fraction(t)
        if not 0 < t < 1:
            raise BadParams("boundary pair parameter must lie in (0, 1)")
        if side == "h":
            A += [f(t, 0), f(t, 1)]
        elif side == "v":
            A += [f(0, t), f(1, t)]
        else:
            raise BadParams(f"unknown side {side!r}")
    return A, B


def _pyramid(p: FamilyParams) -> tuple:
    if not 2 <= p.q < p.dim:
        raise BadParams("need 2 <= q < dim for a pyramid family")
    if p.base_case not in ("iii", "iv", "v"):
        raise BadParams("the base must be of case iii, iv or v")
    sub = FamilyParams(
        p.base_case, p.q, p.q, p.ap_len, p.w, p.heights, p.offsets, midpoints=p.midpoints, shear=p.shear,
        audit_k=(),
    )
    A0, B0 = _BUILDERS[p.base_case](sub)
    pad = lambda v: tuple(v) + tuple(Fraction(0) for _ in range(p.dim - p.q))
    apexes = [_unit(p.dim, i) for i in range(p.q, p.dim)]
    return [pad(a) for a in A0] + apexes, [pad(b) for b in B0] + apexes


_BUILDERS = {
    "i": _simplex,
    "ii": _edge_ap,
    "iii": _prism,
    "iv": _midpoints,
    "v": _parallelogram,
    "vi": _pyramid,
}


def generate_family(p: FamilyParams) -> tuple:
    """Build ``(A, B)`` for the requested case and audit it."""
    if p.case not in _BUILDERS:
        raise BadParams(f"unknown case {p.case!r}")
    if p.dim < 1 or (p.case != "ii" and p.case != "i" and p.dim < 2):
        raise BadParams("dimension too small for this case")
    A_pts, B_pts = _BUILDERS[p.case](p)
    A, B = PointSet(A_pts), PointSet(B_pts)
    P = convex_hull(B)
    if P.dim != B.ambient_dim:
        raise BadParams("B does not span its space")
    if not all(P.contains(a) for a in A):
        raise BadParams("A leaves the hull of B")
    if p.case in ("iii", "v") and not is_stable(A, B):
        raise BadParams("A is not stable with respect to B")
    for k in p.audit_k:
        if not is_k_critical(A, B, k):
            raise BadParams(f"parameters do not give a {k}-critical pair")
    return A, B


def random_params(case: str, rng: random.Random, dim_max: int = 4) -> FamilyParams:
    """Random valid parameters for ``case``, with dimension at most
    ``dim_max``."""
    fr = lambda den: Fraction(rng.randint(1, den - 1), den)
    if case == "i":
        d = rng.randint(1, dim_max)
        offs = tuple(Fraction(rng.randint(0, 3), 4 * d) for _ in range(rng.randint(0, 2)))
        return FamilyParams("i", d, offsets=tuple(sorted(set(offs))))
    if case == "ii":
        d = rng.randint(1, dim_max)
        L = rng.randint(3, 5)
        m = L - 1
        offs = []
        if rng.random() < 0.7:
            offs.append((Fraction(0), fr(3)))
        if d > 1 and rng.random() < 0.7:
            offs.append((Fraction(1, 2 * m), Fraction(0)))
        return FamilyParams("ii", d, ap_len=L, w=Fraction(1, rng.randint(1, 3)), offsets=tuple(offs))
    if case == "iii":
        d = rng.randint(2, min(dim_max, 3))
        heights = tuple(rng.randint(1, 3) for _ in range(d))
        offs = tuple(sorted({fr(3) for _ in range(rng.randint(0, 1))}))
        return FamilyParams("iii", d, heights=heights, offsets=offs, w=Fraction(1, rng.randint(1, 2)))
    if case == "iv":
        return FamilyParams("iv", 2, midpoints=rng.randint(0, 3))
    if case == "v":
        offs = []
        for _ in range(rng.randint(0, 2)):
            offs.append((rng.choice("hv"), fr(4)))
        offs = tuple(dict.fromkeys(offs))
        return FamilyParams("v", 2, offsets=offs, shear=Fraction(rng.randint(-2, 2), 2))
    if case == "vi":
        d = rng.randint(3, max(3, dim_max))
        base = rng.choice(("iii", "iv", "v"))
        inner = random_params(base, rng, 2)
        return FamilyParams(
            "vi", d, q=2, base_case=base, ap_len=inner.ap_len, w=inner.w, heights=inner.heights,
            offsets=inner.offsets, midpoints=inner.midpoints, shear=inner.shear,
        )
    raise BadParams(f"unknown case {case!r}")
