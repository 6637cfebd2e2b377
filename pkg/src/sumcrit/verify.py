"""Randomized and exhaustive property checks.

Every check draws its instances from ``random.Random(f"{seed}:{name}:{i}")``
so any single failing instance can be replayed on its own.  A check either
passes silently or raises a :class:`DefectError`; the harness records the
failure together with a command line that reproduces it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .criticality import check_corollary_kA, check_monotonicity, classify, shelling_criterion
from .errors import DefectError, EquivalenceViolation, TheoremViolation
from .families import CASES, generate_family, random_params
from .geometry import PointSet, affine_dimension, convex_hull
from .lattice import dim1_critical, interior_stability_count, stable_closure
from .sumsets import check_bound, refined_bound, simplex_sum_cardinality, sum_with_fold
from .triangulation import (
    h_from_f,
    h_from_shelling,
    f_vector,
    is_stacked,
    is_totally_stackable,
    placing_triangulation,
    random_placing_order,
    verify_triangulation,
)


# -- instance generators -----------------------------------------------------


def random_point(rng: random.Random, d: int, den: int, hi: int = 2) -> tuple:
    return tuple(Fraction(rng.randint(0, hi * den), den) for _ in range(d))


def random_spanning_set(rng: random.Random, d: int, n: int, den: int = 2, hi: int = 2) -> PointSet:
    """A random set of about ``n`` points spanning ``R^d``."""
    while True:
        pts = {random_point(rng, d, den, hi) for _ in range(max(n, d + 1))}
        S = PointSet(pts)
        if len(S) > d and affine_dimension(S) == d:
            return S


def random_subset_in_hull(rng: random.Random, B: PointSet, n: int, den: int = 4, tries: int = 400) -> PointSet:
    """Up to ``n`` random grid points of ``[B]`` (never empty)."""
    P = convex_hull(B)
    lo = [min(p[i] for p in B) for i in range(B.ambient_dim)]
    hi = [max(p[i] for p in B) for i in range(B.ambient_dim)]
    out = set()
    for _ in range(tries):
        if len(out) >= n:
            break
        x = tuple(
            Fraction(rng.randint(int(l * den) - 1, int(h * den) + 1), den) for l, h in zip(lo, hi)
        )
        if P.contains(x):
            out.add(x)
    if not out:
        out.add(B[rng.randrange(len(B))])
    return PointSet(out, B.ambient_dim)


# -- exhaustive planar census ------------------------------------------------


def _d4_images(pts: list) -> Iterator[list]:
    for sx, sy, swap in itertools.product((1, -1), (1, -1), (False, True)):
        img = []
        for x, y in pts:
            a, b = (y, x) if swap else (x, y)
            img.append((sx * a, sy * b))
        yield img


def _canonical(pts: list) -> tuple:
    best = None
    for img in _d4_images(pts):
        mx = min(p[0] for p in img)
        my = min(p[1] for p in img)
        key = tuple(sorted((x - mx, y - my) for x, y in img))
        if best is None or key < best:
            best = key
    return best


def census_configurations(size: int = 4, max_b: int = 5) -> list:
    """Spanning subsets ``B`` of ``{0..size-1}^2`` with ``|B| <= max_b``, one
    per class under the symmetries of the square and translation."""
    grid = [(x, y) for x in range(size) for y in range(size)]
    seen = {}
    for r in range(3, max_b + 1):
        for combo in itertools.combinations(grid, r):
            key = _canonical(list(combo))
            if key in seen:
                continue
            S = PointSet(key)
            if affine_dimension(S) == 2:
                seen[key] = S
    return [seen[k] for k in sorted(seen)]


def census_pairs(B: PointSet, rng: random.Random, per_b: int) -> list:
    """Candidate sets ``A`` inside ``[B]`` drawn from the half-integer grid:
    ``B`` plus up to two grid points, their stable closures, and a few sets
    missing one point of ``B``."""
    P = convex_hull(B)
    lo = [min(p[i] for p in B) for i in range(2)]
    hi = [max(p[i] for p in B) for i in range(2)]
    grid = [
        (Fraction(x, 2), Fraction(y, 2))
        for x in range(int(2 * lo[0]), int(2 * hi[0]) + 1)
        for y in range(int(2 * lo[1]), int(2 * hi[1]) + 1)
    ]
    grid = [g for g in grid if P.contains(g) and g not in B]
    cands = [()] + [(g,) for g in grid]
    pairs = list(itertools.combinations(grid, 2))
    rng.shuffle(pairs)
    cands += pairs[: max(0, per_b - len(cands))]
    out = {}
    for extra in cands:
        A = B.union(extra)
        out.setdefault(A, None)
        out.setdefault(stable_closure(A, B), None)
    for b in list(B)[:2]:
        out.setdefault(B.difference([b]), None)
    return [A for A in out if len(A)]


@dataclass
class CensusResult:
    pairs: int = 0
    critical: int = 0
    mismatches: list = field(default_factory=list)
    cases: dict = field(default_factory=dict)


def census_2d(max_pairs: int = 10**5, per_b: int = 40, seed: int = 0) -> CensusResult:
    """Classify every census pair and compare with enumeration at ``k = 1``."""
    res = CensusResult()
    rng = random.Random(f"{seed}:census")
    for B in census_configurations():
        for A in census_pairs(B, rng, per_b):
            if res.pairs >= max_pairs:
                return res
            res.pairs += 1
            equal = len(sum_with_fold(A, B, 1)) == 3 * len(A) - 3
            try:
                v = classify(A, B, audit_k=())
            except DefectError as e:  # pragma: no cover - defect path
                res.mismatches.append((A, B, str(e)))
                continue
            res.cases[v.case.value] = res.cases.get(v.case.value, 0) + 1
            if v.critical != equal:
                res.mismatches.append((A, B, f"classified {v.case.value}, equality={equal}"))
            res.critical += equal
    return res


# -- individual checks -------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    dim_max: int = 3
    k_max: int = 3


def check_bound_soundness(rng: random.Random, b: Budget) -> None:
    d = rng.randint(1, b.dim_max)
    k = rng.randint(1, b.k_max)
    B = random_spanning_set(rng, d, rng.randint(d + 1, 6), den=rng.randint(1, 4))
    A = random_subset_in_hull(rng, B, rng.randint(1, 12))
    rep = check_bound(A, B, k)
    if rep.violation:
        raise TheoremViolation(f"bound violated: {rep.as_dict()}")


def check_refined_bound(rng: random.Random, b: Budget) -> None:
    d = rng.randint(1, b.dim_max)
    k = rng.randint(1, b.k_max)
    B = random_spanning_set(rng, d, rng.randint(d + 1, 6), den=rng.randint(1, 3))
    A = B.union(random_subset_in_hull(rng, B, rng.randint(0, 6)))
    T, _ = placing_triangulation(B, random_placing_order(B, rng))
    h = h_from_f(f_vector(T), d)
    lhs = len(sum_with_fold(A, B, k))
    if lhs < refined_bound(d, k, len(A), h):
        raise TheoremViolation(f"refined bound {refined_bound(d, k, len(A), h)} exceeds {lhs}")


def check_simplex_formula(rng: random.Random, b: Budget) -> None:
    d = rng.randint(1, b.dim_max)
    k = rng.randint(1, b.k_max)
    C = PointSet([tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)] + [tuple([Fraction(0)] * d)])
    A = random_subset_in_hull(rng, C, rng.randint(1, 10), den=rng.randint(1, 4))
    if rng.random() < 0.5:
        A = A.union(rng.sample(list(C), rng.randint(1, d + 1)))
    if simplex_sum_cardinality(A, C, k) != len(sum_with_fold(A, C, k)):
        raise EquivalenceViolation("closed form for simplex sums disagrees with enumeration")


def check_triangulation(rng: random.Random, b: Budget) -> None:
    d = rng.randint(2, b.dim_max) if b.dim_max >= 2 else 1
    B = random_spanning_set(rng, d, rng.randint(d + 1, d + 5), den=rng.randint(1, 2))
    T, sh = placing_triangulation(B, random_placing_order(B, rng))
    ok = verify_triangulation(B, T)
    if not ok:
        raise EquivalenceViolation(f"placing produced an invalid triangulation: {ok.reason}")
    h = h_from_f(f_vector(T), d)
    if h_from_shelling(T, sh) != h:
        raise EquivalenceViolation("h-vector depends on the shelling")
    rep = is_stacked(T)
    if is_totally_stackable(B) and not rep.stacked:
        raise TheoremViolation("a totally stackable set has a non-stacked triangulation")


def check_shelling_criterion(rng: random.Random, b: Budget) -> None:
    d = rng.randint(1, min(b.dim_max, 3))
    k = rng.randint(1, min(b.k_max, 2))
    B = random_spanning_set(rng, d, rng.randint(d + 1, d + 3), den=1)
    A = B.union(random_subset_in_hull(rng, B, rng.randint(0, 4), den=2))
    if rng.random() < 0.5:
        A = stable_closure(A, B)
    T, sh = placing_triangulation(B, random_placing_order(B, rng))
    shelling_criterion(A, B, k, T, sh)


def check_classifier(rng: random.Random, b: Budget) -> None:
    if rng.random() < 0.5:
        case = rng.choice(CASES)
        A, B = generate_family(random_params(case, rng, max(2, min(b.dim_max, 4))))
        v = classify(A, B, audit_k=tuple(range(1, b.k_max + 1)))
        if not v.critical:
            raise TheoremViolation(f"generated case {case} is not classified critical")
        check_monotonicity(A, B, min(b.k_max, 2), rng, samples=8)
        return
    d = rng.randint(2, min(b.dim_max, 3))
    B = random_spanning_set(rng, d, rng.randint(d + 1, d + 3), den=1)
    A = stable_closure(B.union(random_subset_in_hull(rng, B, rng.randint(0, 2), den=2)), B)
    classify(A, B, audit_k=(1,))


def check_dimension_one(rng: random.Random, b: Budget) -> None:
    den = rng.randint(1, 6)
    grid = [(Fraction(i, den),) for i in range(den + 1)]
    B = PointSet([grid[0], grid[-1]] + rng.sample(grid, rng.randint(0, len(grid) - 1)))
    A = PointSet(rng.sample(grid, rng.randint(1, len(grid))))
    k = rng.randint(1, b.k_max)
    dim1_critical(A, B, k)
    inner = [g for g in A if 0 < g[0] < 1]
    if inner:
        interior_stability_count(PointSet(inner), B, k)


def check_corollary(rng: random.Random, b: Budget) -> None:
    if rng.random() < 0.5:
        case = rng.choice(("ii", "iii"))
        p = random_params(case, rng, max(2, min(b.dim_max, 3)))
        if p.dim < 2:
            return
        A, _ = generate_family(replace(p, offsets=()))
    else:
        d = rng.randint(2, min(b.dim_max, 3))
        A = random_spanning_set(rng, d, rng.randint(d + 1, d + 3), den=rng.randint(1, 2))
    check_corollary_kA(A, 2, rng, orders=2)


CHECKS: dict = {
    "bound": check_bound_soundness,
    "refined": check_refined_bound,
    "simplex": check_simplex_formula,
    "triangulation": check_triangulation,
    "shelling": check_shelling_criterion,
    "classifier": check_classifier,
    "dim1": check_dimension_one,
    "cor_kA": check_corollary,
}


def instance_rng(seed: int, name: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{i}")


def run_checks(
    seed: int,
    instances: int,
    dim_max: int = 3,
    k_max: int = 3,
    only: Optional[list] = None,
    instance: Optional[int] = None,
) -> dict:
    """Run every check ``instances`` times; returns a JSON-ready summary."""
    b = Budget(dim_max, k_max)
    names = only or list(CHECKS)
    summary = {}
    failures = []
    for name in names:
        fn: Callable = CHECKS[name]
        idx = [instance] if instance is not None else range(instances)
        runs = 0
        for i in idx:
            runs += 1
            try:
                fn(instance_rng(seed, name, i), b)
            except DefectError as e:
                failures.append({
                    "check": name,
                    "instance": i,
                    "error": type(e).__name__,
                    "message": str(e),
                    "reproduce": f"sumcrit verify --seed {seed} --only {name} --instance {i} "
                                 f"--dim-max {dim_max} --k-max {k_max}",
                })
        summary[name] = {"instances": runs, "violations": sum(f["check"] == name for f in failures)}
    return {"checks": summary, "violations": failures}
