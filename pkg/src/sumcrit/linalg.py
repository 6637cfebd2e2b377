"""Exact linear algebra over the rationals.

Matrices are plain sequences of row sequences whose entries are
``fractions.Fraction`` (or ``int``, which is promoted).  Nothing here uses
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = Sequence[Sequence[Fraction]]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass Fraction, int or 'p/q' strings")
    return Fraction(x)


def rref(rows: Matrix, ncols: Optional[int] = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.

    Returns the nonzero reduced rows and the list of pivot columns.
    """
    m = [[as_fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Matrix) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Matrix, ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``."""
    if rows:
        red, pivots = rref(rows, ncols)
    else:
        red, pivots = [], []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """One solution of ``a @ x = b`` or None when inconsistent.

    For underdetermined systems free variables are set to zero.
    """
    n = len(a[0]) if a else 0
    aug = [list(r) + [as_fraction(bi)] for r, bi in zip(a, b)]
    red, pivots = rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x


def det(m: Matrix) -> Fraction:
    a = [[as_fraction(x) for x in r] for r in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(m: Matrix) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(x - y for x, y in zip(u, v))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def scale(c: Fraction, u: Sequence[Fraction]) -> tuple:
    return tuple(c * x for x in u)


def vecmat(v: Sequence[Fraction], m: Matrix) -> tuple:
    """Row vector times matrix."""
    ncols = len(m[0]) if m else 0
    out = [Fraction(0)] * ncols
    for vi, row in zip(v, m):
        if vi:
            for j, x in enumerate(row):
                out[j] += vi * x
    return tuple(out)


def primitive(v: Sequence[Fraction]) -> tuple:
    """Scale a nonzero rational vector to a primitive integer vector.

    The sign is chosen so the first nonzero entry is positive.
    """
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    The result is in echelon form with positive pivots and the entries above
    each pivot reduced into ``[0, pivot)``.  Zero rows are dropped, so the
    returned rows form a basis of the row lattice.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out: list[list[int]] = []
    pivot_cols: list[int] = []
    for c in range(ncols):
        live = [r for r in a if r[c] != 0]
        if not live:
            continue
        rest = [r for r in a if r[c] == 0]
        # Euclid on column c across the live rows.
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[c] // piv[c]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[c] != 0:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            live = nxt
        piv = live[0]
        if piv[c] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        pivot_cols.append(c)
        a = rest
    for i, c in enumerate(pivot_cols):
        p = out[i][c]
        for j in range(i):
            q = out[j][c] // p
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], out[i])]
    return out
