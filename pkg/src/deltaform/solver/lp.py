"""Exact two-phase simplex for ``min c^T x`` s.t. ``Ax = b``, ``x >= 0``.

Bland's rule prevents cycling.  Every returned optimum comes with a dual
vector and is checked against strong duality before being handed out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exactla import rat_inverse, transpose

__all__ = ["LpResult", "lp_relax", "LP_OPTIMAL", "LP_INFEASIBLE", "LP_UNBOUNDED"]

LP_OPTIMAL = "optimal"
LP_INFEASIBLE = "infeasible"
LP_UNBOUNDED = "unbounded"


@dataclass
class LpResult:
    status: str
    x: tuple = None
    value: Fraction = None
    basis: tuple = None
    dual: tuple = None
    ray: tuple = None


def _pivot(T, r, j):
    piv = T[r][j]
    T[r] = [a / piv for a in T[r]]
    for i, row in enumerate(T):
        if i != r and row[j] != 0:
            f = row[j]
            pr = T[r]
            T[i] = [a - f * p for a, p in zip(row, pr)]


def _run(T, basis, allowed):
    """Simplex on tableau ``T`` whose last row is the reduced cost row.

    Returns the entering column of an unbounded ray, or ``None`` at optimum.
    """
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return enter
        r = best[1]
        _pivot(T, r, enter)
        basis[r] = enter


def lp_relax(A, b, c):
    """Solve the LP relaxation exactly.

    >>> lp_relax([[1, 1]], [2], [1, 2]).x
    (Fraction(2, 1), Fraction(0, 1))
    """
    k, n = len(A), len(A[0])
    rows = []
    for i in range(k):
        s = -1 if b[i] < 0 else 1
        rows.append([Fraction(s * a) for a in A[i]] + [Fraction(int(i == r)) for r in range(k)] + [Fraction(s * b[i])])
    width = n + k
    # phase one: minimise the sum of artificials
    obj = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    T = rows + [obj]
    basis = list(range(n, n + k))
    _run(T, basis, range(width))
    if T[-1][-1] != 0:
        return LpResult(LP_INFEASIBLE)
    # drive remaining artificials out; drop redundant rows
    keep = []
    for r in range(k):
        if basis[r] >= n:
            j = next((j for j in range(n) if T[r][j] != 0), None)
            if j is None:
                continue
            _pivot(T, r, j)
            basis[r] = j
        keep.append(r)
    T = [T[r][:n] + [T[r][-1]] for r in keep]
    basis = [basis[r] for r in keep]
    cost = [Fraction(x) for x in c] + [Fraction(0)]
    for r, j in enumerate(basis):
        f = cost[j]
        if f:
            cost = [a - f * t for a, t in zip(cost, T[r])]
    T.append(cost)
    enter = _run(T, basis, range(n))
    x = [Fraction(0)] * n
    for r, j in enumerate(basis):
        x[j] = T[r][-1]
    if enter is not None:
        ray = [Fraction(0)] * n
        ray[enter] = Fraction(1)
        for r, j in enumerate(basis):
            ray[j] = -T[r][enter]
        return LpResult(LP_UNBOUNDED, x=tuple(x), basis=tuple(basis), ray=tuple(ray))
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    dual = _dual(A, c, basis, keep)
    _certify(A, b, c, x, value, dual, keep)
    return LpResult(LP_OPTIMAL, x=tuple(x), value=value, basis=tuple(basis), dual=dual)


def _dual(A, c, basis, rows):
    B = [[Fraction(A[i][j]) for j in basis] for i in rows]
    if not B:
        return ()
    Binv = rat_inverse(B)
    cb = [Fraction(c[j]) for j in basis]
    # y^T = c_B^T B^{-1}
    return tuple(sum(cb[r] * Binv[r][i] for r in range(len(cb))) for i in range(len(rows)))


def _certify(A, b, c, x, value, dual, rows):
    n = len(A[0])
    for i, row in enumerate(A):
        if sum(a * xi for a, xi in zip(row, x)) != b[i]:
            raise AssertionError("simplex point violates Ax = b")
    if any(xi < 0 for xi in x):
        raise AssertionError("simplex point is not nonnegative")
    At = transpose([list(A[i]) for i in rows])
    for j in range(n):
        red = c[j] - sum(y * a for y, a in zip(dual, At[j])) if rows else Fraction(c[j])
        if red < 0:
            raise AssertionError("dual infeasible reduced cost")
    if sum(y * b[i] for y, i in zip(dual, rows)) != value:
        raise AssertionError("duality gap at claimed optimum")
