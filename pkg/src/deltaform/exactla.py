"""Exact integer and rational linear algebra.

Everything here works on plain nested lists of ``int`` or ``Fraction``;
nothing is ever converted to floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import DimensionError, RankError, SingularMatrixError

__all__ = [
    "SnfResult",
    "DetLb",
    "det",
    "rat_det",
    "rat_inverse",
    "matmul",
    "matvec",
    "identity",
    "transpose",
    "rank",
    "snf",
    "minors",
    "delta_t",
    "delta",
    "delta_gcd",
    "detlb",
]


def _shape(M):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    for row in M:
        if len(row) != cols:
            raise DimensionError("ragged matrix")
    return rows, cols


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(X, Y):
    if not X or not Y:
        raise DimensionError("empty matrix")
    if len(X[0]) != len(Y):
        raise DimensionError(f"cannot multiply {len(X)}x{len(X[0])} by {len(Y)}x{len(Y[0])}")
    cols = list(zip(*Y))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in X]


def matvec(X, v):
    if X and len(X[0]) != len(v):
        raise DimensionError("matrix/vector size mismatch")
    return [sum(a * b for a, b in zip(row, v)) for row in X]


def det(M):
    """Determinant of a square integer matrix by Bareiss elimination.

    Every intermediate value stays an integer because each step divides
    exactly by the previous pivot.

    >>> det([[2, 4], [6, 8]])
    -8
    """
    n, m = _shape(M)
    if n != m:
        raise DimensionError(f"det needs a square matrix, got {n}x{m}")
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) and x.denominator != 1 for row in M for x in row):
        return rat_det(M)
    a = [[int(x) for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rat_det(M):
    """Determinant over the rationals by Gaussian elimination."""
    n, m = _shape(M)
    if n != m:
        raise DimensionError(f"det needs a square matrix, got {n}x{m}")
    a = [[Fraction(x) for x in row] for row in M]
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        result *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return result


def rat_inverse(M):
    """Exact inverse of a nonsingular rational matrix (Gauss-Jordan)."""
    n, m = _shape(M)
    if n != m:
        raise DimensionError(f"inverse needs a square matrix, got {n}x{m}")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def rank(M):
    rows, cols = _shape(M)
    a = [[Fraction(x) for x in row] for row in M]
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


@dataclass(frozen=True)
class SnfResult:
    """``S = P @ A @ Q`` with unimodular ``P`` and ``Q``."""

    S: list
    P: list
    Q: list

    @property
    def diagonal(self):
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]


def snf(A):
    """Smith normal form with transforms, by gcd elimination.

    The pivot at each step is the entry of smallest nonzero absolute value
    in the remaining block. The result is checked before returning.

    >>> snf([[4, 0], [0, 6]]).diagonal
    [2, 12]
    """
    m, n = _shape(A)
    S = [[int(x) for x in row] for row in A]
    P = identity(m)
    Q = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for M in (S, Q):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row_dst += f * row_src
        S[dst] = [x + f * y for x, y in zip(S[dst], S[src])]
        P[dst] = [x + f * y for x, y in zip(P[dst], P[src])]

    def add_col(src, dst, f):
        for M in (S, Q):
            for row in M:
                row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = S[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(t, i, -(S[i][t] // piv))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(t, j, -(S[t][j] // piv))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            P[t] = [-x for x in P[t]]
    if matmul(matmul(P, A), Q) != S:
        raise AssertionError("Smith form reconstruction failed")
    return SnfResult(S=S, P=P, Q=Q)


def minors(A, t):
    """All ``t x t`` minors of ``A`` as a list of integers/rationals."""
    rows, cols = _shape(A)
    if not 1 <= t <= min(rows, cols):
        raise DimensionError(f"minor order {t} out of range for {rows}x{cols}")
    out = []
    for R in combinations(range(rows), t):
        sub_rows = [A[i] for i in R]
        for C in combinations(range(cols), t):
            out.append(det([[row[j] for j in C] for row in sub_rows]))
    return out


def delta_t(A, t):
    """Maximum absolute value of a ``t x t`` minor.

    >>> delta_t([[1, 0, 2], [0, 1, 3]], 2)
    3
    """
    return max(abs(d) for d in minors(A, t))


def _full_row_rank(A):
    rows, _ = _shape(A)
    if rank(A) != rows:
        raise RankError("matrix must have full row rank")
    return rows


def delta(A):
    k = _full_row_rank(A)
    return delta_t(A, k)


def delta_gcd(A):
    k = _full_row_rank(A)
    g = 0
    for d in minors(A, k):
        g = gcd(g, int(d))
    return g


@dataclass(frozen=True, order=False)
class DetLb:
    """The value ``delta_t ** (1/t)`` kept symbolically as ``(t, delta_t)``."""

    t: int
    delta_t: object

    def _cmp(self, other):
        lhs = Fraction(self.delta_t) ** other.t
        rhs = Fraction(other.delta_t) ** self.t
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def same_value(self, other):
        return self._cmp(other) == 0

    def at_most(self, bound):
        """True when this value is ``<= bound`` for a rational ``bound >= 0``."""
        return Fraction(self.delta_t) <= Fraction(bound) ** self.t


def detlb(A):
    """``max_t delta_t(A) ** (1/t)``, compared exactly by cross powers."""
    rows, cols = _shape(A)
    best = None
    for t in range(1, min(rows, cols) + 1):
        cand = DetLb(t, delta_t(A, t))
        if best is None or cand > best:
            best = cand
    return best
