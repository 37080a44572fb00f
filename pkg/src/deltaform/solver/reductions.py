"""Reductions between the problem forms.

* ``normalize_gcd``: unimodular row change making the gcd of the full
  minors equal to 1, with the removed factor checked against ``b``.
* ``reduce_cf_to_gensf``: ``max c^T x, Ax <= b`` becomes a standard-form
  problem with a group constraint on the slack ``b - Ax``.
* ``reduce_modsf_to_cf``: standard form with congruences becomes a
  canonical-form problem in the congruence multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from ..errors import RankError
from ..exactla import det, matmul, matvec, rank, rat_inverse, snf
from ..groups import AbelianGroupSpec
from .instances import CanonIlpInstance, GenIlpInstance

__all__ = [
    "Infeasible",
    "normalize_gcd",
    "reduce_cf_to_gensf",
    "reduce_modsf_to_cf",
    "CfMap",
    "ModMap",
]


class _InfeasibleType:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Infeasible"


Infeasible = _InfeasibleType()


def normalize_gcd(inst):
    """Divide out the gcd of the full minors.

    With ``S = PAQ = [D | 0]`` the system ``Ax = b`` is equivalent to
    ``D^{-1} P A x = D^{-1} P b``; the new matrix has full-minor gcd 1, and
    a fractional right-hand side proves infeasibility.

    >>> normalize_gcd(GenIlpInstance([[2, 4]], [6], [1, 1])).A
    ((1, 2),)
    """
    A = [list(r) for r in inst.A]
    k = len(A)
    if rank(A) != k:
        raise RankError("constraint matrix must have full row rank")
    res = snf(A)
    D = res.diagonal
    g = 1
    for d in D:
        g *= d
    if g == 1:
        return inst
    PA = matmul(res.P, A)
    Pb = matvec(res.P, inst.b)
    newA, newb = [], []
    for i in range(k):
        row = [Fraction(x, D[i]) for x in PA[i]]
        assert all(x.denominator == 1 for x in row)
        rhs = Fraction(Pb[i], D[i])
        if rhs.denominator != 1:
            return Infeasible
        newA.append([int(x) for x in row])
        newb.append(int(rhs))
    return inst.replace(A=newA, b=newb)


@dataclass(frozen=True)
class CfMap:
    """Back-substitution ``x = L (b - xhat)`` and ``c^T x = offset + value/scale``."""

    A: tuple
    b: tuple
    L: tuple
    offset: Fraction
    scale: int

    def solution(self, xhat):
        s = [bi - xi for bi, xi in zip(self.b, xhat)]
        x = matvec(self.L, s)
        assert all(Fraction(v).denominator == 1 for v in x)
        return tuple(int(v) for v in x)

    def value(self, vhat):
        return self.offset + Fraction(vhat, self.scale)

    def slack(self, x):
        return tuple(bi - sum(a * xi for a, xi in zip(row, x)) for row, bi in zip(self.A, self.b))


def reduce_cf_to_gensf(canon):
    """Canonical form to group standard form on the slack ``xhat = b - Ax``.

    ``S = PAQ`` splits ``P`` into its first ``n`` rows (the group part, read
    modulo the invariant factors) and the last ``k`` rows (the equations).
    """
    A = [list(r) for r in canon.A]
    m, n = len(A), len(A[0])
    if rank(A) != n:
        raise RankError("canonical-form matrix must have full column rank")
    k = m - n
    res = snf(A)
    D = res.diagonal
    P = res.P
    Ahat = [list(P[i]) for i in range(n, m)]
    bhat = matvec(Ahat, canon.b)
    keep = [i for i in range(n) if D[i] != 1]
    group = AbelianGroupSpec(tuple(D[i] for i in keep))
    g_cols = [tuple(P[i][j] % D[i] for i in keep) for j in range(m)]
    g_target = tuple(sum(P[i][j] * canon.b[j] for j in range(m)) % D[i] for i in keep)
    # L = Q [D^{-1} | 0] P is a left inverse of A
    L = [[Fraction(0)] * m for _ in range(n)]
    for r in range(n):
        for j in range(m):
            L[r][j] = sum(Fraction(res.Q[r][t] * P[t][j], D[t]) for t in range(n))
    cL = [sum(Fraction(canon.c[r]) * L[r][j] for r in range(n)) for j in range(m)]
    scale = lcm(1, *(v.denominator for v in cL))
    # max c^T x = max (c^T L b - c^T L xhat)
    chat = [-int(v * scale) for v in cL]
    offset = sum(v * bj for v, bj in zip(cL, canon.b))
    inst = GenIlpInstance(Ahat, bhat, chat, group, g_cols, g_target, sense=canon.sense)
    return inst, CfMap(tuple(map(tuple, A)), tuple(canon.b), tuple(map(tuple, L)), offset, scale)


@dataclass(frozen=True)
class ModMap:
    """``x = bhat - Ahat z`` and ``c^T x = offset + chat^T z``."""

    Ahat: tuple
    bhat: tuple
    offset: int

    def solution(self, z):
        return tuple(b - sum(a * zi for a, zi in zip(row, z)) for row, b in zip(self.Ahat, self.bhat))


def reduce_modsf_to_cf(mod):
    """Congruence-constrained standard form to canonical form.

    Requires ``[A; G]`` to be unimodular.  Writing ``Gx = g + Sz`` gives
    ``x = U [b; g + Sz]`` with ``U = [A; G]^{-1}``, so ``x >= 0`` becomes
    ``Ahat z <= bhat`` with ``Ahat = -U_{*,k:} S``.
    """
    A = [list(r) for r in mod.A] + [list(r) for r in mod.G]
    n = len(A[0])
    k = len(mod.A)
    if len(A) != n:
        raise RankError("[A; G] must be square")
    if abs(det(A)) != 1:
        raise RankError("[A; G] must be unimodular")
    U = [[int(x) for x in row] for row in rat_inverse(A)]
    d = n - k
    Ahat = [[-U[i][k + j] * mod.S[j] for j in range(d)] for i in range(n)]
    bhat = matvec(U, list(mod.b) + list(mod.g))
    chat = [-sum(mod.c[i] * Ahat[i][j] for i in range(n)) for j in range(d)]
    offset = sum(ci * bi for ci, bi in zip(mod.c, bhat))
    canon = CanonIlpInstance(Ahat, bhat, chat, sense=mod.sense)
    return canon, ModMap(tuple(map(tuple, Ahat)), tuple(bhat), offset)
