"""Tiling groups on the integer points of ``v + A [-1, 1)^n``.

Every ``y`` in ``R^n`` is written uniquely as ``y = A (t_v + t_y)`` with
``t_v = A^{-1} v``.  Wrapping ``t`` back into ``[-1, 1)^n`` modulo even
integers turns the parallelepiped into an Abelian group, isomorphic to
``Z^n / (2A) Z^n`` on its integer points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor

from .errors import NotInFundamentalDomainError, SingularMatrixError
from .exactla import det, matvec, rat_inverse, snf

__all__ = [
    "TilingGroup",
    "TilingElem",
    "wrap_plus",
    "wrap_minus",
    "tg_new",
    "tg_embed",
    "tg_add",
    "tg_zero",
    "tg_neg",
    "tg_phi",
    "tg_basis",
    "tg_enumerate",
    "tg_coords",
    "tg_iso",
]


def _wp(y):
    return y - 2 * floor((y + 1) / 2)


def wrap_plus(y):
    """``x`` in ``[-1,1)^n`` with ``y = z + x`` for some ``z`` in ``(2Z)^n``.

    >>> wrap_plus([Fraction(3, 2)])
    [Fraction(-1, 2)]
    """
    return [_wp(Fraction(c)) for c in y]


def wrap_minus(y):
    """``x`` in ``[-1,1)^n`` with ``y = z - x`` for some ``z`` in ``(2Z)^n``."""
    return [_wp(-Fraction(c)) for c in y]


@dataclass(frozen=True)
class TilingElem:
    z: tuple
    t: tuple = field(compare=False)


@dataclass(frozen=True)
class TilingGroup:
    Amat: tuple
    v: tuple
    t_v: tuple
    Ainv: tuple
    delta: int
    _snf: object = field(compare=False, repr=False)

    @property
    def dim(self):
        return len(self.Amat)

    @property
    def size(self):
        return 2 ** self.dim * self.delta

    def t_of(self, y):
        """``A^{-1} y - t_v``."""
        return tuple(a - b for a, b in zip(matvec(self.Ainv, y), self.t_v))

    def point(self, t):
        """``A (t_v + t)``."""
        return tuple(matvec(self.Amat, [a + b for a, b in zip(self.t_v, t)]))


def tg_new(Amat, v=None):
    A = tuple(tuple(int(x) for x in row) for row in Amat)
    n = len(A)
    d = det([list(r) for r in A])
    if d == 0:
        raise SingularMatrixError("tiling matrix is singular")
    v = tuple(Fraction(x) for x in (v if v is not None else [0] * n))
    Ainv = tuple(tuple(r) for r in rat_inverse([list(r) for r in A]))
    t_v = tuple(matvec(Ainv, v))
    return TilingGroup(A, v, t_v, Ainv, abs(d), snf([list(r) for r in A]))


def _elem(T, t):
    p = T.point(t)
    if any(Fraction(c).denominator != 1 for c in p):
        raise ValueError("point is not integral")
    return TilingElem(tuple(int(c) for c in p), tuple(t))


def _in_domain(t):
    return all(-1 <= c < 1 for c in t)


def tg_embed(T, z):
    t = T.t_of(z)
    if not _in_domain(t):
        raise NotInFundamentalDomainError(f"{tuple(z)} is outside v + A[-1,1)^n")
    return TilingElem(tuple(int(c) for c in z), t)


def tg_add(T, y, z):
    s = [a + b + c for a, b, c in zip(T.t_v, y.t, z.t)]
    return _elem(T, wrap_plus(s))


def tg_zero(T):
    return _elem(T, wrap_minus(T.t_v))


def tg_neg(T, z):
    t0 = tg_zero(T).t
    return _elem(T, wrap_minus([a + b - c for a, b, c in zip(T.t_v, z.t, t0)]))


def tg_phi(T, y):
    """Canonical homomorphism ``Z^n -> G``: wrap ``t_y`` into ``[-1,1)^n``."""
    return _elem(T, wrap_plus(T.t_of(y)))


def _pinv_cols(T):
    # columns of P^{-1}; their images under phi form the basis
    P = T._snf.P
    return [list(c) for c in zip(*rat_inverse(P))]


def tg_basis(T):
    """Basis ``(element, order)`` pairs; orders are ``2 * S_kk``."""
    S = T._snf.S
    cols = _pinv_cols(T)
    Q = T._snf.Q
    out = []
    for k in range(T.dim):
        skk = S[k][k]
        qk = [Fraction(Q[i][k], skk) for i in range(T.dim)]
        t = wrap_minus([a - b for a, b in zip(T.t_v, wrap_plus(qk))])
        elem = _elem(T, t)
        assert elem == tg_phi(T, [int(c) for c in cols[k]])
        out.append((elem, 2 * skk))
    return out


def tg_enumerate(T):
    """All ``2^n * delta`` integer points, in mixed-radix order over the basis."""
    cols = [[int(c) for c in col] for col in _pinv_cols(T)]
    orders = [2 * T._snf.S[k][k] for k in range(T.dim)]
    out = []
    n = T.dim
    for coeffs in product(*(range(m) for m in orders)):
        y = [sum(coeffs[k] * cols[k][i] for k in range(n)) for i in range(n)]
        out.append(tg_phi(T, y))
    return out


def tg_coords(T):
    """Map ``z -> basis coordinates`` for every element, plus the orders."""
    orders = tuple(2 * T._snf.S[k][k] for k in range(T.dim))
    elems = tg_enumerate(T)
    coords = product(*(range(m) for m in orders))
    return {e.z: c for e, c in zip(elems, coords)}, orders


@dataclass(frozen=True)
class TilingIso:
    source: TilingGroup
    target: TilingGroup

    def forward(self, z):
        s = [a + b for a, b in zip(self.source.t_v, z.t)]
        return tg_embed(self.target, matvec(self.source.Amat, wrap_plus(s)))

    def inverse(self, z):
        T = self.source
        t = wrap_minus([a - b for a, b in zip(T.t_v, z.t)])
        return _elem(T, t)


def tg_iso(T):
    """Isomorphism onto the centred group with the same matrix and ``v = 0``."""
    return TilingIso(T, tg_new(T.Amat))
