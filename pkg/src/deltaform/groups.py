"""Finite Abelian groups given as direct sums of cyclic groups.

A group is described by the orders ``m_1, ..., m_s`` of its cyclic
factors; an element is a tuple of coordinates with ``0 <= a_j < m_j``.
The empty tuple of orders is the trivial group.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

from .errors import DimensionError, GroupMismatchError

__all__ = [
    "AbelianGroupSpec",
    "DirectSum",
    "g_add",
    "g_sub",
    "g_neg",
    "g_zero",
    "g_scale",
    "g_index",
    "g_unindex",
    "g_enumerate",
    "g_direct_sum",
    "g_reduce",
    "g_add_table",
    "invariant_factors",
]


@dataclass(frozen=True)
class AbelianGroupSpec:
    orders: tuple = ()

    def __post_init__(self):
        orders = tuple(int(m) for m in self.orders)
        if any(m < 1 for m in orders):
            raise ValueError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self):
        return len(self.orders)

    @property
    def size(self):
        return prod(self.orders)

    def __len__(self):
        return self.size

    def basis(self):
        s = self.rank
        return [tuple(int(i == j) for i in range(s)) for j in range(s)]


def _check(G, a):
    if len(a) != G.rank:
        raise DimensionError(f"element {tuple(a)} has arity {len(a)}, group has {G.rank} factors")


def g_reduce(G, a):
    _check(G, a)
    return tuple(int(x) % m for x, m in zip(a, G.orders))


def g_zero(G):
    return (0,) * G.rank


def g_add(G, a, b):
    _check(G, a)
    _check(G, b)
    return tuple((x + y) % m for x, y, m in zip(a, b, G.orders))


def g_neg(G, a):
    _check(G, a)
    return tuple((-x) % m for x, m in zip(a, G.orders))


def g_sub(G, a, b):
    _check(G, a)
    _check(G, b)
    return tuple((x - y) % m for x, y, m in zip(a, b, G.orders))


def g_scale(G, n, a):
    """``n * a`` for any integer ``n`` (negative allowed)."""
    _check(G, a)
    return tuple((n * x) % m for x, m in zip(a, G.orders))


def g_index(G, a):
    """Mixed-radix index, lexicographic in the coordinates.

    >>> g_index(AbelianGroupSpec((2, 3)), (1, 2))
    5
    """
    _check(G, a)
    idx = 0
    for x, m in zip(a, G.orders):
        if not 0 <= x < m:
            raise DimensionError(f"coordinate {x} out of range for order {m}")
        idx = idx * m + x
    return idx


def g_unindex(G, i):
    if not 0 <= i < G.size:
        raise IndexError(f"index {i} out of range for group of size {G.size}")
    coords = []
    for m in reversed(G.orders):
        i, r = divmod(i, m)
        coords.append(r)
    return tuple(reversed(coords))


def g_enumerate(G):
    return list(product(*(range(m) for m in G.orders)))


def g_add_table(G):
    """``table[i][j] = g_index(a_i + a_j)`` for all index pairs."""
    elems = g_enumerate(G)
    return [[g_index(G, g_add(G, a, b)) for b in elems] for a in elems]


@dataclass(frozen=True)
class DirectSum:
    """``G (+) H`` together with its canonical embeddings and projections."""

    left: AbelianGroupSpec
    right: AbelianGroupSpec
    group: AbelianGroupSpec

    def embed_left(self, a):
        _check(self.left, a)
        return tuple(a) + g_zero(self.right)

    def embed_right(self, b):
        _check(self.right, b)
        return g_zero(self.left) + tuple(b)

    def project_left(self, c):
        _check(self.group, c)
        return tuple(c[: self.left.rank])

    def project_right(self, c):
        _check(self.group, c)
        return tuple(c[self.left.rank :])

    def join(self, a, b):
        return tuple(a) + tuple(b)


def g_direct_sum(G, H):
    return DirectSum(G, H, AbelianGroupSpec(G.orders + H.orders))


def invariant_factors(G):
    """Canonical invariant factors (a divisibility chain, 1s dropped)."""
    from .exactla import snf

    if G.rank == 0:
        return ()
    diag = [[G.orders[i] if i == j else 0 for j in range(G.rank)] for i in range(G.rank)]
    return tuple(d for d in snf(diag).diagonal if d != 1)


def same_group(G, H):
    if G.orders != H.orders:
        raise GroupMismatchError(f"groups differ: {G.orders} vs {H.orders}")
