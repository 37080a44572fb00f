"""Seeded random instances with brute-force reference answers.

Only bounded feasible regions are drawn, so per-variable LP upper bounds
give a finite box that contains every feasible point and the brute-force
optimum is exact.
"""

from __future__ import annotations

import random
from math import floor

from .exactla import delta, rank
from .groups import AbelianGroupSpec
from .solver.instances import CanonIlpInstance, GenIlpInstance
from .solver.lp import LP_INFEASIBLE, LP_UNBOUNDED, lp_relax

__all__ = ["GROUP_CHOICES", "lp_box", "random_gensf", "random_canonical", "corpus"]

GROUP_CHOICES = ((), (2,), (3,), (4,), (2, 2), (5,), (6,), (2, 3))


def lp_box(A, b):
    """Per-variable ``floor(max x_j)``; ``None`` if some coordinate is unbounded,
    ``()`` if the region is empty."""
    n = len(A[0])
    box = []
    for j in range(n):
        c = [0] * n
        c[j] = -1
        res = lp_relax(A, b, c)
        if res.status == LP_INFEASIBLE:
            return ()
        if res.status == LP_UNBOUNDED:
            return None
        box.append(max(0, floor(-res.value)))
    return tuple(box)


def _rand_group(rng):
    orders = rng.choice(GROUP_CHOICES)
    return AbelianGroupSpec(orders)


def random_gensf(rng, k=None, n=None, max_delta=None, max_points=200_000):
    """A bounded instance ``(inst, box)`` with ``k <= 2``, ``n <= 6`` and all
    entries of ``A``, ``b``, ``c`` at most 5 in absolute value."""
    while True:
        kk = k or rng.choice((1, 2))
        nn = n or rng.randint(kk + 1, 6)
        if kk == 1:
            s = rng.choice((-1, 1))
            A = [[s * rng.randint(1, 5) for _ in range(nn)]]
            b = [s * rng.randint(0, 5)]
        else:
            A = [[rng.randint(-2, 5) for _ in range(nn)] for _ in range(kk)]
            b = [rng.randint(-2, 5) for _ in range(kk)]
        if rank(A) != kk or (max_delta and delta(A) > max_delta):
            continue
        planted = None
        if rng.random() < 0.7:
            # plant a feasible point so both verdicts are well represented
            planted = [rng.choice((0, 0, 1, 1, 2)) for _ in range(nn)]
            b = [sum(a * x for a, x in zip(row, planted)) for row in A]
            if any(abs(v) > 5 for v in b):
                continue
        box = lp_box(A, b)
        if box is None:
            continue
        G = _rand_group(rng)
        cols = [tuple(rng.randrange(m) for m in G.orders) for _ in range(nn)]
        target = tuple(rng.randrange(m) for m in G.orders)
        if planted is not None and rng.random() < 0.7:
            target = tuple(sum(x * g[j] for x, g in zip(planted, cols)) % m for j, m in enumerate(G.orders))
        c = [rng.randint(-5, 5) for _ in range(nn)]
        sense = rng.choice(("min", "max"))
        if box == ():
            box = (0,) * nn
        points = 1
        for u in box:
            points *= u + 1
        if points > max_points:
            continue
        return GenIlpInstance(A, b, c, G, cols, target, sense), box


def random_canonical(rng, n=None, k=None):
    """A bounded canonical instance ``max c^T x, Ax <= b`` with ``n <= 3``, ``k <= 2``."""
    while True:
        nn = n or rng.randint(1, 3)
        kk = k or rng.randint(1, 2)
        A = [[rng.randint(-3, 3) for _ in range(nn)] for _ in range(nn + kk)]
        b = [rng.randint(0, 8) for _ in range(nn + kk)]
        if rank(A) != nn:
            continue
        # boundedness: every direction d != 0 violates some row, checked by LP on +-x_j
        if not _canon_bounded(A, b):
            continue
        c = [rng.randint(-5, 5) for _ in range(nn)]
        return CanonIlpInstance(A, b, c, sense=rng.choice(("max", "min")))


def _canon_bounded(A, b):
    # x = u - w with u, w >= 0 and slack s >= 0
    m, n = len(A), len(A[0])
    big = [list(A[i]) + [-a for a in A[i]] + [int(i == j) for j in range(m)] for i in range(m)]
    for j in range(n):
        for s in (1, -1):
            c = [0] * (2 * n + m)
            c[j] = -s
            c[n + j] = s
            res = lp_relax(big, b, c)
            if res.status != "optimal":
                return False
    return True


def corpus(seed, count, **kw):
    """``count`` instances from a fixed seed."""
    rng = random.Random(seed)
    return [random_gensf(rng, **kw) for _ in range(count)]
