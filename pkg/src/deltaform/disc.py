"""Brute-force discrepancy computations.

``disc(A) = min_{z in {-1,1}^n} |Az|_inf`` and
``herdisc(A) = max_I disc(A_{*I})``.  Both are found by exhaustive
search.  Rational matrices are scaled to a common denominator first, so the
search itself runs on integers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

import numpy as np

from .errors import CapExceededError, NotFoundError

__all__ = [
    "DiscCaps",
    "disc_exact",
    "herdisc_exact",
    "subset_discs",
    "find_halving",
    "halving_ok",
]


@dataclass(frozen=True)
class DiscCaps:
    disc_n: int = 20
    herdisc_n: int = 13
    halving_box: int = 2_000_000

    @classmethod
    def from_env(cls):
        """Read ``DELTAFORM_CAPS`` such as ``disc_n=18,herdisc_n=12``."""
        raw = os.environ.get("DELTAFORM_CAPS", "")
        kw = {}
        for part in filter(None, (p.strip() for p in raw.split(","))):
            key, _, val = part.partition("=")
            if key in cls.__dataclass_fields__:
                kw[key] = int(val)
        return cls(**kw)


def _scaled(A):
    A = [[Fraction(x) for x in row] for row in A]
    den = lcm(1, *(x.denominator for row in A for x in row))
    M = np.array([[int(x * den) for x in row] for row in A], dtype=object)
    if M.size and max(abs(int(x)) for x in M.flat) < 2**40:
        M = M.astype(np.int64)
    return M, den


def disc_exact(A, caps=None):
    """Exact discrepancy and the lexicographically first optimal coloring.

    >>> disc_exact([[1, 1]])
    (Fraction(0, 1), (-1, 1))
    """
    caps = caps or DiscCaps.from_env()
    k = len(A)
    n = len(A[0]) if k else 0
    if n > caps.disc_n:
        raise CapExceededError(f"disc search over 2^{n} colorings exceeds cap 2^{caps.disc_n}")
    if n == 0:
        return Fraction(0), ()
    M, den = _scaled(A)
    best_val = None
    best_z = None
    chunk = 1 << min(n, 16)
    for start in range(0, 2**n, chunk):
        idx = np.arange(start, min(2**n, start + chunk))
        Z = 2 * ((idx[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.int64) - 1
        vals = np.abs(Z @ M.T).max(axis=1) if k else np.zeros(len(idx), dtype=np.int64)
        i = int(np.argmin(vals))
        v = int(vals[i])
        if best_val is None or v < best_val:
            best_val, best_z = v, tuple(int(x) for x in Z[i])
    return Fraction(best_val, den), best_z


def subset_discs(A, caps=None):
    """``disc(A_{*I})`` for every column subset ``I`` (bitmask, bit ``j`` = column ``j``).

    Enumerates the ``3^n`` partial colorings ``z in {-1,0,1}^n`` once; the
    support of ``z`` is the subset it colors.
    """
    caps = caps or DiscCaps.from_env()
    k = len(A)
    n = len(A[0]) if k else 0
    if n > caps.herdisc_n:
        raise CapExceededError(f"herdisc search over 3^{n} partial colorings exceeds cap 3^{caps.herdisc_n}")
    M, den = _scaled(A)
    best = np.full(2**n, np.iinfo(np.int64).max, dtype=np.int64)
    best[0] = 0
    if n == 0:
        return best, den
    # split columns: the first block is enumerated densely, the rest looped
    head = min(n, 8)
    tail = n - head
    H = np.array(list(product((-1, 0, 1), repeat=head)), dtype=np.int64)
    Hmask = ((H != 0) * (1 << np.arange(head))).sum(axis=1)
    Hsum = H @ M[:, :head].T if k else np.zeros((len(H), 0), dtype=np.int64)
    for t in product((-1, 0, 1), repeat=tail):
        t = np.array(t, dtype=np.int64)
        tsum = M[:, head:] @ t if k else np.zeros(0, dtype=np.int64)
        tmask = int(((t != 0) * (1 << np.arange(head, n))).sum()) if tail else 0
        vals = np.abs(Hsum + tsum).max(axis=1) if k else np.zeros(len(H), dtype=np.int64)
        np.minimum.at(best, Hmask + tmask, vals.astype(np.int64))
    return best, den


def herdisc_exact(A, caps=None):
    """Hereditary discrepancy by exhaustive search over all partial colorings."""
    best, den = subset_discs(A, caps)
    return Fraction(int(best.max()), den)


def halving_ok(A, x, z, H):
    """Check the three halving conditions for ``z`` against ``x`` and bound ``H``."""
    A = [[Fraction(a) for a in row] for row in A]
    if any(not 0 <= zi <= xi for zi, xi in zip(z, x)):
        return False
    nx = sum(x)
    nz = sum(z)
    if not Fraction(nx, 6) <= nz <= Fraction(5 * nx, 6):
        return False
    w = [Fraction(zi) - Fraction(xi, 2) for zi, xi in zip(z, x)]
    return all(abs(sum(a * b for a, b in zip(row, w))) <= 2 * Fraction(H) for row in A)


def find_halving(A, x, H, caps=None):
    """Vector ``0 <= z <= x`` with ``|x|_1/6 <= |z|_1 <= 5|x|_1/6`` and ``|A(z - x/2)| <= 2H``.

    The box ``[0, x]`` is scanned lexicographically; the first valid ``z``
    is returned.
    """
    caps = caps or DiscCaps.from_env()
    x = [int(v) for v in x]
    if any(v < 0 for v in x):
        raise ValueError("x must be nonnegative")
    if sum(x) == 0:
        return tuple(0 for _ in x)
    size = 1
    for v in x:
        size *= v + 1
    if size > caps.halving_box:
        raise CapExceededError(f"halving box of {size} points exceeds cap {caps.halving_box}")
    M, den = _scaled(A)
    H2 = 2 * Fraction(H) * den
    nx = sum(x)
    lo, hi = Fraction(nx, 6), Fraction(5 * nx, 6)
    Ax2 = [sum(int(M[i, j]) * x[j] for j in range(len(x))) for i in range(len(A))]
    for z in product(*(range(v + 1) for v in x)):
        s = sum(z)
        if not lo <= s <= hi:
            continue
        ok = True
        for i in range(len(A)):
            # |A z - A x / 2| <= 2H  <=>  |2 A z - A x| <= 4H
            az = sum(int(M[i, j]) * z[j] for j in range(len(z)))
            if abs(2 * az - Ax2[i]) > 2 * H2:
                ok = False
                break
        if ok:
            return tuple(z)
    raise NotFoundError("no halving vector inside the box; H may be below herdisc(A)")
