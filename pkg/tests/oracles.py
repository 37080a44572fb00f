"""Independent reference computations shared by the tests."""

from decimal import Decimal, getcontext
from fractions import Fraction

import numpy as np

PI_60 = Decimal("3.14159265358979323846264338327950288419716939937510582097494459")


def taylor_root(n, k, terms=200, prec=60):
    """``e^{2 pi i k / n}`` by a plain Taylor series in decimal arithmetic."""
    getcontext().prec = prec
    theta = 2 * PI_60 * k / n
    re, im = Decimal(0), Decimal(0)
    term = Decimal(1)
    for j in range(terms):
        r = j % 4
        if r == 0:
            re += term
        elif r == 1:
            im += term
        elif r == 2:
            re -= term
        else:
            im -= term
        term = term * theta / (j + 1)
    return Fraction(re), Fraction(im)


def int_dft(v, table):
    """``sum_j v_j w^{jk}`` with integer input and the table's grid roots, exactly.

    Returns integer numerators over ``table.q``.
    """
    n = len(v)
    re = np.array(table.re, dtype=object)
    im = np.array(table.im, dtype=object)
    step = table.n // n
    vv = np.array(v, dtype=object)
    out_re, out_im = [], []
    j = np.arange(n)
    for k in range(n):
        idx = (j * k * step) % table.n
        out_re.append(int((vv * re[idx]).sum()))
        out_im.append(int((vv * im[idx]).sum()))
    return out_re, out_im


def max_err(values, ref_re, ref_im, q):
    """Exact ``max_k |values_k - ref_k / q|^2``."""
    worst = Fraction(0)
    for z, a, b in zip(values, ref_re, ref_im):
        d = (z.re - Fraction(a, q)) ** 2 + (z.im - Fraction(b, q)) ** 2
        worst = max(worst, d)
    return worst


def canon_box(A, b):
    """Integer bounds ``lo_j <= x_j <= hi_j`` of ``{x : Ax <= b}`` from exact LPs.

    Returns ``None`` when the region is empty.
    """
    from math import ceil, floor

    from deltaform.solver.lp import LP_INFEASIBLE, lp_relax

    m, n = len(A), len(A[0])
    big = [list(A[i]) + [-a for a in A[i]] + [int(i == j) for j in range(m)] for i in range(m)]
    lo, hi = [], []
    for j in range(n):
        out = []
        for s in (1, -1):
            c = [0] * (2 * n + m)
            c[j], c[n + j] = -s, s
            res = lp_relax(big, b, c)
            if res.status == LP_INFEASIBLE:
                return None
            assert res.status == "optimal"
            out.append(-s * res.value)
        hi.append(floor(out[0]))
        lo.append(ceil(out[1]))
    return lo, hi


def canon_points(A, b):
    """All integer points of a bounded ``{x : Ax <= b}``."""
    from itertools import product

    box = canon_box(A, b)
    if box is None:
        return []
    lo, hi = box
    return [x for x in product(*(range(l, h + 1) for l, h in zip(lo, hi))) if all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(A, b))]


def gen_points(inst, box):
    """All feasible points of a group standard-form instance inside ``0 <= x <= box``."""
    ub = list(box)
    axes = [np.arange(u + 1, dtype=np.int64) for u in ub]
    X = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(ub))
    ok = np.all(X @ np.array(inst.A, dtype=np.int64).T == np.array(inst.b, dtype=np.int64), axis=1)
    G = inst.group
    if G.rank:
        gc = np.array(inst.g_cols, dtype=np.int64).reshape(len(ub), G.rank)
        ok &= np.all((X @ gc - np.array(inst.g_target)) % np.array(G.orders) == 0, axis=1)
    return {tuple(int(v) for v in row) for row in X[ok]}
