"""Level-by-level dynamic program over shrinking windows.

Level ``i`` stores, for every ``(y, g)`` with ``y`` in the window
``W(i) = {y : |B^{-1} y - 2^{i-rho} v*|_inf <= 4 eta}``, the least cost of a
nonnegative integer ``x`` with ``Ax = y`` and ``sum x_j g_j = g``.  Level 0
holds the zero vector and single columns; level ``i`` is the (min, +)
self-convolution of level ``i-1``, read back on ``W(i)``.  The answer sits
at level ``rho`` in cell ``(b, g_0)``.

Two interchangeable engines combine a level:

* ``"sparse"`` enumerates pairs of finite cells with numpy.
* ``"group"`` embeds the level into ``H_i (+) G`` where ``H_i`` is the
  tiling group of ``8 eta B`` around ``2^{i-rho} b``, then calls the group
  convolution (or, for feasibility, the Fourier-based Boolean product).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

import numpy as np

from ..exactla import det, snf
from ..fourier import bool_conv
from ..groups import AbelianGroupSpec, g_add_table, g_index, g_unindex
from ..tiling import tg_new
from ..tropconv import INF, conv_group

__all__ = ["DpOutcome", "dp_solve", "window_points"]

_BIG = np.int64(2**62)
_VALUE_LIMIT = 2**60
_CHUNK_ELEMS = 1 << 20


@dataclass
class DpOutcome:
    feasible: bool
    value: object = None
    x: tuple = None
    level_sizes: list = field(default_factory=list)
    slack_cells: int = 0


def _adjugate(B):
    k = len(B)
    d = det(B)
    if k == 1:
        return [[1]], d
    adj = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [[B[r][c] for c in range(k) if c != i] for r in range(k) if r != j]
            adj[i][j] = (-1) ** (i + j) * det(minor)
    return adj, d


class _Window:
    """Integer points of ``W(i)`` with a dense lookup over their bounding box."""

    def __init__(self, B, adj, d, b, scale, eta):
        k = len(B)
        reach = [4 * eta * sum(abs(x) for x in row) for row in B]
        centre = [scale * bi for bi in b]
        self.lo = np.array([ceil(c - r) for c, r in zip(centre, reach)], dtype=np.int64)
        hi = np.array([floor(c + r) for c, r in zip(centre, reach)], dtype=np.int64)
        self.shape = tuple(int(x) for x in hi - self.lo + 1)
        axes = [np.arange(int(l), int(l) + s, dtype=np.int64) for l, s in zip(self.lo, self.shape)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, k)
        # |adj_r y - d * scale * (B^{-1} b)_r| <= 4 eta |d|, all integral on the left
        lim = 4 * eta * abs(d)
        keep = np.ones(len(grid), dtype=bool)
        for r in range(k):
            centre_r = scale * sum(a * bj for a, bj in zip(adj[r], b))
            L = ceil(centre_r - lim)
            U = floor(centre_r + lim)
            vals = grid @ np.array(adj[r], dtype=np.int64)
            keep &= (vals >= L) & (vals <= U)
        self.points = grid[keep]
        self.lut = np.full(len(grid), -1, dtype=np.int64)
        self.lut[np.flatnonzero(keep)] = np.arange(len(self.points))
        self.strides = np.array([int(np.prod(self.shape[j + 1 :])) for j in range(k)], dtype=np.int64)

    def __len__(self):
        return len(self.points)

    def locate(self, Y):
        """Window index of each row of ``Y`` or ``-1``."""
        off = Y - self.lo
        ok = np.all((off >= 0) & (off < np.array(self.shape)), axis=1)
        out = np.full(len(Y), -1, dtype=np.int64)
        out[ok] = self.lut[off[ok] @ self.strides]
        return out


def window_points(B, b, rho, i, eta):
    """The integer points of ``W(i)`` as a list of tuples (mostly for tests)."""
    adj, d = _adjugate([list(r) for r in B])
    w = _Window(B, adj, d, b, Fraction(1, 2 ** (rho - i)), eta)
    return [tuple(int(v) for v in p) for p in w.points]


def _combine_sparse(prev, win_prev, win, G, boolean):
    """All pair sums of finite cells of ``prev`` that land in ``win``.

    A cell ``(y, g)`` is encoded linearly in the box of possible sums (each
    group coordinate gets range ``2m - 1`` before reduction), so a pair sum
    is a single integer addition followed by one table lookup.
    """
    r = G.size
    S = np.flatnonzero(prev if boolean else prev < _BIG)
    size = len(win) * r
    new = np.zeros(size + 1, dtype=bool) if boolean else np.full(size + 1, _BIG, dtype=np.int64)
    if not len(S):
        return new[:size]
    k = win_prev.points.shape[1]
    dims = [2 * d - 1 for d in win_prev.shape] + [2 * m - 1 for m in G.orders]
    strides = np.array([int(np.prod(dims[j + 1 :])) for j in range(len(dims))], dtype=np.int64)
    Y = win_prev.points[S // r] - win_prev.lo
    gcoords = np.array([g_unindex(G, int(g)) for g in range(r)], dtype=np.int64).reshape(r, G.rank)
    Gc = gcoords[S % r]
    codes = np.concatenate([Y, Gc], axis=1) @ strides
    # lookup table over the whole sum box
    total = int(np.prod(dims))
    grid = np.indices(dims).reshape(len(dims), -1).T
    ysum = grid[:, :k] + 2 * win_prev.lo
    gsum = grid[:, k:] % np.array(G.orders, dtype=np.int64) if G.rank else grid[:, k:]
    gidx = np.zeros(total, dtype=np.int64)
    for j, m in enumerate(G.orders):
        gidx = gidx * m + gsum[:, j]
    w = win.locate(ysum)
    lut = np.where(w >= 0, w * r + gidx, size)
    dtype = np.int32 if size < 2**31 - 1 and total < 2**30 else np.int64
    lut = lut.astype(dtype)
    codes = codes.astype(dtype)
    V = None if boolean else prev[S]
    s = len(S)
    rows = max(1, _CHUNK_ELEMS // s)
    for a0 in range(0, s, rows):
        a1 = min(s, a0 + rows)
        # pairs (a, b) with a in [a0, a1) and b >= a0; symmetry covers the rest
        cells = lut[codes[a0:a1, None] + codes[None, a0:]].ravel()
        if boolean:
            new[cells] = True
        else:
            np.minimum.at(new, cells, (V[a0:a1, None] + V[None, a0:]).ravel())
    return new[:size]


def _target_only(prev, win_prev, win, addtab, neg, r, cell, boolean):
    """Level value at a single cell, by scanning splits of its vector."""
    size = len(win) * r
    out = np.zeros(size, dtype=bool) if boolean else np.full(size, _BIG, dtype=np.int64)
    S = np.flatnonzero(prev if boolean else prev < _BIG)
    if not len(S):
        return out
    y = win.points[cell // r]
    g = cell % r
    cw = win_prev.locate(y[None, :] - win_prev.points[S // r])
    ok = cw >= 0
    comp = np.where(ok, cw * r + addtab[g, neg[S % r]], 0)
    if boolean:
        out[cell] = bool((ok & prev[comp]).any())
    elif ok.any():
        sums = prev[S] + prev[comp]
        sums = np.where(ok & (prev[comp] < _BIG), sums, _BIG)
        out[cell] = sums.min()
    return out


class _LevelGroup:
    """The group ``H_i (+) G`` and coordinates of window points in it."""

    def __init__(self, B, eta, b, scale, G):
        k = len(B)
        M = [[8 * eta * x for x in row] for row in B]
        self.H = tg_new(M, [scale * bi for bi in b])
        res = snf(M)
        self.P = np.array(res.P, dtype=np.int64)
        self.mods = np.array([2 * res.S[j][j] for j in range(k)], dtype=np.int64)
        self.Q = AbelianGroupSpec(tuple(int(m) for m in self.mods) + G.orders)
        self.r = G.size
        self.k = k

    def index(self, Y, Gi):
        """Index in ``Q`` of ``(phi(y), g)``; ``phi`` read off as ``P y mod 2 S``."""
        C = (Y @ self.P.T) % self.mods
        idx = np.zeros(len(Y), dtype=np.int64)
        for j in range(self.k):
            idx = idx * self.mods[j] + C[:, j]
        return idx * self.r + Gi

    def check_inside(self, Y, shift):
        """``shift + y`` must lie in the fundamental domain of ``H_i``."""
        for y in Y:
            t = self.H.t_of([Fraction(int(a)) + s for a, s in zip(y, shift)])
            if not all(-1 <= c < 1 for c in t):
                raise AssertionError(f"window point {tuple(y)} leaves the tiling domain")


def _combine_group(prev, win_prev, win, G, B, eta, b, scale, scale_prev, boolean, backend):
    r = G.size
    lg = _LevelGroup(B, eta, b, scale, G)
    S = np.flatnonzero(prev if boolean else prev < _BIG)
    size = len(win) * r
    Y = win_prev.points[S // r]
    lg.check_inside(Y, [scale_prev * bi for bi in b])
    src = lg.index(Y, S % r)
    if len(set(src.tolist())) != len(src):
        raise AssertionError("window is not embedded injectively")
    Wi = np.repeat(win.points, r, axis=0)
    dst = lg.index(Wi, np.tile(np.arange(r), len(win)))
    if boolean:
        alpha = [False] * lg.Q.size
        for s in src.tolist():
            alpha[s] = True
        res = bool_conv(lg.Q, alpha, alpha)
        return np.array([bool(res[d]) for d in dst.tolist()], dtype=bool)
    alpha = [INF] * lg.Q.size
    for s, v in zip(src.tolist(), prev[S].tolist()):
        alpha[s] = v
    res = conv_group(lg.Q, alpha, alpha, backend).values
    out = np.full(size, _BIG, dtype=np.int64)
    for pos, d in enumerate(dst.tolist()):
        if res[d] is not INF:
            out[pos] = res[d]
    return out


def dp_solve(inst, base, eta, rho, feasibility=False, engine="sparse", backend=None):
    """Run the DP for the (already shifted) instance.

    ``base`` is a tuple of ``k`` column indices forming a nonsingular
    submatrix ``B``.  Returns a :class:`DpOutcome` whose ``x`` has been
    verified against every constraint of ``inst``.
    """
    if engine not in ("sparse", "group"):
        raise ValueError(f"unknown level engine {engine!r}")
    A, b, c = inst.A, inst.b, inst.c
    k, n = inst.k, inst.n
    G = inst.group
    r = G.size
    gidx = [g_index(G, g) for g in inst.g_cols]
    target = g_index(G, inst.g_target)
    addtab = np.array(g_add_table(G), dtype=np.int64)
    B = [[A[i][j] for j in base] for i in range(k)]
    adj, d = _adjugate(B)
    if d == 0:
        raise ValueError("base columns are singular")
    if max(abs(ci) for ci in c) * (n + 1) * 2 ** (rho + 1) >= _VALUE_LIMIT:
        raise OverflowError("objective too large for the integer tables")

    windows = [_Window(B, adj, d, b, Fraction(1, 2 ** (rho - i)), eta) for i in range(rho + 1)]
    # level 0: zero vector and single columns
    w0 = windows[0]
    table = np.zeros(len(w0) * r, dtype=bool) if feasibility else np.full(len(w0) * r, _BIG, dtype=np.int64)
    zero = w0.locate(np.zeros((1, k), dtype=np.int64))[0]
    if zero >= 0:
        table[zero * r] = True if feasibility else 0
    cols = np.array([[A[i][j] for i in range(k)] for j in range(n)], dtype=np.int64)
    loc = w0.locate(cols)
    for j in range(n):
        if loc[j] >= 0:
            cell = loc[j] * r + gidx[j]
            if feasibility:
                table[cell] = True
            else:
                table[cell] = min(int(table[cell]), c[j])
    top = windows[rho].locate(np.array([b], dtype=np.int64))[0]
    assert top >= 0
    cell = int(top * r + target)
    neg = np.argmax(addtab == 0, axis=1)
    tables = [table]
    for i in range(1, rho + 1):
        prev = tables[-1]
        if engine == "sparse" and i == rho:
            nxt = _target_only(prev, windows[i - 1], windows[i], addtab, neg, r, cell, feasibility)
        elif engine == "sparse":
            nxt = _combine_sparse(prev, windows[i - 1], windows[i], G, feasibility)
        else:
            nxt = _combine_group(
                prev, windows[i - 1], windows[i], G, B, eta, b,
                Fraction(1, 2 ** (rho - i)), Fraction(1, 2 ** (rho - i + 1)), feasibility, backend,
            )
        tables.append(nxt)
    sizes = [int(np.count_nonzero(t if feasibility else t < _BIG)) for t in tables]
    final = tables[rho][cell]
    if (not final) if feasibility else final >= _BIG:
        return DpOutcome(False, level_sizes=sizes)
    value = None if feasibility else int(final)
    rebuild = _Rebuilder(tables, windows, r, addtab, cols, gidx, c, feasibility)
    x = rebuild.solve(rho, cell)
    if any(v < 0 for v in x) or inst.residual(x) != (0,) * k or inst.group_sum(x) != inst.g_target:
        raise AssertionError("reconstructed witness violates the constraints")
    if not feasibility and inst.objective(x) != value:
        raise AssertionError("reconstructed witness has the wrong cost")
    return DpOutcome(True, value, x, sizes, rebuild.slack)


class _Rebuilder:
    """Backtrack through the tables to a witness ``x``, memoised per cell."""

    def __init__(self, tables, windows, r, addtab, cols, gidx, c, boolean):
        self.tables = tables
        self.windows = windows
        self.r = r
        self.addtab = addtab
        self.cols = cols
        self.gidx = gidx
        self.c = c
        self.boolean = boolean
        self.n = len(c)
        self.memo = {}
        self.slack = 0
        # index of -g for each group index
        self.neg = np.argmax(addtab == 0, axis=1)

    def solve(self, level, cell):
        key = (level, cell)
        if key in self.memo:
            return self.memo[key]
        x = self._leaf(cell) if level == 0 else self._split(level, cell)
        if sum(x) > Fraction(6, 5) ** level:
            self.slack += 1
        self.memo[key] = x
        return x

    def _leaf(self, cell):
        r = self.r
        y = self.windows[0].points[cell // r]
        g = cell % r
        val = self.tables[0][cell]
        x = [0] * self.n
        if not y.any() and g == 0 and (self.boolean or val == 0):
            return tuple(x)
        for j in range(self.n):
            if np.array_equal(self.cols[j], y) and self.gidx[j] == g and (self.boolean or self.c[j] == val):
                x[j] = 1
                return tuple(x)
        raise AssertionError("level-0 cell has no generating column")

    def _split(self, level, cell):
        r = self.r
        prev = self.tables[level - 1]
        wprev = self.windows[level - 1]
        y = self.windows[level].points[cell // r]
        g = cell % r
        S = np.flatnonzero(prev if self.boolean else prev < _BIG)
        Ys = wprev.points[S // r]
        Gs = S % r
        comp_w = wprev.locate(y[None, :] - Ys)
        ok = comp_w >= 0
        comp_g = self.addtab[g, self.neg[Gs]]
        comp = comp_w * r + comp_g
        if self.boolean:
            ok &= np.where(ok, prev[np.where(ok, comp, 0)], False)
        else:
            target = self.tables[level][cell]
            ok &= np.where(ok, prev[np.where(ok, comp, 0)] + prev[S] == target, False)
        hits = np.flatnonzero(ok)
        if not len(hits):
            raise AssertionError(f"no split found at level {level}")
        a = int(S[hits[0]])
        bcell = int(comp[hits[0]])
        xa = self.solve(level - 1, a)
        xb = self.solve(level - 1, bcell)
        return tuple(p + q for p, q in zip(xa, xb))
