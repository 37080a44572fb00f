"""(min, +) convolution over finite Abelian groups.

Values are Python ints or the absorbing element :data:`INF`.  Group maps
are dense lists indexed by :func:`deltaform.groups.g_index`.

The fast path for a general group splits it into cyclic and matrix
pieces: a large cyclic head is handled by reduction to sequence
convolution, otherwise the group is cut into two halves and the
convolution becomes one rectangular (min, +) matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, prod

from .errors import DimensionError, GroupMismatchError
from .groups import AbelianGroupSpec, g_enumerate, g_index

__all__ = [
    "INF",
    "GroupMap",
    "NAIVE",
    "BLOCKED",
    "MinPlusBackend",
    "conv_naive",
    "minplus_matmul",
    "rect_minplus_matmul",
    "seq_conv",
    "conv_cyclic",
    "conv_decomposed",
    "conv_group",
    "group_identity",
]


class _PlusInf:
    """The tropical zero: neutral for ``min``, absorbing for ``+``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("+inf")

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_PlusInf, ())


INF = _PlusInf()


@dataclass(frozen=True)
class GroupMap:
    group: AbelianGroupSpec
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.group.size:
            raise DimensionError(f"map has {len(self.values)} values, group has {self.group.size} elements")

    def __getitem__(self, g):
        return self.values[g_index(self.group, g)]

    @classmethod
    def from_function(cls, G, f):
        return cls(G, [f(g) for g in g_enumerate(G)])


def group_identity(G):
    """Unit of the group ring: 0 at the neutral element, INF elsewhere."""
    return GroupMap(G, [0] + [INF] * (G.size - 1))


# ---------------------------------------------------------------- matrices


def _mm_naive(A, B):
    n = len(B)
    t = len(B[0]) if n else 0
    out = []
    for row in A:
        r = []
        for j in range(t):
            best = INF
            for k in range(n):
                a = row[k]
                if a is INF:
                    continue
                b = B[k][j]
                if b is INF:
                    continue
                s = a + b
                if best is INF or s < best:
                    best = s
            r.append(best)
        out.append(r)
    return out


def _mm_blocked(A, B, tile=16):
    """Same product as the naive kernel, accumulated tile by tile."""
    m = len(A)
    n = len(B)
    t = len(B[0]) if n else 0
    out = [[INF] * t for _ in range(m)]
    for k0 in range(0, n, tile):
        ks = range(k0, min(n, k0 + tile))
        for i in range(m):
            row = A[i]
            acc = out[i]
            for k in ks:
                a = row[k]
                if a is INF:
                    continue
                Bk = B[k]
                for j in range(t):
                    b = Bk[j]
                    if b is INF:
                        continue
                    s = a + b
                    c = acc[j]
                    if c is INF or s < c:
                        acc[j] = s
    return out


@dataclass(frozen=True)
class MinPlusBackend:
    name: str
    kernel: object

    def __call__(self, A, B):
        return self.kernel(A, B)


NAIVE = MinPlusBackend("naive", _mm_naive)
BLOCKED = MinPlusBackend("blocked", _mm_blocked)
_BACKENDS = {"naive": NAIVE, "blocked": BLOCKED}


def get_backend(backend):
    if backend is None:
        return NAIVE
    if isinstance(backend, MinPlusBackend):
        return backend
    try:
        return _BACKENDS[backend]
    except KeyError:
        raise ValueError(f"unknown backend {backend!r}") from None


def minplus_matmul(A, B, backend=None):
    if not A or not B:
        raise DimensionError("empty matrix")
    if len(A[0]) != len(B):
        raise DimensionError(f"inner dimensions differ: {len(A[0])} vs {len(B)}")
    return get_backend(backend)(A, B)


def _tmin(x, y):
    if x is INF:
        return y
    if y is INF:
        return x
    return x if x <= y else y


def rect_minplus_matmul(A, B, backend=None, block=None):
    """Product of an ``m x n`` by an ``n x t`` matrix via ``n / t`` block products.

    ``A`` is cut into column blocks of width ``t`` and ``B`` into row blocks
    of height ``t``; the last block is padded with INF.  The answer is the
    elementwise minimum of the block products.
    """
    if not A or not B:
        raise DimensionError("empty matrix")
    m, n = len(A), len(A[0])
    if n != len(B):
        raise DimensionError(f"inner dimensions differ: {n} vs {len(B)}")
    t = len(B[0])
    w = block if block is not None else max(1, min(t, n))
    kernel = get_backend(backend)
    out = None
    for k0 in range(0, n, w):
        k1 = k0 + w
        Ak = [row[k0:k1] + [INF] * max(0, k1 - n) for row in A]
        Bk = B[k0:k1] + [[INF] * t for _ in range(max(0, k1 - n))]
        Ck = kernel(Ak, Bk)
        if out is None:
            out = Ck
        else:
            out = [[_tmin(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(out, Ck)]
    return out


# -------------------------------------------------------------- sequences


def seq_conv(a, b, backend=None):
    """``c_k = min_{i+j=k} a_i + b_j`` for equal-length sequences.

    With ``L = ceil(sqrt(n))`` write ``k = u L + w`` and ``i = (u - d) L + i0``;
    then for each block offset ``d`` the terms form a product of an
    ``(rows x L)`` matrix ``X_d[u][i0] = a_{(u-d)L+i0}`` and an ``L x L``
    matrix ``Y_d[i0][w] = b_{dL+w-i0}``.
    """
    n = len(a)
    if n != len(b):
        raise DimensionError("sequences must have equal length")
    if n == 0:
        return []
    L = isqrt(n - 1) + 1
    out_len = 2 * n - 1
    rows = -(-out_len // L)

    def at(seq, i):
        return seq[i] if 0 <= i < n else INF

    c = [INF] * (rows * L)
    for d in range(0, -(-n // L) + 1):
        X = [[at(a, (u - d) * L + i0) for i0 in range(L)] for u in range(rows)]
        if all(x is INF for row in X for x in row):
            continue
        Y = [[at(b, d * L + w - i0) for w in range(L)] for i0 in range(L)]
        C = rect_minplus_matmul(X, Y, backend)
        for u in range(rows):
            base = u * L
            Cu = C[u]
            for w in range(L):
                c[base + w] = _tmin(c[base + w], Cu[w])
    return c[:out_len]


# ----------------------------------------------------------------- groups


def conv_naive(G, alpha, beta):
    """Reference double loop: ``gamma(x) = min_g alpha(g) + beta(x - g)``."""
    av, bv = _values(G, alpha), _values(G, beta)
    elems = g_enumerate(G)
    idx = {g: i for i, g in enumerate(elems)}
    orders = G.orders
    out = [INF] * G.size
    for i, g in enumerate(elems):
        a = av[i]
        if a is INF:
            continue
        for j, h in enumerate(elems):
            b = bv[j]
            if b is INF:
                continue
            x = idx[tuple((p + q) % m for p, q, m in zip(g, h, orders))]
            s = a + b
            if out[x] is INF or s < out[x]:
                out[x] = s
    return GroupMap(G, out)


def _values(G, alpha):
    if isinstance(alpha, GroupMap):
        if alpha.group.orders != G.orders:
            raise GroupMismatchError(f"map over {alpha.group.orders}, expected {G.orders}")
        return list(alpha.values)
    vals = list(alpha)
    if len(vals) != G.size:
        raise DimensionError(f"map has {len(vals)} values, group has {G.size} elements")
    return vals


def conv_cyclic(G, alpha, beta, backend=None):
    """Cyclic group: pad to length ``2n`` and read ``gamma(j) = hat_gamma[n + j]``."""
    if G.rank > 1:
        raise ValueError("conv_cyclic needs a cyclic group")
    av, bv = _values(G, alpha), _values(G, beta)
    n = G.size
    if n == 1:
        return GroupMap(G, [av[0] + bv[0]])
    ahat = av + av
    bhat = bv + [INF] * n
    ghat = seq_conv(ahat, bhat, backend)
    return GroupMap(G, ghat[n : 2 * n])


def conv_decomposed(Q, H, alpha, beta, kernel=None, backend=None):
    """Convolution over ``Q (+) H`` using a convolution kernel on ``Q``.

    For every fixed ``h*``: ``gamma(q + h*) = min_h (hat_alpha_h * hat_beta_h)(q)``
    with ``hat_alpha_h(q) = alpha(q + h* - h)`` and ``hat_beta_h(q) = beta(q + h)``.
    """
    G = AbelianGroupSpec(Q.orders + H.orders)
    av, bv = _values(G, alpha), _values(G, beta)
    nq, nh = Q.size, H.size
    if kernel is None:
        kernel = conv_cyclic if Q.rank <= 1 else conv_naive
    helems = g_enumerate(H)
    hidx = {h: i for i, h in enumerate(helems)}

    def col(vals, ih):
        return [vals[iq * nh + ih] for iq in range(nq)]

    bhat = [col(bv, ih) for ih in range(nh)]
    out = [INF] * G.size
    for hs, hstar in enumerate(helems):
        best = [INF] * nq
        for ih, h in enumerate(helems):
            if all(x is INF for x in bhat[ih]):
                continue
            shift = hidx[tuple((a - b) % m for a, b, m in zip(hstar, h, H.orders))]
            ahat = col(av, shift)
            if all(x is INF for x in ahat):
                continue
            if kernel is conv_naive:
                g = kernel(Q, ahat, bhat[ih]).values
            else:
                g = kernel(Q, ahat, bhat[ih], backend).values
            best = [_tmin(x, y) for x, y in zip(best, g)]
        for iq in range(nq):
            out[iq * nh + hs] = best[iq]
    return GroupMap(G, out)


def _case_split(orders):
    """Smallest ``k`` with ``r_1 ... r_k >= sqrt(n)`` (orders sorted descending)."""
    n = prod(orders)
    p = 1
    for k, r in enumerate(orders, start=1):
        p *= r
        if p * p >= n:
            return k
    return len(orders)


def conv_group(G, alpha, beta, backend=None):
    """Fast (min, +) convolution over any finite Abelian group."""
    av, bv = _values(G, alpha), _values(G, beta)
    if G.size == 1:
        return GroupMap(G, [av[0] + bv[0]])
    # drop trivial factors and sort the rest by decreasing order
    keep = [j for j, m in enumerate(G.orders) if m > 1]
    perm = sorted(keep, key=lambda j: -G.orders[j])
    S = AbelianGroupSpec(tuple(G.orders[j] for j in perm))
    src = g_enumerate(G)
    to_sorted = [g_index(S, tuple(g[j] for j in perm)) for g in src]
    a2 = [INF] * S.size
    b2 = [INF] * S.size
    for i, si in enumerate(to_sorted):
        a2[si] = av[i]
        b2[si] = bv[i]
    res = _conv_sorted(S, a2, b2, backend)
    return GroupMap(G, [res[si] for si in to_sorted])


def _conv_sorted(S, av, bv, backend):
    k = _case_split(S.orders)
    if S.rank == 1:
        return list(conv_cyclic(S, av, bv, backend).values)
    if k == 1:
        Q = AbelianGroupSpec(S.orders[:1])
        H = AbelianGroupSpec(S.orders[1:])
        return list(conv_decomposed(Q, H, av, bv, conv_cyclic, backend).values)
    Q = AbelianGroupSpec(S.orders[: k - 1])
    H = AbelianGroupSpec(S.orders[k - 1 :])
    return _conv_matrix(S, Q, H, av, bv, backend)


def _conv_matrix(S, Q, H, av, bv, backend):
    """``(A B)_{q,h} = min_g alpha(q - g) + beta(h + g) = gamma(q + h)``."""
    elems = g_enumerate(S)
    idx = {g: i for i, g in enumerate(elems)}
    orders = S.orders
    nh = H.size
    qel = [q + (0,) * H.rank for q in g_enumerate(Q)]
    hel = [(0,) * Q.rank + h for h in g_enumerate(H)]
    A = [[av[idx[tuple((x - y) % m for x, y, m in zip(q, g, orders))]] for g in elems] for q in qel]
    Bt = [[bv[idx[tuple((x + y) % m for x, y, m in zip(h, g, orders))]] for g in elems] for h in hel]
    # |Q| <= |H| <= |S|: multiply B^T (|H| x n) by A^T (n x |Q|) in |Q|-wide blocks
    At = [list(col) for col in zip(*A)]
    Ct = rect_minplus_matmul(Bt, At, backend, block=len(qel))
    out = [INF] * S.size
    for ih in range(nh):
        row = Ct[ih]
        for iq in range(len(qel)):
            out[iq * nh + ih] = row[iq]
    return out
