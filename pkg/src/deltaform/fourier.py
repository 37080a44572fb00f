"""Discrete Fourier transforms over finite Abelian groups in exact arithmetic.

All numbers are rational complex numbers.  The transforms never compute
an exact irrational value; instead each step rounds onto a rational grid
and a matching rational error bound is carried alongside, so every
claimed accuracy is an inequality between rationals.

Convention: the forward transform of ``v`` of length ``n`` is
``hat v_k = sum_j v_j * e^{2 pi i jk/n}`` (matrix ``V_n``), and over a
group ``hat a(t) = sum_g a(g) chi_t(g)`` with
``chi_t(g) = prod_j e^{2 pi i t_j g_j / m_j}``.  The inverse is
``a(g) = (1/n) sum_t hat a(t) conj(chi_t(g))``.

Internally a vector lives on the grid ``(1/q) Z[i]`` with
``q = 2 ceil(1/eps)``: rounding a value ``x`` means ``floor(x q) / q`` in
each part, an error below ``1/q`` per part.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

import numpy as np

from .errors import DimensionError, PrecisionExhaustedError
from .groups import AbelianGroupSpec, g_enumerate, g_index

__all__ = [
    "RatComplex",
    "RootTable",
    "Transform",
    "approx_rat",
    "approx_cplx",
    "approx_sum",
    "pi_bounds",
    "root_table",
    "approx_ct",
    "ct_error_bound",
    "cyclic_dft",
    "abelian_dft",
    "abelian_idft",
    "naive_dft",
    "naive_group_dft",
    "bool_conv",
    "bool_conv_naive",
    "BoolConvReport",
    "C1",
    "C2",
]

# Exponents for the documented bounds ``n^C1 * eps`` (cyclic transform of
# inputs with |v_j| <= 1) and ``n^C2 * eps`` (group transform).  Both are
# checked against the certified bound at run time.
C1 = 5
C2 = 5


@dataclass(frozen=True)
class RatComplex:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, o):
        o = _as_rc(o)
        return RatComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _as_rc(o)
        return RatComplex(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        o = _as_rc(o)
        return RatComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return RatComplex(-self.re, -self.im)

    def conj(self):
        return RatComplex(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def within(self, other, bound):
        """``|self - other| <= bound``, decided exactly."""
        d = self - other
        return d.abs2() <= Fraction(bound) ** 2

    def size(self):
        """Encoding size: bit lengths of the four integers involved."""
        return sum(x.bit_length() + 1 for x in (self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator))


def _as_rc(x):
    if isinstance(x, RatComplex):
        return x
    if isinstance(x, complex):
        raise TypeError("floating complex values are not accepted")
    return RatComplex(Fraction(x), Fraction(0))


# ---------------------------------------------------------------- rounding


def _grid(eps):
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    return -((-1 * eps.denominator) // eps.numerator)  # ceil(1/eps)


def approx_rat(a, eps):
    """``p/q`` with ``q = ceil(1/eps)`` and ``p = floor(a q)``; ``|a - p/q| < eps``.

    >>> approx_rat(Fraction(1, 3), Fraction(1, 10))
    Fraction(3, 10)
    """
    q = _grid(eps)
    a = Fraction(a)
    return Fraction((a.numerator * q) // a.denominator, q)


def approx_cplx(c, eps):
    """Round each part at ``eps/2``, so ``|c - z| < eps``."""
    c = _as_rc(c)
    half = Fraction(eps) / 2
    return RatComplex(approx_rat(c.re, half), approx_rat(c.im, half))


def approx_sum(terms, eps):
    """Running sum, rounding step ``j`` (1-based) of ``m`` at ``eps / 2^(m-j+1)``."""
    terms = [_as_rc(t) for t in terms]
    m = len(terms)
    s = RatComplex()
    eps = Fraction(eps)
    for j, t in enumerate(terms, start=1):
        s = approx_cplx(s + t, eps / 2 ** (m - j + 1))
    return s


# ----------------------------------------------------------- roots of unity


def _atan_inv(x, bits):
    """``atan(1/x) * 2^bits`` in fixed point, with an error bound in ulps."""
    one = 1 << bits
    power = one // x
    total = power
    x2 = x * x
    j = 0
    sign = 1
    while power:
        j += 1
        power //= x2
        sign = -sign
        total += sign * (power // (2 * j + 1))
    return total, 3 * j + 3


def pi_bounds(bits):
    """Fixed-point ``pi * 2^bits`` from Machin's formula and its error in ulps."""
    a, ea = _atan_inv(5, bits)
    b, eb = _atan_inv(239, bits)
    return 16 * a - 4 * b, 16 * ea + 4 * eb


def _cos_sin_small(theta, bits):
    """Taylor series for ``cos`` and ``sin`` at ``0 <= theta < 1`` (fixed point).

    Returns ``(C, S, err)`` with both parts within ``err`` ulps.
    """
    one = 1 << bits
    term = one
    C = one
    S = 0
    j = 0
    while term:
        j += 1
        term = (term * theta) // (j * one)
        r = j % 4
        if r == 1:
            S += term
        elif r == 2:
            C -= term
        elif r == 3:
            S -= term
        else:
            C += term
    # j terms, each off by at most j ulps, plus a tail below 2 (j + 1) ulps
    return C, S, j * j + 2 * j + 2


_ROOT_CACHE = {}


def _root_numerators(order, qr, bits):
    """Rounded ``e^{2 pi i k/order}`` for all ``k`` on grid ``1/qr`` plus the radius."""
    key = (order, qr, bits)
    hit = _ROOT_CACHE.get(key)
    if hit is not None:
        return hit
    PI, epi = pi_bounds(bits + 4)
    one = 1 << bits
    re = [0] * order
    im = [0] * order
    worst = 0
    for k in range(order):
        # exact reduction: quarter turn index and residual fraction in [0, 1/4)
        num = 4 * k
        quarter, rem = divmod(num, order)
        flip = 2 * rem > order  # residual angle above pi/4: use the complement
        if flip:
            rem = order - rem
        # theta = (pi/2) * rem / order, fixed point with 4 guard bits dropped
        theta = (PI * rem) // (2 * order * 16)
        c, s, err = _cos_sin_small(theta, bits)
        # theta error: pi error scaled by rem/(2 order) <= 1/4, plus floor
        terr = -(-epi // 64) + 1
        worst = max(worst, 2 * err + terr)
        if flip:
            c, s = s, c
        for _ in range(quarter % 4):
            c, s = -s, c
        re[k] = (c * qr) >> bits
        im[k] = (s * qr) >> bits
    # modulus error: 2 * worst ulps of high-precision error plus grid rounding
    radius = Fraction(worst, one) + Fraction(3, 2 * qr)
    out = (re, im, radius)
    _ROOT_CACHE[key] = out
    return out


@dataclass(frozen=True)
class RootTable:
    """Approximate ``e^{2 pi i k / n}`` for ``k`` in ``[0, n)``.

    Entries are integers ``re[k] / q`` and ``im[k] / q``; every entry is
    within ``radius`` of the true root and ``radius <= eps_prime``.
    """

    n: int
    eps_prime: Fraction
    q: int
    re: tuple
    im: tuple
    radius: Fraction

    def root(self, j, k):
        """Approximation of ``e^{2 pi i k / j}`` for ``j`` dividing ``n``."""
        if self.n % j:
            raise ValueError(f"order {j} does not divide table order {self.n}")
        idx = (k * (self.n // j)) % self.n
        return RatComplex(Fraction(self.re[idx], self.q), Fraction(self.im[idx], self.q))


def _bits_for(eps):
    eps = Fraction(eps)
    return max(16, (eps.denominator // eps.numerator).bit_length() + 16)


def root_table(n, eps):
    """Certified roots of unity of order ``n``.

    Sub-orders ``j | n`` are read off as ``c_{j,k} = c_{n, k n / j}``.
    """
    if n < 1:
        raise ValueError("order must be positive")
    eps = Fraction(eps)
    qr = 2 * _grid(eps)
    bits = _bits_for(eps)
    while True:
        re, im, radius = _root_numerators(n, qr, bits)
        if radius <= eps:
            break
        bits += 16
    return RootTable(n, eps, qr, tuple(re), tuple(im), radius)


# ------------------------------------------------------ Cooley-Tukey (2^s)


def ct_error_bound(N, M, d_in, dr, q):
    """Certified bound for :func:`approx_ct` on length ``N``.

    ``M`` bounds the exact inputs, ``d_in`` their perturbation, ``dr`` the
    root radius and ``q`` the working grid.  Per butterfly:
    ``E(2h) = (2 + dr) E(h) + dr h M + 3/(2q)``.
    """
    r = Fraction(3, 2 * q)
    E = Fraction(d_in)
    h = 1
    while h < N:
        E = (2 + dr) * E + dr * h * M + r
        h *= 2
    return E


def _is_pow2(n):
    return n >= 1 and n & (n - 1) == 0


def _ct_lines(Xr, Xi, q, table):
    """Radix-2 transform of every row of ``Xr + i Xi`` (object arrays of numerators)."""
    L, N = Xr.shape
    if N == 1:
        return Xr.copy(), Xi.copy()
    bitsN = N.bit_length() - 1
    rev = [int(format(i, f"0{bitsN}b")[::-1], 2) for i in range(N)]
    xr = Xr[:, rev].copy()
    xi = Xi[:, rev].copy()
    tq = table.q
    step_base = table.n // N
    h = 1
    while h < N:
        stride = step_base * (N // (2 * h))
        cr = np.array([table.re[j * stride] for j in range(h)], dtype=object)
        ci = np.array([table.im[j * stride] for j in range(h)], dtype=object)
        # pairs (s, s + h) with s = block * 2h + j
        Vr = xr.reshape(L, N // (2 * h), 2, h)
        Vi = xi.reshape(L, N // (2 * h), 2, h)
        ar, ai = Vr[:, :, 1, :], Vi[:, :, 1, :]
        tr = (ar * cr - ai * ci) // tq
        ti = (ar * ci + ai * cr) // tq
        er, ei = Vr[:, :, 0, :].copy(), Vi[:, :, 0, :].copy()
        Vr[:, :, 0, :] = er + tr
        Vi[:, :, 0, :] = ei + ti
        Vr[:, :, 1, :] = er - tr
        Vi[:, :, 1, :] = ei - ti
        h *= 2
    return xr, xi


def _rows(v):
    X = np.empty((1, len(v)), dtype=object)
    X[0, :] = list(v)
    return X


def _ct_fixed(re, im, q, table):
    """Radix-2 transform of one vector of numerators on grid ``1/q``."""
    xr, xi = _ct_lines(_rows(re), _rows(im), q, table)
    return list(xr[0]), list(xi[0])


def _to_grid(v, q):
    re, im = [], []
    d = Fraction(0)
    for x in v:
        x = _as_rc(x)
        pr = (x.re.numerator * q) // x.re.denominator
        pi_ = (x.im.numerator * q) // x.im.denominator
        re.append(pr)
        im.append(pi_)
        if Fraction(pr, q) != x.re or Fraction(pi_, q) != x.im:
            d = Fraction(3, 2 * q)
    return re, im, d


def _from_grid(re, im, q):
    return [RatComplex(Fraction(a, q), Fraction(b, q)) for a, b in zip(re, im)]


@dataclass(frozen=True)
class Transform:
    values: tuple
    bound: Fraction


def approx_ct(v, eps, roots=None, M=None):
    """Radix-2 DFT of a length ``2^s`` vector with per-butterfly rounding at ``eps``.

    The certified error against the exact ``V_N v`` is returned as
    ``Transform.bound``; with the default root accuracy it is below
    ``5^s eps``.
    """
    N = len(v)
    if not _is_pow2(N):
        raise DimensionError(f"length {N} is not a power of two")
    q = 2 * _grid(eps)
    if M is None:
        M = max((_abs_upper(_as_rc(x)) for x in v), default=Fraction(0))
    M = max(Fraction(M), Fraction(1))
    if roots is None:
        roots = root_table(N, Fraction(eps) / (4 * N * _ceil(M)))
    re, im, d_in = _to_grid(v, q)
    xr, xi = _ct_fixed(re, im, q, roots)
    bound = ct_error_bound(N, M, d_in, roots.radius, q)
    return Transform(tuple(_from_grid(xr, xi, q)), bound)


def _ceil(x):
    x = Fraction(x)
    return -((-x.numerator) // x.denominator)


def _abs_upper(z):
    """A rational upper bound on ``|z|`` (``|re| + |im|``)."""
    return abs(z.re) + abs(z.im)


# ------------------------------------------------------ Bluestein (any n)


class _Engine:
    """Shared grid and root tables for a batch of transforms."""

    def __init__(self, eps, dr):
        self.q = 2 * _grid(eps)
        self.dr = Fraction(dr)
        self._tables = {}
        self._bounds = {}
        self._chirps = {}

    def table(self, order):
        t = self._tables.get(order)
        if t is None:
            t = root_table(order, self.dr)
            self._tables[order] = t
        return t

    def cyclic(self, re, im, M, d_in):
        """Transform numerators of one length-``n`` vector; returns ``(re, im, bound)``."""
        xr, xi = self.lines(_rows(re), _rows(im))
        return list(xr[0]), list(xi[0]), self.bound(len(re), M, d_in)

    def lines(self, Xr, Xi):
        """Transform every row; the error bound is :meth:`bound` for each row."""
        n = Xr.shape[1]
        if n == 1:
            return Xr.copy(), Xi.copy()
        if _is_pow2(n):
            return _ct_lines(Xr, Xi, self.q, self.table(n))
        if n <= _DIRECT_MAX:
            return self._direct(Xr, Xi)
        return self._bluestein(Xr, Xi)

    def bound(self, n, M, d_in):
        """Certified error of :meth:`cyclic`; depends only on ``(n, M, d_in)``."""
        key = (n, M, d_in)
        e = self._bounds.get(key)
        if e is None:
            e = self._bound(n, Fraction(M), Fraction(d_in))
            self._bounds[key] = e
        return e

    def _bound(self, n, M, d_in):
        q = self.q
        r = Fraction(3, 2 * q)
        if n == 1:
            return d_in
        if _is_pow2(n):
            return ct_error_bound(n, M, d_in, self.table(n).radius, q)
        if n <= _DIRECT_MAX:
            # n products, each off by |dv||w| + |v||dw| plus one rounding
            dr = self.table(n).radius
            return n * (d_in * (1 + dr) + M * dr + r)
        N = _bluestein_len(n)
        dr, dr2 = self.table(2 * n).radius, self.table(N).radius
        e_a = (M + d_in) * dr + d_in + r
        e_b = dr + r
        e_A = ct_error_bound(N, M, e_a, dr2, q)
        e_B = ct_error_bound(N, 1, e_b, dr2, q)
        magA = n * M
        magB = Fraction(2 * n - 1)
        e_p = (magA + e_A) * e_B + magB * e_A + r
        e_C = ct_error_bound(N, magA * magB, e_p, dr2, q)
        e_psi = e_C / N + r
        return (magA + e_psi) * dr + e_psi + r

    def _direct(self, Xr, Xi):
        n = Xr.shape[1]
        T = self.table(n)
        tq = T.q
        Or = np.empty_like(Xr)
        Oi = np.empty_like(Xi)
        for k in range(n):
            sr = si = 0
            for j in range(n):
                e = (j * k) % n
                cr, ci = T.re[e], T.im[e]
                sr = sr + (Xr[:, j] * cr - Xi[:, j] * ci) // tq
                si = si + (Xr[:, j] * ci + Xi[:, j] * cr) // tq
            Or[:, k], Oi[:, k] = sr, si
        return Or, Oi

    def _bluestein(self, Xr, Xi):
        L, n = Xr.shape
        q = self.q
        N = _bluestein_len(n)
        R = self.table(2 * n)
        T = self.table(N)
        tq = R.q
        two_n = 2 * n
        chirp = self._chirps.get(n)
        if chirp is None:
            br, bi = [0] * N, [0] * N
            for j in range(n):
                e = (-j * j) % two_n
                br[j] = (R.re[e] * q) // tq
                bi[j] = (R.im[e] * q) // tq
                if j:
                    # position N - n + j holds b_{j-n} = (-1)^n b_j
                    s = -1 if n % 2 else 1
                    br[N - n + j] = s * br[j]
                    bi[N - n + j] = s * bi[j]
            Br, Bi = _ct_lines(_rows(br), _rows(bi), q, T)
            chirp = (Br[0], Bi[0])
            self._chirps[n] = chirp
        Br, Bi = chirp
        up = np.array([R.re[(j * j) % two_n] for j in range(n)], dtype=object)
        ui = np.array([R.im[(j * j) % two_n] for j in range(n)], dtype=object)
        Ar = np.zeros((L, N), dtype=object)
        Ai = np.zeros((L, N), dtype=object)
        Ar[:, :n] = (Xr * up - Xi * ui) // tq
        Ai[:, :n] = (Xr * ui + Xi * up) // tq
        Ar, Ai = _ct_lines(Ar, Ai, q, T)
        Pr = (Ar * Br - Ai * Bi) // q
        Pi = (Ar * Bi + Ai * Br) // q
        Cr, Ci = _ct_lines(Pr, Pi, q, T)
        # applying V_N twice reverses indices and scales by N
        idx = [(-k) % N for k in range(n)]
        Sr = Cr[:, idx] // N
        Si = Ci[:, idx] // N
        return (Sr * up - Si * ui) // tq, (Sr * ui + Si * up) // tq


_DIRECT_MAX = 16


def _bluestein_len(n):
    N = 1
    while N < 2 * n:
        N *= 2
    return N


def _default_dr(eps, n, M):
    N = _bluestein_len(n)
    return Fraction(eps) / (8 * N * _ceil(max(Fraction(M), Fraction(1))))


def cyclic_dft(v, eps):
    """Length-``n`` DFT via Bluestein's chirp reduction to three radix-2 transforms.

    ``2jk = j^2 + k^2 - (k - j)^2`` turns ``V_n v`` into a convolution of
    ``a_j = v_j w^{j^2}`` with ``b_m = w^{-m^2}`` (``w = e^{pi i / n}``),
    evaluated on a power-of-two length ``N >= 2n``.  Power-of-two ``n``
    goes straight to the radix-2 transform.
    """
    n = len(v)
    if n == 0:
        raise DimensionError("empty vector")
    if n == 1:
        return Transform((_as_rc(v[0]),), Fraction(0))
    M = max(max(_abs_upper(_as_rc(x)) for x in v), Fraction(1))
    work = Fraction(eps) / _ceil(M)
    eng = _Engine(work, _default_dr(work, n, M))
    re, im, d_in = _to_grid(v, eng.q)
    xr, xi, bound = eng.cyclic(re, im, M, d_in)
    return Transform(tuple(_from_grid(xr, xi, eng.q)), bound)


# ---------------------------------------------------------- Abelian groups


def _group_pass(eng, G, re, im, M, d_in):
    """Transform along each cyclic factor in turn, last factor first.

    The bound composes as for a nested transform: the pass along factor
    ``j`` sees inputs bounded by ``M`` times the product of the later orders.
    """
    orders = tuple(G.orders)
    if not orders:
        return list(re), list(im), Fraction(d_in)
    Xr = np.empty(len(re), dtype=object)
    Xi = np.empty(len(im), dtype=object)
    Xr[:] = list(re)
    Xi[:] = list(im)
    Xr, Xi = Xr.reshape(orders), Xi.reshape(orders)
    for ax in reversed(range(len(orders))):
        m = orders[ax]
        if m == 1:
            continue
        Yr = np.moveaxis(Xr, ax, -1)
        shape = Yr.shape
        Zr, Zi = eng.lines(Yr.reshape(-1, m), np.moveaxis(Xi, ax, -1).reshape(-1, m))
        Xr = np.moveaxis(Zr.reshape(shape), -1, ax)
        Xi = np.moveaxis(Zi.reshape(shape), -1, ax)
    return list(Xr.ravel()), list(Xi.ravel()), _group_bound(eng, G, M, d_in)


def _group_bound(eng, G, M, d_in):
    """The bound :func:`_group_pass` certifies, without transforming anything."""
    if not G.orders:
        return Fraction(d_in)
    Q = AbelianGroupSpec(G.orders[1:])
    return eng.bound(G.orders[0], M * Q.size, _group_bound(eng, Q, M, d_in))


def _group_values(G, alpha):
    vals = list(alpha.values) if hasattr(alpha, "values") else list(alpha)
    if len(vals) != G.size:
        raise DimensionError(f"map has {len(vals)} values, group has {G.size} elements")
    return [_as_rc(x) for x in vals]


def _group_engine(G, M, eps):
    n = G.size
    big = max(G.orders, default=1)
    return _Engine(Fraction(eps) / max(1, n), _default_dr(Fraction(eps) / max(1, n), big, M * n))


def abelian_dft(G, alpha, eps):
    """``hat alpha(t) = sum_g alpha(g) chi_t(g)`` with a certified bound."""
    vals = _group_values(G, alpha)
    M = max(max((_abs_upper(x) for x in vals), default=Fraction(0)), Fraction(1))
    eng = _group_engine(G, M, eps)
    re, im, d_in = _to_grid(vals, eng.q)
    xr, xi, bound = _group_pass(eng, G, re, im, M, d_in)
    return Transform(tuple(_from_grid(xr, xi, eng.q)), bound)


@lru_cache(maxsize=64)
def _negate_index(G):
    elems = g_enumerate(G)
    return [g_index(G, tuple((-x) % m for x, m in zip(g, G.orders))) for g in elems]


def abelian_idft(G, hat, eps):
    """``alpha(g) = (1/n) sum_t hat(t) conj(chi_t(g))``: forward transform read at ``-g``."""
    vals = _group_values(G, hat)
    n = G.size
    M = max(max((_abs_upper(x) for x in vals), default=Fraction(0)), Fraction(1))
    eng = _group_engine(G, M, eps)
    re, im, d_in = _to_grid(vals, eng.q)
    xr, xi, bound = _group_pass(eng, G, re, im, M, d_in)
    neg = _negate_index(G)
    out = [RatComplex(Fraction(xr[neg[i]], eng.q * n), Fraction(xi[neg[i]], eng.q * n)) for i in range(n)]
    return Transform(tuple(out), bound / n)


# ------------------------------------------------------------------ oracles


def naive_dft(v, eps_roots):
    """Direct ``O(n^2)`` sum with roots at accuracy ``eps_roots``, summed exactly.

    Returns the transform and its certified slack ``sum_j |v_j| * radius``.
    """
    n = len(v)
    vals = [_as_rc(x) for x in v]
    T = root_table(n, eps_roots)
    out = []
    for k in range(n):
        s = RatComplex()
        for j, x in enumerate(vals):
            s = s + x * T.root(n, j * k)
        out.append(s)
    slack = sum((_abs_upper(x) for x in vals), Fraction(0)) * T.radius
    return Transform(tuple(out), slack)


def naive_group_dft(G, alpha, eps_roots):
    """Character sum oracle over ``G`` with roots of order ``lcm`` of the factors."""
    from math import lcm

    vals = _group_values(G, alpha)
    L = lcm(*G.orders) if G.orders else 1
    T = root_table(L, eps_roots)
    elems = g_enumerate(G)
    out = []
    for t in elems:
        s = RatComplex()
        for g, x in zip(elems, vals):
            if x.re == 0 and x.im == 0:
                continue
            e = sum(L // m * ti * gi for ti, gi, m in zip(t, g, G.orders))
            s = s + x * T.root(L, e)
        out.append(s)
    nz = sum((_abs_upper(x) for x in vals), Fraction(0))
    # product of characters is evaluated as a single root: one radius per term
    return Transform(tuple(out), nz * T.radius)


# ------------------------------------------------------- Boolean convolution


@dataclass(frozen=True)
class BoolConvReport:
    values: tuple
    eps: Fraction
    bound: Fraction
    margin: Fraction
    attempts: int


def bool_conv_naive(G, alpha, beta):
    a = [bool(x) for x in (alpha.values if hasattr(alpha, "values") else alpha)]
    b = [bool(x) for x in (beta.values if hasattr(beta, "values") else beta)]
    elems = g_enumerate(G)
    idx = {g: i for i, g in enumerate(elems)}
    out = [False] * G.size
    for i, g in enumerate(elems):
        if not a[i]:
            continue
        for j, h in enumerate(elems):
            if b[j]:
                out[idx[tuple((x + y) % m for x, y, m in zip(g, h, G.orders))]] = True
    return tuple(out)


def bool_conv(G, alpha, beta, retries=3, report=False):
    """Exact Boolean convolution through the group DFT and rounding.

    The 0/1 maps are convolved in ``Z[G]`` via ``idft(dft(a) * dft(b))``;
    every output is then rounded to the nearest integer.  Rounding is
    accepted only when the certified error and the measured distance to
    the nearest integer are both at most 1/3.  Otherwise ``eps`` is
    squared and the transform repeated.
    """
    a = [int(bool(x)) for x in (alpha.values if hasattr(alpha, "values") else alpha)]
    b = [int(bool(x)) for x in (beta.values if hasattr(beta, "values") else beta)]
    n = G.size
    if len(a) != n or len(b) != n:
        raise DimensionError("map sizes differ from the group order")
    if not any(a) or not any(b):
        res = BoolConvReport(tuple([False] * n), Fraction(0), Fraction(0), Fraction(0), 0)
        return res if report else res.values
    eps = Fraction(1, max(2, n) ** 4)
    third = Fraction(1, 3)
    # convolve over the isomorphic sum of prime-power cyclic groups
    P, to_p = _primary_split(G)
    ap, bp = [0] * n, [0] * n
    for i, j in enumerate(to_p):
        ap[j], bp[j] = a[i], b[i]
    for attempt in range(1, retries + 2):
        bound = _int_conv_bound(P, eps)
        if bound > third:
            # the certificate would fail anyway; skip the transform
            eps = eps * eps
            continue
        nums, den, bound = _int_conv_dft(P, ap, bp, eps)
        near = [(2 * c + den) // (2 * den) for c in nums]
        margin = Fraction(max(abs(c - r * den) for c, r in zip(nums, near)), den)
        if bound <= third and margin <= third:
            vals = tuple(near[j] > 0 for j in to_p)
            res = BoolConvReport(vals, eps, bound, margin, attempt)
            return res if report else res.values
        eps = eps * eps
    raise PrecisionExhaustedError(f"rounding not certified after {retries} retries (bound {float(bound):.3g})")


def _prime_powers(m):
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            out.append(q)
        p += 1
    if m > 1:
        out.append(m)
    return out


@lru_cache(maxsize=64)
def _primary_split(G):
    """``Z_m -> (+)_p Z_{p^a}`` by the Chinese remainder theorem, factorwise.

    Returns the new group and, for each index of ``G``, its index there.
    """
    parts = [_prime_powers(m) for m in G.orders]
    P = AbelianGroupSpec(tuple(q for ps in parts for q in ps))
    to_p = [g_index(P, tuple(x % q for x, ps in zip(g, parts) for q in ps)) for g in g_enumerate(G)]
    return P, to_p


def _int_conv_bound(G, eps):
    n = G.size
    eng = _group_engine(G, Fraction(n * n), eps)
    eA = _group_bound(eng, G, Fraction(1), Fraction(0))
    e_p = (n + eA) * eA + n * eA + Fraction(3, 2 * eng.q)
    return _group_bound(eng, G, Fraction(n * n), e_p) / n


def _int_conv_dft(G, a, b, eps):
    n = G.size
    # |hat a|, |hat b| <= n; product <= n^2; counts <= n
    eng = _group_engine(G, Fraction(n * n), eps)
    q = eng.q
    ar = [x * q for x in a]
    br = [x * q for x in b]
    zero = [0] * n
    Ar, Ai, eA = _group_pass(eng, G, ar, zero, Fraction(1), Fraction(0))
    Br, Bi, eB = _group_pass(eng, G, br, zero, Fraction(1), Fraction(0))
    pr = [(x * u - y * w) // q for x, y, u, w in zip(Ar, Ai, Br, Bi)]
    pi_ = [(x * w + y * u) // q for x, y, u, w in zip(Ar, Ai, Br, Bi)]
    e_p = (n + eA) * eB + n * eA + Fraction(3, 2 * q)
    Cr, _, eC = _group_pass(eng, G, pr, pi_, Fraction(n * n), e_p)
    neg = _negate_index(G)
    # counts are Cr / (q n); keep numerators, rounding is done on integers
    return [Cr[neg[i]] for i in range(n)], q * n, eC / n
