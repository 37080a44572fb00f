import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltaform.errors import DimensionError
from deltaform.fourier import (
    C1,
    C2,
    RatComplex,
    abelian_dft,
    abelian_idft,
    approx_cplx,
    approx_ct,
    approx_rat,
    approx_sum,
    bool_conv,
    bool_conv_naive,
    cyclic_dft,
    naive_dft,
    naive_group_dft,
    pi_bounds,
    root_table,
)
from deltaform.groups import AbelianGroupSpec, g_enumerate, g_index

from .oracles import PI_60, int_dft, max_err, taylor_root

F = Fraction
R = RatComplex
rats = st.fractions(min_value=-50, max_value=50, max_denominator=1000)
epss = st.fractions(min_value=F(1, 10**6), max_value=F(1, 2), max_denominator=10**6)


def test_approx_rat_examples():
    assert approx_rat(F(1, 3), F(1, 10)) == F(3, 10)
    assert approx_rat(0, F(1, 7)) == 0
    assert approx_rat(5, F(1, 7)) == 5


@given(rats, epss)
def test_approx_rat_property(a, eps):
    out = approx_rat(a, eps)
    q = -((-eps.denominator) // eps.numerator)
    assert abs(a - out) <= eps
    assert (out * q).denominator == 1


def test_approx_rat_rejects_bad_eps():
    with pytest.raises(ValueError):
        approx_rat(1, 0)
    with pytest.raises(ValueError):
        approx_rat(1, 1)


def test_approx_cplx_examples():
    assert approx_cplx(R(), F(1, 5)) == R()
    z = approx_cplx(R(F(1, 3), F(1, 3)), F(1, 5))
    assert abs(z.re - F(1, 3)) <= F(1, 10) and abs(z.im - F(1, 3)) <= F(1, 10)
    w = approx_cplx(R(F(2, 7)), F(1, 9))
    assert abs(w.im) <= F(1, 18)


@given(rats, rats, epss)
def test_approx_cplx_property(a, b, eps):
    assert approx_cplx(R(a, b), eps).within(R(a, b), eps)


def test_approx_sum_examples():
    assert approx_sum([R()] * 5, F(1, 10)) == R()
    s = approx_sum([R(F(1, 8))] * 8, F(1, 100))
    assert s.within(R(1), F(1, 100))
    t = R(F(2, 3), F(-1, 7))
    assert approx_sum([t], F(1, 10)) == approx_cplx(t, F(1, 20))


@given(st.lists(st.tuples(st.fractions(-1, 1, max_denominator=50), st.fractions(-1, 1, max_denominator=50)), min_size=1, max_size=12), epss)
def test_approx_sum_property(terms, eps):
    zs = [R(a, b) for a, b in terms]
    exact = R(sum(a for a, _ in terms), sum(b for _, b in terms))
    assert approx_sum(zs, eps).within(exact, eps)


def test_pi_bounds():
    P, err = pi_bounds(200)
    approx = F(P, 2**200)
    assert abs(approx - F(PI_60)) <= F(err, 2**200) + F(1, 10**55)


def test_root_table_examples():
    eps = F(1, 10**8)
    T = root_table(8, eps)
    assert T.root(2, 1).within(R(-1), eps)
    assert T.root(4, 1).within(R(0, 1), eps)
    for k in range(8):
        re, im = taylor_root(8, k)
        assert T.root(8, k).within(R(re, im), eps)
    assert T.radius <= eps


@pytest.mark.parametrize("n", [1, 3, 5, 12, 16, 37])
def test_root_table_general_orders(n):
    eps = F(1, 10**12)
    T = root_table(n, eps)
    for k in range(n):
        re, im = taylor_root(n, k)
        assert T.root(n, k).within(R(re, im), eps)


def test_approx_ct_examples():
    eps = F(1, 10**6)
    out = approx_ct([R(1), R(0)], eps)
    assert all(z.within(R(1), eps) for z in out.values)
    out = approx_ct([R(1)] * 4, eps)
    for z, w in zip(out.values, [4, 0, 0, 0]):
        assert z.within(R(w), 25 * eps)
    with pytest.raises(DimensionError):
        approx_ct([R(1)] * 3, eps)


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
def test_approx_ct_vs_oracle(s):
    rng = random.Random(s)
    N = 2**s
    eps = F(1, 10**6)
    oracle = root_table(N, eps / 10**6)
    for _ in range(5):
        v = [rng.randint(-255, 255) for _ in range(N)]
        out = approx_ct([R(x) for x in v], eps)
        assert out.bound <= 5**s * eps
        ore, oim = int_dft(v, oracle)
        slack = sum(abs(x) for x in v) * oracle.radius
        assert max_err(out.values, ore, oim, oracle.q) <= (out.bound + slack) ** 2


def test_cyclic_dft_examples():
    eps = F(1, 10**6)
    assert cyclic_dft([R(5, 2)], eps).values == (R(5, 2),)
    out = cyclic_dft([R(1)] * 3, eps)
    for z, w in zip(out.values, [3, 0, 0]):
        assert z.within(R(w), out.bound)


@pytest.mark.parametrize("n", [2, 3, 6, 7, 12, 17, 20, 37])
def test_cyclic_dft_vs_oracle(n):
    rng = random.Random(n)
    eps = F(1, 10**6)
    oracle = root_table(n, eps / 10**6)
    v = [rng.randint(-9, 9) for _ in range(n)]
    out = cyclic_dft([R(x) for x in v], eps)
    assert out.bound <= n**C1 * eps
    ore, oim = int_dft(v, oracle)
    slack = sum(abs(x) for x in v) * oracle.radius
    assert max_err(out.values, ore, oim, oracle.q) <= (out.bound + slack) ** 2


def test_abelian_dft_examples():
    eps = F(1, 10**6)
    G0 = AbelianGroupSpec(())
    assert abelian_dft(G0, [R(3)], eps).values[0].within(R(3), eps)
    G = AbelianGroupSpec((2, 2))
    out = abelian_dft(G, [1, 0, 0, 0], eps)
    assert all(z.within(R(1), out.bound) for z in out.values)


@pytest.mark.parametrize("orders", [(6, 4), (3, 5), (2, 2, 2), (8,), (7, 3)])
def test_abelian_dft_vs_oracle(orders):
    G = AbelianGroupSpec(orders)
    rng = random.Random(len(orders))
    eps = F(1, 10**6)
    a = [rng.randint(0, 1) for _ in range(G.size)]
    out = abelian_dft(G, a, eps)
    ref = naive_group_dft(G, a, eps / 10**6)
    assert out.bound <= G.size**C2 * eps
    for z, w in zip(out.values, ref.values):
        assert z.within(w, out.bound + ref.bound)


@pytest.mark.parametrize("orders", [(6, 4), (5,), (2, 3, 2)])
def test_inverse_roundtrip(orders):
    G = AbelianGroupSpec(orders)
    rng = random.Random(3)
    eps = F(1, 10**8)
    a = [rng.randint(-4, 4) for _ in range(G.size)]
    hat = abelian_dft(G, a, eps)
    back = abelian_idft(G, hat.values, eps)
    # idft is linear with norm <= 1 in the sup norm, so input error passes through
    for z, x in zip(back.values, a):
        assert z.within(R(x), hat.bound + back.bound)


def test_multiplicativity():
    G = AbelianGroupSpec((4, 3))
    rng = random.Random(11)
    eps = F(1, 10**8)
    a = [rng.randint(0, 3) for _ in range(G.size)]
    b = [rng.randint(0, 3) for _ in range(G.size)]
    elems = g_enumerate(G)
    conv = [0] * G.size
    for i, g in enumerate(elems):
        for j, h in enumerate(elems):
            conv[g_index(G, tuple((x + y) % m for x, y, m in zip(g, h, G.orders)))] += a[i] * b[j]
    A, B, C = abelian_dft(G, a, eps), abelian_dft(G, b, eps), abelian_dft(G, conv, eps)
    MA = sum(a)
    MB = sum(b)
    # |AB - ab| <= |A||B - b| + |b||A - a|
    tol = C.bound + (MA + A.bound) * B.bound + MB * A.bound
    for x, y, z in zip(A.values, B.values, C.values):
        assert z.within(x * y, tol)


def test_delta_transform_has_unit_modulus():
    for orders in [(5,), (3, 4), (2, 2, 3)]:
        G = AbelianGroupSpec(orders)
        out = abelian_dft(G, [1] + [0] * (G.size - 1), F(1, 10**6))
        assert all(z.within(R(1), out.bound) for z in out.values)


def test_naive_dft_is_exact_sum_of_roots():
    v = [R(1), R(2), R(3)]
    out = naive_dft(v, F(1, 10**10))
    assert out.values[0].within(R(6), out.bound)


def test_bool_conv_examples():
    G = AbelianGroupSpec((2, 2))
    idx = {g: i for i, g in enumerate(g_enumerate(G))}
    a = [False] * 4
    a[idx[(0, 0)]] = a[idx[(1, 0)]] = True
    b = [False] * 4
    b[idx[(0, 1)]] = True
    want = [False] * 4
    want[idx[(0, 1)]] = want[idx[(1, 1)]] = True
    assert list(bool_conv(G, a, b)) == want
    e = [True, False, False, False]
    assert list(bool_conv(G, a, e)) == a


@pytest.mark.parametrize("orders", [(12, 2), (7,), (9,), (2, 2, 2), (16,), (3, 5), (1,), ()])
def test_bool_conv_vs_naive(orders):
    G = AbelianGroupSpec(orders)
    rng = random.Random(G.size)
    for p in (0.1, 0.5, 0.9):
        a = [rng.random() < p for _ in range(G.size)]
        b = [rng.random() < p for _ in range(G.size)]
        rep = bool_conv(G, a, b, report=True)
        assert rep.values == bool_conv_naive(G, a, b)
        assert rep.margin <= F(1, 3)


def test_bool_conv_empty_input():
    G = AbelianGroupSpec((5,))
    assert bool_conv(G, [False] * 5, [True] * 5) == (False,) * 5


def test_floats_rejected():
    with pytest.raises(TypeError):
        cyclic_dft([1j, 1], F(1, 10))
