import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltaform.errors import DimensionError, GroupMismatchError
from deltaform.groups import AbelianGroupSpec
from deltaform.tropconv import (
    BLOCKED,
    INF,
    NAIVE,
    GroupMap,
    conv_cyclic,
    conv_decomposed,
    conv_group,
    conv_naive,
    group_identity,
    minplus_matmul,
    rect_minplus_matmul,
    seq_conv,
)

trop = st.one_of(st.integers(-20, 20), st.just(INF))


def triple_loop(A, B):
    out = []
    for row in A:
        r = []
        for j in range(len(B[0])):
            best = INF
            for k, a in enumerate(row):
                s = a + B[k][j]
                if s is not INF and (best is INF or s < best):
                    best = s
            r.append(best)
        out.append(r)
    return out


def rand_map(rng, n, p_inf=0.2):
    return [INF if rng.random() < p_inf else rng.randint(-30, 30) for _ in range(n)]


def test_inf_semantics():
    assert INF + 3 is INF
    assert 3 + INF is INF
    assert min(INF, 4) == 4
    assert not INF < 10**100


def test_conv_naive_examples():
    Z3 = AbelianGroupSpec((3,))
    assert conv_naive(Z3, [0, 1, 4], [0, 0, 0]).values == (0, 0, 0)
    a = [0, 1, 4]
    assert conv_naive(Z3, a, group_identity(Z3)).values == tuple(a)
    assert conv_naive(Z3, a, [INF] * 3).values == (INF,) * 3


def test_group_mismatch():
    with pytest.raises(GroupMismatchError):
        conv_naive(AbelianGroupSpec((3,)), GroupMap(AbelianGroupSpec((3, 1)), [0, 0, 0]), [0, 0, 0])
    with pytest.raises(DimensionError):
        conv_naive(AbelianGroupSpec((3,)), [0, 0], [0, 0, 0])


def test_matmul_examples(rng):
    I = [[0, INF], [INF, 0]]
    B = [[3, 4], [5, INF]]
    assert minplus_matmul(I, B) == B
    assert minplus_matmul([[0, 0], [0, 0]], [[0, 0], [0, 0]]) == [[0, 0], [0, 0]]
    A = [rand_map(rng, 4) for _ in range(4)]
    B = [rand_map(rng, 4) for _ in range(4)]
    assert minplus_matmul(A, B) == triple_loop(A, B)
    assert minplus_matmul(A, B, BLOCKED) == triple_loop(A, B)
    with pytest.raises(DimensionError):
        minplus_matmul([[1, 2]], [[1, 2]])


def test_rect_matmul(rng):
    A = [rand_map(rng, 9) for _ in range(6)]
    B = [rand_map(rng, 3) for _ in range(9)]
    assert rect_minplus_matmul(A, B) == minplus_matmul(A, B)
    assert rect_minplus_matmul(A, B, block=4) == minplus_matmul(A, B)
    assert rect_minplus_matmul(A, B, block=9) == minplus_matmul(A, B)


def test_seq_conv_examples(rng):
    assert seq_conv([0], [0]) == [0]
    assert seq_conv([0, 1], [0, 2]) == [0, 1, 3]
    a, b = rand_map(rng, 32), rand_map(rng, 32)
    want = [INF] * 63
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            s = x + y
            if s is not INF and (want[i + j] is INF or s < want[i + j]):
                want[i + j] = s
    assert seq_conv(a, b) == want


@given(st.lists(trop, min_size=1, max_size=20), st.data())
def test_seq_conv_property(a, data):
    b = data.draw(st.lists(trop, min_size=len(a), max_size=len(a)))
    got = seq_conv(a, b)
    for k in range(2 * len(a) - 1):
        terms = [a[i] + b[k - i] for i in range(len(a)) if 0 <= k - i < len(a)]
        fin = [t for t in terms if t is not INF]
        assert got[k] == (min(fin) if fin else INF)


def test_conv_cyclic_examples():
    Z2 = AbelianGroupSpec((2,))
    assert conv_cyclic(Z2, [0, 0], [0, 0]).values == (0, 0)
    Z3 = AbelianGroupSpec((3,))
    a, b = [0, 1, 4], [5, INF, 2]
    assert conv_cyclic(Z3, a, b) == conv_naive(Z3, a, b)
    Z1 = AbelianGroupSpec((1,))
    assert conv_cyclic(Z1, [3], [4]).values == (7,)


def test_conv_decomposed(rng):
    for q, h in [((2,), (2,)), ((4,), (3,)), ((5,), ()), ((3,), (2, 2))]:
        Q, H = AbelianGroupSpec(q), AbelianGroupSpec(h)
        G = AbelianGroupSpec(q + h)
        for _ in range(5):
            a, b = rand_map(rng, G.size), rand_map(rng, G.size)
            assert conv_decomposed(Q, H, a, b) == conv_naive(G, a, b)


@pytest.mark.parametrize("orders", [(), (1,), (12,), (4, 4, 2), (8, 2), (3, 3, 3), (2, 1, 5), (6, 4), (2, 2, 2, 2)])
@pytest.mark.parametrize("backend", [NAIVE, BLOCKED])
def test_conv_group_matches_naive(orders, backend):
    rng = random.Random(hash(orders) & 0xFFFF)
    G = AbelianGroupSpec(orders)
    for _ in range(3):
        a, b = rand_map(rng, G.size), rand_map(rng, G.size)
        assert conv_group(G, a, b, backend) == conv_naive(G, a, b)


@pytest.mark.parametrize("orders", [(2,), (3,), (2, 2), (4, 2), (2, 2, 2)])
def test_semiring_laws(orders):
    G = AbelianGroupSpec(orders)
    rng = random.Random(7)
    e = group_identity(G)
    for _ in range(4):
        a, b, c = (rand_map(rng, G.size) for _ in range(3))
        assert conv_group(G, a, b) == conv_group(G, b, a)
        ab_c = conv_group(G, conv_group(G, a, b).values, c)
        a_bc = conv_group(G, a, conv_group(G, b, c).values)
        assert ab_c == a_bc
        assert conv_group(G, a, e).values == tuple(a)


def test_exhaustive_tiny_commutativity():
    G = AbelianGroupSpec((2,))
    vals = [0, 1, INF]
    for a in product(vals, repeat=2):
        for b in product(vals, repeat=2):
            assert conv_group(G, list(a), list(b)) == conv_group(G, list(b), list(a))


def test_big_values():
    G = AbelianGroupSpec((3, 2))
    big = 10**30
    a = [big, 1, INF, 2, big + 5, 0]
    b = [1, big * big, 3, INF, 0, 7]
    assert conv_group(G, a, b) == conv_naive(G, a, b)
