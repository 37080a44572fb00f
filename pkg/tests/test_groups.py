from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltaform.errors import GroupMismatchError
from deltaform.groups import (
    AbelianGroupSpec,
    g_add,
    g_add_table,
    g_direct_sum,
    g_enumerate,
    g_index,
    g_neg,
    g_scale,
    g_sub,
    g_unindex,
    g_zero,
    invariant_factors,
    same_group,
)

SMALL = [(), (1,), (2,), (4,), (2, 3), (2, 2), (3, 3), (2, 2, 2), (6, 4), (4, 2, 2), (8, 8)]


def test_examples():
    Z4 = AbelianGroupSpec((4,))
    assert g_add(Z4, (3,), (2,)) == (1,)
    G = AbelianGroupSpec((2, 3))
    assert g_neg(G, (1, 2)) == (1, 1)
    Z5 = AbelianGroupSpec((5,))
    assert g_scale(Z5, 7, (2,)) == (4,)
    assert g_index(G, (1, 2)) == 5


def test_bad_orders():
    with pytest.raises(ValueError):
        AbelianGroupSpec((0,))


@pytest.mark.parametrize("orders", SMALL)
def test_axioms_exhaustive(orders):
    G = AbelianGroupSpec(orders)
    elems = g_enumerate(G)
    assert len(elems) == G.size <= 64
    e = g_zero(G)
    for a in elems:
        assert g_add(G, a, e) == a
        assert g_add(G, a, g_neg(G, a)) == e
        for b in elems:
            assert g_add(G, a, b) == g_add(G, b, a)
            assert g_sub(G, g_add(G, a, b), b) == a
    for a, b, c in product(elems[:8], elems[:8], elems[:8]):
        assert g_add(G, g_add(G, a, b), c) == g_add(G, a, g_add(G, b, c))


@pytest.mark.parametrize("orders", SMALL)
def test_index_roundtrip(orders):
    G = AbelianGroupSpec(orders)
    for i, g in enumerate(g_enumerate(G)):
        assert g_index(G, g) == i
        assert g_unindex(G, i) == g


def test_add_table():
    G = AbelianGroupSpec((2, 3))
    T = g_add_table(G)
    elems = g_enumerate(G)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            assert T[i][j] == g_index(G, g_add(G, a, b))


def test_invariant_factors():
    assert invariant_factors(AbelianGroupSpec((2, 3))) == (6,)
    assert invariant_factors(AbelianGroupSpec((4, 2))) == (2, 4)
    assert invariant_factors(AbelianGroupSpec((6,))) == invariant_factors(AbelianGroupSpec((3, 2)))
    assert invariant_factors(AbelianGroupSpec((4,))) != invariant_factors(AbelianGroupSpec((2, 2)))


def test_same_group_guard():
    same_group(AbelianGroupSpec((2, 3)), AbelianGroupSpec((2, 3)))
    with pytest.raises(GroupMismatchError):
        same_group(AbelianGroupSpec((6,)), AbelianGroupSpec((3, 2)))


def test_direct_sum():
    D = g_direct_sum(AbelianGroupSpec((2,)), AbelianGroupSpec((3,)))
    assert D.group.size == 6


@given(st.lists(st.integers(1, 7), min_size=0, max_size=3), st.integers(-20, 20), st.integers(-20, 20), st.data())
def test_scale_is_repeated_addition(orders, m, n, data):
    G = AbelianGroupSpec(tuple(orders))
    a = tuple(data.draw(st.integers(0, o - 1)) for o in orders)
    assert g_add(G, g_scale(G, m, a), g_scale(G, n, a)) == g_scale(G, m + n, a)
