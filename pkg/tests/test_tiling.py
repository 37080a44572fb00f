from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltaform.errors import NotInFundamentalDomainError, SingularMatrixError
from deltaform.exactla import det
from deltaform.tiling import (
    tg_add,
    tg_basis,
    tg_embed,
    tg_enumerate,
    tg_iso,
    tg_neg,
    tg_new,
    tg_phi,
    tg_zero,
    wrap_minus,
    wrap_plus,
)

F = Fraction
rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_wrap_examples():
    assert wrap_plus([F(3, 2)]) == [F(-1, 2)]
    assert wrap_plus([0]) == [0]
    assert wrap_plus([-1]) == [-1]
    assert wrap_minus([F(1, 2)]) == [F(-1, 2)]
    assert wrap_minus([0]) == [0]
    assert wrap_minus([1]) == [-1]


@given(st.lists(rats, min_size=1, max_size=3), st.data())
def test_wrap_range_and_decomposition(y, data):
    for x, yy in zip(wrap_plus(y), y):
        assert -1 <= x < 1 and (yy - x) % 2 == 0
    for x, yy in zip(wrap_minus(y), y):
        assert -1 <= x < 1 and (yy + x) % 2 == 0
    z = [2 * data.draw(st.integers(-5, 5)) for _ in y]
    assert wrap_plus([a + b for a, b in zip(z, y)]) == wrap_plus(y)
    assert wrap_minus([a + b for a, b in zip(z, y)]) == wrap_minus(y)
    x = wrap_minus(y)
    assert wrap_minus([a - b for a, b in zip(z, x)]) == x


@given(st.lists(rats, min_size=2, max_size=2), st.lists(rats, min_size=2, max_size=2))
def test_nested_wrap(x, y):
    lhs = wrap_plus([a + b for a, b in zip(x, y)])
    rhs = wrap_plus([a + b for a, b in zip(wrap_plus(x), y)])
    assert lhs == rhs


def test_one_dim_group():
    T = tg_new([[2]])
    assert sorted(e.z[0] for e in tg_enumerate(T)) == [-2, -1, 0, 1]
    with pytest.raises(NotInFundamentalDomainError):
        tg_embed(T, [3])
    assert tg_embed(T, [-2]).t == (-1,)
    one = tg_embed(T, [1])
    assert tg_add(T, one, one).z == (-2,)
    assert tg_zero(T).z == (0,)
    assert tg_neg(T, one).z == (-1,)
    assert tg_neg(T, tg_zero(T)) == tg_zero(T)
    assert tg_phi(T, [5]).z == (1,)
    basis = tg_basis(T)
    assert len(basis) == 1 and basis[0][1] == 4


def test_singular():
    with pytest.raises(SingularMatrixError):
        tg_new([[1, 2], [2, 4]])


def test_identity_basis():
    T = tg_new([[1, 0], [0, 1]])
    assert len(tg_enumerate(T)) == 4
    assert sorted(o for _, o in tg_basis(T)) == [2, 2]


def test_shifted_domain():
    T = tg_new([[1, 0], [0, 1]], [F(1, 2), F(1, 2)])
    pts = {e.z for e in tg_enumerate(T)}
    assert pts == {(0, 0), (0, 1), (1, 0), (1, 1)}


def random_tiling(rng, n):
    while True:
        A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if det(A) != 0:
            v = [F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
            return tg_new(A, v)


def check_axioms(T):
    elems = tg_enumerate(T)
    zs = {e.z for e in elems}
    assert len(zs) == len(elems) == 2 ** T.dim * T.delta
    for e in elems:
        assert all(-1 <= c < 1 for c in T.t_of(e.z))
    zero = tg_zero(T)
    assert zero.z in zs
    for a in elems:
        assert tg_add(T, a, zero) == a
        assert tg_add(T, a, tg_neg(T, a)) == zero
        assert tg_phi(T, a.z) == a
        for b in elems:
            s = tg_add(T, a, b)
            assert s.z in zs
            assert s == tg_add(T, b, a)
    sample = elems[:6]
    for a, b, c in product(sample, sample, sample):
        assert tg_add(T, tg_add(T, a, b), c) == tg_add(T, a, tg_add(T, b, c))


def test_axioms_random(rng):
    done = 0
    while done < 12:
        T = random_tiling(rng, rng.choice((1, 2)))
        if T.size > 64:
            continue
        check_axioms(T)
        done += 1


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), rats, rats)
def test_cardinality(a, b, c, d, v1, v2):
    if a * d - b * c == 0:
        return
    T = tg_new([[a, b], [c, d]], [v1, v2])
    assert len({e.z for e in tg_enumerate(T)}) == 4 * abs(a * d - b * c)


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.lists(st.integers(-15, 15), min_size=4, max_size=4))
def test_phi_homomorphism(a, b, c, d, ys):
    if a * d - b * c == 0:
        return
    T = tg_new([[a, b], [c, d]], [F(1, 3), F(-1, 2)])
    y, z = ys[:2], ys[2:]
    s = [p + q for p, q in zip(y, z)]
    assert tg_phi(T, s) == tg_add(T, tg_phi(T, y), tg_phi(T, z))


def test_phi_injective_on_translated_sets(rng):
    for _ in range(10):
        T = random_tiling(rng, 2)
        t = [F(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(2)]
        R = 3 * max(abs(x) for row in T.Amat for x in row) + 12
        W = []
        for w in product(range(-R, R + 1), repeat=2):
            p = [a + b for a, b in zip(t, w)]
            if all(-1 <= c < 1 for c in T.t_of(p)):
                W.append(w)
        images = [tg_phi(T, list(w)).z for w in W]
        assert len(set(images)) == len(W)


def test_basis_enumerates_uniquely(rng):
    for _ in range(15):
        T = random_tiling(rng, 2)
        basis = tg_basis(T)
        total = 1
        for _, o in basis:
            total *= o
        assert total == T.size
        seen = set()
        for coeffs in product(*(range(o) for _, o in basis)):
            acc = tg_zero(T)
            for (e, _), k in zip(basis, coeffs):
                for _ in range(k):
                    acc = tg_add(T, acc, e)
            seen.add(acc.z)
        assert len(seen) == T.size


def test_iso_identity_when_centred():
    T = tg_new([[2, 1], [0, 1]])
    iso = tg_iso(T)
    for e in tg_enumerate(T):
        assert iso.forward(e).z == e.z


def test_iso_homomorphism(rng):
    for _ in range(8):
        T = random_tiling(rng, rng.choice((1, 2)))
        if T.size > 32:
            continue
        iso = tg_iso(T)
        C = iso.target
        elems = tg_enumerate(T)
        images = [iso.forward(e) for e in elems]
        assert len({i.z for i in images}) == len(elems)
        for e, im in zip(elems, images):
            assert iso.inverse(im) == e
        for a in elems:
            for b in elems:
                assert iso.forward(tg_add(T, a, b)) == tg_add(C, iso.forward(a), iso.forward(b))
