import itertools

import numpy as np
import pytest

from pgquadric.gf import (
    DivisionByZero,
    NotAPrimePower,
    factor_prime_power,
    make_field,
    mat_inv,
    mat_vec,
    nullspace,
    prime_powers_up_to,
    rank,
    rref,
    smallest_irreducible,
)

SMALL_Q = prime_powers_up_to(16)


def test_prime_power_factoring():
    assert factor_prime_power(5) == (5, 1)
    assert factor_prime_power(16) == (2, 4)
    assert factor_prime_power(9) == (3, 2)
    for bad in (0, 1, 6, 12, 15):
        with pytest.raises(NotAPrimePower):
            factor_prime_power(bad)


def test_make_field_prime_and_gf4():
    F = make_field(5)
    assert (F.p, F.e) == (5, 1)
    G = make_field(4)
    assert (G.p, G.e) == (2, 2)
    assert G.reduction_poly == (1, 1, 1)  # x^2 + x + 1, low degree first
    with pytest.raises(NotAPrimePower):
        make_field(6)


@pytest.mark.parametrize("q,poly", [(8, (1, 0, 1, 1)), (9, (1, 0, 1)), (16, (1, 0, 0, 1, 1))])
def test_smallest_irreducible_known(q, poly):
    F = make_field(q)
    assert F.reduction_poly == poly
    assert smallest_irreducible(F.p, F.e) == poly


def _brute_irreducible(p, e):
    # monic polys of degree e, low coefficient first, reading lexicographically from the low end
    def monic(d):
        for low in itertools.product(range(p), repeat=d):
            yield list(low) + [1]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    reducible = set()
    for d in range(1, e // 2 + 1):
        for a in monic(d):
            for b in monic(e - d):
                reducible.add(tuple(mul(a, b)))
    cands = [tuple(c) for c in monic(e) if tuple(c) not in reducible]
    return min(cands)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_smallest_irreducible_matches_brute_force(q):
    F = make_field(q)
    assert F.reduction_poly == _brute_irreducible(F.p, F.e)


def test_small_arithmetic_examples():
    F5 = make_field(5)
    assert F5.add(3, 4) == 2
    assert F5.mul(2, 3) == 1
    assert F5.inv(2) == 3
    F4 = make_field(4)
    x = 2  # encoding of the polynomial x
    assert F4.add(x, x) == 0
    assert F4.mul(x, x) == 3  # x + 1
    assert F4.inv(x) == 3
    assert F4.elements() == [0, 1, 2, 3]
    F9 = make_field(9)
    assert F9.add(3, 6) == 0  # x + 2x
    assert len(F9.elements()) == 9


@pytest.mark.parametrize("q", SMALL_Q)
def test_inverse_and_zero(q):
    F = make_field(q)
    assert F.inv(1) == 1
    with pytest.raises(DivisionByZero):
        F.inv(0)
    for a in range(q):
        assert F.mul(0, a) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", SMALL_Q)
def test_multiplicative_group_cyclic(q):
    F = make_field(q)
    powers = {F.power(F.generator, i) for i in range(q - 1)}
    assert powers == set(range(1, q))


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    F = make_field(q)
    E = np.arange(q)
    A, B = np.meshgrid(E, E, indexing="ij")
    add = F.add_arrays(A, B)
    mul = F.mul_arrays(A, B)
    assert (add == add.T).all() and (mul == mul.T).all()
    # scalar and vectorized paths agree
    assert all(F.add(int(a), int(b)) == add[a, b] and F.mul(int(a), int(b)) == mul[a, b]
               for a in range(q) for b in range(q))
    for a in range(q):
        for b in range(q):
            ab_add, ab_mul = add[a, b], mul[a, b]
            # associativity and distributivity over every c at once
            assert (add[ab_add] == add[a][add[b]]).all()
            assert (mul[ab_mul] == mul[a][mul[b]]).all()
            assert (mul[a][add[b]] == add[mul[a, b]][mul[a]]).all()
    assert (add[0] == E).all() and (mul[1] == E).all()
    assert all(F.add(a, F.neg(a)) == 0 for a in range(q))


@pytest.mark.parametrize("q", SMALL_Q)
def test_frobenius(q):
    F = make_field(q)
    p = F.p
    for a in range(q):
        for b in range(q):
            assert F.power(F.add(a, b), p) == F.add(F.power(a, p), F.power(b, p))


def test_make_field_deterministic():
    make_field.cache_clear()
    a = make_field(16).reduction_poly
    make_field.cache_clear()
    assert make_field(16).reduction_poly == a


def test_squares():
    F = make_field(7)
    assert {a for a in range(1, 7) if F.is_square(a)} == {1, 2, 4}
    assert all(make_field(8).is_square(a) for a in range(8))


def test_linear_algebra():
    F = make_field(3)
    rows = [[1, 2, 0, 1], [2, 1, 0, 2], [0, 0, 1, 1]]
    R, piv = rref(F, rows)
    assert rank(F, rows) == 2 == len(piv)
    for v in nullspace(F, rows, 4):
        assert mat_vec(F, rows, v) == [0, 0, 0]
    assert len(nullspace(F, rows, 4)) == 2
    with pytest.raises(DivisionByZero):
        mat_inv(F, [[1, 1, 0], [0, 1, 2], [1, 0, 1]])
    M = [[1, 1, 0], [0, 1, 2], [1, 0, 2]]
    Mi = mat_inv(F, M)
    for j in range(3):
        e = [int(i == j) for i in range(3)]
        assert mat_vec(F, M, mat_vec(F, Mi, e)) == e
