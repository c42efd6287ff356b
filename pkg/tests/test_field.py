import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nestcodes.errors import BudgetExceeded, NotADivisor, NotPrime
from nestcodes.field import divisors, is_irreducible, least_irreducible, make_field, field_for, split_prime_power


def brute_order(ctx, x):
    y, k = x, 1
    while y != 1:
        y = ctx.mul(y, x)
        k += 1
    return k


@pytest.mark.parametrize("q,n", [(2, 4), (3, 4), (2, 6), (4, 3), (5, 2), (9, 2)])
def test_generator_order_brute_force(q, n):
    ctx = field_for(q, n)
    assert brute_order(ctx, ctx.g) == q**n - 1
    assert is_irreducible(list(ctx.modulus), ctx.p)


def test_least_irreducible_small_cases():
    assert least_irreducible(2, 2) == [1, 1, 1]
    assert least_irreducible(2, 3) == [1, 1, 0, 1]
    assert least_irreducible(3, 2) == [1, 0, 1]


def test_irreducible_count_matches_necklace_formula():
    # number of monic irreducibles of degree 4 over F_3 is (3^4 - 3^2) / 4 = 18
    import itertools

    count = sum(is_irreducible(list(c) + [1], 3) for c in itertools.product(range(3), repeat=4))
    assert count == 18


@pytest.mark.parametrize("q,n", [(2, 6), (3, 4), (4, 3)])
def test_frobenius_fixes_subfields(q, n):
    ctx = field_for(q, n)
    xs = np.arange(ctx.size, dtype=np.int64)
    for d in range(1, n + 1):
        fixed = int((ctx.frobenius_arr(xs, d) == xs).sum())
        # fixed field of x -> x^(q^d) is F_{q^gcd(d,n)}
        from math import gcd

        assert fixed == q ** gcd(d, n)
    for d in divisors(n):
        els = ctx.subfield_elements(d)
        assert len(els) == q**d
        assert all(ctx.in_subfield(int(x), d) for x in els)


@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
@settings(max_examples=200, deadline=None)
def test_field_axioms(a, b, c):
    ctx = make_field(3, 1, 4)
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.add(a, ctx.neg(a)) == 0
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1
    assert ctx.frobenius(ctx.add(a, b), 1) == ctx.add(ctx.frobenius(a, 1), ctx.frobenius(b, 1))
    assert ctx.frobenius(a, 1) == ctx.pow(a, 3)


def test_array_ops_match_scalar():
    ctx = make_field(2, 1, 8)
    rng = np.random.default_rng(0)
    x = rng.integers(0, ctx.size, 500)
    y = rng.integers(0, ctx.size, 500)
    m = ctx.mul_arr(x, y)
    s = ctx.add_arr(x, y)
    for i in range(500):
        assert m[i] == ctx.mul(int(x[i]), int(y[i]))
        assert s[i] == ctx.add(int(x[i]), int(y[i]))


def test_norm_lands_in_subfield_and_is_multiplicative():
    ctx = make_field(3, 1, 4)
    for x in range(1, 81, 7):
        for y in range(1, 81, 11):
            nx = ctx.norm(x, 4, 2)
            assert ctx.in_subfield(nx, 2)
            assert ctx.norm(ctx.mul(x, y), 4, 2) == ctx.mul(nx, ctx.norm(y, 4, 2))


def test_fq_coordinates_roundtrip_over_f4():
    ctx = field_for(4, 3)
    for x in range(ctx.size):
        assert ctx.elem_from_fq_coordinates(ctx.fq_coordinates(x)) == x


def test_errors():
    with pytest.raises(NotPrime):
        make_field(6, 1, 1)
    with pytest.raises(BudgetExceeded):
        make_field(2, 1, 30, max_elements=2**20)
    with pytest.raises(NotADivisor):
        make_field(2, 1, 6).subfield_generator(4)
    assert split_prime_power(9) == (3, 2)
    with pytest.raises(NotPrime):
        split_prime_power(12)
