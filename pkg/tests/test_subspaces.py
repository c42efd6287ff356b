import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nestcodes.field import field_for, make_field
from nestcodes.subspaces import (
    canonical_key,
    distance,
    element_key,
    enumerate_subspaces,
    gaussian_binomial,
    intersect_dim,
    scalar_mul,
    span,
    subfield_subspace,
    sum_dim,
)


def brute_gaussian(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q**n - q**i
        den *= q**k - q**i
    return num // den


@pytest.mark.parametrize("q,n,k", [(3, 4, 2), (2, 4, 2), (2, 5, 3), (2, 6, 2), (4, 3, 1)])
def test_enumeration_count(q, n, k):
    ctx = field_for(q, n)
    subs = list(enumerate_subspaces(ctx, k))
    assert len(subs) == gaussian_binomial(n, k, q) == brute_gaussian(n, k, q)
    assert len({canonical_key(V) for V in subs}) == len(subs)
    assert len({element_key(V) for V in subs}) == len(subs)


def test_basis_independence():
    ctx = make_field(3, 1, 4)
    a, b = 5, 17
    V1 = span(ctx, [a, b])
    V2 = span(ctx, [ctx.add(a, b), ctx.add(a, ctx.add(b, b))])
    assert V1 == V2 and canonical_key(V1) == canonical_key(V2)


def _random_subspace(ctx, rng, k):
    return span(ctx, [int(x) for x in rng.integers(1, ctx.size, k)])


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_metric_axioms(seed):
    ctx = make_field(2, 1, 6)
    rng = np.random.default_rng(seed)
    U, V, W = (_random_subspace(ctx, rng, int(rng.integers(1, 4))) for _ in range(3))
    assert distance(U, U) == 0
    assert distance(U, V) == distance(V, U)
    assert distance(U, W) <= distance(U, V) + distance(V, W)
    assert sum_dim(U, V) + intersect_dim(U, V) == U.k + V.k


def test_intersection_by_element_sets():
    ctx = make_field(3, 1, 4)
    rng = np.random.default_rng(3)
    for _ in range(50):
        U, V = _random_subspace(ctx, rng, 2), _random_subspace(ctx, rng, 3)
        common = len(set(U.elements.tolist()) & set(V.elements.tolist()))
        assert 3 ** intersect_dim(U, V) == common


def test_scalar_mul_and_subfield():
    ctx = make_field(3, 1, 4)
    F9 = subfield_subspace(ctx, 2)
    assert F9.k == 2
    g2 = ctx.subfield_generator(2)
    assert scalar_mul(g2, F9) == F9
    assert scalar_mul(ctx.g, F9) != F9
