import numpy as np
import pytest

from nestcodes.field import make_field
from nestcodes.orbits import (
    CyclicCode,
    code_min_distance,
    code_size,
    enumerate_orbit,
    is_sidon,
    make_orbit_rep,
    max_alpha_intersection,
    orbit_key,
    orbit_size,
    orbits_equivalent,
    sampled_distance_check,
    stabilizer_degree,
    sweep_max_intersection,
)
from nestcodes.subspaces import distance, scalar_mul, span, subfield_subspace


@pytest.mark.parametrize("p,n,seed", [(3, 4, 0), (2, 6, 1), (2, 8, 2)])
def test_ratio_method_matches_sweep(p, n, seed):
    ctx = make_field(p, 1, n)
    rng = np.random.default_rng(seed)
    for _ in range(10):
        U = span(ctx, [int(x) for x in rng.integers(1, ctx.size, 2)])
        W = span(ctx, [int(x) for x in rng.integers(1, ctx.size, 2)])
        if U.k < 2 or W.k < 2:
            continue
        assert max_alpha_intersection(U, W, False) == sweep_max_intersection(U, W, False)
        assert max_alpha_intersection(U, U, True) == sweep_max_intersection(U, U, True)


def test_orbit_enumeration_matches_formula():
    ctx = make_field(2, 1, 6)
    rng = np.random.default_rng(5)
    for _ in range(10):
        V = span(ctx, [int(x) for x in rng.integers(1, 64, 3)])
        orbit = set(W.key for W in enumerate_orbit(V))
        assert len(orbit) == orbit_size(V)
        assert (2 ** 6 - 1) % (2 ** stabilizer_degree(V) - 1) == 0


def test_orbit_key_invariant():
    ctx = make_field(3, 1, 4)
    V = span(ctx, [1, ctx.g])
    for e in range(0, 80, 9):
        W = scalar_mul(ctx.gpow(e), V)
        assert orbit_key(W)[0] == orbit_key(V)[0]
        assert orbits_equivalent(V, W)


def test_spread_code():
    ctx = make_field(3, 1, 4)
    C = CyclicCode(ctx, 2, [make_orbit_rep(subfield_subspace(ctx, 2))])
    assert code_size(C, "formula") == code_size(C, "enumerate") == 10
    assert code_min_distance(C).distance == 4
    assert is_sidon(subfield_subspace(ctx, 2))[0] is False


def test_min_distance_against_brute_pairs():
    ctx = make_field(2, 1, 6)
    rng = np.random.default_rng(9)
    reps = []
    while len(reps) < 3:
        V = span(ctx, [int(x) for x in rng.integers(1, 64, 2)])
        if V.k == 2 and not any(orbits_equivalent(V, r.rep) for r in reps):
            reps.append(make_orbit_rep(V))
    C = CyclicCode(ctx, 2, reps)
    words = {W.key: W for r in reps for W in enumerate_orbit(r.rep)}
    ws = list(words.values())
    brute = min(distance(a, b) for i, a in enumerate(ws) for b in ws[i + 1:])
    assert code_min_distance(C, "pairs").distance == brute
    assert code_min_distance(C, "collision").distance == brute


def test_sampling_is_seeded_and_thread_independent():
    ctx = make_field(2, 1, 8)
    C = CyclicCode(ctx, 2, [make_orbit_rep(span(ctx, [1, ctx.g]))])
    a = sampled_distance_check(C, 1, 30000, seed=7, batch=10000, threads=1)
    b = sampled_distance_check(C, 1, 30000, seed=7, batch=10000, threads=3)
    assert a == b
    assert a.violations == 0
