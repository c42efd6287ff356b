import numpy as np
import pytest

from nestcodes.errors import DegreeMismatch, DomainViolation, DuplicateOrbits, NotInjective, ZeroScalar
from nestcodes.field import make_field
from nestcodes.nesting import (
    LinMap,
    MappedCode,
    identity_map,
    make_mapped_orbit,
    map_apply,
    map_compose,
    map_scale,
    odot_codes,
    odot_subspace,
)
from nestcodes.orbits import CyclicCode, make_orbit_rep
from nestcodes.subspaces import scalar_mul, span, subfield_subspace, zero_subspace


@pytest.fixture(scope="module")
def f212():
    return make_field(2, 1, 12)


def test_linearity_and_matrix_agree(f212):
    ctx = f212
    rng = np.random.default_rng(0)
    gam = ctx.subfield_generator(12)
    phi = LinMap(ctx, 6, 12, [1, gam])
    els = ctx.subfield_elements(6)
    xs, ys = rng.choice(els, 1000), rng.choice(els, 1000)
    lhs = phi.apply_arr(ctx.add_arr(xs, ys))
    rhs = ctx.add_arr(phi.apply_arr(xs), phi.apply_arr(ys))
    assert (lhs == rhs).all()
    # matrix evaluation on F_q coordinates
    basis = ctx.subfield_basis(6)
    for x in els[:64]:
        c = ctx.subfield_coordinates_arr(np.array([x]), 6)[0]
        y = phi.matrix @ c % 2
        img = ctx.subfield_coordinates_arr(phi.apply_arr(np.array([x])), 12)[0]
        assert (y == img).all()
    assert len(basis) == 6 and phi.injective


def test_worked_example_q2_k3(f212):
    ctx = f212
    eta = ctx.subfield_generator(6)
    gam = ctx.subfield_generator(12)
    inner = LinMap(ctx, 3, 6, [ctx.add(1, eta), eta])  # u + (u + u^q) eta
    V1 = inner.image()
    phi = LinMap(ctx, 6, 12, [1, gam])
    V = odot_subspace(phi, V1)
    assert V.k == 3
    # direct evaluation of the displayed closed form over all u in F_{q^3}
    direct = set()
    for u in ctx.subfield_elements(3):
        u = int(u)
        uq, uq2 = ctx.frobenius(u, 1), ctx.frobenius(u, 2)
        t = ctx.add(u, ctx.mul(ctx.add(u, uq), eta))
        t = ctx.add(t, ctx.mul(uq, gam))
        t = ctx.add(t, ctx.mul(ctx.mul(ctx.add(uq, uq2), ctx.frobenius(eta, 1)), gam))
        direct.add(t)
    assert direct == set(V.elements.tolist())
    assert all(phi.image().contains(int(x)) for x in V.elements)


def test_beta_commutation_and_dimension(f212):
    ctx = f212
    rng = np.random.default_rng(1)
    els6 = ctx.subfield_elements(6)
    for _ in range(200):
        phi = LinMap(ctx, 6, 12, [int(c) for c in rng.integers(0, ctx.size, 6)])
        if not phi.injective:
            continue
        V1 = span(ctx, [int(x) for x in rng.choice(els6[1:], 2)])
        beta = int(rng.integers(1, ctx.size))
        assert odot_subspace(map_scale(beta, phi), V1) == scalar_mul(beta, odot_subspace(phi, V1))
        assert odot_subspace(phi, V1).k == V1.k


def test_compose_matches_apply_twice(f212):
    ctx = f212
    rng = np.random.default_rng(2)
    a = LinMap(ctx, 3, 6, [int(c) for c in rng.choice(ctx.subfield_elements(6), 3)])
    b = LinMap(ctx, 6, 12, [int(c) for c in rng.integers(0, ctx.size, 6)])
    ab = map_compose(b, a)
    xs = rng.choice(ctx.subfield_elements(3), 1000)
    assert (ab.apply_arr(xs) == b.apply_arr(a.apply_arr(xs))).all()
    assert map_compose(b, identity_map(ctx, 6)) == b
    assert map_scale(1, b) == b


def test_scale_associative(f212):
    ctx = f212
    phi = LinMap(ctx, 6, 12, [1, ctx.g])
    a, b = ctx.gpow(5), ctx.gpow(77)
    assert map_scale(a, map_scale(b, phi)) == map_scale(ctx.mul(a, b), phi)


def test_errors(f212):
    ctx = f212
    phi = LinMap(ctx, 6, 12, [1, ctx.subfield_generator(12)])
    with pytest.raises(DomainViolation):
        map_apply(phi, ctx.g)
    with pytest.raises(ZeroScalar):
        map_scale(0, phi)
    with pytest.raises(DegreeMismatch):
        map_compose(phi, phi)
    with pytest.raises(DegreeMismatch):
        LinMap(ctx, 5, 12, [1])
    with pytest.raises(NotInjective):
        odot_subspace(LinMap(ctx, 6, 12, [1, 1]), span(ctx, [1]))  # x + x^2 kills F_2
    assert odot_subspace(phi, zero_subspace(ctx)).k == 0
    assert odot_subspace(phi, subfield_subspace(ctx, 6)) == phi.image()


def test_spread_inner_gives_duplicates(f212):
    ctx = f212
    phi = LinMap(ctx, 6, 12, [1, ctx.subfield_generator(12)])
    C2 = MappedCode(ctx, 6, 12, [make_mapped_orbit(phi)])
    C1 = CyclicCode(ctx, 3, [make_orbit_rep(subfield_subspace(ctx, 3))], m=6)
    with pytest.raises(DuplicateOrbits):
        odot_codes(C2, C1)
    with pytest.warns(UserWarning):
        out = odot_codes(C2, C1, policy="dedupe")
    assert len(out.reps) < 63


def test_odot_single_orbit_count():
    ctx = make_field(2, 1, 18)
    phi = LinMap(ctx, 6, 18, [1, ctx.subfield_generator(18)])
    C2 = MappedCode(ctx, 6, 18, [make_mapped_orbit(phi)])
    inner = LinMap(ctx, 2, 6, [1, ctx.subfield_generator(6)])
    C1 = CyclicCode(ctx, 2, [make_orbit_rep(inner.image(), inner)], m=6)
    out = odot_codes(C2, C1)
    assert len(out.reps) == 63
    assert all(r.rep == r.map.image() for r in out.reps)
