"""Concrete code families: two-block RRT codes, Zhang codes for an odd prime
ratio, and nested towers built from them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import bounds
from .errors import BadParams, KTooSmall, NotOddPrime, PrimesNotDistinct, QTooSmall
from .field import FieldCtx, field_for, is_prime
from .nesting import LinMap, MappedCode, make_mapped_orbit, odot_codes
from .orbits import CyclicCode


def _check_q(q: int) -> None:
    if q < 3:
        raise QTooSmall(f"q = {q}: the two-block construction needs q >= 3")


def _check_zhang(k: int, p: int) -> None:
    if k < 2:
        raise KTooSmall(f"k = {k}: the odd-prime construction needs k >= 2")
    if p < 3 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")


# --- single stages -----------------------------------------------------------


RRT_VARIANTS = ("norm", "restated")


def rrt_stage(ctx: FieldCtx, m: int, variant: str = "norm") -> MappedCode:
    """Two-block maps F_{q^m} -> F_{q^{2m}}, one per h = 1..floor((q-1)/2).

    c generates F_{q^{2m}}^* and w = c^(q^m + 1), its norm, generates F_{q^m}^*.
    variant "norm":     v -> v + v^q c^h      (norm of c^h is w^h)
    variant "restated": v -> v + v^q w^h c    (norm of w^h c is w^(2h+1))
    For m = 2 and q >= 5 the second choice repeats orbits; see the notes in
    the README.
    """
    q = ctx.q
    _check_q(q)
    if variant not in RRT_VARIANTS:
        raise BadParams(f"unknown two-block variant {variant!r}")
    c = ctx.subfield_generator(2 * m)
    w = ctx.pow(c, q**m + 1)
    tau = (q - 1) // 2
    orbits = []
    for h in range(1, tau + 1):
        coeff = ctx.pow(c, h) if variant == "norm" else ctx.mul(ctx.pow(w, h), c)
        phi = LinMap(ctx, m, 2 * m, [1, coeff])
        orbits.append(make_mapped_orbit(phi, ("h", h)))
    prov = {"family": "rrt", "q": q, "k": m, "variant": variant, "gamma": ctx.coords(c), "omega": ctx.coords(w)}
    return MappedCode(
        ctx, m, 2 * m, orbits, prov,
        predicted_size=bounds.rrt_size(q, m),
        predicted_min_distance=2 * m - 2,
    )


@dataclass(frozen=True)
class ZhangIndex:
    l0: int
    alphas: tuple[int, ...]
    a: int
    j: int
    l1: int


def zhang_indices(ctx: FieldCtx, m: int, p: int) -> list[ZhangIndex]:
    """Index tuples in a fixed order: l0, then alphas, a, j, l1, with subfield
    elements listed as 0 followed by ascending powers of the generator."""
    q = ctx.q
    ell = (p - 3) // 2
    sub = list(ctx.iterate_subfield(m))
    out = []
    for l0 in range(ell + 1):
        if l0 == 0:
            alpha_sets = [()]
        else:
            alpha_sets = [t + (last,) for t in itertools.product(sub, repeat=l0 - 1) for last in sub[1:]]
        for alphas in alpha_sets:
            for a in sub:
                for j in range(q - 1):
                    for l1 in range(l0, ell + 1):
                        out.append(ZhangIndex(l0, alphas, a, j, l1))
    return out


def zhang_map(ctx: FieldCtx, m: int, p: int, idx: ZhangIndex, c: int, w: int) -> LinMap:
    """u -> u P(c) + w^j (u^q + a u) c^(l1+1), P(c) = 1 + sum alpha_i c^i."""
    P = 1
    for i, al in enumerate(idx.alphas, start=1):
        P = ctx.add(P, ctx.mul(al, ctx.pow(c, i)))
    t = ctx.mul(ctx.pow(w, idx.j), ctx.pow(c, idx.l1 + 1))
    c0 = ctx.add(P, ctx.mul(t, idx.a))
    return LinMap(ctx, m, p * m, [c0, t])


def zhang_stage(ctx: FieldCtx, m: int, p: int) -> MappedCode:
    q = ctx.q
    _check_zhang(m, p)
    c = ctx.subfield_generator(p * m)
    w = ctx.subfield_generator(m)
    orbits = []
    for idx in zhang_indices(ctx, m, p):
        phi = zhang_map(ctx, m, p, idx, c, w)
        label = ("l0", idx.l0, "alphas", [ctx.coords(x) for x in idx.alphas], "a", ctx.coords(idx.a), "j", idx.j, "l1", idx.l1)
        orbits.append(make_mapped_orbit(phi, _freeze(label)))
    prov = {"family": "zhang", "q": q, "k": m, "p": p, "gamma": ctx.coords(c), "omega": ctx.coords(w)}
    return MappedCode(
        ctx, m, p * m, orbits, prov,
        predicted_size=bounds.zhang_size(q, m, p),
        predicted_min_distance=2 * m - 2,
    )


def _freeze(x):
    if isinstance(x, (list, tuple)):
        return tuple(_freeze(v) for v in x)
    return x


# --- tower plans ----------------------------------------------------------------


@dataclass(frozen=True)
class TowerPlan:
    """Stage ratios applied innermost first; their product is n/k."""

    q: int
    k: int
    stages: tuple[int, ...]
    ordering: str = "descending"
    blocks: tuple[tuple[int, int], ...] = ()
    e: int = 0

    @property
    def r(self) -> int:
        out = 1
        for s in self.stages:
            out *= s
        return out

    @property
    def n(self) -> int:
        return self.r * self.k


def parse_blocks(text: str) -> list[tuple[int, int]]:
    """'5:1,3:2' -> [(5, 1), (3, 2)]."""
    out = []
    for part in filter(None, (s.strip() for s in text.split(","))):
        p, _, e = part.partition(":")
        out.append((int(p), int(e or 1)))
    return out


def plan_tower(q: int, k: int, e: int = 0, blocks=(), ordering: str = "descending") -> TowerPlan:
    """Default order: odd primes descending innermost, then the 2-power block.

    ordering "custom:3,5,2" lists the prime blocks innermost first instead.
    """
    blocks = [(int(p), int(x)) for p, x in blocks]
    primes = [p for p, _ in blocks]
    if len(set(primes)) != len(primes):
        raise PrimesNotDistinct(f"repeated primes in {primes}")
    for p, x in blocks:
        if p < 3 or not is_prime(p):
            raise NotOddPrime(f"{p} is not an odd prime")
        if x < 1:
            raise BadParams(f"exponent of {p} must be positive")
    if e < 0:
        raise BadParams("e must be non-negative")
    exps = dict(blocks)
    if e:
        exps[2] = e
    if ordering == "descending":
        order = sorted((p for p in exps if p != 2), reverse=True) + ([2] if e else [])
    elif ordering.startswith("custom:"):
        order = [int(x) for x in ordering[len("custom:"):].split(",") if x.strip()]
        if sorted(order) != sorted(exps):
            raise BadParams(f"custom ordering {order} must list each prime block once: {sorted(exps)}")
    else:
        raise BadParams(f"unknown ordering {ordering!r}")
    stages = tuple(p for p in order for _ in range(exps[p]))
    if not stages:
        raise BadParams("empty tower")
    return TowerPlan(q, k, stages, ordering, tuple(blocks), e)


def build_tower(
    plan: TowerPlan, ctx: FieldCtx | None = None, policy: str = "error", variant: str = "norm"
) -> CyclicCode:
    """Right-associated nesting of one single-stage code per ratio in the plan."""
    q, k = plan.q, plan.k
    if 2 in plan.stages:
        _check_q(q)
    if any(s != 2 for s in plan.stages) and k < 2:
        raise KTooSmall(f"k = {k}: the odd-prime construction needs k >= 2")
    ctx = ctx or field_for(q, plan.n)
    m = k
    code = None
    for s in plan.stages:
        stage = rrt_stage(ctx, m, variant) if s == 2 else zhang_stage(ctx, m, s)
        code = stage.as_cyclic() if code is None else odot_codes(stage, code, policy=policy)
        m *= s
    code.provenance = descriptor(plan)
    if 2 in plan.stages:
        code.provenance["variant"] = variant
    code.provenance["gamma_choice"] = "subfield generator of each stage's codomain"
    code.predicted_size = bounds.tower_size(q, k, plan.stages)
    code.predicted_min_distance = 2 * k - 2
    return code


def descriptor(plan: TowerPlan, family: str | None = None) -> dict:
    if family is None:
        kinds = set(plan.stages)
        if kinds == {2}:
            family = "rrt" if len(plan.stages) == 1 else "nested2e"
        elif 2 in kinds:
            family = "mixed"
        elif len(kinds) == 1:
            family = "zhang" if len(plan.stages) == 1 else "nestedpe"
        else:
            family = "multiprime"
    return {
        "family": family,
        "q": plan.q,
        "k": plan.k,
        "n": plan.n,
        "e": plan.e,
        "blocks": [list(b) for b in plan.blocks],
        "ordering": plan.ordering,
        "stages": list(plan.stages),
        "seed_free": True,
    }


# --- public constructors ----------------------------------------------------------


def construct_rrt(q: int, k: int, ctx: FieldCtx | None = None, variant: str = "norm") -> MappedCode:
    _check_q(q)
    if k < 1:
        raise KTooSmall("k must be positive")
    ctx = ctx or field_for(q, 2 * k)
    code = rrt_stage(ctx, k, variant)
    code.provenance = descriptor(plan_tower(q, k, e=1), "rrt")
    code.provenance["variant"] = variant
    code.provenance["gamma_choice"] = "subfield generator of F_(q^2k); omega its norm"
    return code


def construct_zhang(q: int, k: int, p: int, ctx: FieldCtx | None = None) -> MappedCode:
    _check_zhang(k, p)
    ctx = ctx or field_for(q, p * k)
    code = zhang_stage(ctx, k, p)
    code.provenance = descriptor(plan_tower(q, k, blocks=[(p, 1)]), "zhang")
    code.provenance["gamma_choice"] = "subfield generator of F_(q^pk); omega generator of F_(q^k)"
    return code


def construct_nested_2e(q: int, k: int, e: int, policy: str = "error", variant: str = "norm") -> CyclicCode:
    _check_q(q)
    if e < 1:
        raise BadParams("e must be at least 1")
    if e == 1:
        return construct_rrt(q, k, variant=variant).as_cyclic()
    return build_tower(plan_tower(q, k, e=e), policy=policy, variant=variant)


def construct_nested_pe(q: int, k: int, p: int, e: int, policy: str = "error") -> CyclicCode:
    _check_zhang(k, p)
    if e < 1:
        raise BadParams("e must be at least 1")
    if e == 1:
        return construct_zhang(q, k, p).as_cyclic()
    return build_tower(plan_tower(q, k, blocks=[(p, e)]), policy=policy)


def construct_multi_prime(q: int, k: int, blocks, ordering: str = "descending", policy: str = "error") -> CyclicCode:
    if k < 2:
        raise KTooSmall(f"k = {k}: the odd-prime construction needs k >= 2")
    return build_tower(plan_tower(q, k, blocks=blocks, ordering=ordering), policy=policy)


def construct_mixed(
    q: int, k: int, e: int, blocks, ordering: str = "descending", policy: str = "error", variant: str = "norm"
) -> CyclicCode:
    _check_q(q)
    if e < 1:
        raise BadParams("e must be at least 1 for the mixed family")
    if not blocks:
        raise BadParams("the mixed family needs at least one odd prime block")
    if k < 2:
        raise KTooSmall(f"k = {k}: the odd-prime construction needs k >= 2")
    return build_tower(plan_tower(q, k, e=e, blocks=blocks, ordering=ordering), policy=policy, variant=variant)


def single_orbit_tower(q: int, k: int, ratios=(3, 3)) -> CyclicCode:
    """Nesting of one-orbit codes {u + u^q c} (c generating each stage's
    codomain), i.e. the a = 0, j = 0, l0 = l1 = 0 member of each odd stage."""
    n = k
    for r in ratios:
        n *= r
    ctx = field_for(q, n)
    m = k
    code = None
    for r in ratios:
        c = ctx.subfield_generator(r * m)
        phi = LinMap(ctx, m, r * m, [1, c])
        stage = MappedCode(ctx, m, r * m, [make_mapped_orbit(phi, ("u+u^q c",))], {"family": "single", "k": m, "r": r})
        code = stage.as_cyclic() if code is None else odot_codes(stage, code)
        m *= r
    code.provenance = {"family": "single_orbit_tower", "q": q, "k": k, "stages": list(ratios), "seed_free": True}
    size = 1
    m = k
    for r in ratios:
        size *= (q ** (r * m) - 1) // (q - 1)
        m *= r
    code.predicted_size = size
    code.predicted_min_distance = 2 * k - 2
    return code
