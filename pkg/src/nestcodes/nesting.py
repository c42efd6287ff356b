"""Injective F_q-linear maps between subfields and the nesting product of
cyclic codes built from them."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegreeMismatch, DomainViolation, DuplicateOrbits, NotInjective, ZeroScalar
from .field import Elem, FieldCtx
from .orbits import CyclicCode, OrbitRep, make_orbit_rep, orbit_key, stabilizer_degree
from .subspaces import SubspaceFq, span


class LinMap:
    """x -> sum_j c_j x^(q^j) from F_{q^dom} into F_{q^codom}.

    Coefficients are folded modulo dom (x^(q^dom) = x on the domain), so
    there are exactly dom of them.
    """

    __slots__ = ("ctx", "dom_degree", "codom_degree", "lin_coeffs", "_matrix", "_image")

    def __init__(self, ctx: FieldCtx, dom_degree: int, codom_degree: int, lin_coeffs: Sequence[Elem]):
        if ctx.n % codom_degree or codom_degree % dom_degree:
            raise DegreeMismatch(f"need {dom_degree} | {codom_degree} | {ctx.n}")
        folded = [0] * dom_degree
        for j, c in enumerate(lin_coeffs):
            folded[j % dom_degree] = ctx.add(folded[j % dom_degree], int(c))
        for c in folded:
            if not ctx.in_subfield(c, codom_degree):
                raise DegreeMismatch(f"coefficient outside F_(q^{codom_degree})")
        self.ctx = ctx
        self.dom_degree = dom_degree
        self.codom_degree = codom_degree
        self.lin_coeffs = tuple(folded)
        self._matrix = None
        self._image = None

    def __repr__(self) -> str:
        return f"LinMap({self.dom_degree}->{self.codom_degree}, coeffs={list(self.lin_coeffs)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return (
            self.ctx is other.ctx
            and self.dom_degree == other.dom_degree
            and self.codom_degree == other.codom_degree
            and self.lin_coeffs == other.lin_coeffs
        )

    def __hash__(self) -> int:
        return hash((self.dom_degree, self.codom_degree, self.lin_coeffs))

    def apply_arr(self, xs) -> np.ndarray:
        """Evaluate on an array of domain elements (no domain check)."""
        ctx = self.ctx
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros(xs.shape, dtype=np.int64)
        for j, c in enumerate(self.lin_coeffs):
            if c:
                out = ctx.add_arr(out, ctx.mul_arr(c, ctx.frobenius_arr(xs, j)))
        return out

    @property
    def matrix(self) -> np.ndarray:
        """codom x dom matrix over F_q in the subfield power bases."""
        if self._matrix is None:
            ctx = self.ctx
            imgs = self.apply_arr(np.array(ctx.subfield_basis(self.dom_degree)))
            M = ctx.subfield_coordinates_arr(imgs, self.codom_degree).T
            M.flags.writeable = False
            self._matrix = M
        return self._matrix

    @property
    def injective(self) -> bool:
        return self.ctx.fq.rank(self.matrix) == self.dom_degree

    def image(self) -> SubspaceFq:
        if self._image is None:
            self._image = span(self.ctx, self.apply_arr(np.array(self.ctx.subfield_basis(self.dom_degree))))
        return self._image

    def to_json(self) -> dict:
        return {
            "dom_degree": self.dom_degree,
            "codom_degree": self.codom_degree,
            "lin_coeffs": [self.ctx.coords(c) for c in self.lin_coeffs],
        }


def linmap_from_json(ctx: FieldCtx, obj: dict) -> LinMap:
    return LinMap(ctx, obj["dom_degree"], obj["codom_degree"], [ctx.from_coords(c) for c in obj["lin_coeffs"]])


def identity_map(ctx: FieldCtx, m: int) -> LinMap:
    return LinMap(ctx, m, m, [1])


def map_apply(phi: LinMap, x: Elem) -> Elem:
    if not phi.ctx.in_subfield(x, phi.dom_degree):
        raise DomainViolation(f"argument is not in F_(q^{phi.dom_degree})")
    return int(phi.apply_arr(np.array([x]))[0])


def map_scale(alpha: Elem, phi: LinMap) -> LinMap:
    """x -> alpha * phi(x); the codomain grows to hold alpha if needed."""
    if alpha == 0:
        raise ZeroScalar("scaling a map by zero")
    ctx = phi.ctx
    codom = math.lcm(phi.codom_degree, ctx.degree_of(alpha))
    return LinMap(ctx, phi.dom_degree, codom, [ctx.mul(alpha, c) for c in phi.lin_coeffs])


def map_compose(phi2: LinMap, phi1: LinMap) -> LinMap:
    """phi2 after phi1: sum_i sum_j a_i b_j^(q^i) x^(q^(i+j))."""
    if phi1.codom_degree != phi2.dom_degree:
        raise DegreeMismatch(
            f"inner codomain degree {phi1.codom_degree} != outer domain degree {phi2.dom_degree}"
        )
    ctx = phi1.ctx
    m = phi1.dom_degree
    out = [0] * m
    for i, a in enumerate(phi2.lin_coeffs):
        if a == 0:
            continue
        for j, b in enumerate(phi1.lin_coeffs):
            if b:
                t = (i + j) % m
                out[t] = ctx.add(out[t], ctx.mul(a, ctx.frobenius(b, i)))
    return LinMap(ctx, m, phi2.codom_degree, out)


def odot_subspace(phi: LinMap, V1: SubspaceFq) -> SubspaceFq:
    """phi(V1) for a subspace V1 of the domain of phi."""
    ctx = phi.ctx
    basis = V1.basis()
    for b in basis:
        if not ctx.in_subfield(b, phi.dom_degree):
            raise DomainViolation(f"subspace is not inside F_(q^{phi.dom_degree})")
    if not phi.injective:
        raise NotInjective("outer map is not injective")
    if not basis:
        return V1
    return span(ctx, phi.apply_arr(np.array(basis, dtype=np.int64)))


@dataclass
class MappedOrbit:
    map: LinMap
    rep: SubspaceFq
    stab_degree: int
    label: tuple = ()


def make_mapped_orbit(phi: LinMap, label: tuple = ()) -> MappedOrbit:
    if not phi.injective:
        raise NotInjective(f"map {label} is not injective")
    V = phi.image()
    return MappedOrbit(phi, V, stabilizer_degree(V), tuple(label))


@dataclass
class MappedCode:
    """Orbit representatives of a code in G_q(codom, dom), each the image of
    an injective map F_{q^dom} -> F_{q^codom}."""

    ctx: FieldCtx
    dom_degree: int
    codom_degree: int
    orbits: list[MappedOrbit]
    provenance: dict = field(default_factory=dict)
    predicted_size: int | None = None
    predicted_min_distance: int | None = None

    def __post_init__(self):
        for o in self.orbits:
            if o.map.dom_degree != self.dom_degree or o.map.codom_degree != self.codom_degree:
                raise DegreeMismatch("orbit map degrees differ from the code's")

    def as_cyclic(self) -> CyclicCode:
        reps = [OrbitRep(o.rep, o.stab_degree, o.map, o.label) for o in self.orbits]
        return CyclicCode(
            self.ctx,
            self.dom_degree,
            reps,
            m=self.codom_degree,
            provenance=dict(self.provenance),
            predicted_size=self.predicted_size,
            predicted_min_distance=self.predicted_min_distance,
        )


def odot_orbit_code(C2: MappedCode, V1: SubspaceFq, policy: str = "error") -> CyclicCode:
    inner = CyclicCode(V1.ctx, V1.k, [make_orbit_rep(V1)], m=C2.dom_degree)
    return odot_codes(C2, inner, policy=policy)


def odot_codes(C2: MappedCode, C1: CyclicCode, policy: str = "error") -> CyclicCode:
    """Representatives phi_h2(a * V_h1) for every outer map, inner rep and a in
    a transversal g_m^e (0 <= e < (q^m-1)/(q-1)) of F_q^* in F_{q^m}^*.

    policy "error" raises DuplicateOrbits when two of them share an orbit;
    "dedupe" keeps the first of each orbit and warns.
    """
    ctx = C2.ctx
    if C1.ctx is not ctx:
        raise DegreeMismatch("codes live in different ambient fields")
    m = C2.dom_degree
    if C1.m != m:
        raise DegreeMismatch(f"inner code lives in degree {C1.m}, outer maps start from {m}")
    if C1.k > m:
        raise DegreeMismatch("inner dimension exceeds the outer domain degree")
    if policy not in ("error", "dedupe"):
        raise ValueError(f"unknown duplicate policy {policy!r}")
    q = ctx.q
    g_m = ctx.subfield_generator(m)
    cosets = (q**m - 1) // (q - 1)
    alphas = [ctx.pow(g_m, e) for e in range(cosets)]

    reps: list[OrbitRep] = []
    seen: dict[bytes, int] = {}
    dups: list[tuple[int, int]] = []
    produced = 0
    for h2, outer in enumerate(C2.orbits):
        if not outer.map.injective:
            raise NotInjective(f"outer map {h2} is not injective")
        for h1, inner in enumerate(C1.reps):
            for e, a in enumerate(alphas):
                if inner.map is not None:
                    phi = map_compose(outer.map, map_scale(a, inner.map))
                    V = phi.image()
                    if V.k != C1.k:
                        raise NotInjective("composed map lost rank")
                else:
                    phi = None
                    V = span(ctx, outer.map.apply_arr(ctx.mul_arr(a, np.array(inner.rep.basis()))))
                key = orbit_key(V)[0]
                label = (h2, h1, e)
                if key in seen:
                    dups.append((seen[key], produced))
                else:
                    seen[key] = produced
                    reps.append(make_orbit_rep(V, phi, label))
                produced += 1
    if dups:
        msg = f"{len(dups)} of {produced} nested representatives repeat an earlier orbit"
        if policy == "error":
            raise DuplicateOrbits(msg, dups)
        warnings.warn(msg, stacklevel=2)
    prov = {
        "op": "odot",
        "outer": C2.provenance,
        "inner": C1.provenance,
        "duplicates_removed": len(dups),
    }
    return CyclicCode(ctx, C1.k, reps, m=C2.codom_degree, provenance=prov)


def odot_chain(codes: Sequence[MappedCode], C1: CyclicCode, policy: str = "error") -> CyclicCode:
    """codes[-1] ⊙ (... ⊙ (codes[0] ⊙ C1)); codes[0] is applied first."""
    out = C1
    for C in codes:
        out = odot_codes(C, out, policy=policy)
    return out
