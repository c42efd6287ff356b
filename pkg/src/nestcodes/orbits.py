"""Singer-cycle orbits, stabilizers and exact distance/size checks for
multi-orbit cyclic subspace codes.

Two subspaces U, W of equal dimension k meet in dim(U ∩ aW) = d exactly when
the quotient a = u/w is hit by (q^d - 1)/(q - 1) pairs (u, [w]) with u in U*
and [w] running over the projective points of W.  Counting discrete-log
differences therefore gives every intersection dimension over all scalars at
once, in O(q^{2k}) work instead of one rank computation per scalar.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DuplicateOrbits, ZeroSubspace
from .field import FieldCtx
from .subspaces import SubspaceFq, _all_vectors, intersect_dim, scalar_mul_log


@dataclass(frozen=True)
class Budget:
    max_sweep_ops: int = 10**10
    max_enumerate: int = 5 * 10**6


DEFAULT_BUDGET = Budget()


# --- single orbits -----------------------------------------------------------


def stabilizer_degree(V: SubspaceFq) -> int:
    """Largest t | n such that the generator of F_{q^t}^* fixes V."""
    if V.k == 0:
        raise ZeroSubspace("stabilizer of the zero subspace is undefined")
    ctx = V.ctx
    L = V.logs
    best = 1
    for t in ctx.subfield_degrees:
        step = ctx.subfield_log_step(t)
        if np.array_equal(np.sort((L + step) % ctx.N), L):
            best = t
    return best


def orbit_size(V: SubspaceFq, m: int | None = None, t: int | None = None) -> int:
    """Orbit length under F_{q^m}^* (m defaults to the ambient degree)."""
    ctx = V.ctx
    m = ctx.n if m is None else m
    t = stabilizer_degree(V) if t is None else t
    return (ctx.q**m - 1) // (ctx.q**t - 1)


def enumerate_orbit(V: SubspaceFq, m: int | None = None, budget: Budget = DEFAULT_BUDGET) -> Iterator[SubspaceFq]:
    ctx = V.ctx
    m = ctx.n if m is None else m
    size = orbit_size(V, m)
    if size > budget.max_enumerate:
        raise BudgetExceeded(f"orbit of length {size} exceeds enumeration budget")
    step = ctx.subfield_log_step(m)
    for e in range(size):
        yield scalar_mul_log(e * step, V)


def orbit_key(V: SubspaceFq) -> tuple[bytes, int]:
    """Invariant of the orbit of V, plus a shift s with V = g^s * K.

    K is the orbit member containing 1 whose sorted log list is
    lexicographically least; the key is that list.
    """
    if V.k == 0:
        return b"", 0
    N = V.ctx.N
    L = V.logs
    D = (L[None, :] - L[:, None]) % N
    D.sort(axis=1)
    row = int(np.lexsort(D.T[::-1])[0])
    return D[row].tobytes(), int(L[row])


def orbits_equivalent(U: SubspaceFq, W: SubspaceFq) -> bool:
    """True iff aW = U for some nonzero a.

    Any such a sends some w to the least-log element of U, so only the |W*|
    quotients u0/w need testing.
    """
    if U.k != W.k:
        return False
    if U.k == 0:
        return True
    return _equivalence_shift(U, W) is not None


def _equivalence_shift(U: SubspaceFq, W: SubspaceFq) -> int | None:
    N = U.ctx.N
    LU, LW = U.logs, W.logs
    for lw in LW:
        e = int(LU[0] - lw) % N
        if np.array_equal(np.sort((LW + e) % N), LU):
            return e
    return None


def is_sidon(V: SubspaceFq) -> tuple[bool, int | None]:
    """(True, None) if dim(V ∩ aV) <= 1 for every a outside F_q, else
    (False, log of a violating a)."""
    if V.k == 0:
        raise ZeroSubspace("Sidon test needs a nonzero subspace")
    ctx = V.ctx
    vals, dims = _ratio_dims(ctx, V.logs, V.logs)
    outside = vals % (ctx.N // (ctx.q - 1)) != 0 if ctx.q > 2 else vals != 0
    bad = outside & (dims > 1)
    if bad.any():
        return False, int(vals[np.argmax(bad)])
    return True, None


# --- pairwise intersections ---------------------------------------------------


def _projective_logs(ctx: FieldCtx, L: np.ndarray) -> np.ndarray:
    return np.unique(L % (ctx.N // (ctx.q - 1)))


def _ratio_dims(ctx: FieldCtx, LU: np.ndarray, LW: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For every a with U ∩ aW nonzero: (log a, dim(U ∩ aW)), sorted by log a."""
    P = _projective_logs(ctx, LW)
    diffs = (LU[:, None] - P[None, :]) % ctx.N
    vals, counts = np.unique(diffs.ravel(), return_counts=True)
    return vals, _dims_from_counts(ctx.q, counts)


def _dims_from_counts(q: int, counts: np.ndarray) -> np.ndarray:
    pts = counts * (q - 1) + 1  # = q^d
    dims = np.zeros(counts.shape, dtype=np.int64)
    while (pts > 1).any():
        big = pts > 1
        dims[big] += 1
        pts = np.where(big, pts // q, pts)
    return dims


def max_alpha_intersection(U: SubspaceFq, W: SubspaceFq, same_orbit: bool, m: int | None = None) -> int:
    """max over nonzero a in F_{q^m} of dim(U ∩ aW); when same_orbit, scalars
    with aW = U are skipped.  Returns -1 if no scalar is left to consider."""
    return max_alpha_intersection_witness(U, W, same_orbit, m)[0]


def max_alpha_intersection_witness(
    U: SubspaceFq, W: SubspaceFq, same_orbit: bool, m: int | None = None
) -> tuple[int, int | None]:
    if U.ctx is not W.ctx:
        from .errors import MixedFields

        raise MixedFields("subspaces live in different fields")
    if U.k == 0 or W.k == 0:
        return 0, None
    ctx = U.ctx
    vals, dims = _ratio_dims(ctx, U.logs, W.logs)
    if m is not None and m != ctx.n:
        # only scalars of F_{q^m} count
        keep = vals % ctx.subfield_log_step(m) == 0
        vals, dims = vals[keep], dims[keep]
    if same_orbit:
        keep = dims < U.k
        vals, dims = vals[keep], dims[keep]
        if vals.size == 0:
            # every scalar either maps W onto U or meets it trivially
            m = ctx.n if m is None else m
            return (0, None) if stabilizer_degree(U) < m else (-1, None)
    if vals.size == 0:
        return 0, None
    i = int(np.argmax(dims))
    return int(dims[i]), int(vals[i])


def sweep_max_intersection(
    U: SubspaceFq, W: SubspaceFq, same_orbit: bool, m: int | None = None
) -> int:
    """Literal scalar sweep with a rank computation per scalar.

    Slow reference used to cross-check the log-difference method.
    """
    ctx = U.ctx
    m = ctx.n if m is None else m
    step = ctx.subfield_log_step(m)
    best = -1
    for e in range(ctx.q**m - 1):
        aW = scalar_mul_log(e * step, W)
        if same_orbit and aW == U:
            continue
        best = max(best, intersect_dim(U, aW))
    return best


# --- codes ----------------------------------------------------------------------


@dataclass
class OrbitRep:
    rep: SubspaceFq
    stab_degree: int
    map: object = None  # LinMap whose image is rep, when known
    label: tuple = ()

    def to_json(self) -> dict:
        out = self.rep.to_json()
        out["stab_degree"] = self.stab_degree
        if self.label:
            out["label"] = list(self.label)
        if self.map is not None:
            out["map"] = self.map.to_json()
        return out


def make_orbit_rep(V: SubspaceFq, map=None, label: tuple = ()) -> OrbitRep:
    return OrbitRep(V, stabilizer_degree(V), map, tuple(label))


@dataclass
class CyclicCode:
    """Union of Singer orbits Orb(V_i) inside F_{q^m} ⊆ ambient field.

    Orbits are taken under F_{q^m}^*; m defaults to the ambient degree.
    """

    ctx: FieldCtx
    k: int
    reps: list[OrbitRep]
    m: int | None = None
    provenance: dict = field(default_factory=dict)
    predicted_size: int | None = None
    predicted_min_distance: int | None = None

    def __post_init__(self):
        if self.m is None:
            self.m = self.ctx.n
        for r in self.reps:
            if r.rep.k != self.k:
                raise ValueError("all representatives must have dimension k")

    def orbit_sizes(self) -> list[int]:
        q = self.ctx.q
        return [(q**self.m - 1) // (q**r.stab_degree - 1) for r in self.reps]

    def to_json(self) -> dict:
        return {
            "field": self.ctx.to_json(),
            "k": self.k,
            "m": self.m,
            "reps": [r.to_json() for r in self.reps],
            "provenance": self.provenance,
            "predicted_size": self.predicted_size,
            "predicted_min_distance": self.predicted_min_distance,
        }


def is_full_length_code(C: CyclicCode) -> bool:
    return all(r.stab_degree == 1 for r in C.reps)


def duplicate_orbit_pairs(reps: Sequence[SubspaceFq]) -> list[tuple[int, int]]:
    """Pairs (first index, later index) of reps lying in the same orbit."""
    seen: dict[bytes, int] = {}
    dups = []
    for i, V in enumerate(reps):
        key = orbit_key(V)[0]
        if key in seen:
            dups.append((seen[key], i))
        else:
            seen[key] = i
    return dups


def code_size(C: CyclicCode, mode: str = "formula", budget: Budget = DEFAULT_BUDGET) -> int:
    if mode == "formula":
        dups = duplicate_orbit_pairs([r.rep for r in C.reps])
        if dups:
            raise DuplicateOrbits(f"{len(dups)} representative pairs share an orbit", dups)
        return sum(C.orbit_sizes())
    if mode == "enumerate":
        return _enumerate_size(C, budget)
    raise ValueError(f"unknown size mode {mode!r}")


def _enumerate_size(C: CyclicCode, budget: Budget) -> int:
    if not C.reps:
        return 0
    total = sum(C.orbit_sizes())
    if total > budget.max_enumerate:
        raise BudgetExceeded(f"{total} codewords exceed the enumeration budget")
    ctx = C.ctx
    N = ctx.N
    step = ctx.subfield_log_step(C.m)
    rows = []
    for r, size in zip(C.reps, C.orbit_sizes()):
        shifts = (np.arange(size, dtype=np.int64) * step)[:, None]
        els = ctx.exp[(r.rep.logs[None, :] + shifts) % N]
        els.sort(axis=1)
        rows.append(els)
    allrows = np.ascontiguousarray(np.vstack(rows))
    view = allrows.view(np.dtype((np.void, allrows.dtype.itemsize * allrows.shape[1])))
    return int(np.unique(view).size)


@dataclass
class DistanceResult:
    distance: int | None  # None when the code has fewer than two codewords
    max_intersection: int
    witness: tuple[int, int, int] | None  # (i, j, log a) with dim(U_i ∩ a U_j) maximal
    method: str
    pairs_checked: int


def _parallel_map(fn: Callable, items: list, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _chunks(n: int, size: int) -> list[range]:
    return [range(a, min(n, a + size)) for a in range(0, n, size)]


def _within_rep(C: CyclicCode, threads: int) -> list[tuple[int, int | None]]:
    return _parallel_map(lambda r: max_alpha_intersection_witness(r.rep, r.rep, True, C.m), C.reps, threads)


def code_min_distance(
    C: CyclicCode,
    method: str = "auto",
    budget: Budget = DEFAULT_BUDGET,
    threads: int = 1,
) -> DistanceResult:
    """Exact minimum subspace distance over all pairs of distinct codewords.

    method "pairs" runs the log-difference count on every representative pair;
    "collision" handles same-orbit pairs that way and finds the deepest
    cross-orbit overlap by matching orbit keys of small subspaces.
    """
    ctx, k, R = C.ctx, C.k, len(C.reps)
    if method == "auto":
        method = "pairs" if R * (R - 1) // 2 <= 20000 or C.m != ctx.n else "collision"
    per_pair = (ctx.q**k - 1) ** 2 // (ctx.q - 1)
    cost = (R * (R + 1) // 2) * per_pair if method == "pairs" else R * per_pair * (1 + _subspace_count(k, ctx.q))
    if cost > budget.max_sweep_ops:
        raise BudgetExceeded(f"distance check needs about {cost} operations")

    best, wit = -1, None
    for i, (d, e) in enumerate(_within_rep(C, threads)):
        if d > best:
            best, wit = d, (i, i, e)
    checked = R
    if method == "pairs":
        pairs = [(i, j) for i in range(R) for j in range(i + 1, R)]

        def run(rng):
            out = (-1, None)
            for idx in rng:
                i, j = pairs[idx]
                d, e = max_alpha_intersection_witness(C.reps[i].rep, C.reps[j].rep, False, C.m)
                if d > out[0]:
                    out = (d, (i, j, e))
            return out

        for d, w in _parallel_map(run, _chunks(len(pairs), 256), threads):
            if d > best:
                best, wit = d, w
        checked += len(pairs)
    elif method == "collision":
        if C.m != ctx.n:
            raise ValueError("collision method needs the code to span the ambient field")
        d, w = _cross_collision(C, floor=max(best, 0))
        if d > best:
            best, wit = d, w
        checked += R * (R - 1) // 2
    else:
        raise ValueError(f"unknown distance method {method!r}")
    if best < 0:
        return DistanceResult(None, -1, None, method, checked)
    return DistanceResult(2 * k - 2 * best, best, wit, method, checked)


def _subspace_count(k: int, q: int) -> int:
    from .subspaces import gaussian_binomial

    return sum(gaussian_binomial(k, t, q) for t in range(1, k + 1))


def _sub_coefficient_matrices(q: int, k: int, t: int) -> list[np.ndarray]:
    """RREF t x k coefficient matrices, one per t-dim subspace of F_q^k."""
    out = []
    for pivots in itertools.combinations(range(k), t):
        free = [(r, c) for r in range(t) for c in range(pivots[r] + 1, k) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            M = np.zeros((t, k), dtype=np.int64)
            for r, c in enumerate(pivots):
                M[r, c] = 1
            for (r, c), v in zip(free, vals):
                M[r, c] = v
            out.append(M)
    return out


def _cross_collision(C: CyclicCode, floor: int) -> tuple[int, tuple[int, int, int] | None]:
    """Largest t > floor such that representatives i != j have t-dimensional
    subspaces in a common orbit; (floor, None) when there is none."""
    ctx, k, q, N = C.ctx, C.k, C.ctx.q, C.ctx.N
    fq = ctx.fq
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for t in range(k, floor, -1):
        if t == 0:
            break
        mats = _sub_coefficient_matrices(q, k, t)
        combos = _all_vectors(q, t)
        idx_sets = [(fq.matmul(combos, M) @ weights)[1:] for M in mats]
        seen: dict[bytes, tuple[int, int]] = {}
        for i, r in enumerate(C.reps):
            els = r.rep.elements
            for idx in idx_sets:
                L = np.sort(ctx.log[els[idx]])
                D = (L[None, :] - L[:, None]) % N
                D.sort(axis=1)
                row = int(np.lexsort(D.T[::-1])[0])
                key = D[row].tobytes()
                shift = int(L[row])
                prev = seen.get(key)
                if prev is None:
                    seen[key] = (i, shift)
                elif prev[0] != i:
                    j, sj = prev
                    return t, (j, i, (sj - shift) % N)
    return floor, None


@dataclass
class SampleReport:
    samples: int
    violations: int
    seed: int
    worst: tuple[int, int, int, int] | None  # (dim, i, j, log a)


def sampled_distance_check(
    C: CyclicCode,
    max_intersection: int,
    samples: int,
    seed: int,
    batch: int = 1_000_000,
    threads: int = 1,
) -> SampleReport:
    """Draw (i, j, a) uniformly and count codeword pairs U_i, aU_j (distinct)
    meeting in more than max_intersection dimensions.  Not exhaustive."""
    ctx, q, N = C.ctx, C.ctx.q, C.ctx.N
    R = len(C.reps)
    step = ctx.subfield_log_step(C.m)
    group = q**C.m - 1
    L = np.vstack([r.rep.logs for r in C.reps])
    stab_steps = np.array([ctx.subfield_log_step(r.stab_degree) for r in C.reps], dtype=np.int64)
    size = ctx.size
    members = np.sort((np.arange(R, dtype=np.int64)[:, None] * size + ctx.exp[L]).ravel())
    children = np.random.SeedSequence(seed).spawn(max(1, -(-samples // batch)))

    def run(b):
        n = min(batch, samples - b * batch)
        rng = np.random.default_rng(children[b])
        i = rng.integers(0, R, n)
        j = rng.integers(0, R, n)
        e = rng.integers(0, group, n) * step
        cand = ctx.exp[(L[j] + e[:, None]) % N] + i[:, None] * size
        pos = np.searchsorted(members, cand)
        pos[pos == members.size] = 0
        hits = (members[pos] == cand).sum(axis=1)
        dims = _hits_to_dims(q, hits)
        same = (i == j) & (e % stab_steps[i] == 0)
        bad = (dims > max_intersection) & ~same
        if bad.any():
            w = int(np.argmax(np.where(bad, dims, -1)))
            worst = (int(dims[w]), int(i[w]), int(j[w]), int(e[w]))
        else:
            worst = None
        return int(bad.sum()), worst

    violations, worst = 0, None
    for v, w in _parallel_map(run, list(range(len(children))), threads):
        violations += v
        if w is not None and (worst is None or w[0] > worst[0]):
            worst = w
    return SampleReport(samples, violations, seed, worst)


def _hits_to_dims(q: int, hits: np.ndarray) -> np.ndarray:
    # hits counts nonzero common elements: q^d - 1
    pts = hits + 1
    dims = np.zeros(hits.shape, dtype=np.int64)
    while (pts > 1).any():
        big = pts > 1
        dims[big] += 1
        pts = np.where(big, pts // q, pts)
    return dims
