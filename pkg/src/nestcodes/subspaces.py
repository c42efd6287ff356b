"""F_q-subspaces of F_{q^n} kept in reduced row-echelon form over F_q."""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

import numpy as np

from .errors import MixedFields, ZeroScalar
from .field import Elem, FieldCtx


class SubspaceFq:
    """An F_q-subspace of the ambient field.

    ``rows`` is the RREF basis matrix; each row holds the F_q coordinates (as
    small-integer codes) of a basis vector w.r.t. g^0, ..., g^(n-1).
    Element lists and discrete logs are computed on first use and cached.
    """

    __slots__ = ("ctx", "rows", "_elements", "_logs", "_key")

    def __init__(self, ctx: FieldCtx, rows: np.ndarray):
        self.ctx = ctx
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, ctx.n)
        rows.flags.writeable = False
        self.rows = rows
        self._elements = None
        self._logs = None
        self._key = None

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    def __repr__(self) -> str:
        return f"SubspaceFq(k={self.k}, n={self.ctx.n}, q={self.ctx.q})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceFq):
            return NotImplemented
        return self.ctx is other.ctx and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = canonical_key(self)
        return self._key

    def basis(self) -> list[Elem]:
        return [int(x) for x in self.ctx.elems_from_fq_coordinates(self.rows)] if self.k else []

    @property
    def elements(self) -> np.ndarray:
        """All q^k elements, zero first, as packed ints."""
        if self._elements is None:
            ctx = self.ctx
            k = self.k
            if k == 0:
                els = np.zeros(1, dtype=np.int64)
            else:
                combos = _all_vectors(ctx.q, k)
                coords = ctx.fq.matmul(combos, self.rows)
                els = ctx.elems_from_fq_coordinates(coords)
            els.flags.writeable = False
            self._elements = els
        return self._elements

    @property
    def logs(self) -> np.ndarray:
        """Sorted discrete logs of the nonzero elements."""
        if self._logs is None:
            els = self.elements
            lg = np.sort(self.ctx.log[els[els != 0]])
            lg.flags.writeable = False
            self._logs = lg
        return self._logs

    def contains(self, x: Elem) -> bool:
        if x == 0:
            return True
        lg = int(self.ctx.log[x])
        i = np.searchsorted(self.logs, lg)
        return bool(i < len(self.logs) and self.logs[i] == lg)

    def to_json(self) -> dict:
        return {"k": self.k, "rows": self.rows.tolist()}


def _all_vectors(q: int, k: int) -> np.ndarray:
    """All vectors of F_q^k as code rows, in lexicographic order."""
    return np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64).reshape(-1, k)


def from_rows(ctx: FieldCtx, M) -> SubspaceFq:
    M = np.asarray(M, dtype=np.int64).reshape(-1, ctx.n)
    if M.shape[0] == 0:
        return SubspaceFq(ctx, M)
    R, piv = ctx.fq.rref(M)
    return SubspaceFq(ctx, R[: len(piv)])


def span(ctx: FieldCtx, gens: Iterable[Elem]) -> SubspaceFq:
    gens = [int(x) for x in gens]
    if any(x < 0 or x >= ctx.size for x in gens):
        raise MixedFields("generator is not an element of this field")
    if not gens:
        return zero_subspace(ctx)
    return from_rows(ctx, ctx.fq_coordinates_arr(np.array(gens, dtype=np.int64)))


def zero_subspace(ctx: FieldCtx) -> SubspaceFq:
    return SubspaceFq(ctx, np.zeros((0, ctx.n), dtype=np.int64))


def full_space(ctx: FieldCtx) -> SubspaceFq:
    return SubspaceFq(ctx, np.eye(ctx.n, dtype=np.int64))


def subfield_subspace(ctx: FieldCtx, d: int) -> SubspaceFq:
    """F_{q^d} viewed as a d-dimensional F_q-subspace."""
    return span(ctx, ctx.subfield_basis(d))


def from_json(ctx: FieldCtx, obj: dict) -> SubspaceFq:
    rows = np.array(obj["rows"], dtype=np.int64).reshape(-1, ctx.n)
    if rows.shape[0] != obj["k"]:
        raise ValueError("row count does not match k")
    V = from_rows(ctx, rows)
    if V.k != obj["k"] or not np.array_equal(V.rows, rows):
        raise ValueError("rows are not a reduced echelon basis")
    return V


def _check_same(U: SubspaceFq, V: SubspaceFq) -> None:
    if U.ctx is not V.ctx:
        raise MixedFields("subspaces live in different fields")


def sum_dim(U: SubspaceFq, V: SubspaceFq) -> int:
    _check_same(U, V)
    if U.k == 0 or V.k == 0:
        return U.k + V.k
    return U.ctx.fq.rank(np.vstack([U.rows, V.rows]))


def intersect_dim(U: SubspaceFq, V: SubspaceFq) -> int:
    return U.k + V.k - sum_dim(U, V)


def distance(U: SubspaceFq, V: SubspaceFq) -> int:
    s = sum_dim(U, V)
    return s - (U.k + V.k - s)


def intersection(U: SubspaceFq, V: SubspaceFq) -> SubspaceFq:
    """Explicit intersection (diagnostics only; the hot paths use intersect_dim)."""
    _check_same(U, V)
    ctx = U.ctx
    if U.k == 0 or V.k == 0:
        return zero_subspace(ctx)
    common = np.intersect1d(U.elements, V.elements)
    return span(ctx, common)


def scalar_mul(alpha: Elem, V: SubspaceFq) -> SubspaceFq:
    if alpha == 0:
        raise ZeroScalar("scaling by zero")
    ctx = V.ctx
    if V.k == 0:
        return V
    return span(ctx, ctx.mul_arr(alpha, np.array(V.basis(), dtype=np.int64)))


def scalar_mul_log(e: int, V: SubspaceFq) -> SubspaceFq:
    """g^e * V."""
    return scalar_mul(V.ctx.gpow(e), V)


def canonical_key(V: SubspaceFq) -> bytes:
    """Fixed-width row-major byte dump of the RREF matrix, prefixed by k."""
    n = V.ctx.n
    width = 1 if V.ctx.q <= 256 else 2
    body = V.rows.astype(np.uint8 if width == 1 else np.uint16).tobytes()
    return bytes([V.k, n]) + body


def element_key(V: SubspaceFq) -> bytes:
    """The sorted element set as bytes; equal iff the subspaces are equal."""
    return np.sort(V.elements).astype(np.int64).tobytes()


def enumerate_subspaces(ctx: FieldCtx, k: int) -> Iterator[SubspaceFq]:
    """Every k-dimensional subspace of F_q^n, once, via RREF pivot patterns."""
    n, q = ctx.n, ctx.q
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            M = np.zeros((k, n), dtype=np.int64)
            for r, c in enumerate(pivots):
                M[r, c] = 1
            for (r, c), v in zip(free, vals):
                M[r, c] = v
            yield SubspaceFq(ctx, M)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
