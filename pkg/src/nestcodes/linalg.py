"""Dense linear algebra over F_p and over small F_q given by lookup tables."""

from __future__ import annotations

import numpy as np


def rref_mod_p(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over the prime field F_p."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - f[:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def inv_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p; raises ValueError if singular."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref_mod_p(np.hstack([M % p, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular over F_%d" % p)
    return R[:, n:].copy()


def rank_mod_p(M: np.ndarray, p: int) -> int:
    return len(rref_mod_p(M, p)[1])


class ScalarField:
    """F_q with elements coded as integers 0..q-1 and full operation tables.

    Code 0 is the zero element and code 1 is the identity; the meaning of the
    remaining codes is fixed by the ambient field that builds the tables.
    """

    def __init__(self, q: int, add: np.ndarray, mul: np.ndarray):
        self.q = q
        self.add = add
        self.mul = mul
        neg = np.zeros(q, dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(q):
            neg[a] = int(np.nonzero(add[a] == 0)[0][0])
            if a:
                inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.neg = neg
        self.inv = inv
        for t in (self.add, self.mul, self.neg, self.inv):
            t.flags.writeable = False

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def rref(self, M) -> tuple[np.ndarray, list[int]]:
        A = np.array(M, dtype=np.int64)
        if A.ndim != 2:
            raise ValueError("expected a matrix")
        rows, cols = A.shape
        add, mul, neg = self.add, self.mul, self.neg
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                A[[r, i]] = A[[i, r]]
            A[r] = mul[self.inv[A[r, c]], A[r]]
            f = A[:, c].copy()
            f[r] = 0
            if f.any():
                A = add[A, neg[mul[f[:, None], A[r][None, :]]]]
            pivots.append(c)
            r += 1
        return A, pivots

    def rank(self, M) -> int:
        M = np.asarray(M)
        if M.size == 0:
            return 0
        return len(self.rref(M)[1])

    def matmul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            out = self.add[out, self.mul[A[:, j][:, None], B[j][None, :]]]
        return out

    def solve_left_inverse(self, S: np.ndarray) -> np.ndarray:
        """Left inverse L (d x n) of a full-column-rank n x d matrix S, so L @ S = I."""
        S = np.asarray(S, dtype=np.int64)
        n, d = S.shape
        R, piv = self.rref(np.hstack([S, np.eye(n, dtype=np.int64)]))
        if piv[:d] != list(range(d)):
            raise ValueError("columns are not independent")
        return R[:d, d:].copy()
