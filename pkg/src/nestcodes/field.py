"""Arithmetic in F_{q^n}, q = p^s, with every subfield F_{q^d} (d | n) living
inside the one ambient field.

An element is a plain ``int``: its coordinate vector over F_p (polynomial basis
modulo the field modulus) packed base p, constant term least significant.
Products, inverses and powers go through discrete log/antilog tables built once
per field; these are caches, the packed coordinates remain the representation.
"""

from __future__ import annotations

import functools
import math
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BadLength,
    BudgetExceeded,
    DivisionByZero,
    NoIrreducibleFound,
    NotADivisor,
    NotInSubfield,
    NotPrime,
)
from .linalg import ScalarField, inv_mod_p, rank_mod_p

Elem = int

DEFAULT_MAX_ELEMENTS = 2**26


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(N: int) -> list[int]:
    out = []
    f = 2
    while f * f <= N:
        if N % f == 0:
            out.append(f)
            while N % f == 0:
                N //= f
        f += 1 if f == 2 else 2
    if N > 1:
        out.append(N)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# --- polynomials over F_p as coefficient lists, low degree first -------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = (a[-1] * lead_inv) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_mulmod(a, b, f, p):
    return _poly_mod(_poly_mul(a, b, p), f, p)


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test for a monic polynomial f (coefficients low degree first)."""
    f = [c % p for c in f]
    D = len(f) - 1
    if D < 1:
        return False
    if D == 1:
        return True
    h = [0, 1]
    for _ in range(D // 2):
        h = _poly_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(f, _trim(diff), p)
        if len(g) != 1:
            return False
    return True


def least_irreducible(p: int, D: int) -> list[int]:
    """Lexicographically least monic irreducible of degree D: lower coefficients
    read as a base-p number with the constant term least significant."""
    for m in range(p**D):
        low = [(m // p**i) % p for i in range(D)]
        f = low + [1]
        if is_irreducible(f, p):
            return f
    raise NoIrreducibleFound(f"no irreducible of degree {D} over F_{p}")


def _digits(x: int, p: int, D: int) -> list[int]:
    out = []
    for _ in range(D):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _pack(c: Sequence[int], p: int) -> int:
    x = 0
    for v in reversed(list(c)):
        x = x * p + int(v)
    return x


class FieldCtx:
    """The ambient field F_{q^n}, q = p^s, with a fixed primitive element g.

    Instances are immutable after construction; build them with make_field.
    """

    def __init__(self, p: int, s: int, n: int, modulus: list[int], g: Elem, tables):
        self.p = p
        self.s = s
        self.n = n
        self.q = p**s
        self.D = s * n
        self.size = p**self.D
        self.N = self.size - 1
        self.modulus = tuple(modulus)
        self.g = g
        self.exp, self.log, self.zech = tables
        self._pw = np.array([p**i for i in range(self.D)], dtype=np.int64)
        self._divisors = tuple(divisors(n))
        self._build_fq()

    # -- identity ----------------------------------------------------------

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.p, self.s, self.n)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, s={self.s}, n={self.n})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "s": self.s,
            "n": self.n,
            "modulus": list(self.modulus),
            "g": self.coords(self.g),
        }

    # -- representation ----------------------------------------------------

    def coords(self, x: Elem) -> list[int]:
        return _digits(int(x), self.p, self.D)

    def from_coords(self, c: Sequence[int]) -> Elem:
        if len(c) != self.D:
            raise BadLength(f"expected {self.D} prime-field coordinates, got {len(c)}")
        return _pack([int(v) % self.p for v in c], self.p)

    def coords_arr(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        return (xs[..., None] // self._pw) % self.p

    def pack_arr(self, C) -> np.ndarray:
        return (np.asarray(C, dtype=np.int64) % self.p) @ self._pw

    # -- arithmetic --------------------------------------------------------

    def add(self, x: Elem, y: Elem) -> Elem:
        if self.p == 2:
            return x ^ y
        if x == 0:
            return y
        if y == 0:
            return x
        lx = int(self.log[x])
        z = int(self.zech[(int(self.log[y]) - lx) % self.N])
        if z < 0:
            return 0
        return int(self.exp[(lx + z) % self.N])

    def neg(self, x: Elem) -> Elem:
        if self.p == 2 or x == 0:
            return x
        return int(self.exp[(int(self.log[x]) + self.N // 2) % self.N])

    def sub(self, x: Elem, y: Elem) -> Elem:
        return self.add(x, self.neg(y))

    def mul(self, x: Elem, y: Elem) -> Elem:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(int(self.log[x]) + int(self.log[y])) % self.N])

    def inv(self, x: Elem) -> Elem:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp[(-int(self.log[x])) % self.N])

    def div(self, x: Elem, y: Elem) -> Elem:
        return self.mul(x, self.inv(y))

    def pow(self, x: Elem, e: int) -> Elem:
        if x == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("negative power of zero")
        return int(self.exp[(int(self.log[x]) * e) % self.N])

    def gpow(self, e: int) -> Elem:
        """g^e."""
        return int(self.exp[e % self.N])

    def frobenius(self, x: Elem, j: int) -> Elem:
        """x^(q^j)."""
        if j < 0:
            raise ValueError("frobenius exponent must be non-negative")
        if x == 0:
            return 0
        return int(self.exp[(int(self.log[x]) * pow(self.q, j, self.N)) % self.N]) if self.N > 1 else x

    # vectorised counterparts on numpy arrays of packed elements

    def mul_arr(self, xs, ys) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        xs, ys = np.broadcast_arrays(xs, ys)
        out = np.zeros(xs.shape, dtype=np.int64)
        m = (xs != 0) & (ys != 0)
        out[m] = self.exp[(self.log[xs[m]] + self.log[ys[m]]) % self.N]
        return out

    def add_arr(self, xs, ys) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        if self.p == 2:
            return xs ^ ys
        return self.pack_arr(self.coords_arr(xs) + self.coords_arr(ys))

    def frobenius_arr(self, xs, j: int) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros(xs.shape, dtype=np.int64)
        m = xs != 0
        out[m] = self.exp[(self.log[xs[m]] * pow(self.q, j, self.N)) % self.N] if self.N > 1 else xs[m]
        return out

    # -- subfields ---------------------------------------------------------

    @property
    def subfield_degrees(self) -> tuple[int, ...]:
        return self._divisors

    def _check_divisor(self, d: int) -> None:
        if d < 1 or self.n % d:
            raise NotADivisor(f"{d} does not divide n={self.n}")

    def subfield_order(self, d: int) -> int:
        return self.q**d

    def subfield_generator(self, d: int) -> Elem:
        """g^((q^n-1)/(q^d-1)), a generator of F_{q^d}^*."""
        self._check_divisor(d)
        return self.gpow(self.N // (self.q**d - 1))

    def subfield_log_step(self, d: int) -> int:
        """Discrete logs of F_{q^d}^* are exactly the multiples of this step."""
        self._check_divisor(d)
        return self.N // (self.q**d - 1)

    def in_subfield(self, x: Elem, d: int) -> bool:
        self._check_divisor(d)
        return self.frobenius(x, d) == x

    def iterate_subfield(self, d: int) -> Iterator[Elem]:
        """0 followed by the powers of subfield_generator(d) in ascending order."""
        self._check_divisor(d)
        step = self.subfield_log_step(d)
        yield 0
        for e in range(self.q**d - 1):
            yield self.gpow(e * step)

    def subfield_elements(self, d: int) -> np.ndarray:
        self._check_divisor(d)
        step = self.subfield_log_step(d)
        out = np.zeros(self.q**d, dtype=np.int64)
        out[1:] = self.exp[np.arange(self.q**d - 1, dtype=np.int64) * step]
        return out

    def norm(self, x: Elem, m: int, d: int) -> Elem:
        """Norm from F_{q^m} down to F_{q^d}: x^((q^m-1)/(q^d-1))."""
        self._check_divisor(m)
        if m % d:
            raise NotADivisor(f"{d} does not divide {m}")
        if not self.in_subfield(x, m):
            raise NotInSubfield(f"element is not in F_(q^{m})")
        return self.pow(x, (self.q**m - 1) // (self.q**d - 1))

    def degree_of(self, x: Elem) -> int:
        """Smallest d | n with x in F_{q^d}."""
        for d in self._divisors:
            if self.frobenius(x, d) == x:
                return d
        return self.n

    def subfield_basis(self, d: int) -> list[Elem]:
        """Power basis 1, w, ..., w^(d-1) of F_{q^d} over F_q, w = subfield_generator(d)."""
        w = self.subfield_generator(d)
        return [self.pow(w, i) for i in range(d)]

    def _subfield_left_inverse(self, d: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_sub_linv", {})
        if d not in cache:
            S = self.fq_coordinates_arr(np.array(self.subfield_basis(d))).T
            L = self.fq.solve_left_inverse(S)
            L.flags.writeable = False
            cache[d] = L
        return cache[d]

    def subfield_coordinates_arr(self, xs, d: int) -> np.ndarray:
        """Coordinates (F_q codes) of elements of F_{q^d} in subfield_basis(d)."""
        xs = np.asarray(xs, dtype=np.int64).reshape(-1)
        V = self.fq_coordinates_arr(xs)
        L = self._subfield_left_inverse(d)
        return self.fq.matmul(V, L.T)

    def order(self, x: Elem) -> int:
        if x == 0:
            raise DivisionByZero("zero has no multiplicative order")
        return self.N // math.gcd(self.N, int(self.log[x])) if self.N > 1 else 1

    # -- F_q coordinates ---------------------------------------------------

    def _build_fq(self) -> None:
        p, s, n, D = self.p, self.s, self.n, self.D
        q = self.q
        zeta = self.subfield_generator(1)
        zpows = [self.pow(zeta, j) for j in range(s)]
        # F_q scalar code c = sum_j c_j p^j stands for sum_j c_j zeta^j
        fq_elems = []
        for code in range(q):
            x = 0
            for j, cj in enumerate(_digits(code, p, s)):
                for _ in range(cj):
                    x = self._slow_add(x, zpows[j])
            fq_elems.append(x)
        self.fq_elems = np.array(fq_elems, dtype=np.int64)
        self._fq_code = {int(e): c for c, e in enumerate(fq_elems)}
        if len(self._fq_code) != q:
            raise RuntimeError("F_q encoding is not injective")
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._fq_code[self.add(fq_elems[a], fq_elems[b])]
                mul[a, b] = self._fq_code[self.mul(fq_elems[a], fq_elems[b])]
        self.fq = ScalarField(q, add, mul)
        # F_p-basis {zeta^j g^i}, column index i*s + j
        cols = []
        for i in range(n):
            gi = self.gpow(i)
            for j in range(s):
                cols.append(self.coords(self.mul(zpows[j], gi)))
        B = np.array(cols, dtype=np.int64).T
        if rank_mod_p(B, p) != D:
            raise RuntimeError("power basis of g is not a basis")
        self._expand_to_poly = B
        self._poly_to_expand = inv_mod_p(B, p)
        self._pws = np.array([p**j for j in range(s)], dtype=np.int64)

    def _slow_add(self, x: int, y: int) -> int:
        return _pack([(a + b) % self.p for a, b in zip(self.coords(x), self.coords(y))], self.p)

    def fq_code(self, a: Elem) -> int:
        """Small-integer code of an element of F_q."""
        try:
            return self._fq_code[int(a)]
        except KeyError:
            raise NotInSubfield("element is not in F_q") from None

    def fq_elem(self, code: int) -> Elem:
        return int(self.fq_elems[code])

    def fq_coordinates(self, x: Elem) -> list[int]:
        """Coordinates of x over F_q in the basis g^0..g^(n-1), as F_q codes."""
        return [int(v) for v in self.fq_coordinates_arr(np.array([x]))[0]]

    def fq_coordinates_arr(self, xs) -> np.ndarray:
        C = self.coords_arr(np.asarray(xs, dtype=np.int64).reshape(-1))
        E = (C @ self._poly_to_expand.T) % self.p
        return E.reshape(-1, self.n, self.s) @ self._pws

    def elem_from_fq_coordinates(self, v: Sequence[int]) -> Elem:
        if len(v) != self.n:
            raise BadLength(f"expected {self.n} F_q coordinates, got {len(v)}")
        return int(self.elems_from_fq_coordinates(np.array([list(v)]))[0])

    def elems_from_fq_coordinates(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        if A.shape[-1] != self.n:
            raise BadLength(f"expected {self.n} F_q coordinates")
        digits = (A[..., None] // self._pws) % self.p
        E = digits.reshape(A.shape[:-1] + (self.D,))
        return self.pack_arr((E @ self._expand_to_poly.T) % self.p)


def _build_tables(p: int, D: int, modulus: list[int], g: Elem):
    size = p**D
    N = size - 1
    pw = np.array([p**i for i in range(D)], dtype=np.int64)
    gc = _digits(g, p, D)
    # column i: coordinates of g * x^i
    Mg = np.zeros((D, D), dtype=np.int64)
    for i in range(D):
        xi = [0] * i + [1]
        col = _poly_mulmod(gc, xi, modulus, p)
        Mg[: len(col), i] = col
    B = max(1, min(N, int(math.isqrt(N)) + 1))
    head = np.zeros((B, D), dtype=np.int64)
    v = np.zeros(D, dtype=np.int64)
    v[0] = 1
    for i in range(B):
        head[i] = v
        v = (Mg @ v) % p
    step = np.eye(D, dtype=np.int64)
    MB = np.eye(D, dtype=np.int64)
    for _ in range(B):
        MB = (Mg @ MB) % p
    exp_c = np.zeros((N, D), dtype=np.int64)
    for start in range(0, N, B):
        blk = (head @ step.T) % p
        stop = min(N, start + B)
        exp_c[start:stop] = blk[: stop - start]
        step = (MB @ step) % p
    exp = exp_c @ pw
    log = np.full(size, -1, dtype=np.int64)
    log[exp] = np.arange(N, dtype=np.int64)
    if (log[1:] < 0).any():
        raise RuntimeError("candidate generator is not primitive")
    zech = np.full(N, -1, dtype=np.int64)
    if p != 2:
        c0 = exp % p
        plus_one = exp - c0 + (c0 + 1) % p
        nz = plus_one != 0
        zech[nz] = log[plus_one[nz]]
    else:
        plus_one = exp ^ 1
        nz = plus_one != 0
        zech[nz] = log[plus_one[nz]]
    for t in (exp, log, zech):
        t.flags.writeable = False
    return exp, log, zech


def _least_primitive(p: int, D: int, modulus: list[int]) -> Elem:
    N = p**D - 1
    if N == 1:
        return 1
    factors = prime_factors(N)
    for cand in range(1, p**D):
        c = _trim(_digits(cand, p, D))
        if all(_poly_powmod(c, N // r, modulus, p) != [1] for r in factors):
            return cand
    raise RuntimeError("no primitive element found")


@functools.lru_cache(maxsize=None)
def _make_field_cached(p: int, s: int, n: int) -> FieldCtx:
    D = s * n
    modulus = least_irreducible(p, D)
    g = _least_primitive(p, D, modulus)
    tables = _build_tables(p, D, modulus, g)
    return FieldCtx(p, s, n, modulus, g, tables)


def make_field(p: int, s: int = 1, n: int = 1, max_elements: int = DEFAULT_MAX_ELEMENTS) -> FieldCtx:
    """Build (or fetch from cache) the field F_{q^n} with q = p^s.

    Modulus: least monic irreducible of degree s*n over F_p. Primitive
    element: least packed integer whose order is q^n - 1.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if s < 1 or n < 1:
        raise ValueError("s and n must be positive")
    if p ** (s * n) > max_elements:
        raise BudgetExceeded(f"field with {p}^{s * n} elements exceeds budget of {max_elements}")
    return _make_field_cached(p, s, n)


def split_prime_power(q: int) -> tuple[int, int]:
    """q = p^s -> (p, s)."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            s = 0
            r = q
            while r % p == 0:
                r //= p
                s += 1
            if r != 1:
                break
            return p, s
    raise NotPrime(f"{q} is not a prime power")


def field_for(q: int, n: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> FieldCtx:
    p, s = split_prime_power(q)
    return make_field(p, s, n, max_elements=max_elements)


def field_from_json(obj: dict) -> FieldCtx:
    ctx = make_field(obj["p"], obj["s"], obj["n"])
    if list(obj["modulus"]) != list(ctx.modulus) or ctx.from_coords(obj["g"]) != ctx.g:
        raise ValueError("serialized field does not match the deterministic construction")
    return ctx
