"""Finite fields F_{p^k}, Frobenius orbits and degree censuses over F_p.

Elements of a :class:`FieldCtx` are identified with integer codes
``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` where ``(c_0, ..., c_{k-1})`` are the
coordinates in the power basis of the modulus.  For k = 1 the code of a
residue is the residue itself, so vertex order is 0, 1, ..., p-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import gfp
from .algebra import Poly, as_poly
from .errors import NotPrime
from .ntheory import is_prime


@dataclass(frozen=True)
class FieldCtx:
    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.k

    # -- codes and coordinates --------------------------------------------
    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coords) -> int:
        code = 0
        for c in reversed(tuple(coords)):
            code = code * self.p + c % self.p
        return code

    def name(self, code: int) -> str:
        if self.k == 1:
            return str(code)
        return ",".join(map(str, self.decode(code)))

    def element(self, value) -> "FFElem":
        if isinstance(value, int):
            return FFElem(self, (value % self.p,) + (0,) * (self.k - 1))
        coords = tuple(c % self.p for c in value)
        if len(coords) > self.k:
            coords = tuple(gfp.rem(list(coords), list(self.modulus), self.p))
        return FFElem(self, coords + (0,) * (self.k - len(coords)))

    def elements(self):
        return [FFElem(self, self.decode(c)) for c in range(self.q)]

    # -- scalar arithmetic on coordinate tuples ------------------------------
    def _pad(self, a):
        a = list(a)
        return tuple(a + [0] * (self.k - len(a)))

    def mul(self, a, b):
        prod = gfp.mul(gfp.trim(a), gfp.trim(b), self.p)
        return self._pad(gfp.rem(prod, list(self.modulus), self.p))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def power(self, a, e):
        r = self._pad([1])
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    # -- vectorized arithmetic over many elements ------------------------------
    @cached_property
    def coords(self) -> np.ndarray:
        """(q, k) array of coordinates of every element in code order."""
        codes = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.k), dtype=np.int64)
        for i in range(self.k):
            out[:, i] = codes % self.p
            codes //= self.p
        return out

    def vec_mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        p, k = self.p, self.k
        prod = np.zeros((A.shape[0], 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[:, i + j] = (prod[:, i + j] + A[:, i] * B[:, j]) % p
        mod = self.modulus
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[:, top]
            for j in range(k):
                prod[:, top - k + j] = (prod[:, top - k + j] - c * mod[j]) % p
        return prod[:, :k]

    def vec_encode(self, A: np.ndarray) -> np.ndarray:
        codes = np.zeros(A.shape[0], dtype=np.int64)
        for i in range(self.k - 1, -1, -1):
            codes = codes * self.p + A[:, i]
        return codes

    def eval_all(self, coeff_codes) -> np.ndarray:
        """Codes of f(v) for every element v, f given by coefficient codes."""
        X = self.coords
        acc = np.zeros_like(X)
        for c in reversed(list(coeff_codes)):
            acc = self.vec_mul(acc, X)
            acc = (acc + np.array(self.decode(c), dtype=np.int64)) % self.p
        return self.vec_encode(acc)

    @cached_property
    def frobenius(self) -> np.ndarray:
        """Codes of v^p for every element v."""
        X = self.coords
        result = np.zeros_like(X)
        result[:, 0] = 1
        base, e = X.copy(), self.p
        while e:
            if e & 1:
                result = self.vec_mul(result, base)
            e >>= 1
            if e:
                base = self.vec_mul(base, base)
        return self.vec_encode(result)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Degree over F_p (Frobenius orbit size) of every element."""
        frob = self.frobenius
        ident = np.arange(self.q, dtype=np.int64)
        out = np.zeros(self.q, dtype=np.int64)
        cur = ident
        for j in range(1, self.k + 1):
            cur = frob[cur]
            hit = (cur == ident) & (out == 0)
            out[hit] = j
        return out


@dataclass(frozen=True)
class FFElem:
    ctx: FieldCtx
    coords: tuple[int, ...]

    @property
    def code(self) -> int:
        return self.ctx.encode(self.coords)

    def _other(self, other):
        if isinstance(other, FFElem):
            return other.coords
        return self.ctx.element(other).coords

    def __add__(self, other):
        return FFElem(self.ctx, self.ctx.add(self.coords, self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.ctx, tuple(-c % self.ctx.p for c in self.coords))

    def __sub__(self, other):
        return self + (-FFElem(self.ctx, self._other(other)))

    def __mul__(self, other):
        return FFElem(self.ctx, self.ctx.mul(self.coords, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, e):
        return FFElem(self.ctx, self.ctx.power(self.coords, e))

    def frobenius(self):
        return self ** self.ctx.p

    def __str__(self):
        return self.ctx.name(self.code)


def make_field(p: int, k: int = 1) -> FieldCtx:
    """F_{p^k} with the lexicographically first monic irreducible modulus.

    Candidates are scanned as constant-first coefficient tuples, so the
    modulus for F_9 is x^2 + 1, i.e. (1, 0, 1).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        return FieldCtx(p, 1, (0, 1))
    for low in product(range(p), repeat=k):
        cand = list(low) + [1]
        if gfp.is_irreducible(cand, p):
            return FieldCtx(p, k, tuple(cand))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def element_degree(a: FFElem) -> int:
    b = a
    for j in range(1, a.ctx.k + 1):
        b = b.frobenius()
        if b == a:
            return j
    raise AssertionError("Frobenius orbit longer than k")  # pragma: no cover


@dataclass(frozen=True)
class DegreeCensus:
    """Multiset of irreducible-factor degrees, counted with multiplicity."""

    entries: dict = field(default_factory=dict)

    def count(self, m: int) -> int:
        return self.entries.get(m, 0)

    @property
    def total_degree(self) -> int:
        return sum(m * c for m, c in self.entries.items())

    def degrees(self) -> list[int]:
        return [m for m in sorted(self.entries) for _ in range(self.entries[m])]

    def to_json(self) -> dict:
        return {str(m): self.entries[m] for m in sorted(self.entries)}

    def __eq__(self, other):
        if isinstance(other, DegreeCensus):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == other
        return NotImplemented


def _as_fp(f, p):
    if isinstance(f, (Poly, str)):
        return gfp.from_poly(as_poly(f), p)
    return gfp.reduce(f, p)


def reduce_poly(phi, p: int) -> tuple[int, ...]:
    """Coefficient-wise reduction of a rational polynomial modulo p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return tuple(gfp.from_poly(as_poly(phi), p))


def ddf_census(f, p: int) -> DegreeCensus:
    """Degrees of the irreducible factors of f over F_p, with multiplicity.

    Square-free decomposition first, then distinct-degree factorization of
    each square-free part via gcd(f, x^(p^m) - x).
    """
    f = _as_fp(f, p)
    if not f:
        raise ValueError("census of the zero polynomial")
    total: dict[int, int] = {}
    for g, mult in gfp.squarefree_decomposition(f, p):
        for m, c in gfp.distinct_degree(g, p).items():
            total[m] = total.get(m, 0) + c * mult
    return DegreeCensus(dict(sorted(total.items())))


def squarefree_part(f, p: int) -> tuple[int, ...]:
    return tuple(gfp.squarefree_part(_as_fp(f, p), p))
