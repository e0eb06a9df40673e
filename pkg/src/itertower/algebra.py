"""Exact dense polynomial arithmetic.

A :class:`Poly` holds coefficients constant term first.  Coefficients are
Python ints / :class:`~fractions.Fraction` (the ring Q), or themselves
``Poly`` objects, which is how elements of Q[t][x] such as
``phi^n(x) - t`` are represented.  Mixing a scalar with a ``Poly``
coefficient is allowed: a scalar is read as a constant of Q[t].

Resultants take one of three routes:

* Q:    clear denominators, then the subresultant PRS over Z;
* Q[t]: evaluate t at integer points, take scalar resultants, interpolate;
* anything else (and the test oracle): a fraction-free Bareiss determinant
  of the Sylvester matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import count
from math import gcd, lcm
from typing import Any, Iterable, Sequence

from .errors import (BothZero, ConstantInput, DegreeGuardExceeded,
                     DomainMismatch, ResultantNotUnit)

DEFAULT_DEGREE_GUARD = 2 ** 20


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(a, b):
    """Exact quotient a / b in Q or Q[t]."""
    if isinstance(a, Poly) or isinstance(b, Poly):
        a = a if isinstance(a, Poly) else Poly.const(a)
        b = b if isinstance(b, Poly) else Poly.const(b)
        return a.exact_div(b)
    return _simplify(Fraction(a) / b)


class Poly:
    """Immutable dense univariate polynomial."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        cs = [_simplify(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls((0,) * k + (c,))

    # -- basic structure -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return self.coeffs == (other,)

    def __hash__(self):
        if not self.coeffs:
            return hash(0)
        if len(self.coeffs) == 1:
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    @property
    def is_nested(self) -> bool:
        """True when some coefficient is itself a polynomial (Q[t] entries)."""
        return any(isinstance(c, Poly) for c in self.coeffs)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        return other if isinstance(other, Poly) else Poly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    def __rmul__(self, other):
        return Poly(other * c for c in self.coeffs)

    def scale(self, c) -> "Poly":
        """Multiply every coefficient by the ring element ``c``."""
        return Poly(x * c for x in self.coeffs)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, v):
        """Horner evaluation at an element of the coefficient ring.

        For scalar-coefficient polynomials a ``Poly`` argument gives the
        composition.  Use :meth:`compose` for nested polynomials.
        """
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return _simplify(acc) if not isinstance(acc, Poly) else acc

    def compose(self, other: "Poly") -> "Poly":
        return compose(self, other)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lcb = other.lc
        if len(r) - 1 < db:
            return Poly(), Poly(r)
        q = [0] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            f = _div(c, lcb)
            q[i - db] = f
            for j, b in enumerate(other.coeffs):
                r[i - db + j] = r[i - db + j] - f * b
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self:
            return self
        lc = self.lc
        return Poly(_div(c, lc) for c in self.coeffs)

    def map_coeffs(self, f) -> "Poly":
        return Poly(f(c) for c in self.coeffs)

    def at_t(self, t0) -> "Poly":
        """Specialize a Q[t]-coefficient polynomial at t = t0."""
        return Poly(c(t0) if isinstance(c, Poly) else c for c in self.coeffs)

    # -- formatting ------------------------------------------------------
    def format(self, var: str = "x", inner: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if isinstance(c, Poly):
                body = c.format(inner)
                if sum(1 for y in c.coeffs if y) > 1:
                    sign, body = "+", f"({body})"
                elif body.startswith("-"):
                    sign, body = "-", body[1:]
                else:
                    sign = "+"
            else:
                sign = "-" if c < 0 else "+"
                body = str(abs(c))
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            if mono:
                term = mono if body == "1" else f"{body}*{mono}"
            else:
                term = body
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r})"


X = Poly.x()


def as_poly(obj) -> Poly:
    """Coerce a Poly, coefficient sequence, or polynomial text into a Poly."""
    if isinstance(obj, Poly):
        return obj
    if isinstance(obj, str):
        from .parsing import parse_poly
        return parse_poly(obj)
    return Poly(Fraction(c) if isinstance(c, str) else c for c in obj)


def _domain(p: Poly):
    if p.degree <= 0:
        return None
    return "Q[t]" if p.is_nested else "Q"


# -- composition and iteration -------------------------------------------

def compose(P: Poly, Q: Poly) -> Poly:
    """P(Q(x))."""
    dp, dq = _domain(P), _domain(Q)
    if dp and dq and dp != dq:
        raise DomainMismatch(f"cannot compose a polynomial over {dp} with one over {dq}")
    out = Poly()
    for c in reversed(P.coeffs):
        out = out * Q + Poly.const(c)
    return out


def iterate(phi: Poly, n: int, guard: int = DEFAULT_DEGREE_GUARD) -> Poly:
    """The n-fold composite of ``phi``; ``iterate(phi, 0) == x``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = max(phi.degree, 1)
    if d ** n > guard:
        raise DegreeGuardExceeded(d ** n, guard)
    out = X
    for _ in range(n):
        out = compose(phi, out)
    return out


def derivative(P: Poly) -> Poly:
    return P.derivative()


def tower_poly(phi: Poly, n: int, guard: int = DEFAULT_DEGREE_GUARD) -> Poly:
    """Phi_n(x, t) = phi^n(x) - t, as a polynomial in x over Q[t]."""
    it = iterate(phi, n, guard)
    cs = [Poly.const(c) for c in it.coeffs]
    cs[0] = cs[0] - Poly.x()
    return Poly(cs)


# -- rational <-> integer -------------------------------------------------

def integer_form(P: Poly) -> tuple[list[int], int]:
    """(coefficients over Z, D) with P = (1/D) * ints."""
    dens = [Fraction(c).denominator for c in P.coeffs]
    D = reduce(lcm, dens, 1)
    return [int(Fraction(c) * D) for c in P.coeffs], D


def primitive_part(P: Poly) -> Poly:
    """Integer polynomial with content 1 and positive leading coefficient."""
    ints, _ = integer_form(P)
    g = reduce(gcd, ints, 0)
    if g == 0:
        return Poly()
    if ints[-1] < 0:
        g = -g
    return Poly(c // g for c in ints)


# -- resultants -------------------------------------------------------------

def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer coefficient lists."""
    a = list(a)
    lb = b[-1]
    nb = len(b)
    e = len(a) - nb + 1
    while len(a) >= nb:
        lead = a[-1]
        shift = len(a) - nb
        a = [x * lb for x in a]
        if lead:
            for i in range(nb - 1):
                a[i + shift] -= lead * b[i]
        a.pop()
        e -= 1
    while a and a[-1] == 0:
        a.pop()
    if e > 0 and a:
        m = lb ** e
        a = [x * m for x in a]
    return a


def _resultant_int(A: list, B: list) -> int:
    """Resultant over Z by the subresultant PRS (both degrees >= 1)."""
    m, n = len(A) - 1, len(B) - 1
    ca, cb = reduce(gcd, A), reduce(gcd, B)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    t = ca ** n * cb ** m
    s = 1
    if m < n:
        A, B = B, A
        if m % 2 and n % 2:
            s = -s
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        A, B = B, [x // (g * h ** delta) for x in R]
        g = A[-1]
        if delta >= 1:
            h = g ** delta // h ** (delta - 1)
        if len(B) == 1:
            da = len(A) - 1
            h = B[0] ** da // h ** (da - 1) if da >= 1 else h
            return s * t * h


def _resultant_rational(P: Poly, Q: Poly):
    a, da = integer_form(P)
    b, db = integer_form(Q)
    r = _resultant_int(a, b)
    if (P.degree * Q.degree) % 2:
        r = -r
    return _simplify(Fraction(r, da ** Q.degree * db ** P.degree))


def _tdeg(c) -> int:
    if isinstance(c, Poly):
        return max(c.degree, 0)
    return 0


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Lagrange interpolation over Q via Newton divided differences."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly.const(coef[-1])
    for i in range(n - 2, -1, -1):
        out = out * Poly((-xs[i], 1)) + coef[i]
    return out


def _sample_points():
    yield 0
    for k in count(1):
        yield k
        yield -k


def _resultant_interp(P: Poly, Q: Poly) -> Poly:
    a = max((_tdeg(c) for c in P.coeffs), default=0)
    b = max((_tdeg(c) for c in Q.coeffs), default=0)
    bound = Q.degree * a + P.degree * b
    lp, lq = P.lc, Q.lc
    xs, ys = [], []
    for t0 in _sample_points():
        if len(xs) == bound + 1:
            break
        if (lp(t0) if isinstance(lp, Poly) else lp) == 0:
            continue
        if (lq(t0) if isinstance(lq, Poly) else lq) == 0:
            continue
        xs.append(t0)
        ys.append(resultant(P.at_t(t0), Q.at_t(t0)))
    return interpolate(xs, ys)


def resultant(P: Poly, Q: Poly):
    """Res_x(P, Q) = lc(Q)^deg(P) * prod of P over the roots of Q.

    This root-product normalization is the Sylvester determinant of (Q, P);
    it differs from det Syl(P, Q) by (-1)^(deg P * deg Q).  Works over Q
    and over Q[t].  A zero argument gives 0.
    """
    P, Q = as_poly(P), as_poly(Q)
    if not P and not Q:
        raise BothZero("resultant of two zero polynomials")
    if not P or not Q:
        return 0
    if P.degree == 0:
        return P.lc ** Q.degree
    if Q.degree == 0:
        return Q.lc ** P.degree
    if P.is_nested or Q.is_nested:
        return _resultant_interp(P, Q)
    return _resultant_rational(P, Q)


def sylvester_matrix(P: Poly, Q: Poly) -> list[list]:
    m, n = P.degree, Q.degree
    size = m + n
    rows = []
    pc = list(reversed(P.coeffs))
    qc = list(reversed(Q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(M: list[list]):
    """Fraction-free determinant over any exact integral domain."""
    M = [list(r) for r in M]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = _div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_resultant(P: Poly, Q: Poly):
    """Resultant as a Sylvester determinant; the reference oracle.

    Uses the matrix of (Q, P) so the normalization matches :func:`resultant`.
    """
    if P.degree <= 0 or Q.degree <= 0:
        return resultant(P, Q)
    return bareiss_det(sylvester_matrix(Q, P))


def discriminant(P: Poly):
    """(-1)^(m(m-1)/2) Res(P, P') / lc(P)."""
    P = as_poly(P)
    m = P.degree
    if m < 1:
        raise ConstantInput("discriminant needs degree >= 1")
    r = resultant(P, P.derivative())
    if (m * (m - 1) // 2) % 2:
        r = -r
    return _div(r, P.lc)


# -- gcd and square-free parts over Q ------------------------------------

def poly_gcd(P: Poly, Q: Poly) -> Poly:
    """Monic gcd over Q."""
    while Q:
        P, Q = Q, P % Q
    return P.monic()


def squarefree_part(P: Poly, p: int | None = None):
    """Product of the distinct irreducible factors of ``P``.

    Over Z (``p is None``) the result is primitive with positive leading
    coefficient; over F_p (``p`` given) it is monic, as a coefficient tuple.
    """
    if p is not None:
        from . import gfp
        return tuple(gfp.squarefree_part(gfp.from_poly(P, p), p))
    P = as_poly(P)
    if not P:
        raise ValueError("squarefree part of the zero polynomial")
    if P.degree == 0:
        return Poly.const(1)
    g = poly_gcd(P, P.derivative())
    return primitive_part(P // g)


def squarefree_decomposition(P: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm over Q: pairs (monic squarefree factor, multiplicity)."""
    P = P.monic()
    out = []
    dP = P.derivative()
    a = poly_gcd(P, dP)
    b = P // a
    c = dP // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def rational_roots(P: Poly) -> dict[Fraction, int]:
    """All rational roots of a nonzero polynomial over Q, with multiplicity."""
    from .ntheory import factorint

    def divisors(n):
        ds = [1]
        for q, e in factorint(n).items():
            ds = [d * q ** k for d in ds for k in range(e + 1)]
        return ds

    roots: dict[Fraction, int] = {}
    for factor, mult in squarefree_decomposition(as_poly(P)):
        f = primitive_part(factor)
        cs = list(f.coeffs)
        while cs and cs[0] == 0:
            roots[Fraction(0)] = roots.get(Fraction(0), 0) + mult
            cs.pop(0)
        if len(cs) <= 1:
            continue
        deg = len(cs) - 1
        for u in divisors(cs[0]):
            for v in divisors(cs[-1]):
                if gcd(u, v) != 1:
                    continue
                for su in (u, -u):
                    if sum(c * su ** i * v ** (deg - i) for i, c in enumerate(cs)) == 0:
                        r = Fraction(su, v)
                        roots[r] = roots.get(r, 0) + mult
    return dict(sorted(roots.items()))


# -- discriminant of a composition -------------------------------------------

@dataclass(frozen=True)
class CompositionCheck:
    holds: bool
    lhs: Any
    rhs: Any
    Q: Poly
    correction: Any = None  # predicted lhs / rhs when A = 1

    @property
    def holds_corrected(self) -> bool | None:
        if self.correction is None:
            return None
        return self.lhs == self.correction * self.rhs


def simon_identity_check(P: Poly, A: Poly, B: Poly) -> CompositionCheck:
    """Compare both sides of the composition identity for R(x, y) = A(y) x + B(y).

    ``P`` is over Q or Q[t]; ``A`` and ``B`` are polynomials in y over Q
    with Res_y(A, B) = +-1.  The left side is disc_y Q(y) where
    Q(y) = Res_x(P(x), R(x, y)); the right side is
    (disc_x P)^(deg_y R) * Res_x(P, disc_y R).

    With the root-product resultant used here the identity is exact only
    when P and B are monic and m (k - 1) is even, m = deg P, k = deg B.
    For A = 1 in general
    lhs = (-1)^(m (k-1)) * lc(P)^(k-1) * lc(B)^(k m (m-1)) * rhs,
    and that factor is returned as ``correction``.
    """
    P, A, B = as_poly(P), as_poly(A), as_poly(B)
    r = resultant(A, B)
    if r not in (1, -1):
        raise ResultantNotUnit(f"Res_y(A, B) = {r}, expected +-1")
    m = P.degree
    # Res_x(P, a x + b) = sum_i p_i (-b)^i a^(m-i) for a linear second argument.
    Q = Poly()
    for i, p_i in enumerate(P.coeffs):
        term = (-B) ** i * A ** (m - i)
        if isinstance(p_i, Poly):
            Q = Q + Poly(p_i * c for c in term.coeffs)
        else:
            Q = Q + term * p_i
    lhs = discriminant(Q)
    deg_r = max(A.degree, B.degree)
    # R as a polynomial in y with coefficients B_j + A_j x in Q[x]
    R_y = Poly(Poly((B[j], A[j])) for j in range(deg_r + 1))
    disc_R = discriminant(R_y)
    if not isinstance(disc_R, Poly):
        disc_R = Poly.const(disc_R)
    rhs = discriminant(P) ** deg_r * resultant(P, disc_R)
    correction = None
    if A == 1 and B.degree >= 1:
        k = B.degree
        sign = -1 if (m * (k - 1)) % 2 else 1
        correction = P.lc ** (k - 1) * (sign * Fraction(B.lc) ** (k * m * (m - 1)))
    return CompositionCheck(holds=(lhs == rhs), lhs=lhs, rhs=rhs, Q=Q, correction=correction)
