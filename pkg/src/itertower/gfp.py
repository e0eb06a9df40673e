"""Polynomials over a prime field F_p as plain int lists, constant term first.

All functions return trimmed lists (no trailing zeros); the zero polynomial
is ``[]``.  Inputs are assumed already reduced into ``range(p)`` unless a
function says otherwise.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadReduction


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a, p):
    return trim(c % p for c in a)


def from_poly(P, p):
    """Reduce a polynomial over Q modulo p; BadReduction if a denominator vanishes."""
    out = []
    for c in P.coeffs:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise BadReduction(p)
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return trim(out)


def deg(a):
    return len(a) - 1


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def scale(a, c, p):
    return trim(x * c % p for x in a)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(c % p for c in out)


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if not c:
            continue
        f = c * inv % p
        q[i - db] = f
        for j in range(db + 1):
            r[i - db + j] -= f * b[j]
    return trim(q), trim(c % p for c in r[:db])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def quo(a, b, p):
    return divmod_(a, b, p)[0]


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def deriv(a, p):
    return trim(i * c % p for i, c in enumerate(a) if i)


def mulmod(a, b, f, p):
    return rem(mul(a, b, p), f, p)


def powmod(a, e, f, p):
    result = [1]
    base = rem(a, f, p)
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = mulmod(base, base, f, p)
    return result


def compose(a, b, p):
    """a(b(x)) over F_p."""
    out = []
    for c in reversed(a):
        out = add(mul(out, b, p), [c], p)
    return out


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def pth_root(a, p):
    # a has only exponents divisible by p; Frobenius is the identity on F_p.
    return trim(a[i] for i in range(0, len(a), p))


def squarefree_decomposition(f, p):
    """Pairs (monic squarefree factor, multiplicity) with f = lc * prod g^m."""
    f = monic(trim(f), p)
    if len(f) <= 1:
        return []
    out = []
    df = deriv(f, p)
    if not df:
        return [(g, m * p) for g, m in squarefree_decomposition(pth_root(f, p), p)]
    c = gcd(f, df, p)
    w = quo(f, c, p)
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = quo(w, y, p)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = quo(c, y, p)
    if len(c) > 1:
        out.extend((g, m * p) for g, m in squarefree_decomposition(pth_root(c, p), p))
    return out


def squarefree_part(f, p):
    out = [1]
    for g, _ in squarefree_decomposition(f, p):
        out = mul(out, g, p)
    return monic(out, p)


def distinct_degree(f, p):
    """Distinct-degree factorization of a monic squarefree f: {degree: count}."""
    f = monic(trim(f), p)
    out: dict[int, int] = {}
    x = [0, 1]
    h = x
    m = 0
    while len(f) - 1 >= 2 * (m + 1):
        m += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out[m] = (len(g) - 1) // m
            f = quo(f, g, p)
            h = rem(h, f, p)
    if len(f) > 1:
        out[len(f) - 1] = out.get(len(f) - 1, 0) + 1
    return out


def is_irreducible(f, p):
    f = trim(f)
    if len(f) <= 1:
        return False
    if len(f) == 2:
        return True
    if len(gcd(f, deriv(f, p), p)) > 1:
        return False
    return distinct_degree(f, p) == {len(f) - 1: 1}
