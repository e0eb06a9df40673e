"""Integer helpers: primality, factorization, valuations."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import FactorizationIncomplete

TRIAL_BOUND = 10 ** 6
RHO_ITERATIONS = 10 ** 7

# Deterministic Miller-Rabin: these bases are exact below 3.3e14 (first
# seven primes) and below 3.3e24 (first twelve).
_MR_SMALL = (2, 3, 5, 7, 11, 13, 17)
_MR_LARGE = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_SMALL if n < 330_000_000_000_000 else _MR_LARGE
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n, c, max_iter):
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    m = 128
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        spent += 2 * r
        r *= 2
        if spent > max_iter:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g


def _rho(n, max_iter):
    """A nontrivial factor of composite ``n``; constants c = 1, 2, ... in turn."""
    budget = max_iter
    for c in range(1, 20):
        g = _brent(n, c, budget)
        if g is None:
            return None
        if g != n:
            return g
    return None


def factorint(n: int, trial_bound: int = TRIAL_BOUND,
              rho_iterations: int = RHO_ITERATIONS) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}``.

    Trial division up to ``trial_bound``, then Brent-Pollard rho.  Raises
    :class:`FactorizationIncomplete` instead of returning a guess.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}

    def add(p, e=1):
        out[p] = out.get(p, 0) + e

    for p in (2, 3):
        while n % p == 0:
            add(p)
            n //= p
    f = 5
    step = 2
    limit = min(trial_bound, isqrt(n))
    while f <= limit:
        if n % f == 0:
            while n % f == 0:
                add(f)
                n //= f
            limit = min(trial_bound, isqrt(n))
        f += step
        step = 6 - step
    if n == 1:
        return dict(sorted(out.items()))
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m <= trial_bound ** 2 or is_prime(m):
            # anything left below trial_bound^2 has no factor under the bound
            add(m)
            continue
        g = _rho(m, rho_iterations)
        if g is None:
            raise FactorizationIncomplete(m, dict(out))
        stack.extend((g, m // g))
    return dict(sorted(out.items()))


def prime_factors(x) -> set[int]:
    """Primes dividing the numerator or denominator of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("0 has no finite set of prime factors")
    ps = set()
    for part in (x.numerator, x.denominator):
        if abs(part) > 1:
            ps.update(factorint(part))
    return ps


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero integer or rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorint(n).values())
