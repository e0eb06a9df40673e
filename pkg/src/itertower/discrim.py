"""Discriminants of the tower Phi_n(x, t) = phi^n(x) - t and what they certify.

The recursion

    D_{n+1} = A^(d^n) * D_n^d * prod_r Phi_{n+1}(r, t)^(m_r),
    A = (-1)^(d(d-1)/2) * d^d * a_d^(d-1),

runs over the critical points r of phi with multiplicities m_r.  That form
is exact for monic phi; in general each step also carries the factor
a_d^((d^n - 1)(d^(n+1) + 1)), which comes from the leading coefficient
of Phi_n = a_d^((d^n - 1)/(d - 1)) x^(d^n) + ...  When the
critical points are irrational the product is taken as a resultant against
phi' after reducing phi^(n+1) modulo phi', so no algebraic numbers appear.
The direct route, disc_x of the full tower polynomial, is kept as an
independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Context, Decimal
from fractions import Fraction
from functools import reduce
from math import gcd

from .algebra import (
    DEFAULT_DEGREE_GUARD, Poly, X, as_poly, compose, discriminant, integer_form,
    iterate, resultant, tower_poly,
)
from .dynamics import PCF, critical_data, is_pcf
from .errors import (
    DegreeGuardExceeded, FactorizationIncomplete, HypothesisFailed, NonRationalBranch,
    NonRationalCritical, NotPcf, NotPrime, PostCriticalT0, ZeroDiscriminant,
)
from .ntheory import factorint, is_prime, is_squarefree, prime_factors, valuation

T = Poly.x()  # the parameter t, as a polynomial over Q


def tower_constant(phi: Poly) -> Fraction:
    """A = (-1)^(d(d-1)/2) d^d a_d^(d-1)."""
    d = phi.degree
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return Fraction(sign * d ** d) * Fraction(phi.lc) ** (d - 1)


def lc_correction(phi: Poly, n: int) -> Fraction:
    """Extra factor in D_{n+1} / D_n^d beyond the monic recursion."""
    d = phi.degree
    return Fraction(phi.lc) ** ((d ** n - 1) * (d ** (n + 1) + 1))


def _check(phi, n, guard):
    phi = as_poly(phi)
    if phi.degree < 2:
        raise ValueError("the tower needs deg(phi) >= 2")
    if n < 1:
        raise ValueError("level n must be >= 1")
    if phi.degree ** n > guard:
        raise DegreeGuardExceeded(phi.degree ** n, guard)
    return phi


def _critical_or_none(phi):
    try:
        crit, _ = critical_data(phi)
        return crit
    except NonRationalCritical:
        return None


def _powmod_compose(phi: Poly, k: int, mod: Poly) -> Poly:
    """phi^k(x) mod ``mod`` by repeated composition with reduction."""
    h = X % mod
    for _ in range(k):
        h = compose(phi, h) % mod
    return h


def _product_term(phi: Poly, level: int, t, crit=None):
    """prod_r Phi_level(r, t)^(m_r); ``t`` is a rational or the Poly T."""
    if crit is not None:
        out = Poly.const(1) if isinstance(t, Poly) else Fraction(1)
        for c in crit:
            v = c.point
            for _ in range(level):
                v = Fraction(phi(v))
            out = out * (Poly.const(v) - t if isinstance(t, Poly) else v - t) ** c.multiplicity
        return out
    dphi = phi.derivative()
    h = _powmod_compose(phi, level, dphi)
    if isinstance(t, Poly):
        shifted = Poly([Poly.const(c) for c in h.coeffs] or [Poly()])
        shifted = shifted - Poly.const(T)
    else:
        shifted = h - t
    deg = max(shifted.degree, 0)
    r = resultant(shifted, dphi)
    scale = Fraction(1) / Fraction(dphi.lc) ** deg
    return r * scale if isinstance(r, Poly) else Fraction(r) * scale


def branch_product(phi, n: int):
    """prod_beta Phi_n(beta, t)^(M_beta) over the rational branch points.

    Equal to the critical-point product at level n + 1.
    """
    phi = as_poly(phi)
    crit = _critical_or_none(phi)
    if crit is None:
        raise NonRationalCritical("branch product needs rational critical data")
    _, branch = critical_data(phi)
    out = Poly.const(1)
    for b in branch:
        v = b.point
        for _ in range(n):
            v = Fraction(phi(v))
        out = out * (Poly.const(v) - T) ** b.multiplicity
    return out


@dataclass(frozen=True)
class DiscPoly:
    value: Poly
    n: int
    provenance: str  # "recursive" or "direct"
    A: Fraction | None = None
    trace: tuple = ()  # (level, product term) for each recursive step

    def __call__(self, t0):
        return self.value(Fraction(t0))


def disc_tower_recursive(phi, n: int, guard: int = DEFAULT_DEGREE_GUARD,
                         use_rational_critical: bool = True) -> DiscPoly:
    phi = _check(phi, n, guard)
    d = phi.degree
    A = tower_constant(phi)
    crit = _critical_or_none(phi) if use_rational_critical else None
    D = discriminant(tower_poly(phi, 1))
    trace = []
    for m in range(1, n):
        prod = _product_term(phi, m + 1, T, crit)
        trace.append((m + 1, prod))
        D = (D ** d) * (prod * (A ** (d ** m) * lc_correction(phi, m)))
    assert D, "discriminant of a separable tower cannot vanish"
    return DiscPoly(D, n, "recursive", A, tuple(trace))


def disc_tower_direct(phi, n: int, guard: int = DEFAULT_DEGREE_GUARD) -> DiscPoly:
    phi = _check(phi, n, guard)
    return DiscPoly(discriminant(tower_poly(phi, n, guard)), n, "direct")


def disc_at(phi, n: int, t0, method: str = "recursive", guard: int = DEFAULT_DEGREE_GUARD):
    """D_n(t0), i.e. disc_x(phi^n(x) - t0)."""
    phi = _check(phi, n, guard)
    t0 = Fraction(t0)
    if method == "direct":
        return Fraction(discriminant(iterate(phi, n, guard) - t0))
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    d = phi.degree
    A = tower_constant(phi)
    crit = _critical_or_none(phi)
    D = Fraction(discriminant(phi - t0))
    for m in range(1, n):
        D = A ** (d ** m) * lc_correction(phi, m) * D ** d * _product_term(phi, m + 1, t0, crit)
    return D


# -- ramification ---------------------------------------------------------------

def _require_pcf(phi) -> PCF:
    v = is_pcf(phi)
    if not isinstance(v, PCF):
        raise NotPcf(f"{phi} is not known to be post-critically finite ({v.verdict})")
    if v.certificate != "orbit":
        raise NonRationalBranch("post-critical set is not rational")
    return v


@dataclass(frozen=True)
class RamifiedSet:
    primes: tuple
    t0: Fraction
    includes_real_place: bool = True
    post_critical_set: tuple = ()

    def to_json(self):
        return {"t0": str(self.t0), "primes": [str(p) for p in self.primes],
                "includes_real_place": self.includes_real_place,
                "post_critical_set": [str(v) for v in self.post_critical_set]}


def ramified_set(phi, t0, include_critical_points: bool = False) -> RamifiedSet:
    """Primes with positive valuation on d, a_d, or some t0 - nu (numerator or denominator)."""
    phi = as_poly(phi)
    v = _require_pcf(phi)
    pcs = set(v.post_critical_set)
    if include_critical_points:
        pcs.update(v.critical_points or ())
    t0 = Fraction(t0)
    if t0 in pcs:
        raise PostCriticalT0(f"t0 = {t0} lies in the post-critical set")
    primes = set(factorint(phi.degree)) | prime_factors(phi.lc)
    for nu in pcs:
        primes |= prime_factors(t0 - nu)
    return RamifiedSet(tuple(sorted(primes)), t0, True, tuple(sorted(pcs)))


def good_reduction(phi, p: int) -> bool:
    phi = as_poly(phi)
    if any(Fraction(c).denominator % p == 0 for c in phi.coeffs):
        return False
    return valuation(phi.lc, p) == 0


def _ord_p(P: Poly, p: int) -> int:
    return min(valuation(c, p) for c in P.coeffs if c)


@dataclass(frozen=True)
class WildReport:
    p: int
    n: int
    t0: int
    disc: int
    v_disc: int
    bound: int
    satisfied: bool
    ord_p_phi_prime: int

    def to_json(self):
        return {"p": str(self.p), "n": self.n, "t0": str(self.t0), "disc": str(self.disc),
                "v_disc": self.v_disc, "bound": str(self.bound),
                "satisfied": self.satisfied, "ord_p_phi_prime": self.ord_p_phi_prime}


def wild_report(phi, p: int, t0, n: int, guard: int = DEFAULT_DEGREE_GUARD) -> WildReport:
    """v_p(disc Phi_n(x, t0)) against the lower bound n d^n."""
    phi = as_poly(phi)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    d = phi.degree
    if d % p:
        raise HypothesisFailed("p_divides_d", f"{p} does not divide {d}")
    if not good_reduction(phi, p):
        raise HypothesisFailed("good_reduction", f"{phi} has bad reduction at {p}")
    if not isinstance(is_pcf(phi), PCF):
        raise HypothesisFailed("pcf", f"{phi} is not known to be PCF")
    t0 = Fraction(t0)
    if t0.denominator != 1:
        raise HypothesisFailed("t0_integer", f"t0 = {t0} is not an integer")
    D = disc_at(phi, n, t0, guard=guard)
    if D == 0:
        raise ZeroDiscriminant(n)
    v = valuation(D, p)
    bound = n * d ** n
    return WildReport(p, n, int(t0), D, v, bound, v >= bound, _ord_p(phi.derivative(), p))


@dataclass(frozen=True)
class RootDisc:
    n: int
    disc: Fraction
    rd: Decimal
    p_parts: dict = field(default_factory=dict)  # p -> p^(v_p(disc)/d^n)

    def to_json(self):
        return {"n": self.n, "disc": str(self.disc), "rd": str(self.rd),
                "p_parts": {str(p): str(v) for p, v in self.p_parts.items()}}


def _root(x: Fraction, e: int, ctx: Context) -> Decimal:
    if x == 1:
        return Decimal(1)
    ln = ctx.divide(ctx.ln(Decimal(x.numerator)) - ctx.ln(Decimal(x.denominator)), e)
    return Context(prec=15).plus(ctx.exp(ln))


def root_disc_sequence(phi, t0, N: int, primes=None) -> list[RootDisc]:
    """rd_n = |disc Phi_n(x, t0)|^(1/d^n) to 15 significant digits, n = 1..N."""
    phi = as_poly(phi)
    d = phi.degree
    primes = sorted(factorint(d)) if primes is None else sorted(primes)
    ctx = Context(prec=50)
    out = []
    for n in range(1, N + 1):
        D = disc_at(phi, n, t0)
        if D == 0:
            raise ZeroDiscriminant(n)
        e = d ** n
        parts = {p: _root(Fraction(p) ** valuation(D, p), e, ctx) for p in primes}
        out.append(RootDisc(n, D, _root(abs(D), e, ctx), parts))
    return out


# -- irreducibility and monogenicity --------------------------------------------

@dataclass(frozen=True)
class EisensteinCert:
    p: int
    shift: int
    n: int
    t0: int
    poly: Poly  # primitive integer form of Phi_n(x + shift, t0)

    def to_json(self):
        return {"certificate": "eisenstein", "p": str(self.p), "shift": self.shift,
                "n": self.n, "t0": str(self.t0), "poly": self.poly.format()}


def _shifts(r):
    yield 0
    for s in range(1, r + 1):
        yield s
        yield -s


def _eisenstein_prime(G: Poly):
    ints, _ = integer_form(G)
    a0, lead = ints[0], ints[-1]
    g = reduce(gcd, ints[:-1], 0)
    if g in (0, 1) or a0 == 0:
        return None
    try:
        ps = factorint(g)
    except FactorizationIncomplete as exc:
        ps = exc.partial or {}
    for p in sorted(ps):
        if lead % p and a0 % (p * p):
            return p
    return None


def eisenstein_check(phi, t0, n: int, shift_range: int = 3, guard: int = DEFAULT_DEGREE_GUARD):
    """Smallest Eisenstein prime over the shifts 0, 1, -1, ..., +-shift_range.

    Returns an :class:`EisensteinCert` or ``None``.  Ties in p go to the
    earliest shift in that order.
    """
    phi = as_poly(phi)
    t0 = Fraction(t0)
    if t0.denominator != 1:
        raise HypothesisFailed("t0_integer", f"t0 = {t0} is not an integer")
    F = iterate(phi, n, guard) - t0
    best = None
    for s in _shifts(shift_range):
        G = compose(F, Poly((s, 1)))
        ints, _ = integer_form(G)
        g = reduce(gcd, ints, 0)
        G = Poly([c // g for c in ints])
        p = _eisenstein_prime(G)
        if p is not None and (best is None or p < best.p):
            best = EisensteinCert(p, s, n, int(t0), G)
    return best


@dataclass(frozen=True)
class MonogenicCert:
    t0: int
    n: int
    D_n: int
    hypotheses: tuple = ("t0 mod 4 in {0, 1}", "t0 + 2 squarefree", "t0 - 2 squarefree")

    @property
    def claim(self) -> str:
        return f"disc O_K_{self.n} = D_{self.n} = {self.D_n}"

    def to_json(self):
        return {"t0": str(self.t0), "n": self.n, "D_n": str(self.D_n),
                "hypotheses": list(self.hypotheses), "claim": self.claim}


def x2m2_disc(t0: int, n: int) -> int:
    """D_1 = 4(t0 + 2), D_{m+1} = 4^(2^m) D_m^2 (2 - t0)."""
    D = 4 * (t0 + 2)
    for m in range(1, n):
        D = 4 ** (2 ** m) * D * D * (2 - t0)
    return D


def monogenic_x2m2(t0, n: int) -> MonogenicCert:
    t0 = Fraction(t0)
    if t0.denominator != 1:
        raise HypothesisFailed("t0_integer", f"t0 = {t0} is not an integer")
    t0 = int(t0)
    if n < 1:
        raise ValueError("level n must be >= 1")
    if t0 % 4 not in (0, 1):
        raise HypothesisFailed("t0_mod_4", f"t0 mod 4 = {t0 % 4}")
    if not is_squarefree(t0 + 2):
        raise HypothesisFailed("t0_plus_2_squarefree", f"t0 + 2 = {t0 + 2}")
    if not is_squarefree(t0 - 2):
        raise HypothesisFailed("t0_minus_2_squarefree", f"t0 - 2 = {t0 - 2}")
    return MonogenicCert(t0, n, x2m2_disc(t0, n))


@dataclass(frozen=True)
class TameReport:
    t0: int
    N: int
    ramified: RamifiedSet
    eisenstein: dict  # n -> EisensteinCert | None
    good_reduction: dict  # p | d -> bool
    valuations: dict  # p | d -> [v_p(disc Phi_n(x, t0)) for n = 1..N]
    tame_evidence: bool
    note: str = ""

    def to_json(self):
        return {
            "t0": str(self.t0), "N": self.N,
            "S": self.ramified.to_json()["primes"],
            "eisenstein": {str(n): (c.to_json() if c else None)
                           for n, c in self.eisenstein.items()},
            "good_reduction": {str(p): g for p, g in self.good_reduction.items()},
            "valuations": {str(p): vs for p, vs in self.valuations.items()},
            "tame_evidence": self.tame_evidence,
            "note": self.note,
        }


def tame_conditions(phi, t0, N: int, shift_range: int = 3) -> TameReport:
    """Evidence on whether primes dividing d can stay out of the ramified set."""
    phi = as_poly(phi)
    S = ramified_set(phi, t0)
    t0 = int(Fraction(t0))
    certs = {n: eisenstein_check(phi, t0, n, shift_range) for n in range(1, N + 1)}
    good, vals = {}, {}
    for p in sorted(factorint(phi.degree)):
        good[p] = good_reduction(phi, p)
        vals[p] = [valuation(disc_at(phi, n, t0), p) for n in range(1, N + 1)]
    tame = all(v == 0 for vs in vals.values() for v in vs)
    note = ""
    if any(good.values()):
        note = "good reduction at a prime dividing d forces phi' to vanish mod p, so the discriminant is divisible by p"
    return TameReport(t0, N, S, certs, good, vals, tame, note)
