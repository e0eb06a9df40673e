"""Critical and branch data, orbits, and post-critical finiteness.

PCF decisions are exact whenever the branch points (critical values) are
rational.  Orbits of rational points are followed with exact fractions and
stopped by one of two certificates of escape:

* magnitude: once ``|x| > R`` with ``R = max(1, (1 + sum_{i<d} |a_i|) / |a_d|)``
  the orbit is strictly increasing in absolute value;
* negative valuation: a value with negative valuation at a prime of good
  reduction can never be preperiodic;
* p-adic escape at a bad prime p: if ``v_p(x) < T_p`` where
  ``T_p = min(min_i (v(a_i) - v(a_d)) / (d - i), -v(a_d) / (d - 1))``, the
  leading term dominates and ``v_p`` strictly decreases from then on.

If neither fires and no cycle shows up within the caps, the answer is
"unknown", never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .algebra import Poly, X, as_poly, compose, discriminant, poly_gcd, rational_roots, resultant
from .errors import NonRationalBranch, NonRationalCritical, NotQuadratic, Undecidable, ZeroDerivative
from .ntheory import factorint

MAX_STEPS = 10_000
MAX_BITS = 100_000


# -- critical and branch data ---------------------------------------------

@dataclass(frozen=True)
class CriticalDatum:
    point: Fraction
    multiplicity: int


@dataclass(frozen=True)
class BranchDatum:
    point: Fraction
    multiplicity: int


def critical_data(phi) -> tuple[list[CriticalDatum], list[BranchDatum]]:
    """Rational critical points of ``phi`` and the branch points they map to."""
    phi = as_poly(phi)
    dphi = phi.derivative()
    if not dphi:
        raise ZeroDerivative("phi' is identically zero")
    roots = rational_roots(dphi)
    if sum(roots.values()) != dphi.degree:
        raise NonRationalCritical(f"phi' = {dphi} has irrational roots")
    crit = [CriticalDatum(r, m) for r, m in roots.items()]
    fibres: dict[Fraction, int] = {}
    for c in crit:
        beta = Fraction(phi(c.point))
        fibres[beta] = fibres.get(beta, 0) + c.multiplicity
    branch = [BranchDatum(b, m) for b, m in sorted(fibres.items())]
    return crit, branch


def branch_polynomial(phi) -> Poly:
    """Res_x(phi'(x), phi(x) - y), a polynomial in y vanishing on the branch points.

    Its roots are the critical values phi(r), each with multiplicity M_beta.
    """
    phi = as_poly(phi)
    shifted = Poly([Poly.const(c) for c in phi.coeffs])
    shifted = shifted - Poly.const(Poly.x())
    return resultant(shifted, phi.derivative())


def branch_data(phi) -> list[BranchDatum]:
    """Branch points with multiplicities, computed without the critical points.

    Raises NonRationalBranch if some critical value is irrational.
    """
    phi = as_poly(phi)
    if not phi.derivative():
        raise ZeroDerivative("phi' is identically zero")
    B = branch_polynomial(phi)
    roots = rational_roots(B)
    if sum(roots.values()) != phi.degree - 1:
        raise NonRationalBranch("some critical value is irrational")
    return [BranchDatum(b, m) for b, m in roots.items()]


# -- orbits -----------------------------------------------------------------

@dataclass(frozen=True)
class OrbitShape:
    preperiod: int
    period: int
    points: tuple  # distinct orbit values, in order of appearance


@dataclass(frozen=True)
class Escape:
    start: Fraction
    step: int
    value: Fraction
    criterion: str  # "magnitude", "negative_valuation" or "p_adic_escape"
    bound: Fraction | None = None
    prime: int | None = None

    def to_json(self):
        kind = {"magnitude": "escape_at_step"}.get(self.criterion, self.criterion)
        out = {"kind": kind, "start": str(self.start), "step": self.step}
        if self.bound is not None:
            out["bound"] = str(self.bound)
        if self.prime is not None:
            out["prime"] = str(self.prime)
        return out


def escape_radius(phi: Poly) -> Fraction:
    cs = [Fraction(c) for c in phi.coeffs]
    lead = abs(cs[-1])
    return max(Fraction(1), (1 + sum(abs(c) for c in cs[:-1])) / lead)


def bad_primes(phi: Poly) -> set[int]:
    """Primes at which phi fails to have good reduction."""
    ps = set()
    for c in phi.coeffs:
        den = Fraction(c).denominator
        if den > 1:
            ps.update(factorint(den))
    num = abs(Fraction(phi.lc).numerator)
    if num > 1:
        ps.update(factorint(num))
    return ps


def padic_thresholds(phi: Poly, primes) -> dict[int, Fraction]:
    """T_p for each prime: v_p(x) < T_p forces v_p of the orbit to -infinity."""
    from .ntheory import valuation
    d = phi.degree
    out = {}
    for p in primes:
        vd = valuation(phi.lc, p)
        t = Fraction(-vd, d - 1)
        for i, c in enumerate(phi.coeffs[:-1]):
            if c:
                t = min(t, Fraction(valuation(c, p) - vd, d - i))
        out[p] = t
    return out


def _good_prime_in_denominator(den: int, bad: set[int]):
    for q in bad:
        while den % q == 0:
            den //= q
    if den == 1:
        return None
    return min(factorint(den))


def orbit_shape(phi, x0, max_steps: int = MAX_STEPS):
    """Exact (preperiod, period) of x0 under phi, or an :class:`Escape`.

    Raises :class:`Undecidable` when neither a cycle nor an escape
    certificate appears within the step and height caps.
    """
    phi = as_poly(phi)
    if phi.degree < 2:
        raise ValueError("orbit analysis needs degree >= 2")
    x = Fraction(x0)
    R = escape_radius(phi)
    bad = bad_primes(phi)
    thresholds = padic_thresholds(phi, sorted(bad))
    seen: dict[Fraction, int] = {}
    points = []
    for i in range(max_steps + 1):
        if x in seen:
            first = seen[x]
            return OrbitShape(first, i - first, tuple(points))
        seen[x] = i
        points.append(x)
        if abs(x) > R:
            return Escape(Fraction(x0), i, x, "magnitude", bound=R)
        if x.denominator > 1:
            q = _good_prime_in_denominator(x.denominator, bad)
            if q is not None:
                return Escape(Fraction(x0), i, x, "negative_valuation", prime=q)
        if x:
            for q, t in thresholds.items():
                if _val(x, q) < t:
                    return Escape(Fraction(x0), i, x, "p_adic_escape", bound=t, prime=q)
        if max(x.numerator.bit_length(), x.denominator.bit_length()) > MAX_BITS:
            raise Undecidable(f"orbit of {x0} exceeded the height cap after {i} steps")
        x = Fraction(phi(x))
    raise Undecidable(f"orbit of {x0} neither cycles nor escapes within {max_steps} steps")


def _val(x: Fraction, p: int) -> int:
    from .ntheory import valuation
    return valuation(x, p)


# -- PCF verdicts -------------------------------------------------------------

@dataclass(frozen=True)
class PCF:
    post_critical_set: tuple
    orbit_shapes: dict = field(default_factory=dict)
    certificate: str = "orbit"
    critical_points: tuple | None = None
    verdict: str = "pcf"

    def to_json(self):
        return {"verdict": "pcf",
                "post_critical_set": [str(v) for v in self.post_critical_set]}


@dataclass(frozen=True)
class NotPCF:
    witness: Escape
    verdict: str = "not_pcf"

    def to_json(self):
        return {"verdict": "not_pcf", "witness": self.witness.to_json()}


@dataclass(frozen=True)
class Unknown:
    reason: str
    verdict: str = "unknown"

    def to_json(self):
        return {"verdict": "unknown", "reason": self.reason}


def _forward_closure(phi, starts):
    out = set()
    for s in starts:
        x = Fraction(s)
        while x not in out:
            out.add(x)
            x = Fraction(phi(x))
    return tuple(sorted(out))


def is_pcf(phi, heuristic_float: bool = False, max_steps: int = MAX_STEPS):
    """Decide post-critical finiteness of ``phi``.

    Returns :class:`PCF`, :class:`NotPCF` or :class:`Unknown`.  The stored
    post-critical set is the forward-orbit closure of the branch points.
    """
    phi = as_poly(phi)
    if phi.degree < 2:
        raise ValueError("PCF questions need degree >= 2")
    crit_points = None
    try:
        crit, branch = critical_data(phi)
        crit_points = tuple(c.point for c in crit)
        starts = crit_points
    except NonRationalCritical:
        try:
            branch = branch_data(phi)
        except NonRationalBranch:
            if cfsr_verify(phi).is_cfsr:
                return PCF((), {}, certificate="cfsr")
            if heuristic_float:
                return _float_heuristic(phi)
            return Unknown("irrational critical values")
        starts = tuple(b.point for b in branch)

    shapes = {}
    for s in starts:
        try:
            res = orbit_shape(phi, s, max_steps)
        except Undecidable as exc:
            return Unknown(str(exc))
        if isinstance(res, Escape):
            return NotPCF(res)
        shapes[s] = (res.preperiod, res.period)
    pcs = _forward_closure(phi, [b.point for b in branch])
    return PCF(pcs, shapes, certificate="orbit", critical_points=crit_points)


def post_critical_set(phi, include_critical_points: bool = False) -> tuple:
    """Rational post-critical set; optionally adjoin the critical points."""
    v = is_pcf(phi)
    if not isinstance(v, PCF) or (v.certificate != "orbit"):
        raise NonRationalBranch("post-critical set is not known to be finite and rational")
    pts = set(v.post_critical_set)
    if include_critical_points:
        if v.critical_points is None:
            raise NonRationalCritical("critical points are irrational")
        pts.update(v.critical_points)
    return tuple(sorted(pts))


def _float_heuristic(phi, steps: int = 1000) -> Unknown:
    cs = [float(c) for c in phi.coeffs]
    crit = np.roots(list(reversed([i * c for i, c in enumerate(cs) if i])))
    radius = 2 + max(abs(c) for c in cs)
    for z in crit:
        for _ in range(steps):
            acc = 0j
            for c in reversed(cs):
                acc = acc * z + c
            z = acc
            if abs(z) > radius:
                return Unknown("heuristic-not-pcf")
    return Unknown("heuristic-pcf")


# -- conjugation and normal forms ---------------------------------------------

def conjugate(phi, alpha, beta) -> Poly:
    """L^{-1} o phi o L for the affine map L(x) = alpha x + beta."""
    phi = as_poly(phi)
    alpha = Fraction(alpha)
    L = Poly((beta, alpha))
    L_inv = Poly((-Fraction(beta) / alpha, 1 / alpha))
    return compose(L_inv, compose(phi, L))


def quad_normal_form(a, b, c) -> Fraction:
    """The r with a x^2 + b x + c conjugate over Q to x^2 - r."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        raise NotQuadratic("leading coefficient is zero")
    r = b * b / 4 - b / 2 - a * c
    # x -> x/a makes the map monic, then translate the branch point to -r
    monic = conjugate(Poly((c, b, a)), 1 / a, 0)
    normal = conjugate(monic, 1, -b / 2)
    assert normal == Poly((-r, 0, 1)), (normal, r)
    return r


def g_sequence(r, N: int) -> list[Fraction]:
    """g_0 = 0, g_{n+1} = r g_n^2 - 1; then r g_n is the n-th iterate of 0 under x^2 - r."""
    r = Fraction(r)
    g = [Fraction(0)]
    for _ in range(N):
        g.append(r * g[-1] ** 2 - 1)
    return g


# -- CFSR and Chebyshev ---------------------------------------------------------

def cfsr_normalized(d: int) -> Poly:
    if d < 2:
        raise ValueError("d must be >= 2")
    return Poly.monomial(d) + Poly.monomial(1, Fraction(d, d - 1))


@dataclass(frozen=True)
class CfsrReport:
    identity_holds: bool
    monic: bool
    simple_critical_points: bool
    rational_critical_fixed: bool | None  # None when critical points are irrational

    @property
    def is_cfsr(self) -> bool:
        return (self.identity_holds and self.monic and self.simple_critical_points
                and self.rational_critical_fixed is not False)


def cfsr_verify(phi) -> CfsrReport:
    """Check phi(x) - x = x phi'(x) / d and that phi' is square-free.

    The identity forces phi(r) = r at every root r of phi', so together
    with square-freeness every critical point is simple and fixed.
    """
    phi = as_poly(phi)
    d = phi.degree
    if d < 2:
        raise ValueError("CFSR check needs degree >= 2")
    dphi = phi.derivative()
    identity = (phi - X) == (X * dphi) * Fraction(1, d)
    simple = poly_gcd(dphi, dphi.derivative()).degree == 0
    try:
        crit, _ = critical_data(phi)
        fixed = all(c.multiplicity == 1 and phi(c.point) == c.point for c in crit)
    except NonRationalCritical:
        fixed = None
    return CfsrReport(identity, phi.lc == 1, simple, fixed)


def chebyshev(d: int) -> Poly:
    """C_d with C_d(z + 1/z) = z^d + z^-d."""
    if d < 0:
        raise ValueError("d must be >= 0")
    prev, cur = Poly.const(2), X
    if d == 0:
        return prev
    for _ in range(d - 1):
        prev, cur = cur, X * cur - prev
    return cur
