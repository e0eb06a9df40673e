from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_poly
from itertower.algebra import Poly, X, bareiss_det, iterate, sylvester_matrix, tower_poly
from itertower.discrim import (T, branch_product, disc_at, disc_tower_direct, disc_tower_recursive,
                               eisenstein_check, good_reduction, monogenic_x2m2, ramified_set,
                               root_disc_sequence, tame_conditions, tower_constant, wild_report,
                               x2m2_disc, _product_term)
from itertower.dynamics import post_critical_set
from itertower.errors import (HypothesisFailed, NonRationalBranch, NotPcf, NotPrime,
                              PostCriticalT0, ZeroDiscriminant)
from itertower.ntheory import is_prime, valuation
from itertower.parsing import parse_poly

X2M2 = parse_poly("x^2-2")


def sylvester_disc(P):
    """disc via a Bareiss determinant of Syl(P', P), in the resultant convention used here."""
    m = P.degree
    R = bareiss_det(sylvester_matrix(P.derivative(), P))
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return Fraction(sign) * Fraction(R) / Fraction(P.lc)


class TestTowerDiscriminant:
    def test_x2m2_first_levels(self):
        assert disc_tower_recursive(X2M2, 1).value == 4 * T + 8
        assert disc_tower_recursive(X2M2, 2).value == parse_poly("-256x^3 - 512x^2 + 1024x + 2048")

    def test_x2m2_recursion_symbolic(self):
        prev = disc_tower_recursive(X2M2, 1).value
        for n in range(1, 5):
            cur = disc_tower_recursive(X2M2, n + 1).value
            assert cur == 4 ** (2 ** n) * prev ** 2 * (2 - T)
            prev = cur

    def test_tower_constant(self):
        assert tower_constant(X2M2) == -4
        assert tower_constant(parse_poly("2x^3+1")) == -27 * 4

    def test_routes_agree_on_random_phi(self, rng):
        for _ in range(12):
            phi = random_poly(rng, rng.randint(2, 3))
            n = 2 if phi.degree == 3 else rng.randint(1, 3)
            rec = disc_tower_recursive(phi, n).value
            assert rec == disc_tower_direct(phi, n).value
            # irrational critical points: resultant route for the product term
            assert rec == disc_tower_recursive(phi, n, use_rational_critical=False).value

    def test_disc_at_against_sylvester_oracle(self, rng):
        for _ in range(15):
            phi = random_poly(rng, rng.randint(2, 4))
            n = 2 if phi.degree == 2 else 1
            t0 = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
            expected = sylvester_disc(iterate(phi, n) - t0)
            assert disc_at(phi, n, t0) == expected
            assert disc_at(phi, n, t0, method="direct") == expected

    def test_disc_at_examples(self):
        assert disc_at(X2M2, 2, 1) == 2304
        assert disc_at(X2M2, 1, 0) == 8
        assert disc_at(X2M2, 1, -2) == 0
        assert disc_tower_recursive(X2M2, 3)(1) == disc_at(X2M2, 3, 1)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            disc_at(X2M2, 1, 0, method="sideways")

    def test_branch_product_is_next_level_critical_product(self):
        for src in ("x^2-2", "x^3-3x", "2x^2+x-1", "x^4-2x^2+3"):
            phi = parse_poly(src)
            for n in range(1, 4):
                assert branch_product(phi, n) == _product_term(phi, n + 1, T, None)

    def test_vanishes_on_post_critical_set(self):
        for src in ("x^2-2", "x^2-1", "x^3-3x"):
            phi = parse_poly(src)
            for nu in post_critical_set(phi):
                assert disc_at(phi, 3 if phi.degree == 2 else 2, nu) == 0

    @settings(max_examples=30, deadline=None)
    @given(st.integers(-20, 20), st.integers(-5, 5), st.integers(1, 4))
    def test_parity_for_x2_plus_x(self, mu, t0, n):
        assert disc_at(X ** 2 + X + mu, n, t0).numerator % 2 == 1


class TestRamification:
    def test_examples(self):
        assert ramified_set(X2M2, 0).primes == (2,)
        assert ramified_set(X2M2, 5).primes == (2, 3, 7)
        assert ramified_set(X2M2, 1).to_json()["post_critical_set"] == ["-2", "2"]
        assert ramified_set(X ** 2, 3).primes == (2, 3)
        assert ramified_set(parse_poly("x^2-1"), 4).primes == (2, 5)

    def test_rejections(self):
        with pytest.raises(PostCriticalT0):
            ramified_set(X2M2, 2)
        with pytest.raises(NotPcf):
            ramified_set(parse_poly("x^2+1"), 0)
        with pytest.raises(NonRationalBranch):
            ramified_set(parse_poly("x^3 + 3/2*x"), 1)

    def test_ramified_primes_cover_discriminant(self):
        # every prime dividing disc Phi_n(x, t0) lies in S
        for phi, t0 in ((X2M2, 5), (X2M2, -7), (parse_poly("x^2-1"), 6), (parse_poly("x^3-3x"), 4)):
            S = set(ramified_set(phi, t0).primes)
            for n in range(1, 4 if phi.degree == 2 else 3):
                D = disc_at(phi, n, t0)
                assert {p for p in range(2, 200) if is_prime(p) and valuation(D, p) != 0} <= S

    def test_good_reduction(self):
        assert good_reduction(X2M2, 2)
        assert not good_reduction(parse_poly("2x^2+1"), 2)
        assert not good_reduction(parse_poly("x^2+1/3"), 3)


class TestWild:
    def test_examples(self):
        r = wild_report(X2M2, 2, 1, 2)
        assert (r.v_disc, r.bound, r.satisfied) == (8, 8, True)
        r = wild_report(X2M2, 2, 0, 1)
        assert (r.v_disc, r.bound, r.satisfied) == (3, 2, True)

    def test_hypotheses(self):
        with pytest.raises(NotPrime):
            wild_report(X2M2, 4, 1, 1)
        with pytest.raises(HypothesisFailed, match="p_divides_d"):
            wild_report(X2M2, 3, 1, 1)
        with pytest.raises(HypothesisFailed, match="good_reduction"):
            wild_report(parse_poly("x^2 + 1/2"), 2, 1, 1)
        with pytest.raises(HypothesisFailed, match="pcf"):
            wild_report(parse_poly("x^2+1"), 2, 1, 1)
        with pytest.raises(HypothesisFailed, match="t0_integer"):
            wild_report(X2M2, 2, Fraction(1, 2), 1)
        with pytest.raises(ZeroDiscriminant):
            wild_report(X2M2, 2, 2, 2)

    def test_root_discriminants(self):
        seq = root_disc_sequence(X2M2, 1, 4)
        assert str(seq[0].rd) == "3.46410161513775"
        assert str(seq[1].rd) == "6.92820323027551"
        assert [s.p_parts[2] for s in seq] == [2, 4, 8, 16]


class TestCertificates:
    def test_eisenstein(self):
        c = eisenstein_check(X2M2, 4, 2)
        assert (c.p, c.shift) == (2, 0)
        c = eisenstein_check(X2M2, 1, 1)
        assert (c.p, c.shift) == (2, 1)
        assert eisenstein_check(X2M2, 2, 1) is None

    def test_eisenstein_cert_is_valid(self):
        c = eisenstein_check(X2M2, 4, 3)
        cs = [int(v) for v in c.poly.coeffs]
        assert cs[-1] % c.p and cs[0] % (c.p ** 2)
        assert all(v % c.p == 0 for v in cs[:-1])

    @pytest.mark.parametrize("t0", [1, 5, -3])
    def test_x2m2_valuation(self, t0):
        for n in range(1, 7):
            assert valuation(x2m2_disc(t0, n), 2) == n * 2 ** n

    def test_monogenic(self):
        for n in range(1, 5):
            cert = monogenic_x2m2(1, n)
            assert cert.D_n == disc_at(X2M2, n, 1)
        assert monogenic_x2m2(1, 3).D_n == 1358954496
        assert monogenic_x2m2(0, 1).D_n == 8

    @pytest.mark.parametrize("t0,name", [(7, "t0_mod_4"), (2, "t0_mod_4"), (Fraction(1, 2), "t0_integer"),
                                         (20, "t0_minus_2_squarefree"), (25, "t0_plus_2_squarefree")])
    def test_monogenic_rejections(self, t0, name):
        with pytest.raises(HypothesisFailed) as info:
            monogenic_x2m2(t0, 2)
        assert info.value.hypothesis == name

    def test_tame_conditions(self):
        r = tame_conditions(X2M2, 5, 3)
        assert r.ramified.primes == (2, 3, 7)
        assert r.valuations == {2: [2, 8, 24]} and not r.tame_evidence
        assert tame_conditions(parse_poly("x^2-1"), 4, 2).ramified.primes == (2, 5)
        assert tame_conditions(X ** 2, 3, 2).ramified.primes == (2, 3)
