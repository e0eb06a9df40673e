from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from itertower.errors import FactorizationIncomplete
from itertower.ntheory import factorint, is_prime, is_squarefree, prime_factors, valuation


def trial_factor(n):
    out, d = {}, 2
    n = abs(n)
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 10 ** 7))
def test_factorint_matches_trial_division(n):
    assert factorint(n) == trial_factor(n)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 5))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == (n >= 2 and trial_factor(n) == {n: 1})


def test_large_inputs():
    assert factorint(2 ** 64 + 1) == {274177: 1, 67280421310721: 1}
    assert factorint(600851475143) == {71: 1, 839: 1, 1471: 1, 6857: 1}
    p, q = 1000000000039, 1000000000061
    assert factorint(p * q) == {p: 1, q: 1}
    assert is_prime(2 ** 61 - 1) and not is_prime(2 ** 61 + 1)


def test_incomplete_factorization_is_reported():
    p, q = 1000000000039, 1000000000061
    with pytest.raises(FactorizationIncomplete):
        factorint(p * q, trial_bound=100, rho_iterations=10)


def test_valuation_and_prime_factors():
    assert valuation(Fraction(48, 7), 2) == 4
    assert valuation(Fraction(5, 12), 2) == -2
    assert prime_factors(Fraction(-45, 14)) == {2, 3, 5, 7}
    assert prime_factors(1) == set()


@pytest.mark.parametrize("n,expected", [(1, True), (3, True), (-1, True), (4, False), (12, False), (0, False), (-30, True)])
def test_is_squarefree(n, expected):
    assert is_squarefree(n) == expected
