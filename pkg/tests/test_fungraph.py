import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from itertower.errors import CoefficientsNotInPrimeField
from itertower.finitefield import ddf_census
from itertower.fungraph import (adjacency_matrix, build_graph, component_structure, degree_one_column,
                                degree_table, dot_export, graph_sequence_period, path_count,
                                prime_degree_counts, quotient_graph, splitting_crosscheck,
                                successor_power)

# x^2 + 8 over F_13, rows and columns ordered 0..12
REFERENCE_MATRIX = """
0 0 0 0 0 0 0 0 1 0 0 0 0
0 0 0 0 0 0 0 0 0 1 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1
0 0 0 0 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 1 0
0 0 0 0 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1
0 0 0 0 0 0 0 0 0 1 0 0 0
"""


@pytest.fixture(scope="module")
def G13():
    return build_graph("x^2+8", 13)


def dense_path_count(G, n, target):
    return int(np.linalg.matrix_power(adjacency_matrix(G), n)[:, target].sum())


class TestGraph:
    def test_reference_matrix(self, G13):
        expected = np.array([[int(v) for v in row.split()] for row in REFERENCE_MATRIX.strip().splitlines()])
        assert np.array_equal(adjacency_matrix(G13), expected)
        assert G13.successor.tolist() == [8, 9, 12, 4, 11, 7, 5, 5, 7, 11, 4, 12, 9]

    def test_components(self, G13):
        comps = component_structure(G13)
        assert len(comps) == 2
        assert sorted(c.cycle_length for c in comps) == [2, 3]
        assert [c.max_tail for c in comps] == [2, 2]
        assert sorted(len(c.vertices) for c in comps) == [5, 8]

    def test_sequence_period(self, G13):
        sp = graph_sequence_period(G13)
        assert (sp.period, sp.stabilization_index, sp.arm_lcm) == (6, 2, 2)
        # brute force: first repeat in the list of successor powers
        seen = {}
        for n in range(1, 30):
            key = tuple(successor_power(G13, n).tolist())
            if key in seen:
                assert (seen[key], n - seen[key]) == (2, 6)
                break
            seen[key] = n

    def test_path_counts(self, G13):
        assert [path_count(G13, n, 11) for n in range(1, 8)] == [2, 4, 2, 2, 4, 2, 2]
        assert degree_one_column("x^2+8", 13, 11, 12) == [2, 4, 2] * 4

    def test_path_count_range(self, G13):
        with pytest.raises(ValueError):
            path_count(G13, 1, 13)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([(2, 1), (3, 2), (5, 1), (7, 2), (2, 5), (13, 1)]),
           st.lists(st.integers(0, 12), min_size=3, max_size=4), st.integers(0, 6), st.integers(0, 100))
    def test_matches_dense_matrix_power(self, pk, cs, n, t):
        p, k = pk
        cs = [c % p for c in cs[:-1]] + [cs[-1] % p or 1]
        G = build_graph(cs, p, k)
        assert G.size <= 50
        target = t % G.size
        assert path_count(G, n, target) == dense_path_count(G, n, target)

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from([(2, 3), (3, 3), (7, 3), (5, 2), (2, 8)]),
           st.lists(st.integers(0, 6), min_size=3, max_size=4), st.integers(1, 4), st.integers(0, 10))
    def test_in_degrees_and_weight_divisibility(self, pk, cs, n, t):
        p, k = pk
        cs = [c % p for c in cs[:-1]] + [cs[-1] % p or 1]
        G = build_graph(cs, p, k)
        assert G.in_degree().sum() == G.size
        target = t % p  # prime-field vertex, so Frobenius fixes it
        for w in set(G.weight.tolist()):
            assert path_count(G, n, target, start_weight=w) % w == 0

    @pytest.mark.parametrize("t0", [0, 3, 11])
    def test_t0_mod_p_invariance(self, t0):
        assert (prime_degree_counts("x^2+8", 13, t0, 3, 2)
                == prime_degree_counts("x^2+8", 13, t0 + 13, 3, 2)
                == prime_degree_counts("x^2+8", 13, t0 - 26, 3, 2))

    def test_identity_map_period(self):
        sp = graph_sequence_period(build_graph([0, 1], 5))
        assert (sp.period, sp.stabilization_index, sp.arm_lcm) == (1, 1, 1)


class TestQuotient:
    def test_sizes(self):
        assert quotient_graph(build_graph("x^2+8", 13, 2)).size == 91
        assert quotient_graph(build_graph("x^2+8", 13)).size == 13

    def test_orbit_count_formula(self):
        # number of Frobenius orbits on F_{p^k} is (1/k) sum_{j<k} p^gcd(j,k)
        from math import gcd
        for p, k in ((2, 4), (3, 3), (5, 2), (2, 6)):
            expected = sum(p ** gcd(j, k) for j in range(k)) // k
            assert quotient_graph(build_graph([1, 0, 1], p, k)).size == expected

    def test_rejects_non_prime_field_coefficients(self):
        with pytest.raises(CoefficientsNotInPrimeField):
            quotient_graph(build_graph([(0, 1), 0, 1], 3, 2))


class TestSplitting:
    def test_prime_degree_counts(self):
        assert [prime_degree_counts("x^2+8", 13, 11, 3, k) for k in (1, 2)] == [2, 3]
        assert prime_degree_counts("x^2+8", 13, 11, 4, 4) == 1

    def test_degree_table(self):
        tab = degree_table("x^2+8", 13, 11, 7)
        assert tab.degree_one == [2, 4, 2, 2, 4, 2, 2]
        assert tab.to_json()[5] == {"n": 6, "census": {"1": 2, "2": 7, "4": 6, "8": 3}}
        assert "2 ; 2 ; 2" in tab.to_text()

    @pytest.mark.parametrize("phi,p,t0,n,k", [("x^2+8", 13, 11, 7, 4), ("x^2+1", 7, 3, 5, 4), ("x^3+2", 5, 1, 4, 3)])
    def test_crosscheck(self, phi, p, t0, n, k):
        cc = splitting_crosscheck(phi, p, t0, n, k)
        assert cc.agree and cc.first_mismatch is None

    def test_crosscheck_parallel(self):
        assert splitting_crosscheck("x^2+1", 7, 3, 4, 3, jobs=2).agree


ATTR = r'\w+=(?:"[^"]*"|\w+)'
DOT_NODE = re.compile(rf'^  "[^"]+"( \[{ATTR}(?: {ATTR})*\])?;$')
DOT_EDGE = re.compile(r'^  "[^"]+" -> "[^"]+";$')


def check_dot(text):
    lines = text.rstrip("\n").splitlines()
    assert lines[0] == "digraph G {" and lines[-1] == "}"
    nodes = [l for l in lines[1:-1] if DOT_NODE.match(l)]
    edges = [l for l in lines[1:-1] if DOT_EDGE.match(l)]
    assert len(nodes) + len(edges) == len(lines) - 2
    return nodes, edges


class TestDot:
    def test_grammar(self, G13):
        nodes, edges = check_dot(dot_export(G13, highlight=11))
        assert len(nodes) == len(edges) == 13
        assert any("lightblue" in n and '"11"' in n for n in nodes)

    def test_weights_shown_for_extensions(self):
        nodes, edges = check_dot(dot_export(build_graph("x^2+1", 3, 2)))
        assert len(edges) == 9 and all("[" in n for n in nodes)
        nodes, _ = check_dot(dot_export(quotient_graph(build_graph("x^2+1", 3, 2))))
        assert len(nodes) == 6


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([7, 11, 13, 17, 19, 23]), st.lists(st.integers(0, 22), min_size=3, max_size=4))
def test_stabilization_is_longest_arm(p, cs):
    cs = [c % p for c in cs[:-1]] + [cs[-1] % p or 1]
    G = build_graph(cs, p)
    sp = graph_sequence_period(G)
    assert sp.stabilization_index == max([1] + [c.max_tail for c in component_structure(G)])


def test_lcm_of_arms_overshoots():
    # x^2 + 3 over F_17: arms 2 and 3, sequence periodic from n = 3, not from lcm = 6
    sp = graph_sequence_period(build_graph([3, 0, 1], 17))
    assert (sp.period, sp.stabilization_index, sp.arm_lcm) == (4, 3, 6)
