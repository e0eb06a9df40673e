"""Acceptance gate: one PASS/FAIL line per criterion, each at its stated tolerance."""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_poly, record
from itertower.algebra import Poly, X, simon_identity_check
from itertower.discrim import (T, disc_at, disc_tower_direct, disc_tower_recursive, monogenic_x2m2,
                               wild_report)
from itertower.dynamics import PCF, cfsr_normalized, cfsr_verify, chebyshev, is_pcf
from itertower.errors import HypothesisFailed, ZeroDiscriminant
from itertower.fungraph import (adjacency_matrix, build_graph, component_structure, degree_one_column,
                                degree_table, graph_sequence_period, splitting_crosscheck)
from itertower.ntheory import valuation
from itertower.parsing import parse_poly

from test_fungraph import REFERENCE_MATRIX

SEED = 20240611
X2M2 = parse_poly("x^2-2")

REFERENCE_TABLE = {
    1: {1: 2}, 2: {1: 4}, 3: {1: 2, 2: 3}, 4: {1: 2, 2: 5, 4: 1},
    5: {1: 4, 2: 4, 4: 5}, 6: {1: 2, 2: 7, 4: 6, 8: 3}, 7: {1: 2, 2: 9, 4: 9, 8: 9},
}


def test_01_splitting_table_via_cli():
    start = time.perf_counter()
    r = subprocess.run([sys.executable, "-m", "itertower", "splitting-table", "x^2+8",
                        "--p", "13", "--t0", "11", "--N", "7", "--json"],
                       capture_output=True, text=True, timeout=60)
    elapsed = time.perf_counter() - start
    rows = json.loads(r.stdout)["rows"] if r.returncode == 0 else []
    got = {row["n"]: {int(k): v for k, v in row["census"].items()} for row in rows}
    text = subprocess.run([sys.executable, "-m", "itertower", "splitting-table", "x^2+8",
                           "--p", "13", "--t0", "11", "--N", "7"], capture_output=True, text=True).stdout
    ok = got == REFERENCE_TABLE and elapsed < 5 and "8 ; 8 ; 8" in text
    record(1, ok, "splitting table of x^2+8 over F_13 via the CLI", f"{elapsed:.2f}s")
    assert ok


def test_02_degree_one_column():
    col7 = degree_table("x^2+8", 13, 11, 7).degree_one
    col12 = degree_one_column("x^2+8", 13, 11, 12)
    periodic = all(col12[i] == col12[i + 3] for i in range(len(col12) - 3))
    minimal = not all(col12[i] == col12[i + 1] for i in range(len(col12) - 1))
    ok = col7 == [2, 4, 2, 2, 4, 2, 2] and col12[:7] == col7 and periodic and minimal
    record(2, ok, "degree-1 column 2,4,2,... with period 3 through N = 12", ",".join(map(str, col12)))
    assert ok


def test_03_graph_structure():
    G = build_graph("x^2+8", 13)
    comps = component_structure(G)
    expected = np.array([[int(v) for v in row.split()] for row in REFERENCE_MATRIX.strip().splitlines()])
    sp = graph_sequence_period(G)
    ok = (len(comps) == 2
          and sorted(c.cycle_length for c in comps) == [2, 3]
          and sorted(c.max_tail for c in comps) == [2, 2]
          and np.array_equal(adjacency_matrix(G), expected)
          and (sp.period, sp.stabilization_index) == (6, 2))
    record(3, ok, "functional graph of x^2+8 over F_13", f"period {sp.period} from n = {sp.stabilization_index}")
    assert ok


def test_04_recursive_equals_direct():
    rng = random.Random(SEED)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(50):
        phi = random_poly(rng, rng.randint(2, 4))
        for n in (1, 2, 3):
            if disc_tower_recursive(phi, n).value != disc_tower_direct(phi, n).value:
                mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60
    record(4, ok, "recursive and direct tower discriminants agree on 50 random maps",
           f"{mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def test_05_x2m2_family():
    D = [None, disc_tower_recursive(X2M2, 1).value]
    ok = D[1] == 4 * (T + 2)
    for n in range(1, 6):
        D.append(disc_tower_recursive(X2M2, n + 1).value)
        ok &= D[n + 1] == 4 ** (2 ** n) * D[n] ** 2 * (2 - T)
    ok &= disc_tower_direct(X2M2, 3).value == D[3]
    bad = []
    for t0 in (1, 5, -3):
        for n in range(1, 7):
            v = valuation(disc_at(X2M2, n, t0, method="direct"), 2)
            if v != n * 2 ** n:
                bad.append((t0, n, v))
    ok &= not bad
    record(5, ok, "x^2-2 recursion and v_2(disc) = n 2^n", f"exceptions {bad}" if bad else "")
    assert ok


def test_06_wild_bound():
    checked, failures = 0, []
    for t0 in range(-10, 11):
        for n in range(1, 6):
            try:
                rep = wild_report(X2M2, 2, t0, n)
            except ZeroDiscriminant:
                continue
            checked += 1
            if not rep.satisfied:
                failures.append(("x^2-2", t0, n))
    C4 = chebyshev(4)
    for t0 in range(-10, 11):
        for n in range(1, 4):
            try:
                rep = wild_report(C4, 2, t0, n)
            except ZeroDiscriminant:
                continue
            checked += 1
            if not rep.satisfied:
                failures.append(("C_4", t0, n))
    ok = not failures and checked > 0
    record(6, ok, "wild lower bound v_2(disc) >= n d^n", f"{checked} cases, failures {failures}")
    assert ok


def test_07_cfsr():
    ok = all(cfsr_verify(cfsr_normalized(d)).identity_holds for d in range(2, 9))
    ok &= cfsr_normalized(3) == X ** 3 + Fraction(3, 2) * X
    record(7, ok, "CFSR identity for d = 2..8")
    assert ok


def test_08_pcf_census():
    hits = [r for r in range(-50, 51) if isinstance(is_pcf((X - r) ** 2), PCF)]
    ok = hits == [0, 1, 2]
    record(8, ok, "(x-r)^2 is PCF exactly for r in {0, 1, 2}", f"hits {hits}")
    assert ok


def test_09_composition_identity():
    rng = random.Random(SEED)
    literal = corrected = 0
    for _ in range(25):
        P = random_poly(rng, rng.randint(2, 4))
        B = random_poly(rng, rng.randint(1, 3))
        r = simon_identity_check(P, Poly([1]), B)
        literal += r.holds
        corrected += r.holds_corrected
    ok = literal == 25
    record(9, ok, "discriminant composition identity on 25 random instances with A = 1",
           f"literal {literal}/25, with lc and sign factor {corrected}/25")
    assert ok, "literal identity is off by (-1)^(m(k-1)) lc(P)^(k-1) lc(B)^(km(m-1)); see the notes"


def test_10_parity():
    odd = True
    for mu in range(-10, 11):
        phi = X ** 2 + X + mu
        for t0 in range(-5, 6):
            for n in range(1, 5):
                D = disc_at(phi, n, t0)
                odd &= D.denominator == 1 and D.numerator % 2 == 1
        odd &= disc_at(phi, 3, 1, method="direct") == disc_at(phi, 3, 1)
    record(10, odd, "disc odd for x^2+x+mu, mu in [-10,10], t0 in [-5,5], n <= 4")
    assert odd


def test_11_splitting_crosscheck():
    cases = [("x^2+8", 13, 11, 7, 4), ("x^2+1", 7, 3, 7, 4), ("x^3+2", 5, 1, 5, 4)]
    results = [splitting_crosscheck(phi, p, t0, n, k) for phi, p, t0, n, k in cases]
    ok = all(r.agree for r in results)
    record(11, ok, "path counts equal DDF counts", f"{sum(len(r.cells) for r in results)} cells")
    assert ok


def test_12_monogenic():
    ok = True
    for n in range(1, 5):
        cert = monogenic_x2m2(1, n)
        ok &= cert.D_n == disc_at(X2M2, n, 1) == disc_tower_recursive(X2M2, n)(1)
    names = {}
    for t0 in (7, 2):
        try:
            monogenic_x2m2(t0, 2)
            ok = False
        except HypothesisFailed as exc:
            names[t0] = exc.hypothesis
    ok &= set(names) == {7, 2}
    record(12, ok, "monogenic certificates for t0 = 1 and named rejections", f"{names}")
    assert ok
