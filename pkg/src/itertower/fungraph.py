"""Functional graphs of polynomial maps on F_{p^k} and what they say about splitting.

The graph has an edge v -> phi(v) for every element v.  Counting length-n
paths that start at vertices of weight k (degree k over F_p) and end at
t0 gives k times the number of degree-k factors of phi^n(x) - t0 over F_p.
Counts use repeated pulls along the successor array, O(n q) work, never
dense matrix powers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import gfp
from .algebra import Poly, as_poly
from .errors import (CoefficientsNotInPrimeField, HypothesisError, NonIntegerCount,
                     TowerError)
from .finitefield import DegreeCensus, FFElem, FieldCtx, ddf_census, make_field


@dataclass(frozen=True, eq=False)
class FunctionalGraph:
    ctx: FieldCtx | None  # None for a quotient graph
    successor: np.ndarray
    weight: np.ndarray
    labels: tuple
    coeffs: tuple = ()  # coefficient codes of phibar, constant first

    @property
    def size(self) -> int:
        return len(self.successor)

    def in_degree(self) -> np.ndarray:
        return np.bincount(self.successor, minlength=self.size)

    def index(self, label) -> int:
        return self.labels.index(str(label))


def _coefficient_codes(phibar, ctx: FieldCtx) -> tuple[int, ...]:
    if isinstance(phibar, (Poly, str)):
        return tuple(gfp.from_poly(as_poly(phibar), ctx.p))
    out = []
    for c in phibar:
        if isinstance(c, FFElem):
            out.append(ctx.encode(c.coords))
        elif isinstance(c, (tuple, list)):
            out.append(ctx.element(c).code)
        else:
            c = Fraction(c)
            out.append(c.numerator * pow(c.denominator, -1, ctx.p) % ctx.p)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def build_graph(phibar, p: int | None = None, k: int = 1, ctx: FieldCtx | None = None) -> FunctionalGraph:
    """Functional graph of phibar on F_{p^k}, vertices in code order."""
    if ctx is None:
        ctx = make_field(p, k)
    codes = _coefficient_codes(phibar, ctx)
    if len(codes) < 2:
        raise HypothesisError("the map must have degree >= 1")
    succ = ctx.eval_all(codes)
    labels = tuple(ctx.name(c) for c in range(ctx.q))
    return FunctionalGraph(ctx, succ, ctx.degrees.copy(), labels, codes)


def adjacency_matrix(G: FunctionalGraph) -> np.ndarray:
    A = np.zeros((G.size, G.size), dtype=np.int64)
    A[np.arange(G.size), G.successor] = 1
    return A


def preimage_indicators(G: FunctionalGraph, target: int, n_max: int):
    """Yield, for n = 0..n_max, the boolean mask of v with phi^n(v) = target."""
    ind = np.zeros(G.size, dtype=bool)
    ind[target] = True
    yield ind
    for _ in range(n_max):
        ind = ind[G.successor]
        yield ind


def path_count(G: FunctionalGraph, n: int, target: int, start_weight: int | None = None) -> int:
    """Number of length-n paths ending at ``target``, optionally from vertices of one weight."""
    if not 0 <= target < G.size:
        raise ValueError(f"vertex {target} out of range")
    for ind in preimage_indicators(G, target, n):
        pass
    if start_weight is not None:
        ind = ind & (G.weight == start_weight)
    return int(ind.sum())


# -- rho structure ---------------------------------------------------------------

@dataclass(frozen=True)
class ComponentSummary:
    vertices: tuple
    cycle: tuple  # cycle vertices in orbit order, starting from the smallest
    max_tail: int

    @property
    def cycle_length(self) -> int:
        return len(self.cycle)


def _depths(succ: np.ndarray, on_cycle: np.ndarray) -> np.ndarray:
    depth = np.where(on_cycle, 0, -1)
    while (depth < 0).any():
        pending = depth < 0
        ready = pending & (depth[succ] >= 0)
        depth[ready] = depth[succ][ready] + 1
    return depth


def _cycle_mask(succ: np.ndarray) -> np.ndarray:
    # after q steps every vertex sits on its cycle
    img = np.arange(len(succ))
    for _ in range(len(succ)):
        nxt = succ[img]
        if np.array_equal(nxt, img):
            break
        img = nxt
    mask = np.zeros(len(succ), dtype=bool)
    mask[img] = True
    return mask


def component_structure(G: FunctionalGraph) -> list[ComponentSummary]:
    succ = G.successor
    on_cycle = _cycle_mask(succ)
    depth = _depths(succ, on_cycle)
    root = np.arange(G.size)
    for _ in range(int(depth.max())):
        root = np.where(on_cycle[root], root, succ[root])
    cycles = {}
    for v in sorted(np.flatnonzero(on_cycle).tolist()):
        if v in cycles:
            continue
        cyc = [v]
        w = int(succ[v])
        while w != v:
            cyc.append(w)
            w = int(succ[w])
        for w in cyc:
            cycles[w] = tuple(cyc)
    groups: dict[tuple, list[int]] = {}
    for v in range(G.size):
        groups.setdefault(cycles[int(root[v])], []).append(v)
    out = [ComponentSummary(tuple(vs), cyc, int(depth[vs].max())) for cyc, vs in groups.items()]
    return sorted(out, key=lambda c: c.vertices[0])


@dataclass(frozen=True)
class SequencePeriod:
    period: int
    stabilization_index: int
    arm_lcm: int


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a o b)[v] = a[b[v]]."""
    return a[b]


def successor_power(G: FunctionalGraph, n: int) -> np.ndarray:
    out = np.arange(G.size)
    base = G.successor
    while n:
        if n & 1:
            out = _compose(base, out)
        n >>= 1
        if n:
            base = _compose(base, base)
    return out


def graph_sequence_period(G: FunctionalGraph) -> SequencePeriod:
    """Period of n -> Gamma_{phi^n}, the first n from which it holds, and the lcm of arms."""
    comps = component_structure(G)
    period = lcm(*(c.cycle_length for c in comps))
    shift = successor_power(G, period)
    cur = G.successor
    n0 = 1
    while not np.array_equal(_compose(shift, cur), cur):
        cur = _compose(G.successor, cur)
        n0 += 1
    arms = [c.max_tail for c in comps if c.max_tail]
    return SequencePeriod(period, n0, lcm(*arms) if arms else 1)


def quotient_graph(G: FunctionalGraph) -> FunctionalGraph:
    """Graph on Frobenius orbits; needs phibar with coefficients in F_p."""
    ctx = G.ctx
    if ctx is None:
        raise ValueError("already a quotient graph")
    if any(c >= ctx.p for c in G.coeffs):
        raise CoefficientsNotInPrimeField("phibar has coefficients outside F_p")
    frob = ctx.frobenius
    rep = np.arange(ctx.q)
    cur = frob.copy()
    for _ in range(ctx.k - 1):
        rep = np.minimum(rep, cur)
        cur = frob[cur]
    reps = np.unique(rep)
    index = np.searchsorted(reps, rep)
    succ = index[G.successor[reps]]
    weight = G.weight[reps]
    labels = tuple(ctx.name(int(r)) for r in reps)
    return FunctionalGraph(None, succ, weight, labels, G.coeffs)


# -- splitting counts -----------------------------------------------------------------

def _t0_code(t0bar, p: int) -> int:
    t = Fraction(t0bar)
    if t.denominator % p == 0:
        raise HypothesisError(f"t0 = {t0bar} is not p-integral at {p}")
    return t.numerator * pow(t.denominator, -1, p) % p


def prime_degree_counts(phibar, p: int, t0bar, n: int, k: int) -> int:
    """Number of degree-k factors of phi^n(x) - t0 over F_p, counted by paths."""
    G = build_graph(phibar, p, k)
    N = path_count(G, n, _t0_code(t0bar, p), start_weight=k)
    if N % k:
        raise NonIntegerCount(f"{N} paths is not a multiple of k = {k}")
    return N // k


def _tower_fp(phibar, p: int, t0: int, N: int):
    base = list(_coefficient_codes(phibar, make_field(p)))
    f = [0, 1]
    for n in range(1, N + 1):
        f = gfp.compose(base, f, p)
        yield n, gfp.sub(f, [t0], p)


@dataclass(frozen=True)
class DegreeTable:
    p: int
    t0: Fraction
    rows: tuple  # (n, DegreeCensus)
    warning: str | None = None

    @property
    def degree_one(self) -> list[int]:
        return [c.count(1) for _, c in self.rows]

    def to_json(self):
        return [{"n": n, "census": c.to_json()} for n, c in self.rows]

    def to_text(self) -> str:
        body = [(str(n), " ; ".join(map(str, c.degrees())), str(c.count(1))) for n, c in self.rows]
        head = ("n", "degrees of irreducible factors", "no. of deg. 1 factors")
        widths = [max(len(r[i]) for r in body + [head]) for i in range(3)]
        lines = [" | ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
        lines.append("-+-".join("-" * w for w in widths))
        for r in body:
            lines.append(" | ".join((r[0].rjust(widths[0]), r[1].ljust(widths[1]), r[2].rjust(widths[2]))))
        if self.warning:
            lines.append(f"warning: {self.warning}")
        return "\n".join(lines)


def _ramification_warning(phi, p, t0):
    from .discrim import ramified_set
    try:
        S = ramified_set(phi, t0)
    except (TowerError, ValueError):
        return None
    if p in S.primes:
        return f"{p} lies in the ramified set {list(S.primes)}; factor degrees need not reflect splitting"
    return None


def degree_table(phi, p: int, t0, N: int) -> DegreeTable:
    """DDF census of phi^n(x) - t0 over F_p for n = 1..N."""
    t0_code = _t0_code(t0, p)
    rows = tuple((n, ddf_census(f, p)) for n, f in _tower_fp(phi, p, t0_code, N))
    warning = None
    if isinstance(phi, (Poly, str)) and as_poly(phi).degree >= 2:
        warning = _ramification_warning(as_poly(phi), p, Fraction(t0))
    return DegreeTable(p, Fraction(t0), rows, warning)


def degree_one_column(phibar, p: int, t0bar, N: int) -> list[int]:
    """Roots of phi^n(x) - t0 in F_p for n = 1..N, by path counting on the graph.

    Agrees with the degree-1 column of :func:`degree_table` whenever the
    polynomials are square-free, and stays cheap for large N.
    """
    G = build_graph(phibar, p)
    inds = preimage_indicators(G, _t0_code(t0bar, p), N)
    next(inds)
    return [int(ind.sum()) for ind in inds]


@dataclass(frozen=True)
class CrossCheck:
    agree: bool
    cells: tuple  # (n, k, path count, DDF count)
    first_mismatch: tuple | None = None

    def to_json(self):
        return {"agree": self.agree,
                "cells": [{"n": n, "k": k, "paths": a, "ddf": b} for n, k, a, b in self.cells],
                "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None}


def _path_column(args):
    codes, p, k, t0, n_max = args
    G = build_graph(list(codes), p, k)
    out = []
    for n, ind in enumerate(preimage_indicators(G, t0, n_max)):
        if n == 0:
            continue
        N = int((ind & (G.weight == k)).sum())
        if N % k:
            raise NonIntegerCount(f"{N} paths is not a multiple of k = {k}")
        out.append(N // k)
    return out


def splitting_crosscheck(phibar, p: int, t0bar, n_max: int, k_max: int, jobs: int = 1) -> CrossCheck:
    """Compare path counts with DDF counts over every (n, k) cell."""
    t0 = _t0_code(t0bar, p)
    codes = _coefficient_codes(phibar, make_field(p))
    ddf = {n: ddf_census(f, p) for n, f in _tower_fp(list(codes), p, t0, n_max)}
    tasks = [(codes, p, k, t0, n_max) for k in range(1, k_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            columns = list(pool.map(_path_column, tasks))
    else:
        columns = [_path_column(t) for t in tasks]
    cells = []
    mismatch = None
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            cell = (n, k, columns[k - 1][n - 1], ddf[n].count(k))
            cells.append(cell)
            if mismatch is None and cell[2] != cell[3]:
                mismatch = cell
    return CrossCheck(mismatch is None, tuple(cells), mismatch)


# -- DOT ---------------------------------------------------------------------------------

def dot_export(G: FunctionalGraph, highlight=None) -> str:
    """DOT digraph; node weights shown when k > 1, ``highlight`` filled."""
    show_weight = G.ctx is None or G.ctx.k > 1
    lines = ["digraph G {"]
    for i, name in enumerate(G.labels):
        attrs = []
        if show_weight:
            attrs.append(f'label="{name} [{int(G.weight[i])}]"')
        if highlight is not None and str(highlight) == name:
            attrs.append('style=filled fillcolor="lightblue"')
        lines.append(f'  "{name}"' + (f" [{' '.join(attrs)}]" if attrs else "") + ";")
    for i, j in enumerate(G.successor.tolist()):
        lines.append(f'  "{G.labels[i]}" -> "{G.labels[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
