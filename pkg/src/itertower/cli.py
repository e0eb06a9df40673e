"""Command-line interface: ``itertower <command> ...`` or ``python3 -m itertower``.

Exit status is 0 on success, 2 when an input violates a hypothesis or
precondition, and 1 on an internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import discrim, dynamics, fungraph
from .algebra import DEFAULT_DEGREE_GUARD
from .errors import HypothesisError, InternalError
from .parsing import parse_poly, parse_rational

EXAMPLES = {
    "pcf": "itertower pcf x^2-2 --json",
    "normal-form": "itertower normal-form 1 -4 4",
    "cfsr": "itertower cfsr 3",
    "chebyshev": "itertower chebyshev 4",
    "disc": "itertower disc x^2-2 --n 2",
    "disc-at": "itertower disc-at x^2-2 --n 2 --t0 1",
    "ramified": "itertower ramified x^2-2 --t0 5",
    "wild": "itertower wild x^2-2 --p 2 --t0 1 --n 2",
    "eisenstein": "itertower eisenstein x^2-2 --t0 1 --n 1",
    "monogenic-x2m2": "itertower monogenic-x2m2 --t0 1 --n 3",
    "tame": "itertower tame x^2-2 --t0 5 --N 3",
    "graph": "itertower graph x^2+8 --p 13 --dot",
    "graph-structure": "itertower graph-structure x^2+8 --p 13",
    "splitting-table": "itertower splitting-table x^2+8 --p 13 --t0 11 --N 7",
    "splitting-check": "itertower splitting-check x^2+8 --p 13 --t0 11 --nmax 7 --kmax 4",
}


class _Parser(argparse.ArgumentParser):
    example = "itertower splitting-table x^2+8 --p 13 --t0 11 --N 7"

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\nexample: {self.example}\n")
        sys.exit(2)


def _poly(text):
    return parse_poly(text)


def _rational(text):
    return parse_rational(text)


def _fmt_set(values) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(text)


# -- commands ----------------------------------------------------------------------

def cmd_pcf(args):
    v = dynamics.is_pcf(args.phi, heuristic_float=args.heuristic_float)
    if isinstance(v, dynamics.PCF):
        if v.certificate == "cfsr":
            text = "pcf (critically fixed; critical points irrational)"
        else:
            text = f"pcf\npost-critical set: {_fmt_set(v.post_critical_set)}"
    elif isinstance(v, dynamics.NotPCF):
        w = v.witness
        how = f"|x| > {w.bound}" if w.criterion == "magnitude" else f"valuation at {w.prime}"
        text = f"not pcf\norbit of {w.start} escapes at step {w.step} ({how})"
    else:
        text = f"unknown ({v.reason})"
    _emit(args, v.to_json(), text)


def cmd_normal_form(args):
    r = dynamics.quad_normal_form(args.a, args.b, args.c)
    _emit(args, {"r": str(r)}, f"x^2 - ({r})" if r < 0 else f"x^2 - {r}")


def cmd_cfsr(args):
    phi = dynamics.cfsr_normalized(args.d)
    rep = dynamics.cfsr_verify(phi)
    _emit(args, {"poly": phi.format(), "identity_holds": rep.identity_holds,
                 "is_cfsr": rep.is_cfsr}, phi.format())


def cmd_chebyshev(args):
    c = dynamics.chebyshev(args.d)
    _emit(args, {"d": args.d, "poly": c.format()}, c.format())


def cmd_disc(args):
    if args.method == "direct":
        D = discrim.disc_tower_direct(args.phi, args.n, args.max_degree)
    else:
        D = discrim.disc_tower_recursive(args.phi, args.n, args.max_degree)
    _emit(args, {"n": args.n, "method": D.provenance, "D_n": D.value.format("t"),
                 "coefficients": [str(c) for c in D.value.coeffs]},
          f"D_{args.n}(t) = {D.value.format('t')}")


def cmd_disc_at(args):
    v = discrim.disc_at(args.phi, args.n, args.t0, args.method, args.max_degree)
    _emit(args, {"n": args.n, "t0": str(args.t0), "value": str(v)}, str(v))


def cmd_ramified(args):
    S = discrim.ramified_set(args.phi, args.t0, args.include_critical)
    _emit(args, S.to_json(), f"S = {_fmt_set(S.primes)} together with the real place")


def cmd_wild(args):
    r = discrim.wild_report(args.phi, args.p, args.t0, args.n, args.max_degree)
    rel = ">=" if r.satisfied else "<"
    _emit(args, r.to_json(),
          f"v_{r.p}(disc) = {r.v_disc} {rel} {r.bound} = n d^n; ord_{r.p}(phi') = {r.ord_p_phi_prime}")


def cmd_eisenstein(args):
    c = discrim.eisenstein_check(args.phi, args.t0, args.n, args.shift_range, args.max_degree)
    if c is None:
        _emit(args, {"certificate": "unknown"}, "unknown: no Eisenstein shift found")
    else:
        _emit(args, c.to_json(), f"Eisenstein at p = {c.p} after x -> x + {c.shift}: {c.poly.format()}")


def cmd_monogenic(args):
    c = discrim.monogenic_x2m2(args.t0, args.n)
    _emit(args, c.to_json(), c.claim)


def cmd_tame(args):
    r = discrim.tame_conditions(args.phi, args.t0, args.N, args.shift_range)
    lines = [f"S = {_fmt_set(r.ramified.primes)}"]
    for p, g in r.good_reduction.items():
        lines.append(f"p = {p}: good reduction {'yes' if g else 'no'}; v_p(disc) for n = 1..{r.N}: {r.valuations[p]}")
    for n, c in r.eisenstein.items():
        lines.append(f"n = {n}: " + (f"Eisenstein at {c.p}, shift {c.shift}" if c else "no Eisenstein certificate"))
    lines.append(f"tame evidence: {'yes' if r.tame_evidence else 'no'}")
    if r.note:
        lines.append(f"note: {r.note}")
    _emit(args, r.to_json(), "\n".join(lines))


def cmd_graph(args):
    G = fungraph.build_graph(args.phi, args.p, args.k)
    if args.dot:
        out = fungraph.dot_export(G, args.highlight)
    elif args.json:
        out = json.dumps({"vertices": list(G.labels),
                          "successor": [G.labels[j] for j in G.successor.tolist()],
                          "weight": G.weight.tolist()}, separators=(",", ":")) + "\n"
    else:
        out = "".join(f"{G.labels[i]} -> {G.labels[j]}\n" for i, j in enumerate(G.successor.tolist()))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_graph_structure(args):
    G = fungraph.build_graph(args.phi, args.p, args.k)
    comps = fungraph.component_structure(G)
    per = fungraph.graph_sequence_period(G)
    payload = {
        "components": [{"vertices": [G.labels[v] for v in c.vertices],
                        "cycle": [G.labels[v] for v in c.cycle],
                        "cycle_length": c.cycle_length, "max_tail": c.max_tail} for c in comps],
        "period": per.period, "stabilization_index": per.stabilization_index,
        "arm_lcm": per.arm_lcm,
    }
    lines = [f"component {i + 1}: {len(c.vertices)} vertices, cycle "
             f"{' -> '.join(G.labels[v] for v in c.cycle)} (length {c.cycle_length}), longest arm {c.max_tail}"
             for i, c in enumerate(comps)]
    lines.append(f"graph sequence period {per.period}, periodic from n = {per.stabilization_index}"
                 f" (lcm of longest arms: {per.arm_lcm})")
    _emit(args, payload, "\n".join(lines))


def cmd_splitting_table(args):
    T = fungraph.degree_table(args.phi, args.p, args.t0, args.N)
    if args.json:
        payload = {"p": args.p, "t0": str(args.t0), "rows": T.to_json()}
        if T.warning:
            payload["warning"] = T.warning
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(T.to_text())


def cmd_splitting_check(args):
    r = fungraph.splitting_crosscheck(args.phi, args.p, args.t0, args.nmax, args.kmax, args.jobs)
    if r.agree:
        text = f"path counts and DDF agree on all {len(r.cells)} cells (n <= {args.nmax}, k <= {args.kmax})"
    else:
        n, k, a, b = r.first_mismatch
        text = f"mismatch at n = {n}, k = {k}: paths give {a}, DDF gives {b}"
    _emit(args, r.to_json(), text)
    if not r.agree:
        raise InternalError("splitting crosscheck failed")


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--max-degree", type=int, default=DEFAULT_DEGREE_GUARD,
                        help="degree guard for iterates (default 2^20)")
    common.add_argument("--heuristic-float", action="store_true",
                        help="allow a labelled floating-point PCF heuristic")
    common.add_argument("--shift-range", type=int, default=3,
                        help="Eisenstein shifts searched: 0, +-1, ..., +-R (default 3)")

    parser = _Parser(prog="itertower", description="Iterated polynomial towers: "
                     "post-critical finiteness, discriminants, ramification and splitting.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.example = EXAMPLES[name]
        sp.set_defaults(func=func)
        return sp

    sp = add("pcf", cmd_pcf, "decide post-critical finiteness")
    sp.add_argument("phi", type=_poly)
    sp = add("normal-form", cmd_normal_form, "r with a x^2 + b x + c conjugate to x^2 - r")
    for name in "abc":
        sp.add_argument(name, type=_rational)
    sp = add("cfsr", cmd_cfsr, "normalized critically fixed polynomial of degree d")
    sp.add_argument("d", type=int)
    sp = add("chebyshev", cmd_chebyshev, "Chebyshev polynomial C_d")
    sp.add_argument("d", type=int)
    sp = add("disc", cmd_disc, "D_n(t) = disc_x(phi^n(x) - t)")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--method", choices=("recursive", "direct"), default="recursive")
    sp = add("disc-at", cmd_disc_at, "D_n(t0)")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t0", type=_rational, required=True)
    sp.add_argument("--method", choices=("recursive", "direct"), default="recursive")
    sp = add("ramified", cmd_ramified, "the set S of possibly ramified primes")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--t0", type=_rational, required=True)
    sp.add_argument("--include-critical", action="store_true",
                    help="also use t0 - r for the critical points r")
    sp = add("wild", cmd_wild, "p-adic valuation of disc against n d^n")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t0", type=_rational, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("eisenstein", cmd_eisenstein, "Eisenstein certificate for phi^n(x) - t0")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--t0", type=_rational, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("monogenic-x2m2", cmd_monogenic, "monogenicity certificate for x^2 - 2")
    sp.add_argument("--t0", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("tame", cmd_tame, "tame-candidate report")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--t0", type=int, required=True)
    sp.add_argument("--N", type=int, default=3)
    sp = add("graph", cmd_graph, "functional graph over F_{p^k}")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--dot", action="store_true", help="DOT output")
    sp.add_argument("--highlight", help="vertex label to highlight in DOT output")
    sp.add_argument("--out", help="write to this file instead of stdout")
    sp = add("graph-structure", cmd_graph_structure, "components, cycles, arms and period")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp = add("splitting-table", cmd_splitting_table, "factor degrees of phi^n(x) - t0 over F_p")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t0", type=_rational, required=True)
    sp.add_argument("--N", type=int, default=7)
    sp = add("splitting-check", cmd_splitting_check, "path counts against DDF")
    sp.add_argument("phi", type=_poly)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t0", type=_rational, required=True)
    sp.add_argument("--nmax", type=int, default=5)
    sp.add_argument("--kmax", type=int, default=3)
    sp.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except (HypothesisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001  (InternalError and anything unexpected)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
