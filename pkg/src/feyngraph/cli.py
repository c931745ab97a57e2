"""Command-line front end.

Exit status is 0 on success, 1 when input is rejected (parse or domain
errors) and 2 when two computations that must agree do not.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from .canonical import automorphism_count
from .enumerate import CatalogEntry, graphs_up_to_order, graphs_with_profile
from .errors import FeynGraphError, InvariantViolation, ParseError
from .evaluate import evaluate_closed, evaluate_open
from .expansion import ExpansionRequest, free_energy, graph_terms, modular_expansion, partition_function, \
    partition_function_oracle
from .formats import format_graph, parse_algebra, parse_graph, parse_profile, parse_rational, parse_vectors
from .graphs import b0, connected_components, genus, holes
from .kontsevich import KontsevichSpectrum, euler_series, standard_model_series, z_gamma_coloring, \
    z_gamma_contraction
from .checks import CHECKS, run_checks

__all__ = ["main", "build_parser"]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _table(rows: list[list], header: list[str], fmt: str) -> str:
    if fmt == "tsv":
        return "\n".join("\t".join(map(str, r)) for r in [header] + rows)
    cells = [[str(c) for c in r] for r in [header] + rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


# -- subcommands ------------------------------------------------------------


def cmd_enumerate(args) -> str:
    if args.profile:
        prof = parse_profile(args.profile)
        catalog = {prof: [
            _entry(prof, cl.graph, cl.count, args.mode) for cl in graphs_with_profile(prof, args.mode)
        ]}
    else:
        catalog = graphs_up_to_order(args.max, args.mode)
    rows, graphs = [], []
    for prof, entries in catalog.items():
        for i, e in enumerate(entries):
            gen = ",".join(map(str, e.genera)) or "-"
            hol = ",".join(map(str, e.holes)) or "-"
            rows.append([str(prof), i, e.aut, e.count, e.b0, gen, hol])
            graphs.append(f"# profile {prof} class {i}\n{format_graph(e.graph)}")
    out = _table(rows, ["profile", "class", "aut", "count", "b0", "genus", "holes"], args.format)
    if not args.summary_only:
        out += "\n\n" + "\n".join(graphs).rstrip()
    return out


def _entry(prof, g, count, mode) -> CatalogEntry:
    comps = connected_components(g)
    gen = hol = ()
    if mode == "ribbon":
        gen = tuple(genus(c) for c in comps)
        hol = tuple(len(holes(c)) for c in comps)
    return CatalogEntry(prof, g, count, automorphism_count(g, mode), b0(g), gen, hol)


def cmd_eval(args) -> str:
    g = parse_graph(_read(args.graph))
    algebra = parse_algebra(_read(args.algebra))
    if g.is_closed:
        return str(evaluate_closed(g, algebra))
    if args.inputs:
        return str(evaluate_open(g, algebra, parse_vectors(args.inputs)))
    t = evaluate_open(g, algebra)
    return "\n".join(f"{' '.join(map(str, k))} {v}" for k, v in sorted(t.entries.items()))


def _special(items: Sequence[str]) -> dict[int, int]:
    out = {}
    for item in items or ():
        try:
            k, n = item.split(":")
            out[int(k)] = out.get(int(k), 0) + int(n)
        except ValueError:
            raise ParseError(f"special profile entries look like k:l, got {item!r}") from None
    return out


def cmd_expand(args) -> str:
    algebra = parse_algebra(_read(args.algebra))
    zeta = [parse_rational(x) for x in args.zeta.split(",")] if args.zeta else None
    req = ExpansionRequest(algebra, args.mode, args.order, _special(args.special), zeta)
    if args.mode == "modular":
        series = modular_expansion(req)
    else:
        series = partition_function(req)
        oracle = partition_function_oracle(req)
        if series != oracle:
            raise InvariantViolation(f"graph sum {series} != Taylor-Wick oracle {oracle}")
        if args.free_energy:
            series = free_energy(req)
    out = [series.dump()]
    if args.ledger:
        rows = []
        for i, t in enumerate(graph_terms(req, connected_only=args.free_energy)):
            mono = " ".join(f"{v}^{e}" for v, e in zip(series.variables, t.exponent) if e) or "1"
            rows.append([i, str(t.profile), t.aut, t.value, mono])
        out.append(_table(rows, ["class", "profile", "aut", "Z", "monomial"], args.format))
    return "\n\n".join(out)


def cmd_kontsevich(args) -> str:
    if args.kcmd == "eval":
        g = parse_graph(_read(args.graph))
        spec = KontsevichSpectrum([parse_rational(x) for x in args.lambdas.split(",")])
        colour, contracted = z_gamma_coloring(g, spec), z_gamma_contraction(g, spec)
        if colour != contracted:
            raise InvariantViolation(f"hole colouring {colour} != contraction {contracted}")
        return str(colour)
    if args.kcmd == "standard":
        return standard_model_series(args.N, args.order).dump()
    return euler_series(args.order).dump()


def cmd_check(args) -> str:
    done = run_checks(args.seed, args.only)
    return "\n".join(f"ok {name}" for name in done)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="feyngraph", description="Ribbon-graph calculus and Feynman expansions.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list closed graphs by valence profile")
    group = e.add_mutually_exclusive_group(required=True)
    group.add_argument("--profile", help="l_1,l_2,... or k:l,k:l")
    group.add_argument("--max", type=int, help="all profiles with at most this many half-edges")
    e.add_argument("--mode", choices=("ribbon", "ordinary"), default="ribbon")
    e.add_argument("--summary-only", action="store_true", help="omit the classes in graph format")
    e.add_argument("--format", choices=("text", "tsv"), default="text")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("eval", help="evaluate a graph against an algebra")
    v.add_argument("--graph", required=True)
    v.add_argument("--algebra", required=True)
    v.add_argument("--inputs", help="leg vectors as '1,0;0,1'")
    v.set_defaults(func=cmd_eval)

    x = sub.add_parser("expand", help="partition function as a graph sum")
    x.add_argument("--algebra", required=True)
    x.add_argument("--mode", choices=("ribbon", "ordinary", "modular"), required=True)
    x.add_argument("--order", type=int, required=True)
    x.add_argument("--special", nargs="*", metavar="K:L")
    x.add_argument("--zeta", help="univalent cap vector, modular mode")
    x.add_argument("--free-energy", action="store_true", help="print log Z instead of Z")
    x.add_argument("--ledger", action="store_true", help="list every contributing graph")
    x.add_argument("--format", choices=("text", "tsv"), default="text")
    x.set_defaults(func=cmd_expand)

    k = sub.add_parser("kontsevich", help="Hermitian matrix model")
    ksub = k.add_subparsers(dest="kcmd", required=True)
    ke = ksub.add_parser("eval")
    ke.add_argument("--graph", required=True)
    ke.add_argument("--lambda", dest="lambdas", required=True, help="comma-separated eigenvalues")
    ks = ksub.add_parser("standard")
    ks.add_argument("--N", type=int, required=True)
    ks.add_argument("--order", type=int, required=True)
    ku = ksub.add_parser("euler")
    ku.add_argument("--order", type=int, required=True)
    k.set_defaults(func=cmd_kontsevich)

    c = sub.add_parser("check", help="run the cross-oracle self checks")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--only", nargs="*", choices=sorted(CHECKS))
    c.set_defaults(func=cmd_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        print(args.func(args))
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2
    except FeynGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
