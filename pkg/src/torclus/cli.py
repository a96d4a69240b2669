"""Command line front end.

Exit codes: 0 success, 1 a check failed (or a graph was truncated),
2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import groth
from .cartan import UnknownType, cartan_data, n_sequence
from .cluster import Truncated, exchange_graph, max_nodes_default, mutate_seed
from .params import ParamMonomial, QuotientContext
from .seedfile import SeedFileError, dumps, load
from .textfmt import ParseError, format_element, parse_element, parse_param_monomial
from .torus import CartanBackend, NotDivisible, star

VERIFY = {
    "a1-two-param-serre": groth.two_param_serre_check,
    "sl3-cq-products": groth.sl3_cq_corpus,
    "sl3-cq-simples": groth.sl3_cq_simples,
    "sl2-tsystem": groth.sl2_corpus,
    "a2-c1ob-graph": groth.c1ob_a2_corpus,
    "c1-seed-A2": lambda: groth.verify_c1_theorem("A2"),
    "c1-seed-A3": lambda: groth.verify_c1_theorem("A3"),
    "c1-seed-D4": lambda: groth.verify_c1_theorem("D4"),
    "ay-commutation-A2": lambda: groth.ay_check("A2"),
    "ay-commutation-A3": lambda: groth.ay_check("A3"),
    "powers-kl": groth.power_products_check,
    "b2-qflat": groth.b2_corpus,
}


class UsageError(Exception):
    pass


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _quotient(args) -> QuotientContext:
    q = getattr(args, "quotient", "none")
    if q in (None, "none"):
        return QuotientContext.none()
    if q == "standard":
        return QuotientContext.standard()
    return QuotientContext.custom([parse_param_monomial(s) for s in q.split(";")])


def cmd_cartan(args, out):
    data = cartan_data(args.type)
    if args.max_m <= 0:
        return 0
    for i in data.nodes:
        for j in data.nodes:
            row = ",".join(str(data.ctilde(i, j, m)) for m in range(1, args.max_m + 1))
            out.write(f"Ct[{i},{j}] = {row}\n")
    return 0


def cmd_nexp(args, out):
    data = cartan_data(args.type)
    p = _ints(args.pair)
    if len(p) != 4:
        raise UsageError("--pair needs i,p,j,s")
    out.write(f"{ParamMonomial(n_sequence(data, *p))}\n")
    return 0


def cmd_star(args, out):
    if args.seed:
        be = load(args.seed).backend
    else:
        be = CartanBackend(args.type, _quotient(args), _ints(args.project) if args.project else None)
    acc = None
    for text in args.exprs:
        x = parse_element(text, be)
        acc = x if acc is None else star(acc, x)
    out.write(format_element(acc) + "\n")
    return 0


def cmd_mutate(args, out):
    seed = load(args.seedfile)
    for k in _ints(args.k):
        if not 1 <= k <= seed.m:
            raise UsageError(f"direction {k} is not in 1..{seed.m}")
        seed = mutate_seed(seed, k - 1)
    text = dumps(seed)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        out.write(text)
    return 0


def cmd_graph(args, out):
    seed = load(args.seedfile)
    limit = args.max if args.max is not None else max_nodes_default()
    try:
        g = exchange_graph(seed, limit)
        code = 0
    except Truncated as e:
        g, code = e.partial, 1
    if not args.summary_only:
        out.write(g.to_dot() + "\n")
    out.write(g.summary() + "\n")
    return code


def cmd_verify(args, out):
    ids = sorted(VERIFY) if args.id == "all" else [args.id]
    for i in ids:
        if i not in VERIFY:
            raise UsageError(f"unknown id {i!r}; choose from: all, {', '.join(sorted(VERIFY))}")
    reports = [VERIFY[i]() for i in ids]
    ok = all(r.ok for r in reports)
    if args.report == "json":
        doc = [r.as_dict() for r in reports]
        out.write(json.dumps(doc if len(doc) > 1 else doc[0], indent=2) + "\n")
    else:
        for r in reports:
            for a in r.assertions:
                if not a.ok:
                    out.write(f"FAIL {r.name} {a.id}\n  expected: {a.expected}\n  actual:   {a.actual}\n")
            out.write(r.summary() + "\n")
    return 0 if ok else 1


def cmd_characters(args, out):
    cat = args.category.upper()
    xi = _ints(args.xi) if args.xi else None
    prof = groth.profile(cat, args.type, xi)
    be = prof.backend
    if cat == "C1":
        for i in prof.cartan.nodes:
            x = prof.xi[i]
            for kind, label in (("top", f"L(Y[{i},{x + 2}])"), ("kr", f"L(Y[{i},{x}] Y[{i},{x + 2}])"),
                                ("bottom", f"L(Y[{i},{x}])")):
                out.write(f"{label} = {format_element(groth.truncated_class_C1(prof, (kind, i)))}\n")
        return 0
    if cat == "C_Z":
        raise UsageError("C_Z has infinitely many fundamentals; pick a truncated category")
    for i, r in sorted(prof.generators):
        try:
            x = groth.fundamental_class_thin(prof.cartan, i, r, be)
        except groth.NotThin as e:
            raise UsageError(str(e)) from None
        out.write(f"V{i}(q^{r}) = {format_element(prof.truncate(x))}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torclus", description="Toroidal cluster algebras and quantum Grothendieck rings.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cartan", help="coefficients of the inverse quantized Cartan matrix")
    c.add_argument("--type", required=True)
    c.add_argument("--max-m", type=int, default=12)
    c.set_defaults(func=cmd_cartan)

    c = sub.add_parser("nexp", help="the parameter monomial prod_a t_a^{N_a(i,p;j,s)}")
    c.add_argument("--type", required=True)
    c.add_argument("--pair", required=True, help="i,p,j,s")
    c.set_defaults(func=cmd_nexp)

    c = sub.add_parser("star", help="ordered star product of expressions")
    c.add_argument("exprs", nargs="+")
    c.add_argument("--type", default="A1")
    c.add_argument("--quotient", default="none", help="none, standard, or ';'-separated relation monomials")
    c.add_argument("--project", help="comma-separated kept parameter indices")
    c.add_argument("--seed", help="take the torus from a seed file instead")
    c.set_defaults(func=cmd_star)

    c = sub.add_parser("mutate", help="mutate a seed file (directions are 1-based)")
    c.add_argument("seedfile")
    c.add_argument("k", help="direction or comma-separated word")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_mutate)

    c = sub.add_parser("graph", help="enumerate the exchange graph")
    c.add_argument("seedfile")
    c.add_argument("--max", type=int)
    c.add_argument("--summary-only", action="store_true", help="skip the DOT output")
    c.set_defaults(func=cmd_graph)

    c = sub.add_parser("verify", help="run a golden identity corpus")
    c.add_argument("id", help="corpus id or 'all'")
    c.add_argument("--report", choices=["text", "json"], default="text")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("characters", help="print (truncated) classes of a category")
    c.add_argument("--type", default=None)
    c.add_argument("--category", required=True, help="C1, C1_OB, CQ_EXAMPLE or B2_QFLAT")
    c.add_argument("--xi", help="height function as comma-separated values")
    c.set_defaults(func=cmd_characters)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, ParseError, UnknownType, SeedFileError, NotDivisible, groth.UnknownLabel,
            groth.NotBipartite, FileNotFoundError, ValueError) as e:
        sys.stderr.write(f"torclus: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
