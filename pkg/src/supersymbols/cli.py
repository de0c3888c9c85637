"""Command-line front end."""

import argparse
import sys

from . import gamma as gm
from .coeff import H, coeff
from .contact import contact_bracket
from .grammar import ParseError
from .psymbols import MixedParity, circ_h, normalized_bracket_h, parse_symbol, poisson_bracket, super_commutator_h
from .report import IOFailure, Report, SuiteConfig, emit_report
from .suites import SUITES, UnknownSuite, _hom_checks, _relation_checks, _Run, run_suite
from .weyl import parse_weyl

CALCULI = ("poisson", "circ_h", "contact", "weyl")
# default operation per calculus; see compute_bracket
DEFAULT_MODE = {"poisson": "bracket", "circ_h": "commutator", "contact": "bracket", "weyl": "product"}


def compute_bracket(expr1, expr2, calculus, h="symbolic", cutoff=-12, mode=None):
    """Parse two expressions and combine them in the chosen calculus; returns printed text.

    ``mode`` selects product, commutator or (for circ_h) the normalized
    bracket (1/h)[A, B]_h; each calculus has its natural default.
    """
    if calculus not in CALCULI:
        raise ValueError(f"unknown calculus {calculus!r}")
    mode = mode or DEFAULT_MODE[calculus]
    if calculus == "weyl":
        x, y = parse_weyl(expr1), parse_weyl(expr2)
        if mode == "product":
            return str(x * y)
        if mode == "commutator":
            return str(x * y - y * x)
        raise ValueError(f"mode {mode!r} does not apply to weyl")
    A, B = parse_symbol(expr1), parse_symbol(expr2)
    if calculus == "poisson":
        return str(poisson_bracket(A, B))
    if calculus == "contact":
        return str(contact_bracket(A, B))
    hv = H if h == "symbolic" else coeff(h)
    if mode == "product":
        return str(circ_h(A, B, cutoff, hv))
    if mode == "commutator":
        return str(super_commutator_h(A, B, cutoff, hv))
    if mode == "bracket":
        return str(normalized_bracket_h(A, B, cutoff, hv))
    raise ValueError(f"unknown mode {mode!r}")


def _add_config_flags(p, alpha_default="symbolic"):
    p.add_argument("--alpha", default=alpha_default)
    p.add_argument("--h", default="symbolic")
    p.add_argument("--mu", default="0")
    p.add_argument("--range", type=int, default=3)
    p.add_argument("--cutoff", type=int, default=-12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="record wall time per check")


def build_parser():
    parser = argparse.ArgumentParser(prog="supersymbols", description="Superalgebra symbol calculi and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("--suite", required=True, choices=sorted(SUITES))
    _add_config_flags(run)

    br = sub.add_parser("bracket", help="bracket or multiply two expressions")
    br.add_argument("expr1")
    br.add_argument("expr2")
    br.add_argument("--calculus", choices=CALCULI, default="poisson")
    br.add_argument("--mode", choices=("product", "commutator", "bracket"))
    br.add_argument("--h", default="symbolic")
    br.add_argument("--cutoff", type=int, default=-12)

    g = sub.add_parser("gamma", help="the exceptional family Gamma(sigma1, sigma2, sigma3)")
    gsub = g.add_subparsers(dest="action", required=True)
    table = gsub.add_parser("table", help="print the structure constants")
    table.add_argument("--sigma", default="2,-3,1", help="comma separated sigma1,sigma2,sigma3")
    verify = gsub.add_parser("verify", help="check a realization against Gamma(2, -1-alpha, alpha-1)")
    verify.add_argument("--variant", choices=gm.VARIANTS, default="poisson")
    _add_config_flags(verify)
    psl = gsub.add_parser("psl", help="the fourteen-dimensional ideal at alpha = 1 or -1")
    _add_config_flags(psl, alpha_default="1")
    return parser


def _config(args, suite):
    return SuiteConfig(suite=suite, alpha=args.alpha, h=args.h, mu=args.mu, range=args.range,
                       cutoff=args.cutoff, seed=args.seed, format=args.format, timing=args.timing)


def _emit(report, args):
    data = emit_report(report, args.format, args.out)
    if args.out is None:
        sys.stdout.write(data.decode())
    return report.exit_code


def gamma_verify(config, variant):
    run = _Run(config)
    h = run.h if variant in ("deformed", "pseudo_h") else H
    _hom_checks(run, variant, variant, run.alpha, h)
    _relation_checks(run, variant, variant, run.alpha, h)
    return Report(f"gamma-verify-{variant}", config.echo(), run.checks, run.notes)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _emit(run_suite(_config(args, args.suite)), args)
        if args.command == "bracket":
            print(compute_bracket(args.expr1, args.expr2, args.calculus, args.h, args.cutoff, args.mode))
            return 0
        if args.action == "table":
            sigma = [coeff(s) for s in args.sigma.split(",")]
            if len(sigma) != 3:
                raise ValueError("--sigma needs three values")
            print(gm.build_gamma(*sigma).format_table())
            return 0
        if args.action == "verify":
            return _emit(gamma_verify(_config(args, "gamma-verify"), args.variant), args)
        if args.alpha not in ("1", "-1"):
            raise ValueError("--alpha must be 1 or -1")
        return _emit(run_suite(_config(args, "psl")), args)
    except (ParseError, MixedParity, UnknownSuite, gm.UnknownVariant, IOFailure, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
