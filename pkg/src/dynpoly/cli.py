"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 degenerate
map, 4 invalid automorphism, 5 out-of-range formula or resource ceiling.
stdout carries only the result payload; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dynatomic import DEFAULT_MAX_TERMS, ResourceLimit, phi_N, phi_star
from .families import (
    FAMILIES,
    family_phi_star,
    get_family,
    lead_coeff_in_x,
    lead_coeff_in_y,
    param_content_is_one,
)
from .htuned import NonPrimeOrder, NotAnAutomorphism, TunedContext, degree_gap, divides_phi_star, psi_tilde
from .mpoly import AlgebraError, MPoly, dehomogenize, form_degree, to_json
from .parse import ParseError, parse_map_text
from .powermaps import (
    MAX_VERIFY_DEGREE,
    POWER,
    RECIPROCAL,
    OutOfFormulaRange,
    power_factor_indices,
    reducibility_verdict,
    verify_factorization,
)
from .ratmap import PGL2, DegenerateMap, DegreeNot2, RationalMap, sigma_invariants
from .verify import run as run_fixtures

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_DEGENERATE, EXIT_AUT, EXIT_RANGE = range(6)


class _Map:
    def __init__(self, text: str):
        F, G, self.in_z = parse_map_text(text)
        self.text = text
        self.phi = RationalMap(F, G)

    def render(self, P: MPoly) -> MPoly:
        return dehomogenize(P, "z") if self.in_z else P


def _poly_out(P: MPoly, as_json: bool):
    return to_json(P) if as_json else str(P)


def _emit(args, payload, pretty_lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(pretty_lines))


def cmd_dynatomic(args) -> int:
    m = _Map(args.map)
    if args.star:
        P = phi_star(m.phi, args.N, max_terms=args.max_terms)
    else:
        P = phi_N(m.phi, args.N, max_terms=args.max_terms)
    key = "phi_star" if args.star else "phi_N"
    out = m.render(P)
    payload = {"map": args.map, "N": args.N, key: to_json(out), "degree": form_degree(P)}
    _emit(args, payload, [str(out)])
    return EXIT_OK


def _parse_aut(text: str) -> PGL2:
    F, G, _ = parse_map_text(text)
    try:
        return PGL2.from_forms(F, G)
    except (ValueError, AlgebraError) as exc:
        raise ParseError(f"automorphism must be a pair of linear forms: {exc}") from None


def cmd_htuned(args) -> int:
    m = _Map(args.map)
    ctx = TunedContext(m.phi, _parse_aut(args.aut))
    res = psi_tilde(ctx, args.N)
    try:
        divides_phi_star(ctx, args.N)
        divides = True
    except ArithmeticError:
        divides = False
    gap = degree_gap(ctx, args.N)
    polys = {k: m.render(getattr(res, k)) for k in ("psi", "psi_star", "psi_tilde")}
    payload = {
        "p": ctx.p,
        "N": args.N,
        **{k: to_json(v) for k, v in polys.items()},
        "deltas": [{"point": str(Q), "delta": k} for Q, k in res.deltas],
        "divides_phi_star": divides,
        "degree_gap": gap,
    }
    pN = ctx.p * args.N
    lines = [
        f"p = {ctx.p}",
        f"Psi_{pN} = {polys['psi']}",
        f"Psi*_{pN} = {polys['psi_star']}",
        f"tilde Psi*_{pN} = {polys['psi_tilde']}",
        *(f"delta at {Q} = {k}" for Q, k in res.deltas),
        f"divides Phi*_{pN}: {str(divides).lower()}",
        f"degree gap = {gap}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_power(args) -> int:
    kind = RECIPROCAL if args.reciprocal else POWER
    verdict, note = reducibility_verdict(args.d, args.N, kind)
    if args.d**args.N <= MAX_VERIFY_DEGREE:
        payload = verify_factorization(args.d, args.N, kind).as_dict()
    else:
        print(f"d^N above {MAX_VERIFY_DEGREE}: indices not checked against Phi*_N", file=sys.stderr)
        payload = {
            "kind": kind,
            "d": args.d,
            "N": args.N,
            "cyclotomic_indices": power_factor_indices(args.d, args.N, kind),
            "unit": None,
            "verified": False,
        }
    payload["verdict"] = verdict
    idx = payload["cyclotomic_indices"]
    lines = [
        f"indices: {idx if idx is not None else 'unavailable (factorization budget exceeded)'}",
        f"unit: {payload['unit']}",
        f"verified: {str(payload['verified']).lower()}",
        f"verdict: {verdict} ({note})",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_family(args) -> int:
    fam = get_family(args.family)
    P = family_phi_star(fam, args.N, max_terms=args.max_terms)
    nu = form_degree(P)
    lx, ly = lead_coeff_in_x(P, nu), lead_coeff_in_y(P, nu)
    content = param_content_is_one(P)
    payload = {
        "family": args.family,
        "N": args.N,
        "phi_star": to_json(P),
        "degree": nu,
        "lead_x": to_json(lx),
        "lead_y": to_json(ly),
        "content_one": content,
    }
    lines = [
        str(P),
        f"degree {nu}",
        f"x-lead: {lx}",
        f"y-lead: {ly}",
        f"content 1: {'certified' if content else 'not certified'}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_sigma(args) -> int:
    m = _Map(args.map)
    s1, s2 = sigma_invariants(m.phi)
    payload = {"map": args.map, "sigma_1": str(s1), "sigma_2": str(s2)}
    _emit(args, payload, [f"sigma_1 = {s1}", f"sigma_2 = {s2}"])
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    results = run_fixtures(args.fixtures_dir, args.filter)
    failed = [r for r in results if not r.ok]
    payload = {
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "results": [{"id": r.id, "ok": r.ok, "detail": r.detail} for r in results],
    }
    lines = [f"{'PASS' if r.ok else 'FAIL'} {r.id}" for r in results]
    lines.append(f"{payload['passed']}/{len(results)} fixtures match")
    _emit(args, payload, lines)
    if failed:
        print(f"{failed[0].id}: {failed[0].detail}", file=sys.stderr)
        return EXIT_VERIFY
    if not results:
        print("no fixtures selected", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    # Global flags live on a parent parser so they work on either side of the
    # subcommand; SUPPRESS keeps a subparser from clobbering an earlier value.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit canonical JSON")
    common.add_argument("--max-terms", type=_positive, default=argparse.SUPPRESS,
                        help=f"term-count ceiling (default {DEFAULT_MAX_TERMS})")

    parser = argparse.ArgumentParser(prog="dynpoly", parents=[common],
                                     description="Exact dynatomic polynomial computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dynatomic", parents=[common], help="Phi_N or Phi*_N of a map")
    p.add_argument("--map", required=True, help='"F, G" in x, y or a rational function of z')
    p.add_argument("--N", type=_positive, required=True)
    p.add_argument("--star", action="store_true", help="the dynatomic quotient Phi*_N")
    p.set_defaults(func=cmd_dynatomic)

    p = sub.add_parser("htuned", parents=[common], help="h-tuned polynomials for an automorphism")
    p.add_argument("--map", required=True)
    p.add_argument("--aut", required=True, help='linear pair such as "y, x"')
    p.add_argument("--N", type=_positive, required=True)
    p.set_defaults(func=cmd_htuned)

    p = sub.add_parser("power", parents=[common], help="cyclotomic factorization for z^d or z^-d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=_positive, required=True)
    p.add_argument("--reciprocal", action="store_true")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("family", parents=[common], help="Phi*_N over a parameter ring")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--N", type=_positive, required=True)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sigma", parents=[common], help="sigma_1, sigma_2 of a degree-2 map")
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("verify-paper", parents=[common], help="check the reference fixtures")
    p.add_argument("--filter", default=None, help="run fixtures whose id or group contains STR")
    p.add_argument("--fixtures-dir", default=None)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.json = getattr(args, "json", False)
    args.max_terms = getattr(args, "max_terms", DEFAULT_MAX_TERMS)
    try:
        return args.func(args)
    except (ParseError, SyntaxError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegenerateMap as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DEGENERATE
    except (NotAnAutomorphism, NonPrimeOrder) as exc:
        print(f"invalid automorphism: {exc}", file=sys.stderr)
        return EXIT_AUT
    except (OutOfFormulaRange, ResourceLimit) as exc:
        print(f"out of range: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except DegreeNot2 as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
