"""Fixture suite of printed reference polynomials.

Each fixture is a canonical-JSON file holding the transcribed printed form
(``printed``, in expression syntax), its expansion (``expected``), and the
computation that should reproduce it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .dynatomic import phi_star
from .families import family_phi_star, get_family
from .htuned import TunedContext, psi, psi_star, psi_tilde
from .mpoly import MPoly, dehomogenize, format_terms, from_json, sort_roster
from .parse import parse_form_pair, parse_poly
from .ratmap import PGL2, RationalMap

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@dataclass(frozen=True)
class FixtureResult:
    id: str
    ok: bool
    detail: str = ""


def load_fixtures(directory=None, filter: str | None = None) -> list[dict]:
    directory = Path(directory) if directory else FIXTURE_DIR
    out = []
    for path in sorted(directory.glob("*.json")):
        fx = json.loads(path.read_text())
        if filter and filter not in fx["id"] and filter not in fx.get("group", ""):
            continue
        out.append(fx)
    return out


def _ctx(fx) -> TunedContext:
    phi = RationalMap.from_text(fx["map"])
    h = PGL2.from_forms(*parse_form_pair(fx["aut"]))
    return TunedContext(phi, h)


def compute(fx: dict) -> MPoly:
    kind, N = fx["kind"], fx["N"]
    if kind == "family_phi_star":
        return family_phi_star(get_family(fx["family"]), N)
    if kind in ("psi", "psi_star", "psi_tilde"):
        ctx = _ctx(fx)
        if kind == "psi":
            return psi(ctx, N)
        if kind == "psi_star":
            return psi_star(ctx, N)
        return psi_tilde(ctx, N).psi_tilde
    phi = RationalMap.from_text(fx["map"])
    if kind == "iterate_F":
        return phi.iterate(N)[0]
    if kind == "iterate_G":
        return phi.iterate(N)[1]
    if kind == "phi_star":
        return phi_star(phi, N)
    if kind == "phi_star_z":
        return dehomogenize(phi_star(phi, N), "z")
    raise ValueError(f"unknown fixture kind {kind!r}")


def _same_roster(p: MPoly, q: MPoly):
    roster = sort_roster(p.used_vars() + q.used_vars())
    return p.trimmed().with_roster(roster), q.trimmed().with_roster(roster)


def _matches(got: MPoly, want: MPoly, compare: str) -> bool:
    if compare == "exact":
        return got == want
    if compare == "sign":
        return got == want or got == -want
    raise ValueError(f"unknown comparison {compare!r}")


def _diff_text(got: MPoly, want: MPoly, limit=6) -> str:
    got, want = _same_roster(got, want)
    delta = got - want
    terms = delta.sorted_terms()
    shown = format_terms(terms[:limit], delta.vars)
    more = f" (+{len(terms) - limit} more terms)" if len(terms) > limit else ""
    return f"computed - expected = {shown}{more}"


def check(fx: dict) -> FixtureResult:
    want = from_json(fx["expected"])
    printed = parse_poly(fx["printed"])
    if printed != want:
        return FixtureResult(fx["id"], False, "fixture is inconsistent: printed form does not expand to expected")
    got = compute(fx)
    if _matches(got, want, fx.get("compare", "exact")):
        return FixtureResult(fx["id"], True)
    return FixtureResult(fx["id"], False, _diff_text(got, want))


def run(directory=None, filter: str | None = None) -> list[FixtureResult]:
    return [check(fx) for fx in load_fixtures(directory, filter)]
