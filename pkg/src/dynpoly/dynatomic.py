"""Dynatomic polynomials, their degrees, and orders of vanishing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exactalg import divisors, mobius_split, moebius
from .mpoly import MPoly, exact_div, form_degree, multiplicity, primitive
from .numfield import root_of_unity_order
from .ratmap import INF, ProjPoint, RationalMap, multiplier, orbit_search

INFINITY = math.inf
DEFAULT_MAX_TERMS = 10**6


class ResourceLimit(RuntimeError):
    pass


def _guard(p: MPoly, max_terms):
    if max_terms is not None and len(p.terms) > max_terms:
        raise ResourceLimit(f"intermediate polynomial has {len(p.terms)} terms (ceiling {max_terms})")
    return p


def phi_N(phi: RationalMap, N: int, max_terms=None) -> MPoly:
    """y*F_N - x*G_N."""
    FN, GN = phi.iterate(N)
    x = MPoly.var("x", FN.vars)
    y = MPoly.var("y", FN.vars)
    return _guard(y * FN - x * GN, max_terms)


def mobius_quotient(factor, N: int, max_terms=None, indices=None) -> MPoly:
    """prod_k factor(k)^mu(N/k) as one certified division.

    ``indices`` restricts the divisors k that take part.
    """
    plus, minus = mobius_split(N)
    if indices is not None:
        plus = [k for k in plus if k in indices]
        minus = [k for k in minus if k in indices]
    num = None
    for k in plus:
        f = factor(k)
        num = f if num is None else _guard(num * f, max_terms)
    den = None
    for k in minus:
        f = factor(k)
        den = f if den is None else _guard(den * f, max_terms)
    if num is None:
        raise ValueError("empty Moebius numerator")
    if den is None:
        return num
    return _guard(exact_div(num, den), max_terms)


def phi_star(phi: RationalMap, N: int, max_terms=None) -> MPoly:
    """Phi*_N exactly as the Moebius quotient produces it (no normalization)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return mobius_quotient(lambda k: phi_N(phi, k, max_terms), N, max_terms)


def phi_star_normalized(phi: RationalMap, N: int) -> MPoly:
    """Primitive part of Phi*_N with positive leading coefficient."""
    return primitive(phi_star(phi, N))


def nu_degree(d: int, N: int) -> int:
    return sum(moebius(N // k) * d**k for k in divisors(N))


@dataclass(frozen=True)
class DynatomicResult:
    N: int
    phi_N: MPoly
    phi_star_N: MPoly
    degree_check: int

    def __post_init__(self):
        exact_div(self.phi_N, self.phi_star_N)


def dynatomic(phi: RationalMap, N: int, max_terms=None) -> DynatomicResult:
    P = phi_N(phi, N, max_terms)
    S = phi_star(phi, N, max_terms)
    expected = phi.d + 1 if N == 1 else nu_degree(phi.d, N)
    if form_degree(S) != expected:
        raise ArithmeticError(f"deg Phi*_{N} = {form_degree(S)}, expected {expected}")
    return DynatomicResult(N, P, S, expected)


def ord_at(P: MPoly, Q: ProjPoint) -> int:
    """Multiplicity of Q's point-form (linear or orbit) in P."""
    if P.is_zero():
        raise ValueError("order of vanishing in the zero polynomial")
    form = Q.point_form() if isinstance(Q, ProjPoint) else Q
    return multiplicity(P, form)[0]


@dataclass
class DivisorOnP1:
    """Point-forms with positive multiplicities."""

    parts: dict = field(default_factory=dict)

    def add(self, form: MPoly, mult: int):
        if mult < 1:
            return
        form = primitive(form)
        self.parts[form] = self.parts.get(form, 0) + mult

    def degree(self):
        return sum(form_degree(f) * m for f, m in self.parts.items())

    def as_form(self) -> MPoly:
        out = None
        for f, m in self.parts.items():
            out = f**m if out is None else out * f**m
        return out if out is not None else MPoly.const(1, ("x", "y"))


def divisor_of(P: MPoly, forms) -> tuple[DivisorOnP1, MPoly]:
    """Multiplicities of the given point-forms in P, and the leftover cofactor."""
    D = DivisorOnP1()
    rest = P
    for f in forms:
        k, rest = multiplicity(rest, f)
        D.add(f, k)
    return D, rest


# -- periods and the support predicate --------------------------------------

def primitive_period(phi: RationalMap, z0, bound: int = 64):
    """Least m <= bound with phi^m(z0) = z0, or INFINITY."""
    hit = orbit_search(phi, z0, [z0], bound)
    return INFINITY if hit is None else hit[0]


def astar_data(phi: RationalMap, Q: ProjPoint, bound: int = 64):
    """(m, r) of a point: primitive period and multiplicative period of its multiplier."""
    m = primitive_period(phi, Q.z(), bound)
    if m is INFINITY:
        return INFINITY, INFINITY
    lam = multiplier(phi, Q, m)
    if lam == 0:
        return m, INFINITY
    r = root_of_unity_order(lam, bound)
    return m, (INFINITY if r is None else r)


def _q_powers(q, limit):
    s = q
    while s <= limit:
        yield s
        s *= q


def astar_support_predicate(m, r, q: int, N: int) -> bool:
    """N = m, N = m*r, or N = q^s*m*r with s >= 1 (inert for q = 0)."""
    if N == m:
        return True
    if m is INFINITY or r is INFINITY or m is None or r is None:
        return False
    if N == m * r:
        return True
    if q:
        return any(N == qs * m * r for qs in _q_powers(q, N))
    return False


__all__ = [
    "INF",
    "INFINITY",
    "DEFAULT_MAX_TERMS",
    "DivisorOnP1",
    "DynatomicResult",
    "ResourceLimit",
    "astar_data",
    "astar_support_predicate",
    "divisor_of",
    "dynatomic",
    "mobius_quotient",
    "nu_degree",
    "ord_at",
    "phi_N",
    "phi_star",
    "phi_star_normalized",
    "primitive_period",
]
