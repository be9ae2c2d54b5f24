"""Parameterized families of quadratic maps.

``milnor_ab`` is [x^2 + a*x*y : b*x*y + y^2], ``milnor_aa`` its symmetric
locus a = b, and ``quadratic_poly`` is z^2 + c carried as [x^2 + c*y^2 : y^2].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .dynatomic import DEFAULT_MAX_TERMS, phi_star
from .mpoly import DegreeMismatch, MPoly, coefficient, form_degree, specialize
from .ratmap import RationalMap


class ExcludedLocus(ValueError):
    pass


@dataclass(frozen=True)
class FamilyMap:
    name: str
    phi: RationalMap

    @property
    def excluded_locus(self):
        """Res(F, G) as a polynomial in the parameters."""
        return self.phi.resultant()

    @property
    def params(self):
        return self.phi.params


def _vars(*params):
    return ("x", "y") + params


def milnor_ab() -> FamilyMap:
    v = _vars("a", "b")
    x, y, a, b = (MPoly.var(n, v) for n in v)
    return FamilyMap("milnor_ab", RationalMap(x * x + a * x * y, b * x * y + y * y))


def milnor_aa() -> FamilyMap:
    v = _vars("a")
    x, y, a = (MPoly.var(n, v) for n in v)
    return FamilyMap("milnor_aa", RationalMap(x * x + a * x * y, a * x * y + y * y))


def quadratic_poly() -> FamilyMap:
    v = _vars("c")
    x, y, c = (MPoly.var(n, v) for n in v)
    return FamilyMap("quadratic_poly", RationalMap(x * x + c * y * y, y * y))


FAMILIES = {"milnor_ab": milnor_ab, "milnor_aa": milnor_aa, "quadratic_poly": quadratic_poly}


def get_family(name: str) -> FamilyMap:
    try:
        return FAMILIES[name]()
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None


def family_phi_star(family: FamilyMap, N: int, max_terms=DEFAULT_MAX_TERMS) -> MPoly:
    return phi_star(family.phi, N, max_terms=max_terms)


def lead_coeff_in_x(P: MPoly, nu: int) -> MPoly:
    """Coefficient of x^nu, as a polynomial in the parameters."""
    if form_degree(P) != nu:
        raise DegreeMismatch(f"expected degree {nu}, got {form_degree(P)}")
    return coefficient(P, {"x": nu, "y": 0}).trimmed()


def lead_coeff_in_y(P: MPoly, nu: int) -> MPoly:
    if form_degree(P) != nu:
        raise DegreeMismatch(f"expected degree {nu}, got {form_degree(P)}")
    return coefficient(P, {"x": 0, "y": nu}).trimmed()


def _int_content(p: MPoly) -> int:
    g = 0
    for c in p.terms.values():
        g = gcd(g, int(c))
    return g


def param_content_is_one(P: MPoly):
    """Certify that the content of P over ZZ[params] is 1.

    Returns True when some (x, y)-coefficient is +-1, or when two
    coefficients with integer content 1 involve disjoint parameter sets (a
    common divisor of both is then an integer dividing 1).  Returns None when
    neither certificate is found.
    """
    if any(type(c) is not int for c in P.terms.values()):
        raise ValueError("integer coefficients required")
    idx = [P.vars.index(v) for v in ("x", "y")]
    groups: dict[tuple, dict] = {}
    rest = [i for i in range(len(P.vars)) if i not in idx]
    for e, c in P.terms.items():
        groups.setdefault(tuple(e[i] for i in idx), {})[tuple(e[i] for i in rest)] = c
    pvars = tuple(P.vars[i] for i in rest)
    coeffs = [MPoly(t, pvars) for t in groups.values()]
    prim = []
    for c in coeffs:
        if c.is_constant() and abs(c.constant_value()) == 1:
            return True
        if _int_content(c) == 1:
            prim.append(set(c.used_vars()))
    for i, u in enumerate(prim):
        for w in prim[i + 1:]:
            if u and w and not (u & w):
                return True
    return None


def specialized_map(family: FamilyMap, bindings: dict, rescale=True) -> RationalMap:
    res = family.excluded_locus
    if isinstance(res, MPoly):
        val = specialize(res, {k: v for k, v in bindings.items() if k in res.vars})
    else:
        val = res
    if isinstance(val, MPoly):
        val = val.constant_value() if val.is_constant() else val
    if val == 0:
        raise ExcludedLocus(f"bindings {bindings} lie on Res = 0")
    return family.phi.specialize(bindings, rescale=rescale)


def specialization_check(family: FamilyMap, bindings: dict, N: int) -> bool:
    """specialize(Phi*_N of the family) == Phi*_N of the specialized map.

    The specialized forms are not rescaled, so the comparison is exact even
    for non-integral bindings.
    """
    target = specialized_map(family, bindings, rescale=False)
    generic = specialize(family_phi_star(family, N), bindings)
    direct = phi_star(target, N)
    return generic == direct
