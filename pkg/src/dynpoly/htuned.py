"""h-tuned dynatomic polynomials for a map with an automorphism of prime order."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dynatomic import INFINITY, mobius_quotient, ord_at, phi_star
from .exactalg import divisors, is_prime, isqrt_exact
from .mpoly import MPoly, exact_div, form_degree, multiplicity, primitive, try_div
from .numfield import root_of_unity_order
from .ratmap import INF, PGL2, ProjPoint, RationalMap, _quo, _working_frame, elem_order, orbit_search

ORDER_BOUND = 64


class NotAnAutomorphism(ValueError):
    pass


class NonPrimeOrder(ValueError):
    pass


def _xy():
    return MPoly.var("x", ("x", "y")), MPoly.var("y", ("x", "y"))


def fixed_points(h: PGL2) -> list[ProjPoint]:
    """Fix(h) as two rational points or one quadratic orbit."""
    form = primitive(h.fixed_point_form())
    if form_degree(form) != 2:
        raise ValueError("h is the identity")
    A = form.terms.get((2, 0), 0)
    B = form.terms.get((1, 1), 0)
    C = form.terms.get((0, 2), 0)
    disc = B * B - 4 * A * C
    if disc == 0:
        raise ValueError(f"Fix(h) is a double point; {h} is parabolic")
    root = isqrt_exact(disc)
    if root is None:
        return [ProjPoint.orbit(form)]
    if A == 0:
        # y * (B x + C y): infinity and [-C : B]
        return [ProjPoint.infinity(), ProjPoint(coords=(-C, B))]
    return [ProjPoint(coords=(Fraction(-B + s * root, 2 * A), 1)) for s in (1, -1)]


@dataclass
class TunedContext:
    phi: RationalMap
    h: PGL2
    p: int = 0
    fix_h: list = field(default_factory=list)

    def __post_init__(self):
        if not self.phi.is_automorphism(self.h):
            raise NotAnAutomorphism(f"{self.h} is not an automorphism of {self.phi}")
        order = elem_order(self.h, ORDER_BOUND)
        if order is None or not is_prime(order):
            raise NonPrimeOrder(f"{self.h} has order {order or 'above ' + str(ORDER_BOUND)}")
        if self.p and self.p != order:
            raise NonPrimeOrder(f"stated order {self.p} but {self.h} has order {order}")
        self.p = order
        self.fix_h = fixed_points(self.h)
        self._psi = {}

    def h_power(self, j: int) -> PGL2:
        return self.h.power(j)

    def cross_form(self, N: int, j: int) -> MPoly:
        """(gamma_j x + delta_j y) F_N - (alpha_j x + beta_j y) G_N."""
        FN, GN = self.phi.iterate(N)
        X, Y = self.h_power(j).forms()
        return Y.with_roster(FN.vars) * FN - X.with_roster(FN.vars) * GN

    def fix_forms(self):
        return [Q.point_form() for Q in self.fix_h]

    def in_fix(self, Q: ProjPoint) -> bool:
        return any(Q == P for P in self.fix_h)


def psi(ctx: TunedContext, N: int) -> MPoly:
    """prod_{j=1}^{p-1} of the cross-forms phi^N - h^j."""
    if N not in ctx._psi:
        out = None
        for j in range(1, ctx.p):
            c = ctx.cross_form(N, j)
            out = c if out is None else out * c
        ctx._psi[N] = out
    return ctx._psi[N]


def psi_star(ctx: TunedContext, N: int) -> MPoly:
    """Moebius product over k | N with pk not dividing N, one certified division."""
    allowed = {k for k in divisors(N) if N % (ctx.p * k) != 0}
    return mobius_quotient(lambda k: psi(ctx, k), N, indices=allowed)


@dataclass(frozen=True)
class TunedResult:
    N: int
    psi: MPoly
    psi_star: MPoly
    psi_tilde: MPoly
    deltas: tuple  # ((point, delta), ...)

    def removed(self) -> MPoly:
        out = MPoly.const(1, ("x", "y"))
        for Q, k in self.deltas:
            out = out * Q.point_form() ** k
        return out


def psi_tilde(ctx: TunedContext, N: int) -> TunedResult:
    """Divide Fix(h) point-forms out of Psi*_{pN} to their exact multiplicity."""
    S = psi_star(ctx, N)
    rest = S
    deltas = []
    for Q in ctx.fix_h:
        k, rest = multiplicity(rest, Q.point_form())
        # One more division must fail; for an orbit this also certifies that
        # the conjugate points carry the same multiplicity.
        if try_div(rest, Q.point_form()) is not None:
            raise ArithmeticError("multiplicity count is inconsistent")
        if not Q.is_rational():
            val = _eval_at_root(rest, Q)
            if val == 0:
                raise ArithmeticError("Galois conjugates of Fix(h) have unequal multiplicity")
        deltas.append((Q, k))
    result = TunedResult(N, psi(ctx, N), S, rest, tuple(deltas))
    if result.psi_tilde * result.removed() != S:
        raise ArithmeticError("psi_tilde reconstruction failed")
    return result


def _eval_at_root(P: MPoly, Q: ProjPoint):
    from .mpoly import dehomogenize, to_unipoly

    return to_unipoly(dehomogenize(P, "z"), "z")(Q.root) if P.degree() > 0 else P.constant_value()


def divides_phi_star(ctx: TunedContext, N: int) -> MPoly:
    """Certified quotient Phi*_{pN} / tilde-Psi*_{pN}."""
    return exact_div(phi_star(ctx.phi, ctx.p * N), psi_tilde(ctx, N).psi_tilde)


def degree_gap(ctx: TunedContext, N: int) -> int:
    return form_degree(phi_star(ctx.phi, ctx.p * N)) - form_degree(psi_tilde(ctx, N).psi_tilde)


def b_orders(ctx: TunedContext, N: int, Q: ProjPoint):
    """(b_Q(pN), b*_Q(pN), tilde-b*_Q(pN))."""
    res = psi_tilde(ctx, N)
    b = ord_at(res.psi, Q)
    bstar = ord_at(res.psi_star, Q)
    btilde = 0 if ctx.in_fix(Q) else ord_at(res.psi_tilde, Q)
    return b, bstar, btilde


# -- h-periods ---------------------------------------------------------------

def h_period(ctx: TunedContext, z0, bound: int = 64):
    """(m, j): least m with phi^m(z0) = h^j(z0), p not dividing j; (INFINITY, None) if none."""
    images = [ctx.h_power(j).apply_z(z0) for j in range(1, ctx.p)]
    hit = orbit_search(ctx.phi, z0, images, bound)
    if hit is None:
        return INFINITY, None
    return hit[0], hit[1] + 1


def bstar_data(ctx: TunedContext, Q: ProjPoint, bound: int = 64):
    """(m, r) of Q: primitive h-period and multiplicative period of the ratio."""
    z0 = Q.z()
    m, j = h_period(ctx, z0, bound)
    if m is INFINITY:
        return INFINITY, INFINITY
    lam_phi, lam_h = _ratio_parts(ctx.phi, RationalMap.from_pgl2(ctx.h_power(j)), z0, m)
    if lam_phi == 0:
        return m, INFINITY
    r = root_of_unity_order(_quo(lam_phi, lam_h), bound)
    return m, (INFINITY if r is None else r)


def _ratio_parts(phi: RationalMap, hj: RationalMap, z0, m):
    """lambda_1(phi^m, z0) and lambda_1(hj, z0), both in one working frame."""
    pts = [z0]
    for _ in range(m):
        pts.append(phi.apply_z(pts[-1]))
    f, phi_w, moved = _working_frame(phi, pts)
    hj_w = hj if f.is_identity() else hj.conjugate(f)
    return _chain(phi_w, moved[:-1]), _chain(hj_w, moved[:1])


def _chain(phi: RationalMap, pts):
    F, G = phi._dehom()
    Fp, Gp = F.derivative(), G.derivative()
    out = 1
    for w in pts:
        gw = G(w)
        out = out * _quo(Fp(w) * gw - F(w) * Gp(w), gw * gw)
    return out


def bstar_support_predicate(m, r, q: int, p: int, N: int, fixed: bool = False) -> bool:
    """Support of tilde-b*_Q(pN); ``fixed`` gives the support of b*_Q(pN) for Q in Fix(h)."""
    if fixed:
        return _fixed_cases(m, r, q, p, N)
    if N == m:
        return True
    if m is INFINITY or r is INFINITY:
        return False
    if r % p == 0:
        return False
    if N == m * r:
        return True
    if q:
        s = q
        while m * r * s <= N:
            if N == m * r * s:
                return True
            s *= q
    return False


def _strip_p(N, p):
    while N % p == 0:
        N //= p
    return N


def _fixed_cases(m, r, q, p, N):
    """N in {m p^t, m r p^t, m r q^s p^t}, t >= 0, s >= 1.

    m is the phi-period of Q (1 or 2).  Taking both values of m at once gives
    the six-case list, which over-accepts for any single point.
    """
    if m is INFINITY:
        return False
    bases = {m}
    if r is not INFINITY:
        bases.add(m * r)
        if q:
            s = q
            while m * r * s <= N:
                bases.add(m * r * s)
                s *= q
    return any(N % b == 0 and _strip_p(N // b, p) == 1 for b in bases)


__all__ = [
    "INF",
    "NonPrimeOrder",
    "NotAnAutomorphism",
    "TunedContext",
    "TunedResult",
    "b_orders",
    "bstar_data",
    "bstar_support_predicate",
    "degree_gap",
    "divides_phi_star",
    "fixed_points",
    "h_period",
    "psi",
    "psi_star",
    "psi_tilde",
]
