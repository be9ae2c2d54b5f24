import pytest
import sympy

from dynpoly.dynatomic import INFINITY, ord_at, phi_star
from dynpoly.mpoly import MPoly, exact_div, form_degree, try_div
from dynpoly.ratmap import PGL2, ProjPoint, RationalMap
from dynpoly.htuned import (
    NonPrimeOrder,
    NotAnAutomorphism,
    TunedContext,
    b_orders,
    bstar_data,
    bstar_support_predicate,
    degree_gap,
    divides_phi_star,
    fixed_points,
    h_period,
    psi,
    psi_star,
    psi_tilde,
)

from conftest import PSIEGS, form

QUAD = "(x^2 - y*x + y^2)"
QUARTIC = "(x^4 + y*x^3 - 9*y^2*x^2 + y^3*x + y^4)"
SEXTIC = "(x^6 - 6*y*x^5 - 6*y^2*x^4 + 29*y^3*x^3 - 6*y^4*x^2 - 6*y^5*x + y^6)"
CUBICS = "(x^3 - 3*y*x^2 + y^3)*(x^3 - 3*y^2*x + y^3)"


def ctx_f():
    return TunedContext(RationalMap.from_text(PSIEGS), PGL2(0, 1, 1, 0))


def ctx_g():
    return TunedContext(RationalMap.from_text(PSIEGS), PGL2(1, -1, 1, 0))


class TestContext:
    def test_orders(self):
        assert ctx_f().p == 2 and ctx_g().p == 3

    def test_h_power_representative(self):
        assert ctx_g().h_power(2) == PGL2(0, 1, -1, 1)
        assert ctx_g().h_power(2).entries == (0, 1, -1, 1)

    def test_rejections(self):
        with pytest.raises(NotAnAutomorphism):
            TunedContext(RationalMap.from_text("z^2"), PGL2(1, -1, 1, 0))
        with pytest.raises(NonPrimeOrder):
            TunedContext(RationalMap.from_text("z^2"), PGL2.identity())
        with pytest.raises(NonPrimeOrder):
            # z -> (z + 1)/(1 - z) has order 4 and commutes with itself
            h = PGL2(1, 1, -1, 1)
            TunedContext(RationalMap.from_pgl2(h), h)

    def test_fixed_points(self):
        assert fixed_points(PGL2(0, 1, 1, 0)) == [ProjPoint.rational(1), ProjPoint.rational(-1)]
        [orbit] = fixed_points(PGL2(1, -1, 1, 0))
        assert orbit.form == form("x^2 - x*y + y^2")


class TestPsiF:
    @pytest.mark.parametrize("N, want", [
        (1, f"(x - y)*{QUAD}"),
        (2, f"(x - y)*{QUARTIC}"),
        (3, f"(x - y)*{QUAD}*{SEXTIC}"),
    ])
    def test_psi(self, N, want):
        assert psi(ctx_f(), N) == form(want)

    @pytest.mark.parametrize("N, star, tilde", [
        (1, f"(x - y)*{QUAD}", QUAD),
        (2, f"(x - y)*{QUARTIC}", QUARTIC),
        (3, SEXTIC, SEXTIC),
    ])
    def test_star_and_tilde(self, N, star, tilde):
        ctx = ctx_f()
        assert psi_star(ctx, N) == form(star)
        res = psi_tilde(ctx, N)
        assert res.psi_tilde == form(tilde)
        assert res.psi_tilde * res.removed() == res.psi_star

    def test_degree_of_psi(self):
        assert form_degree(psi(ctx_f(), 2)) == (2 - 1) * (2**2 + 1)


class TestPsiG:
    def test_n1(self):
        ctx = ctx_g()
        want = form(f"-{CUBICS}")
        assert psi(ctx, 1) == want and psi_star(ctx, 1) == want
        assert psi_tilde(ctx, 1).psi_tilde == want

    def test_n2(self):
        ctx = ctx_g()
        assert psi(ctx, 2) == form(f"-{QUAD}^2*{CUBICS}")
        assert psi_star(ctx, 2) == form(f"{QUAD}^2")
        res = psi_tilde(ctx, 2)
        assert res.psi_tilde == MPoly.const(1, ("x", "y"))
        assert [k for _, k in res.deltas] == [2]


class TestDivisibility:
    @pytest.mark.parametrize("make", [ctx_f, ctx_g])
    @pytest.mark.parametrize("N", [1, 2, 3, 4])
    def test_divides(self, make, N):
        ctx = make()
        q = divides_phi_star(ctx, N)
        assert q * psi_tilde(ctx, N).psi_tilde == phi_star(ctx.phi, ctx.p * N)

    def test_degree_gaps(self):
        assert [degree_gap(ctx_f(), N) for N in (1, 2, 3)] == [0, 8, 48]
        assert [degree_gap(ctx_g(), N) for N in (1, 2)] == [0, 54]

    def test_milnor_symmetric_family(self):
        # [x^2 + a x y : a x y + y^2] commutes with [y : x] for every a
        for a in (2, 3, -5, sympy.Rational(1, 3)):
            phi = RationalMap(form(f"x^2 + {a}*x*y"), form(f"{a}*x*y + y^2"))
            ctx = TunedContext(phi, PGL2(0, 1, 1, 0))
            for N in (1, 2, 3):
                q = divides_phi_star(ctx, N)
                assert form_degree(q) == degree_gap(ctx, N)
                if N > 1:
                    assert degree_gap(ctx, N) > 0


class TestOrders:
    def test_b_orders(self):
        orbit = ProjPoint.orbit(form("x^2 - x*y + y^2"))
        assert b_orders(ctx_f(), 1, orbit)[2] == 1
        assert b_orders(ctx_f(), 1, ProjPoint.rational(1))[2] == 0
        assert b_orders(ctx_g(), 2, orbit) == (2, 2, 0)


class TestPredicate:
    @pytest.mark.parametrize("m, r, N, want", [
        (1, INFINITY, 1, True), (1, 3, 3, True), (1, 2, 2, False), (2, 3, 4, False),
    ])
    def test_examples(self, m, r, N, want):
        assert bstar_support_predicate(m, r, 0, 2, N) is want

    def test_fixed_cases(self):
        # m = 1: N in {p^t, r p^t}; m = 2: N in {2 p^t, 2 r p^t}
        hits = [N for N in range(1, 25) if bstar_support_predicate(1, 5, 0, 3, N, fixed=True)]
        assert hits == [1, 3, 5, 9, 15]
        hits = [N for N in range(1, 25) if bstar_support_predicate(2, 5, 0, 3, N, fixed=True)]
        assert hits == [2, 6, 10, 18]
        assert not bstar_support_predicate(INFINITY, INFINITY, 0, 3, 1, fixed=True)


def _factor_points(P):
    x, y = sympy.symbols("x y")
    expr = sum(c * x ** e[0] * y ** e[1] for e, c in P.terms.items())
    out = []
    for fac, _ in sympy.factor_list(expr)[1]:
        F = MPoly({m: int(c) for m, c in sympy.Poly(fac, x, y).terms()}, ("x", "y"))
        if form_degree(F) == 1:
            a, b = F.terms.get((1, 0), 0), F.terms.get((0, 1), 0)
            out.append(ProjPoint(coords=(-b, a)))
        else:
            out.append(ProjPoint.orbit(F))
    return out


@pytest.mark.parametrize("make", [ctx_f, ctx_g])
def test_msmall_periods_divide(make):
    # every root-form of Psi_{pN} has primitive h-period dividing N
    ctx = make()
    for N in (1, 2, 3, 4):
        for Q in _factor_points(psi(ctx, N)):
            if ctx.in_fix(Q):
                continue
            m, _ = h_period(ctx, Q.z())
            assert m is not INFINITY and N % m == 0, (Q, N)


@pytest.mark.parametrize("make", [ctx_f, ctx_g])
def test_tilde_support_matches_predicate(make):
    ctx = make()
    points = []
    for N in (1, 2, 3, 4):
        for Q in _factor_points(psi_tilde(ctx, N).psi_tilde):
            if Q not in points:
                points.append(Q)
    assert points
    for Q in points:
        m, r = bstar_data(ctx, Q)
        for N in range(1, 7):
            measured = ord_at(psi_tilde(ctx, N).psi_tilde, Q) > 0
            assert measured == bstar_support_predicate(m, r, 0, ctx.p, N), (Q, N, m, r)


@pytest.mark.parametrize("make", [ctx_f, ctx_g])
def test_fixed_point_support_matches_six_cases(make):
    ctx = make()
    for Q in ctx.fix_h:
        m, r = bstar_data(ctx, Q)
        for N in range(1, 7):
            measured = ord_at(psi_star(ctx, N), Q) > 0
            if m is INFINITY:
                # a preperiodic point of Fix(h) never meets Psi*
                assert not measured
            else:
                assert measured == bstar_support_predicate(m, r, 0, ctx.p, N, fixed=True), (Q, N, r)
