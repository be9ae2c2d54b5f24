import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dynpoly.exactalg import UniPoly
from dynpoly.mpoly import MPoly, dehomogenize, form_degree, primitive, to_unipoly
from dynpoly.numfield import NFElem, root_of_unity_order
from dynpoly.ratmap import (
    INF,
    PGL2,
    DegenerateMap,
    DegreeNot2,
    NotPeriodic,
    ProjPoint,
    RationalMap,
    elem_order,
    fixed_point_multiplier_symmetric,
    multiplier,
    sigma_invariants,
    taylor_coeffs,
)

from conftest import PSIEGS, WORKED, form, maps, random_map

SWAP = PGL2(0, 1, 1, 0)
G3 = PGL2(1, -1, 1, 0)


def M(text):
    return RationalMap.from_text(text)


pgl2 = st.tuples(*[st.integers(-4, 4)] * 4).filter(lambda t: t[0] * t[3] != t[1] * t[2]).map(
    lambda t: PGL2(*t))


class TestConstruction:
    def test_degenerate(self):
        with pytest.raises(DegenerateMap, match=r"Res\(F,G\)=0"):
            M("x*y, y^2")
        with pytest.raises(DegenerateMap):
            M("x^2, y")

    def test_content_removed_sign_kept(self):
        phi = RationalMap(form("-2*x^2 + 2*y^2"), form("2*x*y"))
        assert phi.F == form("-x^2 + y^2") and phi.G == form("x*y")

    def test_z_syntax(self):
        assert M("z^2") == M("x^2, y^2")
        assert M("1/z^2") == M("y^2, x^2")


class TestIterate:
    def test_examples(self):
        assert M("z^2").iterate(2) == (form("x^4"), form("y^4"))
        F2, G2 = M(WORKED).iterate(2)
        assert F2 == form("-(x^2+x*y-y^2)*(x^2-x*y-y^2)")
        assert G2 == form("-x*y*(x+y)*(x-y)")
        assert M("y, x").iterate(2) == (form("x"), form("y"))


class TestConjugate:
    def test_identity(self):
        phi = M(PSIEGS)
        assert phi.conjugate(PGL2.identity()).same_point(phi)

    def test_z_squared_commutes_with_inversion(self):
        # z^2 and 1/z commute, so conjugating z^2 by the swap returns z^2
        assert M("z^2").conjugate(SWAP) == M("z^2")

    def test_translation(self):
        # f(z) = z + 1: f^-1 o z^2 o f = z^2 + 2z
        assert M("z^2").conjugate(PGL2(1, 1, 0, 1)).same_point(M("z^2 + 2*z"))

    @settings(max_examples=100, deadline=None)
    @given(maps(), pgl2, pgl2)
    def test_group_action(self, phi, f, g):
        lhs = phi.conjugate(f).conjugate(g)
        assert lhs.same_point(phi.conjugate(f @ g))
        assert phi.conjugate(f).conjugate(f.inverse()).same_point(phi)


class TestAutomorphism:
    def test_examples(self):
        phi = M(PSIEGS)
        assert phi.is_automorphism(SWAP)
        assert phi.is_automorphism(G3)
        assert not M("z^2").is_automorphism(G3)

    def test_orders(self):
        assert elem_order(SWAP, 10) == 2
        assert elem_order(G3, 10) == 3
        assert elem_order(PGL2.identity(), 10) == 1
        assert elem_order(PGL2(1, 1, 0, 1), 10) is None


class TestFixedPointForm:
    def test_examples(self):
        assert M(WORKED).fixed_point_form() == form("-y*(2*x^2 - y^2)")
        assert primitive(SWAP.fixed_point_form()) == form("x^2 - y^2")

    @pytest.mark.parametrize("order", [2, 3])
    def test_prime_order_fix_is_two_distinct_points(self, order):
        base = SWAP if order == 2 else G3
        rng = random.Random(order)
        for _ in range(100):
            while True:
                t = [rng.randint(-5, 5) for _ in range(4)]
                if t[0] * t[3] != t[1] * t[2]:
                    break
            f = PGL2(*t)
            h = f.inverse() @ base @ f
            assert elem_order(h, 10) == order
            P = primitive(h.fixed_point_form())
            assert form_degree(P) == 2
            A, B, C = (P.terms.get(e, 0) for e in ((2, 0), (1, 1), (0, 2)))
            assert B * B - 4 * A * C != 0


class TestTaylor:
    def test_examples(self):
        assert taylor_coeffs(M("z^2"), ProjPoint.rational(1), 2) == [1, 2, 1]
        phi23 = M("x^2 + 2*x*y, 3*x*y + y^2")
        assert taylor_coeffs(phi23, ProjPoint.rational(0), 1)[1] == 2
        assert taylor_coeffs(M("y, x"), ProjPoint.rational(1), 1) == [1, -1]


class TestMultiplier:
    def test_examples(self):
        assert multiplier(M("z + 1/z"), ProjPoint.infinity(), 1) == 1
        assert multiplier(M("x^2 - y^2, y^2"), ProjPoint.rational(0), 2) == 0
        assert multiplier(M("z^2"), ProjPoint.rational(0), 1) == 0
        assert multiplier(M("z^2"), ProjPoint.rational(1), 1) == 2
        assert multiplier(M("z^2"), ProjPoint.infinity(), 1) == 0

    def test_milnor_multipliers_at_zero_and_infinity(self):
        phi = M("x^2 + 2*x*y, 3*x*y + y^2")
        assert multiplier(phi, ProjPoint.rational(0), 1) == 2
        assert multiplier(phi, ProjPoint.infinity(), 1) == 3

    def test_not_periodic(self):
        with pytest.raises(NotPeriodic):
            multiplier(M("z^2"), ProjPoint.rational(2), 1)

    def test_derivrel1_rational_orbits(self):
        # lambda_1(h^3, Q) = prod over the h-orbit of h'(Q_i) = 1
        h = RationalMap.from_pgl2(G3)
        rng = random.Random(3)
        pts = [Fraction(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(100)] + [0, 1, INF]
        for z in pts:
            assert multiplier(h, z, 3) == 1

    def test_derivrel1_fixed_point_is_primitive_root(self):
        for base, p in ((SWAP, 2), (G3, 3)):
            P = primitive(base.fixed_point_form())
            Q = ProjPoint.orbit(P) if _irreducible(P) else None
            if Q is None:
                # Fix([y:x]) = {1, -1}: lambda = -1, a primitive square root of 1
                lams = [multiplier(RationalMap.from_pgl2(base), z, 1) for z in (1, -1)]
                assert all(root_of_unity_order(l, 10) == p for l in lams)
            else:
                lam = multiplier(RationalMap.from_pgl2(base), Q, 1)
                assert root_of_unity_order(lam, 10) == p and lam != 1

    def test_derivrel2(self):
        # phi(Q) = f(Q) for Q a root of x^2 - xy + y^2 (f = [y:x], p = 2)
        phi = M(PSIEGS)
        Q = ProjPoint.orbit(form("x^2 - x*y + y^2"))
        z0 = Q.z()
        assert phi.apply_z(z0) == SWAP.apply_z(z0)
        lam = lambda m, z: _deriv(m, z)  # noqa: E731
        z1 = phi.apply_z(z0)
        lhs = lam(phi, z0) * lam(phi, z1)
        h = RationalMap.from_pgl2(SWAP)
        rhs = (lam(phi, z0) / lam(h, z0)) ** 2
        assert lhs == rhs


def _irreducible(P):
    A, B, C = (P.terms.get(e, 0) for e in ((2, 0), (1, 1), (0, 2)))
    d = B * B - 4 * A * C
    return d < 0 or sympy.sqrt(d).is_rational is False


def _deriv(phi, z):
    f, g = phi._dehom()
    return (f.derivative()(z) * g(z) - f(z) * g.derivative()(z)) / (g(z) * g(z))


class TestSigma:
    @pytest.mark.parametrize("text, want", [
        ("z + 1/z", (3, 3)),
        ("z^2", (2, 0)),
        ("x^2 + 2*x*y, 3*x*y + y^2", (Fraction(28, 5), 9)),
    ])
    def test_examples(self, text, want):
        assert sigma_invariants(M(text)) == want

    def test_e3_of_milnor_example(self):
        assert fixed_point_multiplier_symmetric(M("x^2 + 2*x*y, 3*x*y + y^2")) == (
            Fraction(28, 5), 9, Fraction(18, 5))

    def test_degree_guard(self):
        with pytest.raises(DegreeNot2):
            sigma_invariants(M("z^3"))

    @settings(max_examples=100, deadline=None)
    @given(maps(), pgl2)
    def test_conjugation_invariance(self, phi, f):
        assert sigma_invariants(phi.conjugate(f)) == sigma_invariants(phi)

    def test_multiplier_identity(self):
        # oracle: with three distinct fixed points sum 1/(1 - lambda_i) = 1, and
        # clearing denominators gives 3 - 2 e1 + e2 = (1 - e1 + e2 - e3), i.e. e3 = e1 - 2
        e1, e2, e3 = sympy.symbols("e1 e2 e3")
        cleared = 3 - 2 * e1 + e2 - (1 - e1 + e2 - e3)
        assert sympy.solve(cleared, e3) == [e1 - 2]
        rng = random.Random(11)
        checked = 0
        while checked < 100:
            phi = random_map(rng, 2, 6)
            fixed = sympy.Poly(_sym(phi.fixed_point_form()), *sympy.symbols("x y"))
            if sympy.discriminant(fixed.as_expr().subs(sympy.Symbol("y"), 1)) == 0:
                continue
            if fixed.as_expr().subs(sympy.Symbol("y"), 1).as_poly(sympy.Symbol("x")).degree() < 3:
                continue
            s1, s2, s3 = fixed_point_multiplier_symmetric(phi)
            assert s3 == s1 - 2
            checked += 1


def _sym(p):
    x, y = sympy.symbols("x y")
    return sum(c * x ** e[0] * y ** e[1] for e, c in p.terms.items())


class TestEscape:
    @settings(max_examples=100, deadline=None)
    @given(maps(d=2), st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100))
    def test_height_lower_bound(self, phi, z):
        from dynpoly.ratmap import escape_height, naive_height

        S = escape_height(phi)
        H = naive_height(z)
        assert naive_height(phi.apply_z(z)) >= Fraction(H ** phi.d) / S

    def test_orbit_search_stops_on_escape_and_cycles(self):
        from dynpoly.ratmap import orbit_search

        phi = M("x^2 - y^2, y^2")
        assert orbit_search(phi, 2, [2], bound=10**6) is None
        assert orbit_search(phi, 0, [0]) == (2, 0)
        # 1 -> 0 -> -1 -> 0: enters a cycle that never returns to 1
        assert orbit_search(phi, 1, [1], bound=10**6) is None
