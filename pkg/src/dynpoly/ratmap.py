"""Rational self-maps of the projective line in homogeneous coordinates."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .exactalg import UniPoly, cdiv, normalize
from .mpoly import (
    AlgebraError,
    MPoly,
    compose_form,
    content_primitive,
    dehomogenize,
    form_degree,
    proportional,
    resultant2,
    sort_roster,
    to_unipoly,
)
from .numfield import NFElem, scalar_value

XY = ("x", "y")
INF = "inf"


class DegenerateMap(ValueError):
    pass


class NotPeriodic(ValueError):
    pass


class PoleAtPoint(ArithmeticError):
    pass


class DegreeNot2(ValueError):
    pass


def _x():
    return MPoly.var("x", XY)


def _y():
    return MPoly.var("y", XY)


def _is_rational(c):
    return isinstance(c, (int, Fraction))


def _int_scale(values):
    """Smallest positive rational s making every s*v an integer with gcd 1."""
    den = 1
    num = 0
    for v in values:
        v = Fraction(v)
        den = lcm(den, v.denominator)
    for v in values:
        num = gcd(num, int(Fraction(v) * den))
    return Fraction(den, num) if num else Fraction(1)


# -- PGL2 --------------------------------------------------------------------

class PGL2:
    """[alpha*x + beta*y : gamma*x + delta*y] up to scalars."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, normalize_rep=True):
        if a * d - b * c == 0:
            raise ValueError("singular matrix is not in PGL2")
        entries = [normalize(v) for v in (a, b, c, d)]
        if normalize_rep and all(_is_rational(v) for v in entries):
            s = _int_scale(entries)
            entries = [normalize(v * s) for v in entries]
            lead = next(v for v in entries if v != 0)
            if lead < 0:
                entries = [-v for v in entries]
        self.a, self.b, self.c, self.d = entries

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def from_forms(cls, X: MPoly, Y: MPoly) -> "PGL2":
        X, Y = X.with_roster(XY), Y.with_roster(XY)
        for f in (X, Y):
            if any(sum(e) != 1 for e in f.terms):
                raise ValueError(f"{f} is not a linear form in x, y")
        t = lambda f, e: f.terms.get(e, 0)  # noqa: E731
        return cls(t(X, (1, 0)), t(X, (0, 1)), t(Y, (1, 0)), t(Y, (0, 1)))

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, PGL2):
            return NotImplemented
        # Projective equality: proportional entry vectors.
        u, v = self.entries, other.entries
        return all(u[i] * v[j] == u[j] * v[i] for i in range(4) for j in range(4))

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "PGL2") -> "PGL2":
        """Composition self o other."""
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return PGL2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "PGL2":
        return PGL2(self.d, -self.b, -self.c, self.a)

    def power(self, n: int) -> "PGL2":
        if n < 0:
            return self.inverse().power(-n)
        out = PGL2.identity()
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def is_identity(self):
        return self.b == 0 and self.c == 0 and self.a == self.d

    def forms(self):
        """(alpha*x + beta*y, gamma*x + delta*y) as MPolys."""
        x, y = _x(), _y()
        return x * self.a + y * self.b, x * self.c + y * self.d

    def fixed_point_form(self) -> MPoly:
        X, Y = self.forms()
        return _y() * X - _x() * Y

    def apply_z(self, z):
        """Action on an affine coordinate (INF allowed)."""
        a, b, c, d = self.entries
        if z == INF:
            return INF if c == 0 else cdiv(a, c)
        den = c * z + d
        if den == 0:
            return INF
        if _is_rational(den) and _is_rational(z):
            return cdiv(a * z + b, den)
        return scalar_value((a * z + b) / den)

    def __str__(self):
        X, Y = self.forms()
        return f"[{X} : {Y}]"

    __repr__ = __str__


def elem_order(h: PGL2, bound: int):
    """Smallest k <= bound with h^k the identity, or None."""
    if bound < 1:
        raise ValueError("bound must be positive")
    g = h
    for k in range(1, bound + 1):
        if g.is_identity():
            return k
        g = g @ h
    return None


# -- points ------------------------------------------------------------------

class ProjPoint:
    """A rational point [x0 : y0] or a Galois orbit given by an irreducible form.

    An orbit may carry ``root``: an NFElem in QQ[t]/(form(t, 1)) singling out
    one point of the orbit for multiplier computations.
    """

    __slots__ = ("coords", "form", "root")

    def __init__(self, coords=None, form: MPoly | None = None, root: NFElem | None = None):
        if coords is not None:
            x0, y0 = (normalize(Fraction(v)) for v in coords)
            if x0 == 0 and y0 == 0:
                raise ValueError("[0:0] is not a point")
            s = _int_scale([x0, y0])
            x0, y0 = normalize(x0 * s), normalize(y0 * s)
            if (y0 < 0) or (y0 == 0 and x0 < 0):
                x0, y0 = -x0, -y0
            self.coords = (x0, y0)
            self.form = None
            self.root = None
        else:
            if form is None:
                raise ValueError("need coordinates or an orbit form")
            form = content_primitive(form.with_roster(XY))[1]
            if form_degree(form) < 2:
                raise ValueError("orbit form must have degree >= 2")
            self.coords = None
            self.form = form
            self.root = root

    @classmethod
    def rational(cls, x0, y0=1):
        return cls(coords=(x0, y0))

    @classmethod
    def infinity(cls):
        return cls(coords=(1, 0))

    @classmethod
    def orbit(cls, form: MPoly, with_root=True):
        p = cls(form=form)
        if with_root:
            m = to_unipoly(dehomogenize(p.form, "t"), "t")
            if m.degree != form_degree(p.form):
                raise ValueError("orbit form vanishes at infinity")
            p.root = NFElem.gen(m)
        return p

    @classmethod
    def from_z(cls, z):
        if z == INF:
            return cls.infinity()
        if _is_rational(z):
            return cls.rational(z)
        m = z.modulus
        raise ValueError(f"algebraic z-coordinate needs an orbit form (modulus {m})")

    def is_rational(self):
        return self.coords is not None

    def point_form(self) -> MPoly:
        """y0*x - x0*y, or the orbit form."""
        if self.coords is not None:
            x0, y0 = self.coords
            return _x() * y0 - _y() * x0
        return self.form

    def z(self):
        """Affine coordinate x0/y0 (INF, rational, or NFElem root)."""
        if self.coords is not None:
            x0, y0 = self.coords
            return INF if y0 == 0 else cdiv(x0, y0)
        if self.root is None:
            raise ValueError("orbit point has no chosen root")
        return self.root

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.coords == other.coords and self.form == other.form

    def __hash__(self):
        return hash((self.coords, self.form))

    def __str__(self):
        if self.coords is not None:
            return f"[{self.coords[0]}:{self.coords[1]}]"
        return f"orbit({self.form})"

    __repr__ = __str__


# -- maps --------------------------------------------------------------------

class RationalMap:
    """phi = [F : G] with F, G forms of equal degree and nonzero resultant.

    The forms are kept as given except that a positive rational content is
    divided out (skipped with ``rescale=False``); no sign normalization is
    applied.
    """

    __slots__ = ("F", "G", "d", "_iter", "_res")

    def __init__(self, F: MPoly, G: MPoly, check=True, rescale=True):
        roster = sort_roster(XY + F.vars + G.vars)
        F, G = F.with_roster(roster), G.with_roster(roster)
        if F.is_zero() or G.is_zero():
            if check:
                raise DegenerateMap("degenerate map: Res(F,G)=0")
        try:
            dF, dG = form_degree(F), form_degree(G)
        except AlgebraError as exc:
            raise DegenerateMap(f"not a pair of forms: {exc}") from None
        if dF != dG:
            raise DegenerateMap(f"forms have different degrees {dF} and {dG}")
        if dF < 1:
            raise DegenerateMap("maps need degree >= 1")
        coeffs = list(F.terms.values()) + list(G.terms.values())
        if rescale and all(_is_rational(c) for c in coeffs):
            s = _int_scale(coeffs)
            if s != 1:
                F, G = F.scale(s), G.scale(s)
        self.F, self.G, self.d = F, G, dF
        self._iter = {1: (F, G)}
        self._res = None
        if check and self.resultant() == 0:
            raise DegenerateMap("degenerate map: Res(F,G)=0")

    @classmethod
    def from_text(cls, text: str) -> "RationalMap":
        from .parse import parse_map_text

        F, G, _ = parse_map_text(text)
        return cls(F, G)

    @classmethod
    def from_pgl2(cls, h: PGL2) -> "RationalMap":
        return cls(*h.forms())

    @property
    def params(self):
        return tuple(v for v in self.F.vars if v not in XY)

    def resultant(self):
        if self._res is None:
            self._res = resultant2(self.F, self.G)
        return self._res

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.F == other.F and self.G == other.G

    def __hash__(self):
        return hash((self.F, self.G))

    def same_point(self, other: "RationalMap") -> bool:
        """Equality as points of P^(2d+1): proportional coefficient vectors."""
        if self.d != other.d:
            return False
        x = MPoly.var("__u")
        return proportional(self.F + self.G * x, other.F + other.G * x)

    def iterate(self, N: int):
        """(F_N, G_N) with F_N = F(F_{N-1}, G_{N-1})."""
        if N < 1:
            raise ValueError("N must be >= 1")
        if N not in self._iter:
            k = max(self._iter)
            Fk, Gk = self._iter[k]
            while k < N:
                Fk, Gk = compose_form(self.F, Fk, Gk), compose_form(self.G, Fk, Gk)
                k += 1
                self._iter[k] = (Fk, Gk)
        return self._iter[N]

    def fixed_point_form(self) -> MPoly:
        return _y() * self.F - _x() * self.G

    def conjugate(self, f: PGL2) -> "RationalMap":
        """f^-1 o phi o f via the displayed substitution formulas."""
        a, b, c, d = f.entries
        X, Y = f.forms()
        FX = compose_form(self.F, X, Y)
        GX = compose_form(self.G, X, Y)
        F2, G2 = FX * d - GX * b, GX * a - FX * c
        coeffs = list(F2.terms.values())
        if coeffs and all(_is_rational(v) for v in coeffs) and F2.leading_term()[1] < 0:
            F2, G2 = -F2, -G2
        return RationalMap(F2, G2, check=False)

    def is_automorphism(self, h: PGL2) -> bool:
        return self.conjugate(h).same_point(self)

    def specialize(self, bindings, rescale=True) -> "RationalMap":
        from .mpoly import specialize

        F = specialize(self.F, bindings)
        G = specialize(self.G, bindings)
        return RationalMap(F, G, rescale=rescale)

    # -- evaluation -----------------------------------------------------

    def _dehom(self):
        f = to_unipoly(dehomogenize(self.F, "z"), "z")
        g = to_unipoly(dehomogenize(self.G, "z"), "z")
        return f, g

    def apply_z(self, z):
        """phi on an affine coordinate (INF allowed)."""
        if self.params:
            raise ValueError("evaluate a specialized map")
        if z == INF:
            fa = self.F.terms.get((self.d, 0), 0)
            ga = self.G.terms.get((self.d, 0), 0)
            return INF if ga == 0 else cdiv(fa, ga)
        f, g = self._dehom()
        num, den = f(z), g(z)
        if den == 0:
            return INF
        if _is_rational(num) and _is_rational(den):
            return cdiv(num, den)
        return num / den

    def apply_point(self, Q: ProjPoint) -> ProjPoint:
        if not Q.is_rational():
            raise ValueError("apply_point takes rational points")
        x0, y0 = Q.coords
        fx = compose_form(self.F, x0, y0).constant_value()
        gx = compose_form(self.G, x0, y0).constant_value()
        return ProjPoint(coords=(fx, gx))

    def dehomogenized_text(self) -> str:
        f, g = self._dehom()
        if g == UniPoly([1], "z"):
            return str(f)
        return f"({f})/({g})"

    def __str__(self):
        return f"[{self.F} : {self.G}]"

    __repr__ = __str__


# -- heights and orbit search ------------------------------------------------

def _solve(rows, rhs):
    """Exact Gauss-Jordan solve of a nonsingular square system."""
    n = len(rows)
    A = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                k = A[r][col]
                A[r] = [a - k * b for a, b in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def escape_height(phi: RationalMap) -> Fraction:
    """S with H(phi(P)) >= H(P)^d / S for every rational point P.

    Built from forms A, B of degree d-1 with A*F + B*G = R*x^(2d-1) (and the
    same for y); once H(P)^(d-1) > S, heights grow strictly along the orbit.
    """
    if phi.params:
        raise ValueError("escape height needs a specialized map")
    d = phi.d
    x, y = _x(), _y()
    monos = [x ** (d - 1 - i) * y**i for i in range(d)]
    cols = [m * phi.F for m in monos] + [m * phi.G for m in monos]
    rows = [[c.terms.get((2 * d - 1 - j, j), 0) for c in cols] for j in range(2 * d)]
    R = abs(phi.resultant())
    S = Fraction(0)
    for target in (0, 2 * d - 1):
        sol = _solve(rows, [1 if j == target else 0 for j in range(2 * d)])
        S = max(S, R * sum(abs(v) for v in sol))
    return S


def naive_height(z):
    if z == INF:
        return 1
    z = Fraction(z)
    return max(abs(z.numerator), z.denominator)


def orbit_search(phi: RationalMap, z0, targets, bound: int = 64):
    """(m, i) for the least m <= bound with phi^m(z0) == targets[i], else None.

    The search stops early when the orbit enters a cycle already seen, or,
    for rational z0 and d >= 2, when the height passes the escape bound and
    every target (heights can then only grow).
    """
    targets = list(targets)
    escape = None
    if phi.d >= 2 and all(_is_rational(t) or t == INF for t in [z0, *targets]):
        S = escape_height(phi)
        top = max(naive_height(t) for t in targets)
        escape = lambda z: naive_height(z) > top and naive_height(z) ** (phi.d - 1) > S  # noqa: E731
    seen = {z0}
    z = z0
    for m in range(1, bound + 1):
        z = phi.apply_z(z)
        for i, t in enumerate(targets):
            if z == t:
                return m, i
        if z in seen or (escape is not None and escape(z)):
            return None
        seen.add(z)
    return None


# -- Taylor coefficients and multipliers ------------------------------------

def _shift_series(poly: UniPoly, z0, n):
    """Coefficients of poly(z0 + u) up to u^n."""
    out = []
    for c in reversed(poly.coeffs):
        # acc = acc*(z0 + u) + c, truncated
        new = [0] * (min(len(out) + 1, n + 1))
        for i, v in enumerate(out):
            new[i] = new[i] + v * z0
            if i + 1 <= n:
                new[i + 1] = new[i + 1] + v
        if new:
            new[0] = new[0] + c
        else:
            new = [c]
        out = new
    out += [0] * (n + 1 - len(out))
    return [scalar_value(normalize(v)) for v in out[: n + 1]]


def _series_div(num, den, n):
    if den[0] == 0:
        raise PoleAtPoint("denominator vanishes at the expansion point")
    inv0 = 1 / den[0] if not _is_rational(den[0]) else Fraction(1) / den[0]
    out = []
    for k in range(n + 1):
        acc = num[k]
        for j in range(1, k + 1):
            acc = acc - den[j] * out[k - j]
        out.append(scalar_value(normalize(acc * inv0)))
    return out


def _swap_translate(c):
    """z -> c + 1/z as [c*x + y : x]; c = None means the identity."""
    if c is None:
        return PGL2.identity()
    return PGL2(c, 1, 1, 0)


def _candidates():
    yield None
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _working_frame(phi: RationalMap, points):
    """First conjugation z -> c + 1/z keeping every listed point finite."""
    for c in _candidates():
        f = _swap_translate(c)
        finv = f.inverse()
        moved = [finv.apply_z(z) for z in points]
        if all(z != INF for z in moved):
            return f, (phi if c is None else phi.conjugate(f)), moved
    raise AssertionError("unreachable")


def taylor_coeffs(phi: RationalMap, Q: ProjPoint, n: int):
    """lambda_0..lambda_n of phi about Q, in the working coordinates.

    When Q or phi(Q) is infinite the map is first conjugated by z -> c + 1/z
    (identity first, then c = 0, 1, -1, 2, ...), and the coefficients are
    those of the conjugated map about the moved point.
    """
    z0 = Q.z()
    _, psi, moved = _working_frame(phi, [z0, phi.apply_z(z0)])
    f, g = psi._dehom()
    w = moved[0]
    return _series_div(_shift_series(f, w, n), _shift_series(g, w, n), n)


def _quo(a, b):
    if _is_rational(a) and _is_rational(b):
        return cdiv(a, b)
    return a / b


def orbit(phi: RationalMap, z0, N: int):
    pts = [z0]
    for _ in range(N):
        pts.append(phi.apply_z(pts[-1]))
    return pts


def multiplier(phi: RationalMap, Q: ProjPoint | object, N: int):
    """lambda_1(phi^N, Q) by the chain rule along the orbit of Q."""
    z0 = Q.z() if isinstance(Q, ProjPoint) else Q
    pts = orbit(phi, z0, N)
    if pts[-1] != pts[0]:
        raise NotPeriodic(f"point is not periodic with period dividing {N}")
    _, psi, moved = _working_frame(phi, pts[:-1])
    f, g = psi._dehom()
    fp, gp = f.derivative(), g.derivative()
    out = 1
    for w in moved:
        gw = g(w)
        if gw == 0:
            raise PoleAtPoint("image of an orbit point is infinite in the working frame")
        out = out * _quo(fp(w) * gw - f(w) * gp(w), gw * gw)
    return scalar_value(normalize(out))


def _trace(e: NFElem):
    m = e.modulus
    n = m.degree
    basis = NFElem.gen(m)
    acc = NFElem(1, m)
    tr = 0
    for i in range(n):
        tr += (e * acc).rep[i]
        acc = acc * basis
    return normalize(tr)


def fixed_point_multiplier_traces(phi: RationalMap, k: int = 2):
    """[tr(lambda^1), ..., tr(lambda^k)] over the fixed points with multiplicity."""
    for c in _candidates():
        psi = phi if c is None else phi.conjugate(_swap_translate(c))
        P = psi.fixed_point_form()
        if P.terms.get((psi.d + 1, 0), 0) != 0:
            break
    m = to_unipoly(dehomogenize(P, "z"), "z")
    f, g = psi._dehom()
    M = UniPoly(m.coeffs, "z")
    zeta = NFElem.gen(M)
    fz, gz = f(zeta), g(zeta)
    fp, gp = f.derivative()(zeta), g.derivative()(zeta)
    lam = (fp * gz - fz * gp) / (gz * gz)
    out = []
    acc = NFElem(1, lam.modulus)
    for _ in range(k):
        acc = acc * lam
        out.append(_trace(acc))
    return out


def sigma_invariants(phi: RationalMap):
    """(sigma_1, sigma_2) of the three fixed-point multipliers of a degree-2 map."""
    if phi.d != 2:
        raise DegreeNot2(f"sigma invariants need degree 2, got {phi.d}")
    if phi.params:
        raise ValueError("specialize the map first")
    t1, t2 = fixed_point_multiplier_traces(phi, 2)
    return normalize(Fraction(t1)), normalize(Fraction(t1 * t1 - t2, 2))


def fixed_point_multiplier_symmetric(phi: RationalMap):
    """(e1, e2, e3) of all d+1 fixed-point multipliers via Newton identities."""
    n = phi.d + 1
    p = fixed_point_multiplier_traces(phi, n)
    e = [1]
    for k in range(1, n + 1):
        s = 0
        for i in range(1, k + 1):
            s += (-1) ** (i - 1) * e[k - i] * p[i - 1]
        e.append(normalize(Fraction(s, k)))
    return tuple(e[1:])
