"""Sparse multivariate polynomials with certified exact division.

An :class:`MPoly` is an immutable mapping from exponent tuples to nonzero
coefficients over an ordered variable roster.  Coefficients are ``int``,
``Fraction`` or :class:`~dynpoly.numfield.NFElem`.  Terms are ordered
graded-lexicographically with the roster order ``x, y, z, a, b, c, t`` (other
names sort after these, alphabetically).

Binary forms in ``x, y`` are plain MPolys; :func:`form_degree` checks
homogeneity instead of assuming it.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from operator import add

from . import _kron
from .exactalg import NonDivisible, UniPoly, cdiv, normalize

VAR_ORDER = ("x", "y", "z", "a", "b", "c", "t")


class AlgebraError(ValueError):
    pass


class DegreeMismatch(AlgebraError):
    pass


class UnknownVariable(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


def _var_key(v):
    try:
        return (VAR_ORDER.index(v), "")
    except ValueError:
        return (len(VAR_ORDER), v)


def sort_roster(names) -> tuple:
    return tuple(sorted(set(names), key=_var_key))


def _grlex_key(e):
    return (sum(e), e)


def _is_scalar(c):
    return not isinstance(c, MPoly)


class MPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms=None, vars=()):
        vars = tuple(vars)
        clean = {}
        if terms:
            n = len(vars)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise AlgebraError(f"exponent {e} does not match roster {vars}")
                c = normalize(c)
                if c != 0:
                    clean[e] = c
        self.vars = vars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, vars):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c, vars=()):
        vars = tuple(vars)
        c = normalize(c)
        return cls._raw({(0,) * len(vars): c} if c != 0 else {}, vars)

    @classmethod
    def var(cls, name, vars=None):
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            raise UnknownVariable(name)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw({e: 1}, vars)

    @classmethod
    def zero(cls, vars=()):
        return cls._raw({}, tuple(vars))

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise AlgebraError("polynomial is not constant")
        return next(iter(self.terms.values()), 0)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name) -> int:
        if name not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def coefficients(self):
        return list(self.terms.values())

    # -- roster handling ---------------------------------------------------

    def with_roster(self, vars) -> "MPoly":
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in vars:
            idx.append(self.vars.index(v) if v in self.vars else None)
        for i, v in enumerate(self.vars):
            if v not in vars and any(e[i] for e in self.terms):
                raise UnknownVariable(f"variable {v} in use but missing from roster {vars}")
        terms = {tuple(e[j] if j is not None else 0 for j in idx): c for e, c in self.terms.items()}
        return MPoly._raw(terms, vars)

    def trimmed(self) -> "MPoly":
        """Drop roster variables that do not occur (keeping x, y if present)."""
        keep = [v for v in self.vars if v in ("x", "y") or v in self.used_vars()]
        return self.with_roster(keep)

    def _align(self, other):
        if isinstance(other, MPoly):
            if other.vars == self.vars:
                return self, other
            vars = sort_roster(self.vars + other.vars)
            return self.with_roster(vars), other.with_roster(vars)
        return self, MPoly.const(other, self.vars)

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = MPoly.const(other, self.vars)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            t = self.trimmed()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __add__(self, other):
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = normalize(s)
        return MPoly._raw(terms, a.vars)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = normalize(c)
        if c == 0:
            return MPoly.zero(self.vars)
        return MPoly._raw({e: normalize(v * c) for e, v in self.terms.items()}, self.vars)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        a, b = self._align(other)
        if not a.terms or not b.terms:
            return MPoly.zero(a.vars)
        if len(a.terms) > 16 and len(b.terms) > 16:
            fast = _dense_mul(a, b)
            if fast is not None:
                return fast
        out = {}
        get = out.get
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MPoly._raw({e: normalize(c) for e, c in out.items() if c != 0}, a.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise AlgebraError("negative powers are not polynomials")
        out = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __truediv__(self, other):
        if _is_scalar(other):
            return MPoly._raw({e: cdiv(c, other) for e, c in self.terms.items()}, self.vars)
        return exact_div(self, other)

    # -- text --------------------------------------------------------------

    def __str__(self):
        return format_terms(self.sorted_terms(), self.vars)

    def __repr__(self):
        return f"MPoly({str(self)!r}, vars={self.vars!r})"


# -- dense fast path for parameter-free bivariate forms ----------------------

def _dense_form(p: MPoly):
    """(degree, ascending x-coefficient list) for an int-coefficient form
    over roster (x, y), or over a single variable (degree None)."""
    if len(p.vars) == 2:
        n = None
        for e, c in p.terms.items():
            if type(c) is not int:
                return None
            s = e[0] + e[1]
            if n is None:
                n = s
            elif s != n:
                return None
        coeffs = [0] * (n + 1)
        for e, c in p.terms.items():
            coeffs[e[0]] = c
        return n, coeffs
    if len(p.vars) == 1:
        if any(type(c) is not int for c in p.terms.values()):
            return None
        deg = max(e[0] for e in p.terms)
        coeffs = [0] * (deg + 1)
        for e, c in p.terms.items():
            coeffs[e[0]] = c
        return None, coeffs
    return None


def _from_dense(n, coeffs, vars):
    if n is None:
        return MPoly._raw({(i,): c for i, c in enumerate(coeffs) if c != 0}, vars)
    return MPoly._raw({(i, n - i): c for i, c in enumerate(coeffs) if c != 0}, vars)


def _dense_mul(a, b):
    da, db = _dense_form(a), _dense_form(b)
    if da is None or db is None:
        return None
    n = None if da[0] is None else da[0] + db[0]
    return _from_dense(n, _kron.mul(da[1], db[1]), a.vars)


def _dense_div(num, den):
    """Quotient via the dense kernel, None if not applicable, False if not divisible."""
    dn, dd = _dense_form(num), _dense_form(den)
    if dn is None or dd is None:
        return None
    cont = 0
    for c in dd[1]:
        cont = gcd(cont, c)
    if dd[1][-1] < 0:
        cont = -cont
    prim = [c // cont for c in dd[1]]
    while prim and prim[-1] == 0:
        prim.pop()
    numc = list(dn[1])
    while numc and numc[-1] == 0:
        numc.pop()
    q = _kron.divexact(numc, prim)
    if q is None:
        return False
    if dn[0] is None:
        n = None
    else:
        n = dn[0] - dd[0]
        if n < 0 or len(q) - 1 > n:
            return False
        q = q + [0] * (n + 1 - len(q))
    q = [cdiv(c, cont) for c in q]
    return _from_dense(n, q, num.vars)


# -- division ----------------------------------------------------------------

def _sparse_div(num: MPoly, den: MPoly):
    """Leading-term reduction; returns (quotient, None) or (None, obstruction)."""
    dlt, dlc = den.leading_term()
    rest = [(e, c) for e, c in den.terms.items() if e != dlt]
    rem = dict(num.terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    q = {}
    while heap:
        key = heapq.heappop(heap)
        e = tuple(-x for x in key[1])
        c = rem.pop(e, None)
        if c is None:
            continue
        if any(x < y for x, y in zip(e, dlt)):
            return None, (e, c)
        qe = tuple(x - y for x, y in zip(e, dlt))
        qc = cdiv(c, dlc)
        q[qe] = qc
        for re, rc in rest:
            ne = tuple(map(add, qe, re))
            old = rem.get(ne)
            if old is None:
                rem[ne] = normalize(-qc * rc)
                heapq.heappush(heap, (-sum(ne), tuple(-x for x in ne)))
            else:
                v = normalize(old - qc * rc)
                if v == 0:
                    del rem[ne]
                else:
                    rem[ne] = v
    return MPoly._raw(q, num.vars), None


def try_div(num: MPoly, den: MPoly):
    """Certified quotient num/den, or None when den does not divide num."""
    if not isinstance(den, MPoly):
        return num / den
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    num, den = num._align(den)
    if num.is_zero():
        return MPoly.zero(num.vars)
    if len(den.terms) == 1:
        (de, dc), = den.terms.items()
        out = {}
        for e, c in num.terms.items():
            qe = tuple(x - y for x, y in zip(e, de))
            if any(x < 0 for x in qe):
                return None
            out[qe] = cdiv(c, dc)
        return MPoly._raw(out, num.vars)
    if len(num.terms) > 16 and len(den.terms) > 1:
        fast = _dense_div(num, den)
        if fast is False:
            return None
        if fast is not None:
            if fast * den != num:
                return None
            return fast
    q, bad = _sparse_div(num, den)
    if bad is not None:
        return None
    if q * den != num:
        return None
    return q


def exact_div(num: MPoly, den: MPoly) -> MPoly:
    """Certified exact quotient; raises NonDivisible with the first obstructing term."""
    q = try_div(num, den)
    if q is not None:
        return q
    num, den = num._align(den)
    _, bad = _sparse_div(num, den)
    term = None
    if bad is not None:
        term = format_terms([bad], num.vars)
    raise NonDivisible(f"({den}) does not divide the dividend; obstruction at {term}", term=term)


def multiplicity(p: MPoly, factor: MPoly) -> tuple[int, MPoly]:
    """Largest k with factor**k | p, and the cofactor p / factor**k."""
    if p.is_zero():
        raise ZeroPolynomial("multiplicity in the zero polynomial is unbounded")
    if factor.is_constant():
        raise AlgebraError("multiplicity of a unit is undefined")
    k = 0
    while True:
        q = try_div(p, factor)
        if q is None:
            return k, p
        p = q
        k += 1


# -- substitution ------------------------------------------------------------

def specialize(p: MPoly, bindings: dict) -> MPoly:
    """Substitute scalars or MPolys for variables and drop them from the roster."""
    for v in bindings:
        if v not in p.vars:
            raise UnknownVariable(f"{v} is not in roster {p.vars}")
    bound = [i for i, v in enumerate(p.vars) if v in bindings]
    free = [i for i, v in enumerate(p.vars) if v not in bindings]
    extra = []
    for val in bindings.values():
        if isinstance(val, MPoly):
            extra.extend(val.vars)
    roster = sort_roster([p.vars[i] for i in free] + extra)
    # Group terms by their exponents in the bound variables.
    groups: dict[tuple, dict] = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for i in bound)
        groups.setdefault(key, {})[tuple(e[i] for i in free)] = c
    free_vars = tuple(p.vars[i] for i in free)
    powers = {}

    def power(i, k):
        if (i, k) not in powers:
            val = bindings[p.vars[i]]
            if k == 0:
                powers[(i, k)] = 1
            elif k == 1:
                powers[(i, k)] = val
            else:
                half = power(i, k // 2)
                sq = half * half
                powers[(i, k)] = sq * val if k % 2 else sq
        return powers[(i, k)]

    out = MPoly.zero(roster)
    for key, terms in groups.items():
        factor = 1
        for i, k in zip(bound, key):
            if k:
                factor = factor * power(i, k)
        part = MPoly._raw(terms, free_vars).with_roster(roster)
        if isinstance(factor, MPoly):
            out = out + part * factor.with_roster(roster)
        else:
            out = out + part.scale(factor)
    return out


def evaluate(p: MPoly, values: dict):
    """Scalar value of p at a point binding every used variable."""
    r = specialize(p, {v: values[v] for v in p.vars if v in values})
    return r.constant_value()


def compose_form(F: MPoly, X, Y) -> MPoly:
    """F(X, Y) for a form F in x, y."""
    return specialize(F, {"x": X, "y": Y})


# -- forms -------------------------------------------------------------------

def form_degree(p: MPoly, xy=("x", "y")) -> int:
    """Total degree in the distinguished variables; raises unless homogeneous."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no form degree")
    idx = [p.vars.index(v) for v in xy if v in p.vars]
    degs = {sum(e[i] for i in idx) for e in p.terms}
    if len(degs) != 1:
        raise DegreeMismatch(f"not homogeneous in {xy}: degrees {sorted(degs)}")
    return degs.pop()


def is_form(p: MPoly, xy=("x", "y")) -> bool:
    try:
        form_degree(p, xy)
    except AlgebraError:
        return False
    return True


def coefficient(p: MPoly, exps: dict) -> MPoly:
    """Coefficient of the monomial ``exps`` (var -> exponent) as an MPoly in the rest."""
    idx = {p.vars.index(v): k for v, k in exps.items() if v in p.vars}
    for v, k in exps.items():
        if v not in p.vars and k:
            return MPoly.zero(tuple(w for w in p.vars if w not in exps))
    rest = [i for i in range(len(p.vars)) if i not in idx]
    terms = {}
    for e, c in p.terms.items():
        if all(e[i] == k for i, k in idx.items()):
            terms[tuple(e[i] for i in rest)] = c
    return MPoly._raw(terms, tuple(p.vars[i] for i in rest))


def form_coefficients(F: MPoly, d: int, xy=("x", "y")) -> list:
    """[c_0, ..., c_d] with F = sum c_i x^(d-i) y^i; entries are scalars or MPolys."""
    out = []
    for i in range(d + 1):
        c = coefficient(F, {xy[0]: d - i, xy[1]: i})
        out.append(c.constant_value() if c.is_constant() else c)
    return out


def _det_bareiss(M):
    n = len(M)
    M = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = _ediv(num, prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def _ediv(a, b):
    if isinstance(a, MPoly):
        return exact_div(a, b) if isinstance(b, MPoly) else a / b
    if isinstance(b, MPoly):
        return exact_div(MPoly.const(a, b.vars), b)
    return cdiv(a, b)


def sylvester(F: MPoly, G: MPoly, xy=("x", "y")):
    d = form_degree(F, xy)
    e = form_degree(G, xy)
    if d != e:
        raise DegreeMismatch(f"forms have degrees {d} and {e}")
    f = form_coefficients(F, d, xy)
    g = form_coefficients(G, d, xy)
    size = 2 * d
    rows = []
    for i in range(d):
        rows.append([0] * i + f + [0] * (size - d - 1 - i))
    for i in range(d):
        rows.append([0] * i + g + [0] * (size - d - 1 - i))
    return rows


def resultant2(F: MPoly, G: MPoly, xy=("x", "y")):
    """Determinant of the Sylvester matrix of two binary forms of equal degree.

    Returns a scalar, or an MPoly in the remaining (parameter) variables.
    """
    d = form_degree(F, xy)
    if d < 1:
        raise DegreeMismatch("resultant needs forms of degree >= 1")
    det = _det_bareiss(sylvester(F, G, xy))
    if isinstance(det, MPoly):
        det = det.trimmed()
        if det.is_constant():
            return det.constant_value()
    return normalize(det) if not isinstance(det, MPoly) else det


# -- content -----------------------------------------------------------------

def content_primitive(p: MPoly):
    """(content, primitive part) over QQ with a positive leading coefficient."""
    if p.is_zero():
        raise ZeroPolynomial("content of the zero polynomial")
    nums = 0
    dens = 1
    for c in p.terms.values():
        c = Fraction(c)
        nums = gcd(nums, c.numerator)
        dens = lcm(dens, c.denominator)
    content = Fraction(nums, dens)
    if p.leading_term()[1] < 0:
        content = -content
    prim = MPoly._raw({e: normalize(Fraction(c) / content) for e, c in p.terms.items()}, p.vars)
    return normalize(content), prim


def primitive(p: MPoly) -> MPoly:
    return content_primitive(p)[1]


def equal_up_to_sign(p: MPoly, q: MPoly) -> bool:
    return p == q or p == -q


def proportional(p: MPoly, q: MPoly) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    a, b = p._align(q)
    if a.terms.keys() != b.terms.keys():
        return False
    e0 = next(iter(a.terms))
    r = cdiv(a.terms[e0], b.terms[e0])
    return all(a.terms[e] == normalize(b.terms[e] * r) for e in a.terms)


# -- univariate views --------------------------------------------------------

def dehomogenize(F: MPoly, var="z") -> MPoly:
    """F(z, 1) with x renamed to ``var``; parameters are kept."""
    G = specialize(F, {"y": 1}) if "y" in F.vars else F
    if "x" in G.vars:
        vars = tuple(var if v == "x" else v for v in G.vars)
        G = MPoly._raw(dict(G.terms), vars).with_roster(sort_roster(vars))
    return G


def homogenize(p: MPoly, d: int | None = None, var="z") -> MPoly:
    """Inverse of dehomogenize for a polynomial in ``var`` (param-free part)."""
    i = p.vars.index(var) if var in p.vars else None
    deg = p.degree_in(var) if i is not None else 0
    if d is None:
        d = deg
    rest = [v for v in p.vars if v != var]
    roster = sort_roster(["x", "y"] + rest)
    terms = {}
    for e, c in p.terms.items():
        k = e[i] if i is not None else 0
        mono = {"x": k, "y": d - k}
        for j, v in enumerate(p.vars):
            if v != var:
                mono[v] = e[j]
        terms[tuple(mono.get(v, 0) for v in roster)] = c
    return MPoly._raw(terms, roster)


def to_unipoly(p: MPoly, var: str) -> UniPoly:
    if any(v != var for v in p.used_vars()):
        raise AlgebraError(f"{p} is not univariate in {var}")
    p = p.trimmed() if p.used_vars() else MPoly.const(p.constant_value() if p.terms else 0, ())
    if not p.vars:
        return UniPoly([p.constant_value()] if p.terms else [], var)
    i = p.vars.index(var)
    deg = p.degree_in(var)
    coeffs = [0] * (deg + 1)
    for e, c in p.terms.items():
        coeffs[e[i]] = c
    return UniPoly(coeffs, var)


def from_unipoly(u: UniPoly, var: str | None = None) -> MPoly:
    var = var or u.var
    return MPoly({(i,): c for i, c in enumerate(u.coeffs) if c != 0}, (var,))


# -- canonical text and JSON -------------------------------------------------

def _fmt_coeff(c):
    if isinstance(c, (int, Fraction)):
        return str(normalize(c))
    return f"({c})"


def format_terms(terms, vars) -> str:
    """Canonical text: graded-lex ordered terms, ``3/2*x^3*y^2*a``."""
    if not terms:
        return "0"
    parts = []
    for k, (e, c) in enumerate(terms):
        mono = "*".join(v if n == 1 else f"{v}^{n}" for v, n in zip(vars, e) if n)
        neg = isinstance(c, (int, Fraction)) and c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        else:
            body = _fmt_coeff(mag)
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def to_json(p: MPoly) -> dict:
    return {
        "vars": list(p.vars),
        "terms": [{"exp": list(e), "coef": str(normalize(c))} for e, c in p.sorted_terms()],
    }


def from_json(obj: dict) -> MPoly:
    vars = tuple(obj["vars"])
    terms = {}
    for t in obj["terms"]:
        terms[tuple(t["exp"])] = normalize(Fraction(t["coef"]))
    return MPoly(terms, vars)
