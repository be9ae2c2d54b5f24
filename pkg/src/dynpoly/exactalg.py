"""Exact scalars, dense univariate polynomials and small number theory.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Throughout the package an integral rational is stored as a
plain ``int``; :func:`normalize` enforces that.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from . import _kron

BigRational = Fraction


def normalize(c):
    """Collapse an integral Fraction to int; leave everything else alone."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def cdiv(a, b):
    """Exact quotient of two coefficients (int, Fraction or field element)."""
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return normalize(Fraction(a) / b)
    return a / b


def as_rational(text: str):
    """Parse ``"p"`` or ``"p/q"`` into a normalized rational."""
    return normalize(Fraction(text.strip()))


def fmt_rational(c) -> str:
    c = normalize(c)
    return str(c)


# --------------------------------------------------------------------------
# integers

def factorize_small(n: int) -> dict[int, int]:
    """Trial-division factorization; intended for the small n used here."""
    if n < 1:
        raise ValueError("factorize_small needs n >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def isqrt_exact(n: int):
    """Integer square root of n when n is a perfect square, else None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n."""
    divs = [1]
    for p, e in factorize_small(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError(f"moebius is defined for n >= 1, got {n}")
    fac = factorize_small(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def mobius_split(n: int) -> tuple[list[int], list[int]]:
    """Divisors k of n with mu(n/k) = +1 and = -1, ascending."""
    plus, minus = [], []
    for k in divisors(n):
        mu = moebius(n // k)
        if mu == 1:
            plus.append(k)
        elif mu == -1:
            minus.append(k)
    return plus, minus


def euler_phi(n: int) -> int:
    out = n
    for p in factorize_small(n):
        out = out // p * (p - 1)
    return out


def lucas_lehmer(N: int) -> bool:
    """True iff the Mersenne number 2**N - 1 is prime."""
    if N < 2:
        raise ValueError(f"lucas_lehmer needs N >= 2, got {N}")
    if N == 2:
        return True
    if not is_prime(N):
        return False
    M = (1 << N) - 1
    s = 4
    for _ in range(N - 2):
        s = (s * s - 2) % M
    return s == 0


def mucalc_gap(a: int, p: int, n: int) -> int:
    """sum_{k|n} mu(n/k) a^(pk)  -  p * sum_{k|n} mu(n/k) a^k."""
    if n <= 1:
        raise ValueError(f"mucalc_gap needs n > 1, got {n}")
    if a < 2 or p < 2:
        raise ValueError("mucalc_gap needs a >= 2 and p >= 2")
    left = sum(moebius(n // k) * a ** (p * k) for k in divisors(n))
    right = sum(moebius(n // k) * a**k for k in divisors(n))
    return left - p * right


# --------------------------------------------------------------------------
# univariate polynomials

class NonDivisible(ArithmeticError):
    """Certified exact division failed."""

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class UniPoly:
    """Dense univariate polynomial over QQ (or a coefficient field).

    ``coeffs[i]`` is the coefficient of ``var**i``; no trailing zeros.
    """

    __slots__ = ("coeffs", "var", "_hash")

    def __init__(self, coeffs=(), var: str = "t"):
        cs = [normalize(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var
        self._hash = None

    @classmethod
    def monomial(cls, n: int, c=1, var="t"):
        return cls([0] * n + [c], var)

    @classmethod
    def binomial(cls, n: int, var="t"):
        """t**n - 1."""
        return cls([-1] + [0] * (n - 1) + [1], var)

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((normalize(other),) if other != 0 else ())
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        from .mpoly import format_terms

        terms = [((i,), c) for i, c in enumerate(self.coeffs) if c != 0]
        terms.reverse()
        return format_terms(terms, (self.var,))

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly((), self.var)
        if (len(a) > 24 and len(b) > 24
                and all(type(c) is int for c in a) and all(type(c) is int for c in b)):
            return UniPoly(_kron.mul(list(a), list(b)), self.var)
        out = [0] * (len(a) + len(b) - 1)
        bnz = [(j, c) for j, c in enumerate(b) if c != 0]
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in bnz:
                out[i + j] += x * y
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = UniPoly([1], self.var)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self):
        lc = self.lc
        return UniPoly([cdiv(c, lc) for c in self.coeffs], self.var)

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dn = other.degree
        lc = other.lc
        nz = [(i, c) for i, c in enumerate(other.coeffs[:-1]) if c != 0]
        qlen = len(rem) - dn
        if qlen <= 0:
            return UniPoly((), self.var), self
        q = [0] * qlen
        for k in range(qlen - 1, -1, -1):
            c = rem[k + dn]
            if c == 0:
                continue
            qc = cdiv(c, lc)
            q[k] = qc
            rem[k + dn] = 0
            for i, dc in nz:
                rem[k + i] = normalize(rem[k + i] - qc * dc)
        return UniPoly(q, self.var), UniPoly(rem[:dn], self.var)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        """Certified quotient: raises NonDivisible unless q*other == self."""
        if (all(type(c) is int for c in self.coeffs)
                and all(type(c) is int for c in other.coeffs)
                and other.lc in (1, -1)):
            q = _kron.divexact(list(self.coeffs), list(other.coeffs))
            if q is not None:
                return UniPoly(q, self.var)
            raise NonDivisible(f"{other} does not divide {self}")
        q, r = self.divmod(other)
        if not r.is_zero() or q * other != self:
            raise NonDivisible(f"{other} does not divide {self}", term=r)
        return q


def xgcd(a: UniPoly, b: UniPoly):
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1], a.var), UniPoly((), a.var)
    t0, t1 = UniPoly((), a.var), UniPoly([1], a.var)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    inv = cdiv(1, lc)
    return r0 * inv, s0 * inv, t0 * inv


@lru_cache(maxsize=512)
def cyclotomic(k: int, var: str = "t") -> UniPoly:
    """C_k as the Moebius quotient of binomials t^d - 1, one exact division."""
    if k < 1:
        raise ValueError(f"cyclotomic needs k >= 1, got {k}")
    plus, minus = mobius_split(k)
    num = UniPoly([1], var)
    for d in plus:
        num = num * UniPoly.binomial(d, var)
    den = UniPoly([1], var)
    for d in minus:
        den = den * UniPoly.binomial(d, var)
    return num.exact_div(den)
