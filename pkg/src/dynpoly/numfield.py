"""Arithmetic in QQ[t]/(m(t)) for a caller-supplied monic modulus.

The modulus need not be irreducible.  Inversion fails loudly with
:class:`NotInvertible` when the representative shares a factor with it.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import UniPoly, cdiv, normalize, xgcd


class ModulusMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError):
    def __init__(self, message, gcd=None):
        super().__init__(message)
        self.gcd = gcd


NOT_FOUND = None


class NFElem:
    __slots__ = ("modulus", "rep")

    def __init__(self, rep, modulus: UniPoly):
        if modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        if modulus.lc != 1:
            modulus = modulus.monic()
        if not isinstance(rep, UniPoly):
            rep = UniPoly([rep], modulus.var)
        elif rep.var != modulus.var:
            rep = UniPoly(rep.coeffs, modulus.var)
        if rep.degree >= modulus.degree:
            rep = rep % modulus
        self.modulus = modulus
        self.rep = rep

    @classmethod
    def gen(cls, modulus: UniPoly) -> "NFElem":
        return cls(UniPoly([0, 1], modulus.var), modulus)

    def _lift(self, other):
        if isinstance(other, NFElem):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"moduli {self.modulus} and {other.modulus} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElem(other, self.modulus)
        return NotImplemented

    def is_rational(self):
        return self.rep.degree <= 0

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.rep[0]

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.rep == o.rep

    def __hash__(self):
        if self.is_rational():
            return hash(self.rep[0])
        return hash((self.rep, self.modulus))

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return NFElem(self.rep + o.rep, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return NFElem(-self.rep, self.modulus)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return NFElem(self.rep - o.rep, self.modulus)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.rep * other, self.modulus)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return NFElem((self.rep * o.rep) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(UniPoly([cdiv(c, other) for c in self.rep.coeffs], self.rep.var), self.modulus)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * nf_invert(o)

    def __rtruediv__(self, other):
        return nf_invert(self) * other

    def __pow__(self, e: int):
        if e < 0:
            return nf_invert(self) ** (-e)
        out = NFElem(1, self.modulus)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __str__(self):
        return f"{self.rep} mod {self.modulus}"

    def __repr__(self):
        return f"NFElem({str(self)!r})"


def nf_invert(x: NFElem) -> NFElem:
    if x.rep.is_zero():
        raise NotInvertible("zero is not invertible", gcd=x.modulus)
    g, s, _ = xgcd(x.rep, x.modulus)
    if g.degree > 0:
        raise NotInvertible(f"gcd({x.rep}, {x.modulus}) = {g}", gcd=g)
    inv = NFElem(s, x.modulus)
    assert (inv * x).rep == UniPoly([1], x.modulus.var)
    return inv


def root_of_unity_order(x, bound: int):
    """Smallest r <= bound with x**r == 1, or None."""
    if bound < 1:
        raise ValueError("bound must be positive")
    if x == 0:
        raise ValueError("zero is not a root of unity")
    acc = x
    for r in range(1, bound + 1):
        if acc == 1:
            return r
        acc = acc * x
    return NOT_FOUND


def scalar_value(c):
    """Collapse a rational NFElem to an int/Fraction; leave others alone."""
    if isinstance(c, NFElem) and c.is_rational():
        return normalize(c.rational_value())
    return c
