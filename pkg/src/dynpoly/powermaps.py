"""Cyclotomic factorizations of dynatomic polynomials of z^d and z^-d."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import gmpy2

from .dynatomic import ResourceLimit, phi_star
from .exactalg import UniPoly, cyclotomic, divisors, lucas_lehmer
from .mpoly import MPoly, dehomogenize, to_unipoly
from .ratmap import RationalMap

POWER = "power"
RECIPROCAL = "reciprocal"
KINDS = (POWER, RECIPROCAL)

MAX_VERIFY_DEGREE = 1 << 20
TRIAL_BOUND = 10_000
# Rho iterations per composite (finds factors up to roughly 2^40 quickly).
# Past the budget the index set is unavailable and verification falls back
# to the product check alone.
RHO_BUDGET = 1 << 21


class OutOfFormulaRange(ValueError):
    pass


class MismatchError(ArithmeticError):
    pass


class FactorizationTooHard(ArithmeticError):
    pass


# -- integer factorization ---------------------------------------------------

def _rho(n: int, rng: random.Random, budget: int | None = None) -> int:
    """A nontrivial factor of odd composite n (Brent's variant)."""
    budget = RHO_BUDGET if budget is None else budget
    spent = 0
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
            if spent > budget:
                raise FactorizationTooHard(f"no factor of a {n.bit_length()}-bit composite within budget")
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int) -> dict[int, int]:
    """Prime factorization by trial division, then budgeted Pollard rho."""
    if n < 1:
        raise ValueError("factorint needs n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 7
    while p <= TRIAL_BOUND and p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    rng = random.Random(0)
    while stack:
        m = stack.pop()
        if gmpy2.is_prime(m, 50):
            out[m] = out.get(m, 0) + 1
            continue
        f = _rho(m, rng)
        stack.extend([f, m // f])
    return dict(sorted(out.items()))


def _divisors_of(n: int) -> list[int]:
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


# -- index sets --------------------------------------------------------------

def _proper_divisors(n):
    return [m for m in divisors(n) if m != n]


def power_factor_indices(d: int, N: int, kind: str = POWER) -> list[int]:
    """Indices k with Phi*_N = prod C_k, per the congruence case of N."""
    if d < 2:
        raise OutOfFormulaRange("d must be >= 2")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == POWER:
        if N <= 1:
            raise OutOfFormulaRange("the power formula needs N > 1")
        return _excluding(d**N - 1, [d**m - 1 for m in _proper_divisors(N)])
    if N <= 2:
        raise OutOfFormulaRange("the reciprocal formula needs N > 2")
    if N % 2:
        return _excluding(d**N + 1, [d**m + 1 for m in _proper_divisors(N)])
    if N % 4 == 2:
        n = N // 2
        bad = [d ** (2 * m) - 1 for m in _proper_divisors(n)] + [d**n + 1]
        return _excluding(d**N - 1, bad)
    return _excluding(d**N - 1, [d**m - 1 for m in _proper_divisors(N)])


def _excluding(M: int, bad: list[int]) -> list[int]:
    return [k for k in _divisors_of(M) if all(b % k for b in bad)]


# -- verification ------------------------------------------------------------

def power_map(d: int, kind: str = POWER) -> RationalMap:
    x = MPoly.var("x", ("x", "y"))
    y = MPoly.var("y", ("x", "y"))
    if kind == POWER:
        return RationalMap(x**d, y**d)
    return RationalMap(y**d, x**d)


def dehomogenized_phi_star(d: int, N: int, kind: str = POWER) -> UniPoly:
    return to_unipoly(dehomogenize(phi_star(power_map(d, kind), N), "z"), "z")


def _binomial_quotient(d: int, N: int, kind: str) -> UniPoly:
    """Phi*_N from the closed forms z^(d^k) - z and z^(d^k+1) - 1, as a unit-free oracle."""
    from .dynatomic import mobius_quotient
    from .mpoly import from_unipoly

    def factor(k):
        if kind == POWER or k % 2 == 0:
            e = d**k - 1
        else:
            e = d**k + 1
        return from_unipoly(UniPoly.binomial(e, "z"))

    return to_unipoly(mobius_quotient(factor, N), "z")


def split_unit(P: UniPoly):
    """(sign, e, rest) with P = sign * z^e * rest and rest(0) > 0."""
    e = 0
    while P[e] == 0:
        e += 1
    rest = UniPoly(P.coeffs[e:], P.var)
    sign = 1 if rest[0] > 0 else -1
    return sign, e, rest * sign


def unit_text(sign, e):
    mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
    if not mono:
        return "1" if sign > 0 else "-1"
    return mono if sign > 0 else f"-{mono}"


@dataclass(frozen=True)
class CycloFactorization:
    kind: str
    d: int
    N: int
    indices: tuple | None
    unit: str
    verified: bool

    def as_dict(self):
        return {
            "kind": self.kind,
            "d": self.d,
            "N": self.N,
            "cyclotomic_indices": list(self.indices) if self.indices is not None else None,
            "unit": self.unit,
            "verified": self.verified,
        }


def verify_factorization(d: int, N: int, kind: str = POWER) -> CycloFactorization:
    """Compare prod C_k with the computed Phi*_N; raise MismatchError on disagreement."""
    if d**N > MAX_VERIFY_DEGREE:
        raise ResourceLimit(f"d^N = {d}^{N} exceeds the verification ceiling {MAX_VERIFY_DEGREE}")
    try:
        indices = power_factor_indices(d, N, kind)
    except FactorizationTooHard:
        indices = None
    P = dehomogenized_phi_star(d, N, kind)
    sign, e, rest = split_unit(P)
    if indices is not None:
        prod = UniPoly([1], "z")
        for k in indices:
            prod = prod * cyclotomic(k, "z")
    else:
        _, _, prod = split_unit(_binomial_quotient(d, N, kind))
    if rest != prod:
        raise MismatchError(f"Phi*_{N} of the {kind} map z^{d} differs from the cyclotomic product")
    return CycloFactorization(kind, d, N, tuple(indices) if indices is not None else None,
                              unit_text(sign, e), True)


def small_case(d: int, N: int, kind: str) -> UniPoly:
    """Phi*_N for the N outside the formula range, computed directly."""
    return dehomogenized_phi_star(d, N, kind)


def reducibility_verdict(d: int, N: int, kind: str = POWER):
    """('reducible' | 'irreducible', note)."""
    if d < 2 or N < 1:
        raise ValueError("need d >= 2 and N >= 1")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == POWER:
        if N == 1:
            return "reducible", f"Phi*_1 = z^{d} - z"
        if d > 2:
            return "reducible", "d - 1 divides d^N - 1 and leaves a second cyclotomic factor"
        if lucas_lehmer(N):
            return "irreducible", f"2^{N} - 1 is prime, Phi*_{N} = C_{2**N - 1}"
        return "reducible", f"2^{N} - 1 is composite"
    if N == 1:
        return "reducible", f"Phi*_1 = 1 - z^{d + 1}"
    if d > 2:
        return "reducible", "d > 2"
    if N in (2, 3):
        return "irreducible", "special case N = 2 or 3"
    return "reducible", "N is neither 2 nor 3"
