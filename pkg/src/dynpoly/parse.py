"""Text to polynomial conversion.

Expressions use ``+ - * / ^`` (``**`` also accepted), parentheses, integer
literals and identifiers.  Python's own ``ast`` module does the tokenizing
and precedence; only the node walk lives here.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .mpoly import MPoly, homogenize, sort_roster


class ParseError(ValueError):
    pass


class _RatFun:
    """num/den with polynomial parts; no gcd cancellation."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = den if den is not None else MPoly.const(1, num.vars)

    def __add__(self, o):
        if self.den == o.den:
            return _RatFun(self.num + o.num, self.den)
        return _RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self):
        return _RatFun(-self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return _RatFun(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if o.num.is_zero():
            raise ParseError("division by zero")
        if o.num.is_constant() and o.den.is_constant():
            c = o.den.constant_value() / Fraction(o.num.constant_value())
            return _RatFun(self.num.scale(c), self.den)
        return _RatFun(self.num * o.den, self.den * o.num)

    def __pow__(self, n):
        if n < 0:
            return _RatFun(self.den, self.num) ** (-n)
        return _RatFun(self.num**n, self.den**n)


_BIN = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__", ast.Div: "__truediv__"}


def _walk(node):
    if isinstance(node, ast.Expression):
        return _walk(node.body)
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return _RatFun(MPoly.const(node.value))
    if isinstance(node, ast.Name):
        return _RatFun(MPoly.var(node.id))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _walk(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and type(exp.value) is int):
                raise ParseError("exponents must be integer literals")
            return _walk(node.left) ** (sign * exp.value)
        op = _BIN.get(type(node.op))
        if op is None:
            raise ParseError(f"unsupported operator {type(node.op).__name__}")
        return getattr(_walk(node.left), op)(_walk(node.right))
    raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_ratfun(text: str) -> _RatFun:
    src = text.strip().replace("^", "**")
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _walk(tree)


def _roster(p: MPoly, extra=()):
    return p.trimmed().with_roster(sort_roster(p.used_vars() + tuple(extra)))


def parse_poly(text: str, roster=()) -> MPoly:
    """Polynomial expression (only constant denominators allowed)."""
    rf = parse_ratfun(text)
    if not rf.den.is_constant():
        raise ParseError(f"{text!r} is not a polynomial")
    p = rf.num.scale(Fraction(1) / rf.den.constant_value())
    return _roster(p, roster)


def parse_form_pair(text: str, xy_roster=True):
    """Split ``"F, G"`` into two polynomials over a shared roster."""
    parts = _split_top(text)
    if len(parts) != 2:
        raise ParseError(f"expected two comma-separated forms, got {len(parts)}")
    F = parse_poly(parts[0], ("x", "y") if xy_roster else ())
    G = parse_poly(parts[1], ("x", "y") if xy_roster else ())
    F, G = F._align(G)
    return F, G


def _split_top(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_z_map(text: str):
    """Homogenize a rational function of z into (F, G)."""
    rf = parse_ratfun(text)
    num, den = rf.num, rf.den
    if num.is_zero():
        raise ParseError("the zero function is not a map")
    for p in (num, den):
        if "x" in p.used_vars() or "y" in p.used_vars():
            raise ParseError("mix of z with x, y")
    d = max(num.degree_in("z"), den.degree_in("z"), 0)
    F = homogenize(num, d, "z")
    G = homogenize(den, d, "z")
    # Clear a constant denominator so that F, G carry the scalars jointly.
    return F._align(G)


def parse_map_text(text: str):
    """(F, G, dehomogenized?) from either ``"F, G"`` or a z-expression."""
    if "," in text:
        F, G = parse_form_pair(text)
        return F, G, False
    F, G = parse_z_map(text)
    return F, G, True
