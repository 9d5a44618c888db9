"""Scalar-field expressions in x1, x2, x3 and second-order forward jets.

An expression is parsed once into an immutable tree and then evaluated at
points to a :class:`Jet2`, which carries the value, gradient and full
symmetric Hessian.  Jet arithmetic is exact (no truncation), so curvature
computations downstream never see finite-difference noise.

Grammar::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := unary ("^" integer)?
    unary  := "-" unary | atom
    atom   := number | "x1" | "x2" | "x3" | func "(" expr ")" | "(" expr ")"
    func   := "sin" | "cos" | "exp" | "log" | "sqrt"

Note that ``-x1^2`` binds as ``(-x1)^2``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Num", "Var", "Neg", "BinOp", "Pow", "Func", "Expr",
    "ParseError", "UnknownIdentifierError", "MalformedNumberError", "ExprDomainError",
    "parse", "to_source", "is_constant", "mul", "Jet2", "eval_jet2", "eval_value",
]

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")
VARIABLES = ("x1", "x2", "x3")


# ----------------------------------------------------------------------------
# AST
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    index: int  # 0, 1, 2 for x1, x2, x3


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Func:
    name: str
    arg: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Pow, Func]


class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset into the source."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ParseError):
    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier {name!r}", offset)
        self.name = name


class MalformedNumberError(ParseError):
    pass


class ExprDomainError(ArithmeticError):
    """Raised when a function is evaluated outside its domain."""

    def __init__(self, message: str, subexpr: Expr):
        super().__init__(f"{message} in {to_source(subexpr)}")
        self.subexpr = subexpr


# ----------------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, ident, op, end
    text: str
    offset: int


def _tokenize(source: str) -> list[_Tok]:
    toks = []
    pos = 0
    raw = source.encode("utf-8")

    def byte_off(i: int) -> int:
        return len(source[:i].encode("utf-8"))

    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", byte_off(pos))
        kind = m.lastgroup
        text = m.group()
        if kind == "num":
            # a number glued to more digits, dots or letters is malformed ("1.2.3", "1e", "2x1")
            end = m.end()
            if end < len(source) and (source[end].isalnum() or source[end] in "._"):
                while end < len(source) and (source[end].isalnum() or source[end] in "._"):
                    end += 1
                raise MalformedNumberError(f"malformed number {source[pos:end]!r}", byte_off(pos))
            if not math.isfinite(float(text)):
                raise MalformedNumberError(f"number {text!r} is not finite", byte_off(pos))
        if kind != "ws":
            toks.append(_Tok(kind, text, byte_off(pos)))
        pos = m.end()
    toks.append(_Tok("end", "", len(raw)))
    return toks


class _Parser:
    def __init__(self, source: str):
        self.toks = _tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> None:
        if self.tok.text != text:
            got = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, got {got!r}", self.tok.offset)
        self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.tok.text in ("*", "/"):
            op = self.advance().text
            left = BinOp(op, left, self.factor())
        return left

    def factor(self) -> Expr:
        base = self.unary()
        if self.tok.text == "^":
            self.advance()
            sign = 1
            if self.tok.text in ("-", "+"):
                sign = -1 if self.advance().text == "-" else 1
            t = self.tok
            if t.kind != "num":
                raise ParseError("expected integer exponent", t.offset)
            if not re.fullmatch(r"\d+", t.text):
                raise ParseError(f"exponent must be an integer, got {t.text!r}", t.offset)
            self.advance()
            base = Pow(base, sign * int(t.text))
            if self.tok.text == "^":
                raise ParseError("chained '^' is not allowed; use parentheses", self.tok.offset)
        return base

    def unary(self) -> Expr:
        if self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(float(t.text))
        if t.kind == "ident":
            self.advance()
            if t.text in VARIABLES:
                return Var(VARIABLES.index(t.text))
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(t.text, arg)
            raise UnknownIdentifierError(t.text, t.offset)
        if t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        got = t.text or "end of input"
        raise ParseError(f"unexpected {got!r}", t.offset)


def parse(source: str) -> Expr:
    """Parse ``source`` into an expression tree."""
    return _Parser(source).parse()


def to_source(e: Expr) -> str:
    """Fully parenthesized source text.

    ``parse(to_source(e)) == e`` for every tree the parser can produce (these
    never hold a negative ``Num``; a leading minus is always a ``Neg``).
    """
    if isinstance(e, Num):
        return repr(float(e.value))
    if isinstance(e, Var):
        return VARIABLES[e.index]
    if isinstance(e, Neg):
        return f"(-{to_source(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    if isinstance(e, Pow):
        return f"({to_source(e.base)}^{e.exponent})"
    if isinstance(e, Func):
        return f"{e.name}({to_source(e.arg)})"
    raise TypeError(f"not an expression: {e!r}")


def is_constant(e: Expr) -> bool:
    """True when the tree mentions no variable."""
    if isinstance(e, Num):
        return True
    if isinstance(e, Var):
        return False
    if isinstance(e, Neg):
        return is_constant(e.operand)
    if isinstance(e, BinOp):
        return is_constant(e.left) and is_constant(e.right)
    if isinstance(e, Pow):
        return is_constant(e.base)
    if isinstance(e, Func):
        return is_constant(e.arg)
    raise TypeError(f"not an expression: {e!r}")


def mul(a: Expr, b: Expr) -> Expr:
    return BinOp("*", a, b)


# ----------------------------------------------------------------------------
# Jets
# ----------------------------------------------------------------------------

class Jet2:
    """Value, gradient and symmetric Hessian of a scalar at a point."""

    __slots__ = ("value", "grad", "hess")

    def __init__(self, value: float, grad, hess):
        self.value = float(value)
        self.grad = np.asarray(grad, dtype=float)
        self.hess = np.asarray(hess, dtype=float)

    @classmethod
    def constant(cls, c: float) -> "Jet2":
        return cls(c, np.zeros(3), np.zeros((3, 3)))

    @classmethod
    def variable(cls, index: int, x: float) -> "Jet2":
        g = np.zeros(3)
        g[index] = 1.0
        return cls(x, g, np.zeros((3, 3)))

    def __repr__(self) -> str:
        return f"Jet2(value={self.value!r}, grad={self.grad.tolist()!r}, hess={self.hess.tolist()!r})"

    def __add__(self, o: "Jet2") -> "Jet2":
        return Jet2(self.value + o.value, self.grad + o.grad, self.hess + o.hess)

    def __sub__(self, o: "Jet2") -> "Jet2":
        return Jet2(self.value - o.value, self.grad - o.grad, self.hess - o.hess)

    def __neg__(self) -> "Jet2":
        return Jet2(-self.value, -self.grad, -self.hess)

    def __mul__(self, o: "Jet2") -> "Jet2":
        # the two outer products are added in an order that keeps hess exactly symmetric
        cross = np.outer(self.grad, o.grad)
        return Jet2(
            self.value * o.value,
            self.value * o.grad + o.value * self.grad,
            self.value * o.hess + o.value * self.hess + (cross + cross.T),
        )

    def scale(self, c: float) -> "Jet2":
        return Jet2(c * self.value, c * self.grad, c * self.hess)

    def compose(self, f0: float, f1: float, f2: float) -> "Jet2":
        """Chain rule for a scalar function with derivatives f0, f1, f2 at ``self.value``."""
        return Jet2(f0, f1 * self.grad, f1 * self.hess + f2 * np.outer(self.grad, self.grad))

    def __truediv__(self, o: "Jet2") -> "Jet2":
        v = o.value
        return self * o.compose(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def __pow__(self, n: int) -> "Jet2":
        x = self.value
        if n == 0:
            return Jet2.constant(1.0)
        if n == 1:
            return self
        if n == 2:
            return self * self
        return self.compose(x**n, n * x ** (n - 1), n * (n - 1) * x ** (n - 2))


def _eval(e: Expr, p) -> Jet2:
    if isinstance(e, Num):
        return Jet2.constant(e.value)
    if isinstance(e, Var):
        return Jet2.variable(e.index, p[e.index])
    if isinstance(e, Neg):
        return -_eval(e.operand, p)
    if isinstance(e, BinOp):
        a = _eval(e.left, p)
        b = _eval(e.right, p)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b.value == 0.0:
            raise ExprDomainError("division by zero", e)
        return a / b
    if isinstance(e, Pow):
        b = _eval(e.base, p)
        if e.exponent < 0 and b.value == 0.0:
            raise ExprDomainError("negative power of zero", e)
        return b ** e.exponent
    if isinstance(e, Func):
        u = _eval(e.arg, p)
        x = u.value
        if e.name == "sin":
            s, c = math.sin(x), math.cos(x)
            return u.compose(s, c, -s)
        if e.name == "cos":
            s, c = math.sin(x), math.cos(x)
            return u.compose(c, -s, -c)
        if e.name == "exp":
            ex = math.exp(x)
            return u.compose(ex, ex, ex)
        if e.name == "log":
            if x <= 0.0:
                raise ExprDomainError(f"log of non-positive value {x!r}", e)
            return u.compose(math.log(x), 1.0 / x, -1.0 / x**2)
        if e.name == "sqrt":
            if x <= 0.0:
                raise ExprDomainError(f"sqrt of non-positive value {x!r}", e)
            r = math.sqrt(x)
            return u.compose(r, 0.5 / r, -0.25 / (r * x))
    raise TypeError(f"not an expression: {e!r}")


def eval_jet2(e: Expr, p) -> Jet2:
    """Evaluate ``e`` at point ``p`` together with its first and second partials."""
    p = tuple(float(c) for c in p)
    if len(p) != 3 or not all(math.isfinite(c) for c in p):
        raise ValueError(f"point must be 3 finite coordinates, got {p!r}")
    return _eval(e, p)


_FLOAT_FUNCS = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "log": math.log, "sqrt": math.sqrt}


def eval_value(e: Expr, p) -> float:
    """Plain float value of ``e`` at ``p``; shares no code with the jet path."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return float(p[e.index])
    if isinstance(e, Neg):
        return -eval_value(e.operand, p)
    if isinstance(e, BinOp):
        a, b = eval_value(e.left, p), eval_value(e.right, p)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0.0:
            raise ExprDomainError("division by zero", e)
        return a / b
    if isinstance(e, Pow):
        b = eval_value(e.base, p)
        if e.exponent < 0 and b == 0.0:
            raise ExprDomainError("negative power of zero", e)
        return b ** e.exponent
    if isinstance(e, Func):
        x = eval_value(e.arg, p)
        if e.name in ("log", "sqrt") and x <= 0.0:
            raise ExprDomainError(f"{e.name} of non-positive value {x!r}", e)
        return _FLOAT_FUNCS[e.name](x)
    raise TypeError(f"not an expression: {e!r}")
