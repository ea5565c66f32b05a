"""
Text front end: tokenizer, recursive-descent parser, printer and lowering.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := rational | 'x'uint | 'd'uint | 'H'uint | '(' expr ')' | '-' factor

``p/q`` with no spaces is a single rational token. Implicit multiplication
is not allowed. Positions in errors are 1-based line and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from core.constants import MAX_TEXT_VARIABLES
from core.errors import ExprSyntaxError, LoweringError
from core.poly import Polynomial
from core.utils import fraction_to_text
from core.vecfield import Derivation, make_H, make_partial

MAX_EXPONENT = 10_000


# ----------------------------------------------------------------------
# AST
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    i: int


@dataclass(frozen=True)
class DOp:
    i: int


@dataclass(frozen=True)
class HOp:
    i: int


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[RationalLit, Var, DOp, HOp, Add, Sub, Neg, Mul, Pow]


# ----------------------------------------------------------------------
# Tokenizer
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Token:
    kind: str  # NUM, VAR, DOP, HOP, OP, EOF
    text: str
    line: int
    column: int
    value: object = None


_DIGITS = "0123456789"
_INDEXED = {"x": "VAR", "d": "DOP", "H": "HOP"}


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, column = 1, 1
    pos = 0
    length = len(text)
    while pos < length:
        ch = text[pos]
        if ch == "\n":
            pos += 1
            line, column = line + 1, 1
            continue
        if ch.isspace():
            pos += 1
            column += 1
            continue

        start_col = column
        if ch in _DIGITS:
            end = pos
            while end < length and text[end] in _DIGITS:
                end += 1
            if end + 1 < length and text[end] == "/" and text[end + 1] in _DIGITS:
                end += 1
                while end < length and text[end] in _DIGITS:
                    end += 1
            raw = text[pos:end]
            num, _, den = raw.partition("/")
            if den and int(den) == 0:
                raise ExprSyntaxError("zero denominator", line, start_col)
            value = Fraction(int(num), int(den)) if den else Fraction(int(num))
            tokens.append(Token("NUM", raw, line, start_col, value))
        elif ch in _INDEXED:
            end = pos + 1
            while end < length and text[end] in _DIGITS:
                end += 1
            raw = text[pos:end]
            if end == pos + 1:
                raise ExprSyntaxError(f"'{ch}' must be followed by an index", line, start_col)
            index = int(raw[1:])
            if not 1 <= index <= MAX_TEXT_VARIABLES:
                raise ExprSyntaxError(
                    f"index in '{raw}' must be between 1 and {MAX_TEXT_VARIABLES}", line, start_col
                )
            tokens.append(Token(_INDEXED[ch], raw, line, start_col, index))
        elif ch in "+-*^()":
            end = pos + 1
            tokens.append(Token("OP", ch, line, start_col))
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", line, start_col)
        column += end - pos
        pos = end

    tokens.append(Token("EOF", "", line, column))
    return tokens


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token.kind == "OP" and token.text in ops

    def fail(self, message: str, token: Token = None):
        token = token or self.peek()
        raise ExprSyntaxError(message, token.line, token.column)

    def parse(self) -> Expr:
        if self.peek().kind == "EOF":
            self.fail("empty expression")
        node = self.expr()
        if self.peek().kind != "EOF":
            self.fail(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at_op("*"):
            self.advance()
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.at_op("^"):
            self.advance()
            token = self.peek()
            if token.kind != "NUM" or "/" in token.text:
                self.fail("exponent must be a non-negative integer")
            self.advance()
            if token.value > MAX_EXPONENT:
                self.fail(f"exponent {token.text} exceeds {MAX_EXPONENT}", token)
            node = Pow(node, int(token.value))
        return node

    def atom(self) -> Expr:
        token = self.peek()
        if token.kind == "NUM":
            self.advance()
            return RationalLit(token.value)
        if token.kind == "VAR":
            self.advance()
            return Var(token.value)
        if token.kind == "DOP":
            self.advance()
            return DOp(token.value)
        if token.kind == "HOP":
            self.advance()
            return HOp(token.value)
        if self.at_op("-"):
            self.advance()
            return Neg(self.factor())
        if self.at_op("("):
            paren = self.advance()
            if self.peek().kind == "EOF":
                self.fail("unclosed '('", paren)
            node = self.expr()
            if self.peek().kind == "EOF":
                self.fail("unclosed '('", paren)
            if not self.at_op(")"):
                self.fail(f"expected ')' but found {self.peek().text!r}")
            self.advance()
            return node
        if token.kind == "EOF":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {token.text!r}")


def parse_expr(text: str) -> Expr:
    """Parse text into an ``Expr``.

    Raises
    ------
    ExprSyntaxError
        With the 1-based line and column of the offending token.
    """
    return _Parser(text).parse()


# ----------------------------------------------------------------------
# Printer
# ----------------------------------------------------------------------
def format_expr(node: Expr) -> str:
    """Text that ``parse_expr`` reads back to the same tree."""
    if isinstance(node, RationalLit):
        return fraction_to_text(node.value)
    if isinstance(node, Var):
        return f"x{node.i}"
    if isinstance(node, DOp):
        return f"d{node.i}"
    if isinstance(node, HOp):
        return f"H{node.i}"
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        right = format_expr(node.right)
        if isinstance(node.right, (Add, Sub)):
            right = f"({right})"
        return f"{format_expr(node.left)} {op} {right}"
    if isinstance(node, Mul):
        left, right = format_expr(node.left), format_expr(node.right)
        if isinstance(node.left, (Add, Sub)):
            left = f"({left})"
        if isinstance(node.right, (Add, Sub, Mul)):
            right = f"({right})"
        return f"{left}*{right}"
    if isinstance(node, Neg):
        inner = format_expr(node.operand)
        if isinstance(node.operand, (Add, Sub, Mul)):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Pow):
        base = format_expr(node.base)
        if isinstance(node.base, (Add, Sub, Mul, Neg, Pow)):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    raise TypeError(f"not an expression node: {node!r}")


# ----------------------------------------------------------------------
# Lowering
# ----------------------------------------------------------------------
def lower(node: Expr, n: int) -> Union[Polynomial, Derivation]:
    """Evaluate an expression over ``n`` variables.

    Returns a ``Polynomial`` when no ``d<i>``/``H<i>`` occurs, otherwise a
    ``Derivation``. An operator may only be the rightmost factor of a
    product.

    Raises
    ------
    LoweringError
        For indices beyond ``n`` or misplaced operators.
    """
    if isinstance(node, RationalLit):
        return Polynomial.constant(n, node.value)
    if isinstance(node, (Var, DOp, HOp)):
        if node.i > n:
            name = {Var: "x", DOp: "d", HOp: "H"}[type(node)]
            raise LoweringError(f"{name}{node.i} exceeds the variable count n={n}")
        if isinstance(node, Var):
            return Polynomial.variable(n, node.i)
        return make_partial(n, node.i) if isinstance(node, DOp) else make_H(n, node.i)
    if isinstance(node, Neg):
        return -lower(node.operand, n)
    if isinstance(node, (Add, Sub)):
        left, right = lower(node.left, n), lower(node.right, n)
        if type(left) is not type(right):
            raise LoweringError("cannot add a polynomial and a derivation")
        return left + right if isinstance(node, Add) else left - right
    if isinstance(node, Mul):
        left, right = lower(node.left, n), lower(node.right, n)
        if isinstance(left, Derivation):
            raise LoweringError("a derivation may only appear as the rightmost factor of a product")
        return left * right
    if isinstance(node, Pow):
        base = lower(node.base, n)
        if isinstance(base, Derivation):
            raise LoweringError("cannot raise a derivation to a power")
        return base ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def parse_value(text: str, n: int) -> Union[Polynomial, Derivation]:
    return lower(parse_expr(text), n)


def parse_polynomial(text: str, n: int) -> Polynomial:
    value = parse_value(text, n)
    if not isinstance(value, Polynomial):
        raise LoweringError("expected a polynomial, found a derivation")
    return value


def parse_derivation(text: str, n: int) -> Derivation:
    value = parse_value(text, n)
    if isinstance(value, Polynomial):
        if value.is_zero():
            return Derivation.zero(n)
        raise LoweringError("expected a derivation, found a polynomial")
    return value


__all__ = [
    "Add",
    "DOp",
    "Expr",
    "HOp",
    "Mul",
    "Neg",
    "Pow",
    "RationalLit",
    "Sub",
    "Var",
    "format_expr",
    "lower",
    "parse_derivation",
    "parse_expr",
    "parse_polynomial",
    "parse_value",
    "tokenize",
]
