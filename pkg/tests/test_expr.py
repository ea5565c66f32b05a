from fractions import Fraction

import pytest

from core.errors import ExprSyntaxError, LoweringError
from core.expr import (
    Add,
    DOp,
    HOp,
    Mul,
    Neg,
    Pow,
    RationalLit,
    Sub,
    Var,
    format_expr,
    parse_derivation,
    parse_expr,
    parse_polynomial,
    parse_value,
    tokenize,
)
from core.poly import Polynomial
from core.vecfield import Derivation, make_H, make_Hdiff, make_partial


def test_tokens_carry_positions():
    tokens = tokenize("3/2*x1 +\n  d2")
    assert [t.kind for t in tokens] == ["NUM", "OP", "VAR", "OP", "DOP", "EOF"]
    assert tokens[0].value == Fraction(3, 2)
    assert (tokens[4].line, tokens[4].column) == (2, 3)


def test_precedence():
    assert parse_expr("x1 + x2*x3^2") == Add(Var(1), Mul(Var(2), Pow(Var(3), 2)))
    assert parse_expr("x1 - x2 - x3") == Sub(Sub(Var(1), Var(2)), Var(3))
    assert parse_expr("-x1^2") == Neg(Pow(Var(1), 2))
    assert parse_expr("2*d1") == Mul(RationalLit(Fraction(2)), DOp(1))


def test_rational_token_binds_before_power():
    assert parse_expr("1/2^2") == Pow(RationalLit(Fraction(1, 2)), 2)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("x1*(", 1, 4),
        ("x1 x2", 1, 4),
        ("x1 +\n * x2", 2, 2),
        ("x1^1/2", 1, 4),
        ("x10", 1, 1),
        ("x1 + 1/0", 1, 6),
        ("x1 % 2", 1, 4),
        ("", 1, 1),
        ("(x1 + x2", 1, 1),
        ("x1\u00b2", 1, 3),
        ("x\u0661", 1, 1),
        ("\u0663*x1", 1, 1),
    ],
)
def test_syntax_errors_report_position(text, line, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, col {column}:")


@pytest.mark.parametrize(
    "text",
    [
        "x1^2*x2 - 3/2*x2 + 7",
        "-(x1 + x2)^3*d2",
        "x1 - (x2 - x3)",
        "2*(x1*x2)*H1",
        "-x1^2 + -d1",
        "x1*-x2",
        "((x1 + 1))^2",
    ],
)
def test_printer_reads_back(text):
    tree = parse_expr(text)
    assert parse_expr(format_expr(tree)) == tree


def test_printer_keeps_needed_parentheses():
    assert format_expr(parse_expr("x1 - (x2 - x3)")) == "x1 - (x2 - x3)"
    assert format_expr(parse_expr("(x1 + x2)*x3")) == "(x1 + x2)*x3"
    assert format_expr(parse_expr("(x1*x2)^2")) == "(x1*x2)^2"


def test_lower_polynomial():
    x1 = Polynomial.variable(1, 1)
    assert parse_polynomial("(x1 + 1)^2", 1) == x1 * x1 + x1 * 2 + 1
    assert parse_polynomial("2^3", 3) == 8
    assert parse_polynomial("1/2*x1 - 1/2*x1", 2).is_zero()


def test_lower_derivation():
    assert parse_derivation("x1*d1 - x2*d2", 2) == make_Hdiff(2, 1, 2)
    assert parse_derivation("H2 - x2*d2", 2).is_zero()
    assert parse_derivation("0", 3) == Derivation.zero(3)
    assert parse_derivation("(x1 + x2)*d1", 2) == make_H(2, 1) + Derivation.term(2, (0, 1), 1)
    assert parse_value("-d2", 2) == -make_partial(2, 2)


@pytest.mark.parametrize(
    "text, n",
    [
        ("x3", 2),
        ("H3*x1", 2),
        ("d1*x1", 2),
        ("x1 + d1", 2),
        ("d1^2", 2),
        ("d1*d2", 2),
    ],
)
def test_lowering_errors(text, n):
    with pytest.raises(LoweringError):
        parse_value(text, n)


def test_kind_mismatch():
    with pytest.raises(LoweringError):
        parse_derivation("x1", 2)
    with pytest.raises(LoweringError):
        parse_polynomial("x1*d1", 2)


def random_tree(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        kind = int(rng.integers(0, 4))
        index = int(rng.integers(1, 10))
        if kind == 0:
            return RationalLit(Fraction(int(rng.integers(0, 10)), int(rng.integers(1, 4))))
        return (Var, DOp, HOp)[kind - 1](index)
    kind = int(rng.integers(0, 5))
    if kind == 3:
        return Neg(random_tree(rng, depth - 1))
    if kind == 4:
        return Pow(random_tree(rng, depth - 1), int(rng.integers(0, 4)))
    left, right = random_tree(rng, depth - 1), random_tree(rng, depth - 1)
    return (Add, Sub, Mul)[kind](left, right)


def test_random_trees_read_back(rng):
    for _ in range(500):
        tree = random_tree(rng, 4)
        assert parse_expr(format_expr(tree)) == tree
