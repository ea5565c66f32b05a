import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
import sympy as sp

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.poly import Polynomial  # noqa: E402

SEED = 20130316


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def sympy_symbols(n):
    return sp.symbols(f"x1:{n + 1}")


def to_sympy(p: Polynomial):
    """Independent oracle: the same polynomial as a sympy expression."""
    xs = sympy_symbols(p.n)
    expr = sp.Integer(0)
    for exps, c in p.items():
        term = sp.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, exps):
            term *= x ** e
        expr += term
    return sp.expand(expr)


def from_sympy(expr, n: int) -> Polynomial:
    xs = sympy_symbols(n)
    poly = sp.Poly(sp.expand(expr), *xs)
    return Polynomial(n, {
        tuple(int(e) for e in monom): Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1]))
        for monom, c in poly.terms()
    })
