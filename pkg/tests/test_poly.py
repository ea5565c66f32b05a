from fractions import Fraction

import pytest
import sympy as sp

from conftest import from_sympy, sympy_symbols, to_sympy
from core.constants import NEG_INFINITY
from core.errors import DimensionMismatchError, IndexOutOfRangeError
from core.poly import (
    Polynomial,
    compose,
    hmap,
    linear_combination,
    monomials_of_degree,
    monomials_up_to,
    partial,
    random_polynomial,
    swap_variables,
    total_degree,
    variables,
)


def x(n, i):
    return Polynomial.variable(n, i)


def test_zero_coefficients_are_dropped():
    p = Polynomial(2, {(1, 0): 0, (0, 1): Fraction(3, 2)})
    assert p.terms() == {(0, 1): Fraction(3, 2)}
    assert Polynomial(2, {(1, 1): 0}).is_zero()


def test_constructor_rejects_bad_input():
    with pytest.raises(ValueError):
        Polynomial(0)
    with pytest.raises(DimensionMismatchError):
        Polynomial(2, {(1,): 1})
    with pytest.raises(ValueError):
        Polynomial(2, {(-1, 0): 1})


def test_degree_of_zero_is_negative_infinity():
    assert total_degree(Polynomial.zero(3)) == NEG_INFINITY
    assert total_degree(Polynomial.constant(3, 5)) == 0
    assert total_degree(x(3, 1) ** 2 * x(3, 3) + x(3, 2)) == 3


def test_ring_axioms_on_random_polynomials(rng):
    for _ in range(30):
        a, b, c = (random_polynomial(3, rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Polynomial.zero(3)
        assert a * 1 == a
        assert (a * 0).is_zero()


def test_multiplication_matches_sympy(rng):
    for _ in range(20):
        a, b = random_polynomial(2, rng), random_polynomial(2, rng)
        assert to_sympy(a * b) == sp.expand(to_sympy(a) * to_sympy(b))


def test_partial_matches_sympy(rng):
    xs = sympy_symbols(3)
    for _ in range(20):
        p = random_polynomial(3, rng, max_degree=4)
        for i in range(1, 4):
            assert partial(p, i) == from_sympy(sp.diff(to_sympy(p), xs[i - 1]), 3)


def test_partial_index_out_of_range():
    with pytest.raises(IndexOutOfRangeError):
        partial(x(2, 1), 3)
    with pytest.raises(IndexOutOfRangeError):
        partial(x(2, 1), 0)


def test_compose_matches_sympy_substitution(rng):
    xs = sympy_symbols(2)
    for _ in range(15):
        p = random_polynomial(2, rng, max_degree=3)
        images = [random_polynomial(2, rng, max_degree=2) for _ in range(2)]
        expected = to_sympy(p).subs(
            {xs[0]: to_sympy(images[0]), xs[1]: to_sympy(images[1])}, simultaneous=True
        )
        assert compose(p, images) == from_sympy(expected, 2)


def test_compose_with_identity_is_identity(rng):
    p = random_polynomial(3, rng)
    assert compose(p, variables(3)) == p


def test_compose_needs_n_images():
    with pytest.raises(DimensionMismatchError):
        compose(x(2, 1), [x(2, 1)])


def test_hmap_scales_by_exponent_plus_one():
    p = Polynomial(2, {(2, 1): 1, (0, 3): 2})
    assert hmap(p, 1) == Polynomial(2, {(2, 1): 3, (0, 3): 2})
    assert hmap(p, 2) == partial(x(2, 2) * p, 2)


def test_monomial_enumeration_counts():
    assert len(monomials_of_degree(3, 2)) == 6
    assert len(monomials_up_to(2, 3)) == 10
    assert monomials_of_degree(2, 1) == [(0, 1), (1, 0)]
    assert monomials_of_degree(2, -1) == []


def test_swap_variables():
    p = Polynomial(3, {(2, 1, 0): 1, (0, 0, 1): 4})
    assert swap_variables(p, 1, 2) == Polynomial(3, {(1, 2, 0): 1, (0, 0, 1): 4})


def test_linear_combination():
    n = 2
    total = linear_combination([(2, x(n, 1)), (Fraction(-1, 2), x(n, 2)), (0, x(n, 1) ** 5)], n)
    assert total == Polynomial(n, {(1, 0): 2, (0, 1): Fraction(-1, 2)})


def test_mixing_variable_counts_is_rejected():
    with pytest.raises(DimensionMismatchError):
        x(2, 1) + x(3, 1)


def test_equality_with_scalars():
    assert Polynomial.constant(2, 3) == 3
    assert Polynomial.zero(2) == 0
    assert x(2, 1) != 1


def test_power():
    p = x(2, 1) + 1
    assert p ** 0 == 1
    assert p ** 3 == from_sympy(sp.expand((sympy_symbols(2)[0] + 1) ** 3), 2)
    with pytest.raises(ValueError):
        p ** -1
