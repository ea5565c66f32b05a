from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from conftest import to_sympy
from core.autos import (
    Affine,
    Automorphism,
    Triangular,
    adjugate,
    chain_rule_holds,
    check_div_equivariance,
    check_h_shift,
    check_partials_dual,
    compose_automorphisms,
    conjugate,
    determinant,
    identity,
    jacobian,
    jacobian_det,
    jacobian_route_conjugate,
    matmul,
    random_tame,
    shift,
    swap_automorphism,
)
from core.errors import DimensionMismatchError, InvalidAutomorphismError
from core.poly import Polynomial, compose, variables
from core.vecfield import (
    Derivation,
    bracket,
    classify,
    make_H,
    make_partial,
    random_derivation,
)


def x(n, i):
    return Polynomial.variable(n, i)


def tri(i, f):
    return Automorphism(f.n, [Triangular(i, f)])


def test_conjugating_a_partial_by_a_triangular_map():
    sigma = tri(1, x(2, 2) ** 2)
    expected = make_partial(2, 2) - Derivation.term(2, (0, 1), 1, 2)
    assert conjugate(sigma, make_partial(2, 2)) == expected
    assert jacobian_route_conjugate(sigma, make_partial(2, 2)) == expected


def test_word_order():
    # Word [g1, g2] sends x_i to g1(g2(x_i))
    g1 = Triangular(1, x(2, 2))
    g2 = Triangular(2, x(2, 1) ** 2)
    sigma = Automorphism(2, [g1, g2])
    images = sigma.forward_images()
    assert images[0] == x(2, 1) + x(2, 2)
    assert images[1] == x(2, 2) + (x(2, 1) + x(2, 2)) ** 2


def test_inverse_images_undo_forward_images(rng):
    for _ in range(10):
        sigma = random_tame(3, rng, max_image_degree=4)
        forward, inverse = sigma.forward_images(), sigma.inverse_images()
        assert [compose(p, inverse) for p in forward] == variables(3)
        assert [compose(p, forward) for p in inverse] == variables(3)


def test_inverse_automorphism(rng):
    sigma = random_tame(2, rng, max_image_degree=4)
    tau = sigma.inverse()
    assert tau.forward_images() == sigma.inverse_images()
    assert compose_automorphisms(sigma, tau).forward_images() == variables(2)


def test_invalid_elementary_maps():
    with pytest.raises(InvalidAutomorphismError):
        Affine([[1, 2], [2, 4]], [0, 0])
    with pytest.raises(InvalidAutomorphismError):
        Triangular(1, x(2, 1) * x(2, 2))
    with pytest.raises(DimensionMismatchError):
        Affine([[1, 0], [0, 1]], [0])


def test_affine_inverse_is_exact():
    g = Affine([[2, 1], [1, 1]], [Fraction(1, 2), -3])
    sigma = Automorphism(2, [g])
    assert [compose(p, sigma.inverse_images()) for p in sigma.forward_images()] == variables(2)
    assert g.determinant == 1


def test_jacobian_of_affine_is_transposed_matrix():
    sigma = Automorphism(2, [Affine([[1, 2], [3, 5]], [0, 0])])
    J = jacobian(sigma)
    # J[i][j] = d x_j' / d x_i
    assert J[0][1] == 3 and J[1][0] == 2
    assert jacobian_det(sigma) == -1


def test_jacobian_determinant_is_constant(rng):
    for _ in range(10):
        det = jacobian_det(random_tame(3, rng, max_image_degree=4))
        assert det.is_constant() and not det.is_zero()


def test_determinant_matches_sympy(rng):
    for _ in range(5):
        sigma = random_tame(3, rng, max_image_degree=3)
        J = jacobian(sigma)
        expected = sp.Matrix([[to_sympy(p) for p in row] for row in J]).det()
        assert sp.expand(to_sympy(determinant(J)) - expected) == 0


def test_adjugate_inverts_jacobian(rng):
    sigma = random_tame(2, rng, max_image_degree=4)
    J = jacobian(sigma)
    det = determinant(J)
    product = matmul(J, adjugate(J))
    for i in range(2):
        for j in range(2):
            assert product[i][j] == (det if i == j else 0)


def test_chain_rule(rng):
    for _ in range(10):
        sigma = random_tame(2, rng, max_image_degree=3)
        tau = random_tame(2, rng, max_image_degree=3)
        assert chain_rule_holds(sigma, tau)


def test_conjugation_properties(rng):
    for _ in range(15):
        sigma = random_tame(3, rng, max_length=3, max_image_degree=4)
        d = random_derivation(3, rng, max_degree=2)
        e = random_derivation(3, rng, max_degree=2, max_terms=2)
        image = conjugate(sigma, d)
        assert check_div_equivariance(sigma, d)
        assert image == jacobian_route_conjugate(sigma, d)
        assert classify(image).tag == classify(d).tag
        assert conjugate(sigma, bracket(d, e)) == bracket(image, conjugate(sigma, e))


def test_partials_and_euler_elements(rng):
    for _ in range(10):
        sigma = random_tame(3, rng, max_image_degree=4)
        assert check_partials_dual(sigma)
        assert all(check_h_shift(sigma, i) for i in range(1, 4))


def test_shift_moves_euler_element_by_a_partial():
    # x1 -> x1 + 2 sends H_1 to (x1 + 2) d1
    image = conjugate(shift([2, 0]), make_H(2, 1))
    assert image == make_H(2, 1) + make_partial(2, 1) * 2
    assert check_h_shift(shift([2, 0]), 1)


def test_swap_automorphism():
    sigma = swap_automorphism(3, 2)
    assert sigma.forward_images() == [x(3, 1), x(3, 3), x(3, 2)]
    assert conjugate(sigma, make_partial(3, 2)) == make_partial(3, 3)


def test_identity():
    assert identity(2).forward_images() == variables(2)
    assert conjugate(identity(2), make_H(2, 2)) == make_H(2, 2)


def test_random_tame_is_seeded():
    a = random_tame(3, np.random.default_rng(5))
    b = random_tame(3, np.random.default_rng(5))
    assert a.forward_images() == b.forward_images()
