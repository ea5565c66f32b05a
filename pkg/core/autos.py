"""
Tame polynomial automorphisms, Jacobians and the conjugation action.

An ``Automorphism`` is a word of elementary maps. Words act on points from
left to right, so on polynomials the substitutions compose from right to
left: for the word ``[g1, g2]`` the image of ``x_i`` is ``g1(g2(x_i))``.
Each elementary map carries a closed-form inverse, so ``inverse_images``
never has to solve anything.

Conventions
-----------
- ``x_i' = sigma(x_i)`` are the forward images.
- ``J(sigma)[i][j] = d x_j' / d x_i`` (column ``j`` is the gradient of ``x_j'``).
- ``sigma(d) = sigma o d o sigma^-1`` on derivations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import List, Sequence, Tuple, Union

import sympy

from core.errors import (
    DimensionMismatchError,
    InvalidAutomorphismError,
    check_index,
    check_same_n,
)
from core.poly import (
    Polynomial,
    compose,
    linear_combination,
    mul,
    partial,
    random_polynomial,
    variables,
)
from core.vecfield import (
    Derivation,
    apply,
    divergence,
    make_H,
    make_partial,
)

Matrix = List[List[Polynomial]]


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class Affine:
    """``x_i -> sum_j A[i][j] x_j + b[i]`` with ``A`` invertible."""

    A: Tuple[Tuple[Fraction, ...], ...]
    b: Tuple[Fraction, ...]

    def __post_init__(self):
        A = tuple(tuple(Fraction(v) for v in row) for row in self.A)
        b = tuple(Fraction(v) for v in self.b)
        n = len(A)
        if n == 0 or any(len(row) != n for row in A):
            raise DimensionMismatchError("affine matrix must be square and non-empty")
        if len(b) != n:
            raise DimensionMismatchError(f"translation has length {len(b)}, expected {n}")
        matrix = sympy.Matrix([[_to_sympy(v) for v in row] for row in A])
        if matrix.det() == 0:
            raise InvalidAutomorphismError("affine matrix is singular")
        inverse = matrix.inv()
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(
            self,
            "_inverse",
            tuple(tuple(_from_sympy(inverse[i, j]) for j in range(n)) for i in range(n)),
        )
        object.__setattr__(self, "_det", _from_sympy(matrix.det()))

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def determinant(self) -> Fraction:
        return self._det

    def images(self) -> List[Polynomial]:
        xs = variables(self.n)
        return [
            linear_combination(zip(row, xs), self.n) + self.b[i]
            for i, row in enumerate(self.A)
        ]

    def inverse_images(self) -> List[Polynomial]:
        shifted = [x - c for x, c in zip(variables(self.n), self.b)]
        return [linear_combination(zip(row, shifted), self.n) for row in self._inverse]


@dataclass(frozen=True)
class Triangular:
    """``x_i -> x_i + f`` where ``f`` does not involve ``x_i``."""

    i: int
    f: Polynomial

    def __post_init__(self):
        check_index(self.i, self.f.n)
        if not partial(self.f, self.i).is_zero():
            raise InvalidAutomorphismError(f"triangular map on x{self.i} has f depending on x{self.i}")

    @property
    def n(self) -> int:
        return self.f.n

    def images(self) -> List[Polynomial]:
        xs = variables(self.n)
        xs[self.i - 1] = xs[self.i - 1] + self.f
        return xs

    def inverse_images(self) -> List[Polynomial]:
        xs = variables(self.n)
        xs[self.i - 1] = xs[self.i - 1] - self.f
        return xs


ElementaryMap = Union[Affine, Triangular]


class Automorphism:
    """A word of elementary maps over ``n`` variables."""

    def __init__(self, n: int, word: Sequence[ElementaryMap] = ()):
        word = tuple(word)
        for g in word:
            check_same_n(n, g.n)
        self.n = n
        self.word = word
        self._forward = None
        self._inverse = None

    def forward_images(self) -> List[Polynomial]:
        if self._forward is None:
            images = variables(self.n)
            for g in self.word:
                images = [compose(p, images) for p in g.images()]
            self._forward = images
        return list(self._forward)

    def inverse_images(self) -> List[Polynomial]:
        if self._inverse is None:
            images = variables(self.n)
            for g in reversed(self.word):
                images = [compose(p, images) for p in g.inverse_images()]
            self._inverse = images
        return list(self._inverse)

    def __call__(self, p: Polynomial) -> Polynomial:
        """``sigma(p)``."""
        return compose(p, self.forward_images())

    def inverse(self) -> "Automorphism":
        inverse_word = []
        for g in reversed(self.word):
            if isinstance(g, Triangular):
                inverse_word.append(Triangular(g.i, -g.f))
            else:
                inverse_word.append(Affine(g._inverse, tuple(
                    -sum((g._inverse[i][j] * g.b[j] for j in range(g.n)), Fraction(0))
                    for i in range(g.n)
                )))
        return Automorphism(self.n, inverse_word)

    def __len__(self) -> int:
        return len(self.word)

    def __repr__(self) -> str:
        kinds = ", ".join(type(g).__name__ for g in self.word)
        return f"Automorphism(n={self.n}, word=[{kinds}])"


# ----------------------------------------------------------------------
# Constructors
# ----------------------------------------------------------------------
def identity(n: int) -> Automorphism:
    return Automorphism(n, [])


def shift(lam: Sequence) -> Automorphism:
    """Translation ``x_i -> x_i + lam_i``."""
    n = len(lam)
    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return Automorphism(n, [Affine(eye, tuple(lam))])


def swap_automorphism(n: int, i: int) -> Automorphism:
    """Exchange of ``x_i`` and ``x_{i+1}``."""
    check_index(i, n - 1 if n > 1 else 0, "swap")
    A = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    A[i - 1][i - 1] = A[i][i] = 0
    A[i - 1][i] = A[i][i - 1] = 1
    return Automorphism(n, [Affine(A, (0,) * n)])


def compose_automorphisms(sigma: Automorphism, tau: Automorphism) -> Automorphism:
    """The product ``sigma tau`` (``tau`` acts on polynomials first)."""
    check_same_n(sigma.n, tau.n)
    return Automorphism(sigma.n, sigma.word + tau.word)


def random_tame(
    n: int,
    rng,
    max_length: int = 4,
    max_degree: int = 3,
    max_image_degree: int = 9,
) -> Automorphism:
    """Seeded random word of affine and triangular maps.

    Triangular degrees are capped so that the product of the degrees
    along the word stays within ``max_image_degree``.
    """
    length = int(rng.integers(1, max_length + 1))
    word: List[ElementaryMap] = []
    budget = 1
    for _ in range(length):
        room = max_image_degree // budget
        if n >= 2 and room >= 1 and rng.random() < 0.6:
            degree = int(rng.integers(1, min(max_degree, room) + 1))
            i = int(rng.integers(1, n + 1))
            f = random_polynomial(n, rng, max_degree=degree, max_terms=2, exclude=(i,), bound=3)
            word.append(Triangular(i, f))
            budget *= max(degree, 1)
        else:
            word.append(_random_affine(n, rng))
    return Automorphism(n, word)


def _random_affine(n: int, rng) -> Affine:
    while True:
        A = [[int(rng.integers(-2, 3)) for _ in range(n)] for _ in range(n)]
        b = [int(rng.integers(-2, 3)) for _ in range(n)]
        try:
            return Affine(A, b)
        except InvalidAutomorphismError:
            continue


# ----------------------------------------------------------------------
# Jacobians
# ----------------------------------------------------------------------
def jacobian(sigma: Automorphism) -> Matrix:
    """``J[i][j] = d x_j' / d x_i``."""
    images = sigma.forward_images()
    n = sigma.n
    return [[partial(images[j], i + 1) for j in range(n)] for i in range(n)]


def _sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(matrix: Matrix) -> Polynomial:
    """Leibniz expansion over polynomial entries."""
    n = len(matrix)
    if n == 0:
        raise DimensionMismatchError("empty matrix")
    nvars = matrix[0][0].n
    total = Polynomial.zero(nvars)
    for perm in permutations(range(n)):
        term = Polynomial.constant(nvars, _sign(perm))
        for row, col in enumerate(perm):
            term = mul(term, matrix[row][col])
            if term.is_zero():
                break
        total = total + term
    return total


def adjugate(matrix: Matrix) -> Matrix:
    """Transpose of the cofactor matrix."""
    n = len(matrix)
    nvars = matrix[0][0].n
    if n == 1:
        return [[Polynomial.constant(nvars, 1)]]
    adj = [[Polynomial.zero(nvars)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != j]
                for r in range(n) if r != i
            ]
            cofactor = determinant(minor)
            adj[j][i] = cofactor if (i + j) % 2 == 0 else -cofactor
    return adj


def jacobian_det(sigma: Automorphism) -> Polynomial:
    return determinant(jacobian(sigma))


def apply_to_matrix(sigma: Automorphism, matrix: Matrix) -> Matrix:
    """Entrywise ``sigma``."""
    images = sigma.forward_images()
    return [[compose(entry, images) for entry in row] for row in matrix]


def matmul(left: Matrix, right: Matrix) -> Matrix:
    n = len(left)
    nvars = left[0][0].n
    result = []
    for i in range(n):
        row = []
        for j in range(len(right[0])):
            entry = Polynomial.zero(nvars)
            for k in range(len(right)):
                entry = entry + mul(left[i][k], right[k][j])
            row.append(entry)
        result.append(row)
    return result


def chain_rule_holds(sigma: Automorphism, tau: Automorphism) -> bool:
    """``J(sigma tau) == J(sigma) . sigma(J(tau))``."""
    lhs = jacobian(compose_automorphisms(sigma, tau))
    rhs = matmul(jacobian(sigma), apply_to_matrix(sigma, jacobian(tau)))
    return lhs == rhs


# ----------------------------------------------------------------------
# Action on derivations
# ----------------------------------------------------------------------
def conjugate(sigma: Automorphism, d: Derivation) -> Derivation:
    """``sigma o d o sigma^-1``, computed by substitution."""
    check_same_n(sigma.n, d.n)
    forward = sigma.forward_images()
    return Derivation(
        [compose(apply(d, inv), forward) for inv in sigma.inverse_images()]
    )


def jacobian_route_conjugate(sigma: Automorphism, d: Derivation) -> Derivation:
    """Same as ``conjugate`` via ``sum_i sigma(a_i) (J^-1)[i][j] d_j``."""
    check_same_n(sigma.n, d.n)
    J = jacobian(sigma)
    det = determinant(J)
    if det.is_zero() or not det.is_constant():
        raise InvalidAutomorphismError("Jacobian determinant is not a nonzero constant")
    scale = 1 / det.constant_term()
    adj = adjugate(J)
    forward = sigma.forward_images()
    images = [compose(a, forward) for a in d.coeffs]
    coeffs = []
    for j in range(d.n):
        entry = Polynomial.zero(d.n)
        for i in range(d.n):
            entry = entry + mul(images[i], adj[i][j])
        coeffs.append(entry.scale(scale))
    return Derivation(coeffs)


def check_div_equivariance(sigma: Automorphism, d: Derivation) -> bool:
    """``div(sigma(d)) == sigma(div(d))``."""
    return divergence(conjugate(sigma, d)) == sigma(divergence(d))


def check_partials_dual(sigma: Automorphism) -> bool:
    """``d_i'(x_j') = delta_ij`` and ``div(d_i') = 0`` for the conjugated partials."""
    n = sigma.n
    forward = sigma.forward_images()
    for i in range(1, n + 1):
        d_i = conjugate(sigma, make_partial(n, i))
        if not divergence(d_i).is_zero():
            return False
        for j in range(1, n + 1):
            if apply(d_i, forward[j - 1]) != Polynomial.constant(n, 1 if i == j else 0):
                return False
    return True


def check_h_shift(sigma: Automorphism, i: int) -> bool:
    """``div(sigma(H_i) - H_i) == 0``."""
    H = make_H(sigma.n, i)
    return divergence(conjugate(sigma, H) - H).is_zero()


__all__ = [
    "Affine",
    "Automorphism",
    "ElementaryMap",
    "Triangular",
    "adjugate",
    "apply_to_matrix",
    "chain_rule_holds",
    "check_div_equivariance",
    "check_h_shift",
    "check_partials_dual",
    "compose_automorphisms",
    "conjugate",
    "determinant",
    "identity",
    "jacobian",
    "jacobian_det",
    "jacobian_route_conjugate",
    "matmul",
    "random_tame",
    "shift",
    "swap_automorphism",
]
