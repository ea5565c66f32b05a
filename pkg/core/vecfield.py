"""
Polynomial vector fields (derivations of ``Q[x_1..x_n]``).

A derivation ``sum a_i d_i`` is stored as its coefficient tuple
``(a_1, ..., a_n)``. The module provides the Lie bracket, divergence and
action on polynomials, the named elements (``d_i``, ``H_i = x_i d_i``, the
divergence-free combinations ``phi_ij`` and ``theta_i``), and the weight
decomposition under the trace-zero diagonal elements ``H_i - H_j``.

Weights: the term ``x^a d_i`` has integer grading ``a - e_i``. Gradings
that differ by a multiple of ``(1, ..., 1)`` have the same eigenvalue for
every ``sum l_i H_i`` with ``sum l_i = 0``, so a ``WeightClass`` keeps the
grading shifted to have minimum entry zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core.errors import (
    DimensionMismatchError,
    NotHomogeneousError,
    ZeroInputError,
    check_index,
    check_same_n,
)
from core.poly import (
    Monomial,
    Polynomial,
    Scalar,
    hmap,
    mul,
    partial,
    random_polynomial,
    swap_variables,
    total_degree,
)

DIV_ZERO = "zero"
DIV_CONSTANT = "constant"
DIV_NONCONSTANT = "nonconstant"

CoordinateKey = Tuple[int, Monomial, int]


def coordinate_key(exps: Monomial, j: int) -> CoordinateKey:
    """Coordinate of ``x^exps d_j``; tuples sort grlex in ``exps``, then by ``j``."""
    return (sum(exps), exps, j)


class Derivation:
    """``sum a_i d_i`` with polynomial coefficients.

    Parameters
    ----------
    coeffs : sequence of Polynomial
        ``a_1, ..., a_n``; each must have exactly ``n`` variables.
    """

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence[Polynomial]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise DimensionMismatchError("a derivation needs at least one coefficient")
        for a in coeffs:
            if not isinstance(a, Polynomial):
                raise TypeError(f"coefficients must be Polynomial, got {type(a).__name__}")
            if a.n != len(coeffs):
                raise DimensionMismatchError(
                    f"coefficient over {a.n} variables in a derivation with {len(coeffs)} slots"
                )
        self.n = len(coeffs)
        self.coeffs = coeffs
        self._hash = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Derivation":
        return cls([Polynomial.zero(n) for _ in range(n)])

    @classmethod
    def term(cls, n: int, exps: Sequence[int], j: int, coeff: Scalar = 1) -> "Derivation":
        """``coeff * x^exps d_j``."""
        check_index(j, n, "direction")
        slots = [Polynomial.zero(n) for _ in range(n)]
        slots[j - 1] = Polynomial.monomial(n, exps, coeff)
        return cls(slots)

    @classmethod
    def from_coordinates(cls, n: int, coords: Dict[CoordinateKey, Fraction]) -> "Derivation":
        buckets: List[Dict[Monomial, Fraction]] = [{} for _ in range(n)]
        for (_, exps, j), c in coords.items():
            buckets[j - 1][exps] = c
        return cls([Polynomial(n, b) for b in buckets])

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------
    def terms(self) -> Iterator[Tuple[Monomial, int, Fraction]]:
        """Yield ``(exps, j, coeff)`` for every nonzero term ``coeff x^exps d_j``."""
        for j, a in enumerate(self.coeffs, start=1):
            for exps, c in a.items():
                yield exps, j, c

    def coordinates(self) -> Dict[CoordinateKey, Fraction]:
        return {coordinate_key(exps, j): c for exps, j, c in self.terms()}

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coeffs)

    def degree(self):
        """Maximum total degree of the coefficients (``NEG_INFINITY`` for zero)."""
        return max(total_degree(a) for a in self.coeffs)

    def homogeneous_component(self, k: int) -> "Derivation":
        return Derivation([a.homogeneous_component(k) for a in self.coeffs])

    def is_homogeneous(self) -> bool:
        degrees = {sum(exps) for exps, _, _ in self.terms()}
        return len(degrees) <= 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ------------------------------------------------------------------
    # Vector space structure
    # ------------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        check_same_n(self.n, other.n)
        return Derivation([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        check_same_n(self.n, other.n)
        return Derivation([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Derivation":
        return Derivation([-a for a in self.coeffs])

    def __mul__(self, other):
        # Scalars, or a polynomial multiplying every coefficient
        if isinstance(other, Polynomial):
            check_same_n(self.n, other.n)
            return Derivation([mul(other, a) for a in self.coeffs])
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Derivation([a.scale(other) for a in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        from core.codec import format_derivation

        return f"Derivation(n={self.n}, {format_derivation(self)!r})"


@dataclass(frozen=True)
class DivClass:
    """Divergence classification: zero, a nonzero constant, or a polynomial."""

    tag: str
    value: Optional[Fraction] = None
    polynomial: Optional[Polynomial] = None

    @property
    def is_zero(self) -> bool:
        return self.tag == DIV_ZERO

    @property
    def is_constant(self) -> bool:
        return self.tag == DIV_CONSTANT


@dataclass(frozen=True, order=True)
class WeightClass:
    """A grading vector modulo ``(1, ..., 1)``, stored with minimum entry 0."""

    rep: Tuple[int, ...]

    def __post_init__(self):
        if not self.rep or min(self.rep) != 0:
            raise ValueError(f"weight representative must have minimum 0, got {self.rep}")

    @classmethod
    def of(cls, vector: Sequence[int]) -> "WeightClass":
        low = min(vector)
        return cls(tuple(v - low for v in vector))

    def pairing(self, coefficients: Sequence[Scalar]) -> Fraction:
        """Eigenvalue of ``sum l_i H_i`` (trace zero) on this weight space."""
        if len(coefficients) != len(self.rep):
            raise DimensionMismatchError("pairing length differs from weight length")
        return sum((Fraction(l) * r for l, r in zip(coefficients, self.rep)), Fraction(0))


# ----------------------------------------------------------------------
# Core operations
# ----------------------------------------------------------------------
def apply(d: Derivation, p: Polynomial) -> Polynomial:
    """Action ``sum a_i dp/dx_i`` of a derivation on a polynomial."""
    check_same_n(d.n, p.n)
    result = Polynomial.zero(p.n)
    for i, a in enumerate(d.coeffs, start=1):
        if a.is_zero():
            continue
        dp = partial(p, i)
        if not dp.is_zero():
            result = result + mul(a, dp)
    return result


def bracket(d: Derivation, e: Derivation) -> Derivation:
    """Commutator ``de - ed``; coefficient ``k`` is ``d(e_k) - e(d_k)``."""
    check_same_n(d.n, e.n)
    return Derivation(
        [apply(d, b) - apply(e, a) for a, b in zip(d.coeffs, e.coeffs)]
    )


def divergence(d: Derivation) -> Polynomial:
    """``sum da_i/dx_i``."""
    result = Polynomial.zero(d.n)
    for i, a in enumerate(d.coeffs, start=1):
        result = result + partial(a, i)
    return result


def classify(d: Derivation) -> DivClass:
    """Zero, constant or non-constant divergence."""
    div = divergence(d)
    if div.is_zero():
        return DivClass(DIV_ZERO)
    if div.is_constant():
        return DivClass(DIV_CONSTANT, value=div.constant_term())
    return DivClass(DIV_NONCONSTANT, polynomial=div)


# ----------------------------------------------------------------------
# Named elements
# ----------------------------------------------------------------------
def make_partial(n: int, i: int) -> Derivation:
    """``d_i``."""
    return Derivation.term(n, (0,) * n, i)


def make_H(n: int, i: int) -> Derivation:
    """``H_i = x_i d_i``."""
    check_index(i, n)
    exps = tuple(1 if k == i - 1 else 0 for k in range(n))
    return Derivation.term(n, exps, i)


def make_Hdiff(n: int, i: int, j: int) -> Derivation:
    """``H_i - H_j`` for ``i != j``."""
    if i == j:
        raise ValueError(f"H_i - H_j needs distinct indices, got {i} twice")
    return make_H(n, i) - make_H(n, j)


def phi(n: int, i: int, j: int, a: Polynomial) -> Derivation:
    """``h_j(a) H_i - h_i(a) H_j``, always divergence-free."""
    check_index(i, n)
    check_index(j, n)
    if i == j:
        raise ValueError(f"phi needs distinct indices, got {i} twice")
    check_same_n(n, a.n)
    slots = [Polynomial.zero(n) for _ in range(n)]
    slots[i - 1] = mul(Polynomial.variable(n, i), hmap(a, j))
    slots[j - 1] = -mul(Polynomial.variable(n, j), hmap(a, i))
    return Derivation(slots)


def theta_ij(n: int, i: int, j: int, exps: Sequence[int]) -> Derivation:
    """``phi_ij(x^exps)``."""
    return phi(n, i, j, Polynomial.monomial(n, exps))


def theta(n: int, i: int, exps: Sequence[int]) -> Derivation:
    """``x^a ((a_{i+1}+1) H_i - (a_i+1) H_{i+1})`` for ``1 <= i <= n-1``."""
    check_index(i, n - 1 if n > 1 else 0, "theta")
    return theta_ij(n, i, i + 1, exps)


def theta_power(n: int) -> Polynomial:
    """The product ``x_1 x_2 ... x_n``."""
    return Polynomial.monomial(n, (1,) * n)


def swap(d: Derivation, i: int) -> Derivation:
    """Image of ``d`` under the variable exchange ``x_i <-> x_{i+1}``."""
    check_index(i, d.n - 1 if d.n > 1 else 0, "swap")
    slots = [swap_variables(a, i, i + 1) for a in d.coeffs]
    slots[i - 1], slots[i] = slots[i], slots[i - 1]
    return Derivation(slots)


def split_div0(d: Derivation) -> Tuple[Derivation, Derivation]:
    """Split into ``(diagonal_part, free_part)``.

    The free part collects the terms ``x^b d_j`` with ``b_j = 0``; the
    diagonal part keeps the rest, which is a combination of
    ``p H_j``. For a divergence-free input both parts are divergence-free.
    """
    n = d.n
    diag: List[Dict[Monomial, Fraction]] = [{} for _ in range(n)]
    free: List[Dict[Monomial, Fraction]] = [{} for _ in range(n)]
    for exps, j, c in d.terms():
        (free if exps[j - 1] == 0 else diag)[j - 1][exps] = c
    return (
        Derivation([Polynomial(n, t) for t in diag]),
        Derivation([Polynomial(n, t) for t in free]),
    )


# ----------------------------------------------------------------------
# Weights
# ----------------------------------------------------------------------
def term_weight(exps: Monomial, j: int) -> WeightClass:
    grading = list(exps)
    grading[j - 1] -= 1
    return WeightClass.of(grading)


def weight_of(d: Derivation) -> WeightClass:
    """Weight class of a homogeneous derivation.

    Raises
    ------
    ZeroInputError
        If ``d`` is zero.
    NotHomogeneousError
        If the terms of ``d`` fall into more than one weight class.
    """
    if d.is_zero():
        raise ZeroInputError("the zero derivation has no weight")
    classes = {term_weight(exps, j) for exps, j, _ in d.terms()}
    if len(classes) > 1:
        reps = ", ".join(str(w.rep) for w in sorted(classes))
        raise NotHomogeneousError(f"derivation spans several weight classes: {reps}")
    return classes.pop()


def decompose_weights(d: Derivation) -> Dict[WeightClass, Derivation]:
    """Split ``d`` into weight components, ordered by representative."""
    buckets: Dict[WeightClass, Dict[Tuple[Monomial, int], Fraction]] = {}
    for exps, j, c in d.terms():
        buckets.setdefault(term_weight(exps, j), {})[(exps, j)] = c
    result: Dict[WeightClass, Derivation] = {}
    for weight in sorted(buckets):
        slots: List[Dict[Monomial, Fraction]] = [{} for _ in range(d.n)]
        for (exps, j), c in buckets[weight].items():
            slots[j - 1][exps] = c
        result[weight] = Derivation([Polynomial(d.n, s) for s in slots])
    return result


def adjoint_eigenvalue_holds(d: Derivation, weight: WeightClass) -> bool:
    """Check ``[H_i - H_{i+1}, d] = <weight, e_i - e_{i+1}> d`` for every ``i``."""
    n = d.n
    for i in range(1, n):
        lam = [0] * n
        lam[i - 1], lam[i] = 1, -1
        if bracket(make_Hdiff(n, i, i + 1), d) != d * weight.pairing(lam):
            return False
    return True


def random_derivation(n: int, rng, max_degree: int = 3, max_terms: int = 3) -> Derivation:
    """Random derivation; each slot is zero about a third of the time."""
    slots = []
    for _ in range(n):
        if rng.random() < 1 / 3:
            slots.append(Polynomial.zero(n))
        else:
            slots.append(random_polynomial(n, rng, max_degree=max_degree, max_terms=max_terms))
    return Derivation(slots)


__all__ = [
    "DIV_CONSTANT",
    "DIV_NONCONSTANT",
    "DIV_ZERO",
    "Derivation",
    "DivClass",
    "WeightClass",
    "adjoint_eigenvalue_holds",
    "apply",
    "bracket",
    "classify",
    "coordinate_key",
    "decompose_weights",
    "divergence",
    "make_H",
    "make_Hdiff",
    "make_partial",
    "phi",
    "random_derivation",
    "split_div0",
    "swap",
    "term_weight",
    "theta",
    "theta_ij",
    "theta_power",
    "weight_of",
]
