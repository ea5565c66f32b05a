"""
Exact linear algebra over Q for spans of derivations and polynomials.

Vectors are sparse ``{coordinate: Fraction}`` rows. A ``SpanSpace`` keeps
its rows in reduced echelon form with the *largest* coordinate of each row
as its pivot; coordinates of derivations sort by (degree, exponents,
direction), so rows built from degree-homogeneous inputs stay homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from core.constants import ALGEBRA_DIV0, ALGEBRA_DIVC, ALGEBRA_TAGS
from core.errors import DimensionMismatchError
from core.poly import Polynomial, monomials_of_degree, monomials_up_to
from core.vecfield import (
    Derivation,
    divergence,
    make_H,
    make_Hdiff,
    theta,
    theta_power,
)

Row = Dict[Hashable, Fraction]


def _axpy(target: Row, coef: Fraction, source: Row) -> None:
    """In place ``target += coef * source``, dropping zeros."""
    if not coef:
        return
    for key, value in source.items():
        updated = target.get(key, 0) + coef * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)


def _poly_coords(p: Polynomial) -> Row:
    return {(sum(exps), exps): c for exps, c in p.items()}


def as_row(vector) -> Row:
    """Coordinates of a derivation, a polynomial, or an existing row."""
    if isinstance(vector, Derivation):
        return vector.coordinates()
    if isinstance(vector, Polynomial):
        return _poly_coords(vector)
    if isinstance(vector, dict):
        return {k: Fraction(v) for k, v in vector.items() if v}
    raise TypeError(f"cannot take coordinates of {type(vector).__name__}")


class SpanSpace:
    """Row-reduced span of derivations over ``n`` variables.

    Every row has coefficient 1 at its pivot and every other row is zero
    there. ``rows`` and ``pivots`` are listed by increasing pivot.
    """

    def __init__(self, n: int):
        self.n = n
        self._rows: Dict[Hashable, Row] = {}

    # Conversions overridden by PolynomialSpan
    def _coords(self, vector) -> Row:
        if not isinstance(vector, Derivation):
            raise TypeError(f"expected Derivation, got {type(vector).__name__}")
        if vector.n != self.n:
            raise DimensionMismatchError(f"span over {self.n} variables, vector over {vector.n}")
        return vector.coordinates()

    def _vector(self, row: Row):
        return Derivation.from_coordinates(self.n, row)

    # ------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[Hashable]:
        return sorted(self._rows)

    @property
    def rows(self) -> List:
        return [self._vector(self._rows[p]) for p in self.pivots]

    def basis(self) -> List:
        return self.rows

    def copy(self) -> "SpanSpace":
        clone = self.__class__(self.n)
        clone._rows = {p: dict(r) for p, r in self._rows.items()}
        return clone

    def reduce_row(self, row: Row) -> Tuple[Row, Dict[Hashable, Fraction]]:
        """Reduce ``row`` against the span.

        Returns the remainder (no pivot coordinates left) and the
        multiple of each row that was subtracted, keyed by pivot.
        """
        remainder = dict(row)
        used = {p: remainder[p] for p in row if p in self._rows}
        for pivot, c in used.items():
            _axpy(remainder, -c, self._rows[pivot])
        return remainder, used

    def remainder(self, vector):
        """Normal form of ``vector`` modulo the span, as a vector."""
        rest, _ = self.reduce_row(self._coords(vector))
        return self._vector(rest)

    def add(self, vector) -> bool:
        """Insert ``vector``; return True when the dimension grew."""
        return self.add_row(self._coords(vector))

    def add_row(self, row: Row) -> bool:
        rest, _ = self.reduce_row(row)
        if not rest:
            return False
        pivot = max(rest)
        scale = rest[pivot]
        rest = {k: v / scale for k, v in rest.items()}
        for other in self._rows.values():
            c = other.get(pivot)
            if c:
                _axpy(other, -c, rest)
        self._rows[pivot] = rest
        return True

    def extend(self, vectors: Iterable) -> int:
        """Insert several vectors; return how many were new."""
        return sum(1 for v in vectors if self.add(v))

    def contains(self, vector) -> Tuple[bool, Optional[List[Fraction]]]:
        """Membership test with certificate.

        Returns ``(True, coords)`` where ``coords[k]`` multiplies
        ``rows[k]``, or ``(False, None)``.
        """
        rest, used = self.reduce_row(self._coords(vector))
        if rest:
            return False, None
        return True, [used.get(p, Fraction(0)) for p in self.pivots]

    def __contains__(self, vector) -> bool:
        return self.contains(vector)[0]

    def is_subspace_of(self, other: "SpanSpace") -> bool:
        return all(not other.reduce_row(r)[0] for r in self._rows.values())

    def intersection_dim(self, other: "SpanSpace") -> int:
        """``dim(S & T) = dim S + dim T - dim(S + T)``."""
        total = self.copy()
        for r in other._rows.values():
            total.add_row(r)
        return self.dim + other.dim - total.dim

    def equals(self, other: "SpanSpace") -> bool:
        return self.dim == other.dim and self.is_subspace_of(other)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(n={self.n}, dim={self.dim})"


class PolynomialSpan(SpanSpace):
    """Row-reduced span of polynomials."""

    def _coords(self, vector) -> Row:
        if not isinstance(vector, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(vector).__name__}")
        if vector.n != self.n:
            raise DimensionMismatchError(f"span over {self.n} variables, vector over {vector.n}")
        return _poly_coords(vector)

    def _vector(self, row: Row):
        return Polynomial(self.n, {exps: c for (_, exps), c in row.items()})


@dataclass(frozen=True)
class BasisSpec:
    """Truncation of ``div_n^0`` or ``div_n^c`` at coefficient degree ``cutoff``."""

    n: int
    cutoff: int
    algebra: str = ALGEBRA_DIV0

    def __post_init__(self):
        errors = []
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            errors.append(f"n must be a positive integer, got {self.n!r}")
        if isinstance(self.cutoff, bool) or not isinstance(self.cutoff, int) or self.cutoff < 0:
            errors.append(f"cutoff must be a non-negative integer, got {self.cutoff!r}")
        if self.algebra not in ALGEBRA_TAGS:
            errors.append(f"algebra must be one of {ALGEBRA_TAGS}, got {self.algebra!r}")
        if errors:
            raise ValueError("; ".join(errors))

    def with_cutoff(self, cutoff: int) -> "BasisSpec":
        return BasisSpec(self.n, cutoff, self.algebra)


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------
def reduce(vectors: Sequence[Derivation], n: Optional[int] = None) -> SpanSpace:
    """Row-reduce a list of derivations into a ``SpanSpace``."""
    vectors = list(vectors)
    if n is None:
        if not vectors:
            raise ValueError("n is required to reduce an empty list")
        n = vectors[0].n
    space = SpanSpace(n)
    space.extend(vectors)
    return space


def contains(space: SpanSpace, vector) -> Tuple[bool, Optional[List[Fraction]]]:
    return space.contains(vector)


def _free_terms(n: int, degree: int) -> List[Derivation]:
    # x^b d_j with b_j = 0 and |b| = degree
    result = []
    for j in range(1, n + 1):
        for exps in monomials_of_degree(n, degree):
            if exps[j - 1] == 0:
                result.append(Derivation.term(n, exps, j))
    return result


def enumerate_basis(spec: BasisSpec) -> List[Derivation]:
    """Truncated basis, listed by increasing coefficient degree.

    Degree ``k`` contributes the ``x^b d_j`` with ``b_j = 0`` and
    ``|b| = k`` followed by the ``theta_i^a`` with ``|a| = k - 1``. The
    constant-divergence algebra adds ``H_1``.
    """
    n = spec.n
    basis: List[Derivation] = []
    for k in range(spec.cutoff + 1):
        basis.extend(_free_terms(n, k))
        if k >= 1:
            for i in range(1, n):
                for exps in monomials_of_degree(n, k - 1):
                    basis.append(theta(n, i, exps))
    if spec.algebra == ALGEBRA_DIVC:
        basis.append(make_H(n, 1))
    return basis


def ambient_derivations(n: int, cutoff: int) -> List[Derivation]:
    """Every ``x^a d_j`` with ``|a| <= cutoff``."""
    return [
        Derivation.term(n, exps, j)
        for exps in monomials_up_to(n, cutoff)
        for j in range(1, n + 1)
    ]


def nullspace(vectors: Sequence) -> List[List[Fraction]]:
    """Kernel of ``c -> sum c_k vectors[k]``.

    ``vectors`` may hold derivations, polynomials or coordinate dicts.
    Each returned kernel vector has length ``len(vectors)``.
    """
    echelon: Dict[Hashable, Tuple[Row, Row]] = {}
    kernel: List[List[Fraction]] = []
    count = len(vectors)
    for index, vector in enumerate(vectors):
        row = as_row(vector)
        combo: Row = {index: Fraction(1)}
        while row:
            lead = max(row)
            if lead not in echelon:
                break
            pivot_row, pivot_combo = echelon[lead]
            c = row[lead]
            _axpy(row, -c, pivot_row)
            _axpy(combo, -c, pivot_combo)
        if row:
            lead = max(row)
            scale = row[lead]
            echelon[lead] = (
                {k: v / scale for k, v in row.items()},
                {k: v / scale for k, v in combo.items()},
            )
        else:
            kernel.append([combo.get(k, Fraction(0)) for k in range(count)])
    return kernel


def combine(vectors: Sequence[Derivation], coefficients: Sequence[Fraction], n: int) -> Derivation:
    """``sum coefficients[k] * vectors[k]``."""
    total: Row = {}
    for c, v in zip(coefficients, vectors):
        _axpy(total, Fraction(c), v.coordinates())
    return Derivation.from_coordinates(n, total)


def divkernel_oracle(n: int, cutoff: int) -> SpanSpace:
    """Divergence-free derivations of coefficient degree ``<= cutoff``.

    Brute force: kernel of the divergence map on all ``x^a d_j``.
    """
    ambient = ambient_derivations(n, cutoff)
    images = [divergence(d) for d in ambient]
    space = SpanSpace(n)
    for combo in nullspace(images):
        space.add(combine(ambient, combo, n))
    return space


def graded_component(space: Union[SpanSpace, Sequence[Derivation]], k: int) -> SpanSpace:
    """Intersection of a span with the derivations homogeneous of degree ``k``."""
    if not isinstance(space, SpanSpace):
        vectors = list(space)
        if not vectors:
            raise ValueError("cannot take a graded component of an empty list without n")
        space = reduce(vectors)
    rows = space.rows
    result = SpanSpace(space.n)
    if all(r.is_homogeneous() for r in rows):
        result.extend(r for r in rows if r.degree() == k)
        return result
    # General case: combinations whose off-degree parts cancel
    off_degree = [r - r.homogeneous_component(k) for r in rows]
    for combo in nullspace(off_degree):
        result.add(combine(rows, combo, space.n))
    return result


def cartan_basis(n: int, cutoff: int) -> List[Derivation]:
    """``theta^m (H_i - H_{i+1})`` with ``theta = x_1...x_n`` and degree ``n*m + 1 <= cutoff``."""
    result = []
    m = 0
    power = Polynomial.constant(n, 1)
    while n * m + 1 <= cutoff:
        for i in range(1, n):
            result.append(make_Hdiff(n, i, i + 1) * power)
        m += 1
        power = power * theta_power(n)
    return result


__all__ = [
    "BasisSpec",
    "PolynomialSpan",
    "SpanSpace",
    "ambient_derivations",
    "as_row",
    "cartan_basis",
    "combine",
    "contains",
    "divkernel_oracle",
    "enumerate_basis",
    "graded_component",
    "nullspace",
    "reduce",
]
