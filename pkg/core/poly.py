"""
Sparse multivariate polynomials over the rationals.

A polynomial in ``n`` variables is stored as a map from exponent tuples to
nonzero ``Fraction`` coefficients. Values are immutable; every operation
returns a new polynomial in canonical form, so equality is equality of the
term maps.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from core.constants import NEG_INFINITY
from core.errors import DimensionMismatchError, check_index, check_same_n

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def check_monomial(exps: Iterable[int], n: int) -> Monomial:
    """Validate an exponent vector of length ``n`` with non-negative entries."""
    exps = tuple(exps)
    if len(exps) != n:
        raise DimensionMismatchError(f"monomial {exps} has length {len(exps)}, expected {n}")
    for e in exps:
        if isinstance(e, bool) or not isinstance(e, int) or e < 0:
            raise ValueError(f"monomial {exps} must have non-negative integer exponents")
    return exps


def unit(n: int, i: int) -> Monomial:
    """Exponent vector ``e_i`` (1-based)."""
    check_index(i, n)
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def grlex_key(exps: Monomial) -> Tuple[int, Monomial]:
    """Sort key for graded lexicographic order (ascending)."""
    return (sum(exps), exps)


def monomials_of_degree(n: int, k: int) -> List[Monomial]:
    """All exponent vectors of total degree ``k``, in ascending grlex order."""
    if k < 0:
        return []
    result = []
    for combo in combinations_with_replacement(range(n), k):
        exps = [0] * n
        for var in combo:
            exps[var] += 1
        result.append(tuple(exps))
    return sorted(result)


def monomials_up_to(n: int, degree: int) -> List[Monomial]:
    """All exponent vectors of total degree ``<= degree``, grlex ascending."""
    result: List[Monomial] = []
    for k in range(degree + 1):
        result.extend(monomials_of_degree(n, k))
    return result


class Polynomial:
    """An element of ``Q[x_1, ..., x_n]``.

    Parameters
    ----------
    n : int
        Number of variables, at least 1.
    terms : mapping, optional
        Exponent tuple -> coefficient. Zero coefficients are dropped and
        equal exponents are never repeated (it is a mapping).
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Sequence[int], Scalar] | None = None):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValueError(f"variable count must be a positive integer, got {n!r}")
        self.n = n
        clean: Dict[Monomial, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[check_monomial(exps, n)] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # Internal constructor: terms already canonical
        poly = cls.__new__(cls)
        poly.n = n
        poly._terms = terms
        poly._hash = None
        return poly

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, value: Scalar) -> "Polynomial":
        return cls(n, {(0,) * n: value})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return cls(n, {tuple(exps): coeff})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        return cls(n, {unit(n, i): 1})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        """Copy of the term map."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending grlex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.n, Fraction(0))

    def degree(self):
        return total_degree(self)

    def homogeneous_component(self, k: int) -> "Polynomial":
        return Polynomial._trusted(
            self.n, {e: c for e, c in self._terms.items() if sum(e) == k}
        )

    def without_constant(self) -> "Polynomial":
        zero = (0,) * self.n
        return Polynomial._trusted(self.n, {e: c for e, c in self._terms.items() if e != zero})

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            check_same_n(self.n, other.n)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {k!r}")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.n)
        return Polynomial._trusted(self.n, {e: c * v for e, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(self.n, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from core.codec import format_polynomial

        return f"Polynomial(n={self.n}, {format_polynomial(self)!r})"


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------
def add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Sum of two polynomials over the same variables."""
    check_same_n(p.n, q.n)
    terms = dict(p._terms)
    for exps, c in q._terms.items():
        value = terms.get(exps, 0) + c
        if value:
            terms[exps] = value
        else:
            terms.pop(exps, None)
    return Polynomial._trusted(p.n, terms)


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact product."""
    check_same_n(p.n, q.n)
    terms: Dict[Monomial, Fraction] = {}
    for ea, ca in p._terms.items():
        for eb, cb in q._terms.items():
            exps = tuple(a + b for a, b in zip(ea, eb))
            terms[exps] = terms.get(exps, 0) + ca * cb
    return Polynomial._trusted(p.n, {e: c for e, c in terms.items() if c})


def partial(p: Polynomial, i: int) -> Polynomial:
    """Partial derivative with respect to ``x_i`` (1-based)."""
    check_index(i, p.n)
    k = i - 1
    terms: Dict[Monomial, Fraction] = {}
    for exps, c in p._terms.items():
        if exps[k]:
            lowered = exps[:k] + (exps[k] - 1,) + exps[k + 1:]
            terms[lowered] = c * exps[k]
    return Polynomial._trusted(p.n, terms)


def compose(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Substitute ``images[i-1]`` for ``x_i`` in ``p``.

    Parameters
    ----------
    p : Polynomial
    images : sequence of Polynomial
        One image per variable; all must share a variable count, which
        may differ from ``p.n`` only through the length of this list.

    Returns
    -------
    Polynomial
        Over the variables of the images.
    """
    if len(images) != p.n:
        raise DimensionMismatchError(f"need {p.n} images, got {len(images)}")
    if not images:
        raise DimensionMismatchError("no images supplied")
    target_n = check_same_n(*(img.n for img in images))

    powers: List[Dict[int, Polynomial]] = [{0: Polynomial.constant(target_n, 1)} for _ in images]

    def power(var: int, e: int) -> Polynomial:
        cache = powers[var]
        if e not in cache:
            cache[e] = mul(power(var, e - 1), images[var])
        return cache[e]

    result: Dict[Monomial, Fraction] = {}
    for exps, c in p._terms.items():
        term = Polynomial.constant(target_n, c)
        for var, e in enumerate(exps):
            if e:
                term = mul(term, power(var, e))
        for e2, c2 in term._terms.items():
            result[e2] = result.get(e2, 0) + c2
    return Polynomial._trusted(target_n, {e: c for e, c in result.items() if c})


def hmap(p: Polynomial, i: int) -> Polynomial:
    """The operator ``p -> d/dx_i (x_i p)``: scales ``x^a`` by ``a_i + 1``."""
    check_index(i, p.n)
    k = i - 1
    return Polynomial._trusted(p.n, {e: c * (e[k] + 1) for e, c in p._terms.items()})


def total_degree(p: Polynomial):
    """Maximum total degree of a term; ``NEG_INFINITY`` for the zero polynomial."""
    if not p._terms:
        return NEG_INFINITY
    return max(sum(e) for e in p._terms)


def variables(n: int) -> List[Polynomial]:
    """The identity substitution ``[x_1, ..., x_n]``."""
    return [Polynomial.variable(n, i) for i in range(1, n + 1)]


def swap_variables(p: Polynomial, i: int, j: int) -> Polynomial:
    """Exchange ``x_i`` and ``x_j`` in ``p``."""
    check_index(i, p.n)
    check_index(j, p.n)
    a, b = i - 1, j - 1
    terms = {}
    for exps, c in p._terms.items():
        swapped = list(exps)
        swapped[a], swapped[b] = swapped[b], swapped[a]
        terms[tuple(swapped)] = c
    return Polynomial._trusted(p.n, terms)


def linear_combination(pairs: Iterable[Tuple[Scalar, Polynomial]], n: int) -> Polynomial:
    """``sum c * p`` over the given pairs."""
    terms: Dict[Monomial, Fraction] = {}
    for c, p in pairs:
        if p.n != n:
            raise DimensionMismatchError(f"variable counts differ: {n} vs {p.n}")
        c = Fraction(c)
        if not c:
            continue
        for exps, v in p._terms.items():
            terms[exps] = terms.get(exps, 0) + c * v
    return Polynomial._trusted(n, {e: c for e, c in terms.items() if c})


def random_polynomial(
    n: int,
    rng,
    max_degree: int = 3,
    max_terms: int = 4,
    exclude: Sequence[int] = (),
    bound: int = 5,
) -> Polynomial:
    """Random polynomial with small integer or half-integer coefficients.

    Parameters
    ----------
    rng : numpy.random.Generator
    exclude : sequence of int
        1-based variables that must not appear.
    """
    allowed = [
        exps for exps in monomials_up_to(n, max_degree)
        if not any(exps[i - 1] for i in exclude)
    ]
    count = int(rng.integers(1, max_terms + 1))
    terms: Dict[Monomial, Fraction] = {}
    for _ in range(count):
        exps = allowed[int(rng.integers(0, len(allowed)))]
        numerator = int(rng.integers(-bound, bound + 1))
        denominator = int(rng.choice([1, 1, 1, 2]))
        terms[exps] = terms.get(exps, 0) + Fraction(numerator, denominator)
    return Polynomial(n, terms)


__all__ = [
    "Monomial",
    "Polynomial",
    "add",
    "check_monomial",
    "compose",
    "grlex_key",
    "hmap",
    "linear_combination",
    "monomials_of_degree",
    "monomials_up_to",
    "mul",
    "partial",
    "random_polynomial",
    "swap_variables",
    "total_degree",
    "unit",
    "variables",
]
