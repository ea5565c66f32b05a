"""
Degree-truncated closures of derivation spans.

Every routine here works inside the finite-dimensional space of derivations
(or polynomials) of degree at most ``cutoff``. Brackets that land above the
cutoff are discarded, so "saturated" always means saturated relative to the
cutoff: bracketing any two rows gives something above the cutoff or already
in the span.

Rounds are breadth first: each round brackets the elements added in the
previous round against everything collected so far.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence

from core.constants import ALGEBRA_DIV0
from core.errors import ZeroInputError, check_same_n
from core.linspan import (
    BasisSpec,
    PolynomialSpan,
    SpanSpace,
    combine,
    enumerate_basis,
    nullspace,
)
from core.poly import Polynomial, total_degree
from core.utils import status
from core.vecfield import (
    Derivation,
    apply,
    bracket,
    classify,
    make_H,
    make_partial,
)


@dataclass
class ClosureResult:
    """Outcome of a truncated closure run."""

    space: SpanSpace
    cutoff: int
    rounds: int
    saturated: bool
    elements: List = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, vector) -> bool:
        return self.space.contains(vector)[0]


def _within(vector, cutoff: int) -> bool:
    if isinstance(vector, Polynomial):
        degree = total_degree(vector)
    else:
        degree = vector.degree()
    return not vector.is_zero() and degree <= cutoff


def bracket_closure(
    generators: Sequence[Derivation],
    cutoff: int,
    max_rounds: Optional[int] = None,
) -> ClosureResult:
    """Lie subalgebra generated by ``generators``, truncated at ``cutoff``.

    Parameters
    ----------
    generators : sequence of Derivation
        Non-empty, all over the same variables. Generators above the cutoff
        are ignored.
    cutoff : int
        Largest coefficient degree kept.
    max_rounds : int, optional
        Stop early; the result is then reported as not saturated.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("bracket_closure needs at least one generator")
    n = check_same_n(*(g.n for g in generators))

    started = time.time()
    space = SpanSpace(n)
    elements: List[Derivation] = []
    for g in generators:
        if _within(g, cutoff) and space.add(g):
            elements.append(g)

    fresh = list(elements)
    rounds = 0
    while fresh:
        if max_rounds is not None and rounds >= max_rounds:
            break
        rounds += 1
        added: List[Derivation] = []
        for a in fresh:
            for b in list(elements):
                c = bracket(a, b)
                if _within(c, cutoff) and space.add(c):
                    elements.append(c)
                    added.append(c)
        status(f"  round {rounds}: +{len(added)} (dim {space.dim})")
        fresh = added

    status(f"✅ bracket closure: dim {space.dim} after {rounds} rounds ({time.time() - started:.2f}s)")
    return ClosureResult(space, cutoff, rounds, saturated=not fresh, elements=elements)


def _ambient(ambient: BasisSpec, cutoff: int) -> List[Derivation]:
    return [b for b in enumerate_basis(ambient) if b.degree() <= cutoff]


def ideal_closure(a: Derivation, ambient: BasisSpec, cutoff: int) -> ClosureResult:
    """Ideal generated by ``a`` inside the truncated ambient algebra.

    Raises
    ------
    ZeroInputError
        If ``a`` is zero.
    ValueError
        If ``a`` does not belong to the ambient algebra's divergence type.
    """
    if a.is_zero():
        raise ZeroInputError("the ideal of the zero derivation is zero")
    check_same_n(a.n, ambient.n)
    div_class = classify(a)
    if ambient.algebra == ALGEBRA_DIV0 and not div_class.is_zero:
        raise ValueError("generator of an ideal of div0 must be divergence-free")
    if not (div_class.is_zero or div_class.is_constant):
        raise ValueError("generator of an ideal of divc must have constant divergence")

    basis = enumerate_basis(ambient)
    space = SpanSpace(a.n)
    elements: List[Derivation] = []
    if _within(a, cutoff):
        space.add(a)
        elements.append(a)

    fresh = list(elements)
    rounds = 0
    while fresh:
        rounds += 1
        added = []
        for x in fresh:
            for b in basis:
                c = bracket(b, x)
                if _within(c, cutoff) and space.add(c):
                    elements.append(c)
                    added.append(c)
        fresh = added

    status(f"✅ ideal closure: dim {space.dim} after {rounds} rounds")
    return ClosureResult(space, cutoff, rounds, saturated=True, elements=elements)


def module_orbit(generators: Sequence[Derivation], seed: Polynomial, cutoff: int) -> ClosureResult:
    """Submodule of ``P_n / constants`` generated by ``seed``.

    Polynomials are stored without their constant term. Images above the
    cutoff are dropped.
    """
    if seed.is_constant():
        raise ZeroInputError("seed must not be constant modulo constants")
    generators = list(generators)
    check_same_n(seed.n, *(g.n for g in generators))

    space = PolynomialSpan(seed.n)
    start = seed.without_constant()
    elements: List[Polynomial] = []
    if _within(start, cutoff):
        space.add(start)
        elements.append(start)

    fresh = list(elements)
    rounds = 0
    while fresh:
        rounds += 1
        added = []
        for p in fresh:
            for g in generators:
                q = apply(g, p).without_constant()
                if _within(q, cutoff) and space.add(q):
                    elements.append(q)
                    added.append(q)
        fresh = added

    return ClosureResult(space, cutoff, rounds, saturated=True, elements=elements)


def _solve_linear(basis: List[Derivation], images: List[Dict[Hashable, Fraction]], n: int) -> SpanSpace:
    space = SpanSpace(n)
    for combo in nullspace(images):
        space.add(combine(basis, combo, n))
    return space


def centralizer(H_set: Sequence[Derivation], ambient: BasisSpec, cutoff: int) -> SpanSpace:
    """Elements of the truncated ambient algebra commuting with every ``H_set`` member."""
    basis = _ambient(ambient, cutoff)
    images = []
    for b in basis:
        row: Dict[Hashable, Fraction] = {}
        for index, h in enumerate(H_set):
            for key, c in bracket(b, h).coordinates().items():
                row[(index, key)] = c
        images.append(row)
    return _solve_linear(basis, images, ambient.n)


def normalizer(S: SpanSpace, ambient: BasisSpec, cutoff: int) -> SpanSpace:
    """Elements ``x`` of the truncated ambient algebra with ``[x, S]`` inside ``S``."""
    basis = _ambient(ambient, cutoff)
    rows = S.rows
    images = []
    for b in basis:
        row: Dict[Hashable, Fraction] = {}
        for index, s in enumerate(rows):
            rest, _ = S.reduce_row(bracket(b, s).coordinates())
            for key, c in rest.items():
                row[(index, key)] = c
        images.append(row)
    return _solve_linear(basis, images, ambient.n)


def derived_subalgebra(ambient: BasisSpec, cutoff: int) -> SpanSpace:
    """Span of the pairwise brackets of the truncated basis, up to ``cutoff``."""
    basis = _ambient(ambient, cutoff)
    space = SpanSpace(ambient.n)
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            c = bracket(a, b)
            if _within(c, cutoff):
                space.add(c)
    return space


def div0_generators(n: int) -> List[Derivation]:
    """``d_1``, ``x_k^2 d_1`` and ``x_1^2 d_k`` for ``k = 2..n``."""
    gens = [make_partial(n, 1)]
    for k in range(2, n + 1):
        exps = [0] * n
        exps[k - 1] = 2
        gens.append(Derivation.term(n, exps, 1))
    for k in range(2, n + 1):
        exps = [0] * n
        exps[0] = 2
        gens.append(Derivation.term(n, exps, k))
    return gens


def divc_generators(n: int) -> List[Derivation]:
    """The divergence-free generators plus ``H_1``."""
    return div0_generators(n) + [make_H(n, 1)]


__all__ = [
    "ClosureResult",
    "bracket_closure",
    "centralizer",
    "derived_subalgebra",
    "div0_generators",
    "divc_generators",
    "ideal_closure",
    "module_orbit",
    "normalizer",
]
