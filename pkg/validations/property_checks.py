"""
Seeded randomized property checks.

Every routine draws its inputs from a ``numpy.random.Generator`` and
returns ``CheckResult`` objects; a failing trial keeps its inputs as the
witness so the counterexample can be replayed exactly.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional

from core.autos import (
    Automorphism,
    chain_rule_holds,
    check_div_equivariance,
    check_h_shift,
    check_partials_dual,
    conjugate,
    jacobian_det,
    jacobian_route_conjugate,
    random_tame,
)
from core.codec import automorphism_to_json, format_derivation, format_polynomial
from core.linspan import BasisSpec, enumerate_basis
from core.poly import compose, random_polynomial, variables
from core.vecfield import (
    Derivation,
    WeightClass,
    adjoint_eigenvalue_holds,
    apply,
    bracket,
    classify,
    decompose_weights,
    divergence,
    random_derivation,
    weight_of,
)
from validations.base_validation import CheckResult


class _Tally:
    """Counts trials for one named property and keeps the first failure."""

    def __init__(self, name: str):
        self.name = name
        self.trials = 0
        self.failed = 0
        self.witness = None

    def record(self, ok: bool, witness: Callable[[], Dict]) -> None:
        self.trials += 1
        if not ok:
            self.failed += 1
            if self.witness is None:
                self.witness = witness()

    def result(self) -> CheckResult:
        detail = f"{self.trials - self.failed}/{self.trials} trials"
        return CheckResult(self.name, self.failed == 0, self.witness, detail)


def _pick_n(n: int, rng) -> int:
    return int(rng.integers(1, n + 1))


def bracket_oracle(n: int, trials: int, rng, max_degree: int = 4) -> List[CheckResult]:
    """Coefficient bracket vs. commutator of operators on a random polynomial."""
    tally = _Tally("bracket-oracle")
    for _ in range(trials):
        m = _pick_n(n, rng)
        d = random_derivation(m, rng, max_degree=max_degree)
        e = random_derivation(m, rng, max_degree=max_degree)
        p = random_polynomial(m, rng, max_degree=max_degree)
        lhs = apply(bracket(d, e), p)
        rhs = apply(d, apply(e, p)) - apply(e, apply(d, p))
        tally.record(lhs == rhs, lambda: {
            "d": format_derivation(d), "e": format_derivation(e), "p": format_polynomial(p),
        })
    return [tally.result()]


def jacobi_identity(n: int, trials: int, rng, max_degree: int = 3) -> List[CheckResult]:
    tally = _Tally("jacobi")
    for _ in range(trials):
        m = _pick_n(n, rng)
        a, b, c = (random_derivation(m, rng, max_degree=max_degree) for _ in range(3))
        total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        tally.record(total.is_zero(), lambda: {
            "a": format_derivation(a), "b": format_derivation(b), "c": format_derivation(c),
        })
    return [tally.result()]


def divergence_rules(n: int, trials: int, rng, max_degree: int = 4) -> List[CheckResult]:
    """Product rule ``div(a d) = a div(d) + d(a)`` and bracket rule for the divergence."""
    product = _Tally("divergence-product-rule")
    commutator = _Tally("divergence-bracket-rule")
    for _ in range(trials):
        m = _pick_n(n, rng)
        a = random_polynomial(m, rng, max_degree=max_degree)
        d = random_derivation(m, rng, max_degree=max_degree)
        e = random_derivation(m, rng, max_degree=max_degree)
        lhs = divergence(d * a)
        rhs = a * divergence(d) + apply(d, a)
        product.record(lhs == rhs, lambda: {"a": format_polynomial(a), "d": format_derivation(d)})

        lhs = divergence(bracket(d, e))
        rhs = apply(d, divergence(e)) - apply(e, divergence(d))
        commutator.record(lhs == rhs, lambda: {"d": format_derivation(d), "e": format_derivation(e)})
    return [product.result(), commutator.result()]


def automorphism_properties(
    n: int,
    trials: int,
    rng,
    max_degree: int = 3,
    max_length: int = 4,
    max_image_degree: int = 4,
) -> List[CheckResult]:
    """Equivariance of the divergence and the Jacobian calculus on random tame words."""
    names = [
        "inverse-images",
        "div-equivariance",
        "divclass-preserved",
        "dual-route-conjugation",
        "lie-homomorphism",
        "chain-rule",
        "jacobian-constant",
        "partials-dual",
        "euler-shift-divergence-free",
    ]
    tallies = {name: _Tally(name) for name in names}

    for _ in range(trials):
        m = _pick_n(n, rng)
        sigma = random_tame(m, rng, max_length=max_length, max_degree=max_degree,
                            max_image_degree=max_image_degree)
        tau = random_tame(m, rng, max_length=2, max_degree=2, max_image_degree=2)
        d = random_derivation(m, rng, max_degree=max_degree)
        e = random_derivation(m, rng, max_degree=2, max_terms=2)

        def witness(extra: Optional[Dict] = None, sigma: Automorphism = sigma, d: Derivation = d) -> Dict:
            doc = {"sigma": automorphism_to_json(sigma), "d": format_derivation(d)}
            doc.update(extra or {})
            return doc

        forward, inverse = sigma.forward_images(), sigma.inverse_images()
        identity_list = variables(m)
        round_trip = [compose(p, inverse) for p in forward] == identity_list and \
            [compose(p, forward) for p in inverse] == identity_list
        tallies["inverse-images"].record(round_trip, witness)

        tallies["div-equivariance"].record(check_div_equivariance(sigma, d), witness)

        image = conjugate(sigma, d)
        before, after = classify(d), classify(image)
        same_class = before.tag == after.tag and before.value == after.value
        tallies["divclass-preserved"].record(same_class, witness)

        tallies["dual-route-conjugation"].record(
            image == jacobian_route_conjugate(sigma, d), witness
        )

        hom = conjugate(sigma, bracket(d, e)) == bracket(image, conjugate(sigma, e))
        tallies["lie-homomorphism"].record(hom, lambda: witness({"e": format_derivation(e)}))

        tallies["chain-rule"].record(
            chain_rule_holds(sigma, tau), lambda: witness({"tau": automorphism_to_json(tau)})
        )

        det = jacobian_det(sigma)
        tallies["jacobian-constant"].record(
            det.is_constant() and not det.is_zero(),
            lambda: witness({"det": format_polynomial(det)}),
        )

        tallies["partials-dual"].record(check_partials_dual(sigma), witness)
        tallies["euler-shift-divergence-free"].record(
            all(check_h_shift(sigma, i) for i in range(1, m + 1)), witness
        )

    return [tallies[name].result() for name in names]


def weight_properties(n: int, trials: int, rng, max_degree: int = 4) -> List[CheckResult]:
    """Weight decomposition: reconstruction, adjoint eigenvalues, basis weights."""
    rebuild = _Tally("weights-reconstruct")
    eigen = _Tally("weights-adjoint-eigenvalue")
    for _ in range(trials):
        d = random_derivation(n, rng, max_degree=max_degree)
        parts = decompose_weights(d)
        total = Derivation.zero(n)
        for part in parts.values():
            total = total + part
        rebuild.record(total == d, lambda: {"d": format_derivation(d)})
        ok = all(
            weight_of(part) == weight and adjoint_eigenvalue_holds(part, weight)
            for weight, part in parts.items()
        )
        eigen.record(ok, lambda: {"d": format_derivation(d)})

    basis_weights = _Tally("weights-of-basis")
    for element in enumerate_basis(BasisSpec(n, max_degree)):
        weight = weight_of(element)
        expected = _expected_basis_weight(element)
        basis_weights.record(
            weight == expected and min(weight.rep) == 0 and adjoint_eigenvalue_holds(element, weight),
            lambda: {"element": format_derivation(element), "weight": list(weight.rep)},
        )
    return [rebuild.result(), eigen.result(), basis_weights.result()]


def _expected_basis_weight(element: Derivation) -> WeightClass:
    # x^b d_j with b_j = 0 has weight b - e_j; theta_i^a has weight a and its
    # x^(a + e_i) d_i term never cancels.
    exps, j, _ = next(element.terms())
    return WeightClass.of([e - (1 if k == j else 0) for k, e in enumerate(exps, start=1)])


__all__ = [
    "automorphism_properties",
    "bracket_oracle",
    "divergence_rules",
    "jacobi_identity",
    "weight_properties",
]
