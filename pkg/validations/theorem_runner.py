"""
Theorem verification runner.

``verify_theorem`` dispatches a verification tag to the truncated checks in
``core`` and ``validations`` and collects a ``VerificationReport``.
``run_suite_from_yaml`` runs every entry of a YAML suite, optionally
through the on-disk report cache.

Coverage claims are phrased with one degree of headroom: the closure is
computed at ``cutoff`` and compared against the basis at ``cutoff - 1``.
"""

from __future__ import annotations

import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

from core import config
from core.closure import (
    bracket_closure,
    centralizer,
    derived_subalgebra,
    div0_generators,
    divc_generators,
    ideal_closure,
    module_orbit,
    normalizer,
)
from core.codec import format_derivation, format_polynomial
from core.constants import ALGEBRA_DIV0, ALGEBRA_DIVC
from core.errors import UnknownTheoremError
from core.linspan import (
    BasisSpec,
    SpanSpace,
    cartan_basis,
    divkernel_oracle,
    enumerate_basis,
    reduce,
)
from core.poly import Polynomial, monomials_up_to
from core.report_cache import get_cached_report, save_cached_report
from core.utils import make_rng, random_rational, status
from core.vecfield import Derivation, bracket, classify, make_H, make_Hdiff, make_partial
from validations.base_validation import BaseVerificationSuite, VerificationReport
from validations.identity_checks import run_identity_suite
from validations.property_checks import (
    automorphism_properties,
    bracket_oracle,
    divergence_rules,
    jacobi_identity,
    weight_properties,
)

# Tags whose outcome depends on the seed (and, except simplicity, the trial count)
RANDOMIZED_TAGS = {"simplicity", "equivariance", "bracket-oracle", "divergence", "weights"}
TRIAL_TAGS = RANDOMIZED_TAGS - {"simplicity"}

# (minimum n, minimum cutoff) per tag
_LIMITS = {
    "gen-div0": (1, 1),
    "gen-divc": (1, 1),
    "minimality": (1, 2),
    "derived": (1, 1),
    "cartan": (2, 1),
    "module-simple": (1, 1),
}

_WITNESS_LIMIT = 5


def _texts(elements) -> List[str]:
    out = []
    for e in elements[:_WITNESS_LIMIT]:
        out.append(format_polynomial(e) if isinstance(e, Polynomial) else format_derivation(e))
    return out


def _missing(space: SpanSpace, targets) -> List:
    return [t for t in targets if not space.contains(t)[0]]


def _compare(report: VerificationReport, check: str, actual: SpanSpace, expected: SpanSpace) -> None:
    """Record whether two spans are equal, with the offending rows as witness."""
    extra = _missing(expected, actual.rows)
    lacking = _missing(actual, expected.rows)
    report.add(
        check,
        not extra and not lacking,
        {"unexpected": _texts(extra), "missing": _texts(lacking)},
        f"dim {actual.dim} vs expected {expected.dim}",
    )


# ----------------------------------------------------------------------
# Per-tag checks
# ----------------------------------------------------------------------
def _basis_lemma(report: VerificationReport, n: int, cutoff: int, **_) -> None:
    for d in range(cutoff + 1):
        basis = enumerate_basis(BasisSpec(n, d))
        space = reduce(basis, n)
        oracle = divkernel_oracle(n, d)
        report.add(
            f"independent[D={d}]",
            space.dim == len(basis),
            {"listed": len(basis), "rank": space.dim},
        )
        _compare(report, f"matches-divergence-kernel[D={d}]", space, oracle)
        report.add(
            f"divergence-free[D={d}]",
            all(classify(b).is_zero for b in basis),
            {"nonzero": _texts([b for b in basis if not classify(b).is_zero])},
        )
        divc = enumerate_basis(BasisSpec(n, d, ALGEBRA_DIVC))
        divc_space = reduce(divc, n)
        report.add(
            f"divc-adds-one[D={d}]",
            divc_space.dim == space.dim + 1 and classify(divc[-1]).is_constant,
            {"div0": space.dim, "divc": divc_space.dim},
        )

    if n == 2:
        for d, expected in ((1, 5), (2, 9)):
            if d <= cutoff:
                dim = len(enumerate_basis(BasisSpec(2, d)))
                report.add(f"dimension[n=2,D={d}]", dim == expected, {"dim": dim, "expected": expected},
                           f"dim {dim}")


def _generation(report: VerificationReport, n: int, cutoff: int, algebra: str) -> None:
    gens = div0_generators(n) if algebra == ALGEBRA_DIV0 else divc_generators(n)
    started = time.time()
    result = bracket_closure(gens, cutoff)
    status(f"  closure n={n} D={cutoff}: dim {result.dim} ({time.time() - started:.2f}s)")

    target = enumerate_basis(BasisSpec(n, cutoff - 1, algebra))
    missing = _missing(result.space, target)
    report.add(
        f"contains-basis[D={cutoff - 1}]",
        not missing,
        {"missing": _texts(missing)},
        f"closure dim {result.dim}, target {len(target)}",
    )
    report.add("saturated", result.saturated, {"rounds": result.rounds})
    allowed = (lambda c: c.is_zero) if algebra == ALGEBRA_DIV0 else (lambda c: c.is_zero or c.is_constant)
    outside = [r for r in result.space.rows if not allowed(classify(r))]
    report.add("closure-divergence-type", not outside, {"elements": _texts(outside)})


def _gen_div0(report: VerificationReport, n: int, cutoff: int, **_) -> None:
    _generation(report, n, cutoff, ALGEBRA_DIV0)


def _gen_divc(report: VerificationReport, n: int, cutoff: int, **_) -> None:
    _generation(report, n, cutoff, ALGEBRA_DIVC)


def _minimality(report: VerificationReport, n: int, cutoff: int, **_) -> None:
    gens = div0_generators(n)
    for index, dropped in enumerate(gens):
        rest = gens[:index] + gens[index + 1:]
        if rest:
            lost = not bracket_closure(rest, cutoff).contains(dropped)
        else:
            lost = True
        report.add(
            f"drop {format_derivation(dropped)}",
            lost,
            {"dropped": format_derivation(dropped), "generators": _texts(rest)},
        )


def _simplicity(report: VerificationReport, n: int, cutoff: int, seed: int, **_) -> None:
    """Every sampled ideal holds the partials, and with them the basis up to ``cutoff - 1``."""
    spec = BasisSpec(n, cutoff)
    basis = enumerate_basis(spec)
    samples = [b for b in basis if b.degree() <= 2]
    rng = make_rng(seed)
    for _ in range(config.SIMPLICITY_SAMPLES):
        element = Derivation.zero(n)
        for b in basis:
            element = element + b * random_rational(rng)
        if not element.is_zero():
            samples.append(element)

    partials = [make_partial(n, i) for i in range(1, n + 1)]
    lower = enumerate_basis(BasisSpec(n, cutoff - 1)) if cutoff >= 1 else []
    failures = []
    short = []
    for a in samples:
        ideal = ideal_closure(a, spec, cutoff)
        if _missing(ideal.space, partials):
            failures.append(a)
        elif _missing(ideal.space, lower):
            short.append(a)
    report.add(
        "ideal-contains-partials",
        not failures,
        {"generators": _texts(failures)},
        f"{len(samples) - len(failures)}/{len(samples)} samples",
    )
    if cutoff >= 1:
        report.add(
            f"ideal-contains-basis[D={cutoff - 1}]",
            not failures and not short,
            {"generators": _texts(failures + short)},
            f"{len(samples) - len(failures) - len(short)}/{len(samples)} samples",
        )


def _derived(report: VerificationReport, n: int, cutoff: int, **_) -> None:
    derived = derived_subalgebra(BasisSpec(n, cutoff, ALGEBRA_DIVC), cutoff)
    target = enumerate_basis(BasisSpec(n, cutoff - 1))
    missing = _missing(derived, target)
    report.add(f"contains-div0-basis[D={cutoff - 1}]", not missing, {"missing": _texts(missing)},
               f"derived dim {derived.dim}")
    nonzero = [r for r in derived.rows if not classify(r).is_zero]
    report.add("brackets-divergence-free", not nonzero, {"elements": _texts(nonzero)})
    if n == 1:
        abelian = derived_subalgebra(BasisSpec(1, cutoff), cutoff)
        report.add("div0-abelian[n=1]", abelian.dim == 0, {"elements": _texts(abelian.rows)})


def _cartan(report: VerificationReport, n: int, cutoff: int, **_) -> None:
    div0 = BasisSpec(n, cutoff)
    divc = BasisSpec(n, cutoff, ALGEBRA_DIVC)
    partials = [make_partial(n, i) for i in range(1, n + 1)]
    _compare(report, "centralizer-of-partials", centralizer(partials, div0, cutoff), reduce(partials, n))

    cartan = reduce(cartan_basis(n, cutoff), n)
    h_prime = [make_Hdiff(n, i, i + 1) for i in range(1, n)]
    _compare(report, "centralizer-of-traceless-euler", centralizer(h_prime, div0, cutoff), cartan)

    rows = cartan.rows
    noncommuting = [
        (format_derivation(a), format_derivation(b))
        for k, a in enumerate(rows) for b in rows[k + 1:]
        if not bracket(a, b).is_zero()
    ]
    report.add("cartan-abelian", not noncommuting, {"pairs": noncommuting[:_WITNESS_LIMIT]})
    _compare(report, "cartan-self-normalizing", normalizer(cartan, div0, cutoff), cartan)

    euler = [make_H(n, i) for i in range(1, n + 1)]
    extended = cartan.copy()
    extended.extend(euler)
    _compare(report, "normalizer-in-divc", normalizer(cartan, divc, cutoff), extended)
    _compare(report, "euler-self-centralizing", centralizer(euler, divc, cutoff), reduce(euler, n))


def _module_simple(report: VerificationReport, n: int, cutoff: int, **_) -> None:
    if n >= 2:
        orbit = module_orbit(enumerate_basis(BasisSpec(n, cutoff)), Polynomial.variable(n, 1), cutoff)
        monomials = [Polynomial.monomial(n, e) for e in monomials_up_to(n, cutoff) if sum(e) > 0]
        missing = _missing(orbit.space, monomials)
        report.add("orbit-reaches-all-monomials", not missing, {"missing": _texts(missing)},
                   f"orbit dim {orbit.dim}")

    depth = max(cutoff, 2)
    orbit = module_orbit(enumerate_basis(BasisSpec(1, depth)), Polynomial.variable(1, 1), depth)
    report.add(
        "n1-orbit-proper",
        orbit.dim < depth,
        {"orbit": _texts(orbit.elements)},
        f"orbit dim {orbit.dim} of {depth}",
    )


def _identities(report: VerificationReport, n: int, cutoff: int, **_) -> None:
    report.extend(run_identity_suite(n, cutoff))


def _equivariance(report: VerificationReport, n: int, cutoff: int, trials: int, seed: int) -> None:
    report.extend(automorphism_properties(n, trials, make_rng(seed), max_degree=max(cutoff, 1)))


def _bracket_oracle(report: VerificationReport, n: int, cutoff: int, trials: int, seed: int) -> None:
    rng = make_rng(seed)
    report.extend(bracket_oracle(n, trials, rng, max_degree=cutoff))
    report.extend(jacobi_identity(n, max(trials // 10, 1), rng, max_degree=min(cutoff, 3)))


def _divergence(report: VerificationReport, n: int, cutoff: int, trials: int, seed: int) -> None:
    report.extend(divergence_rules(n, trials, make_rng(seed), max_degree=cutoff))


def _weights(report: VerificationReport, n: int, cutoff: int, trials: int, seed: int) -> None:
    report.extend(weight_properties(n, trials, make_rng(seed), max_degree=cutoff))


THEOREM_RUNNERS: Dict[str, Callable[..., None]] = {
    "basis-lemma": _basis_lemma,
    "gen-div0": _gen_div0,
    "gen-divc": _gen_divc,
    "minimality": _minimality,
    "simplicity": _simplicity,
    "derived": _derived,
    "cartan": _cartan,
    "equivariance": _equivariance,
    "module-simple": _module_simple,
    "identities": _identities,
    "bracket-oracle": _bracket_oracle,
    "divergence": _divergence,
    "weights": _weights,
}


# ----------------------------------------------------------------------
# Entry points
# ----------------------------------------------------------------------
def verify_theorem(
    name: str,
    n: int,
    cutoff: int,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    """
    Run every sub-check registered for a verification tag.

    Args:
        name: One of ``THEOREM_RUNNERS``
        n: Number of variables
        cutoff: Truncation degree ``D``
        trials: Trial count for randomized tags (default ``DIVLIE_RANDOM_TRIALS``)
        seed: Seed for randomized tags (default ``DIVLIE_DEFAULT_SEED``)

    Returns:
        VerificationReport; ``seed``/``trials`` are recorded only for tags
        that use them, so reports stay byte-identical across runs.

    Raises:
        UnknownTheoremError: unsupported tag
        ValueError: ``n`` or ``cutoff`` outside the tag's range
    """
    runner = THEOREM_RUNNERS.get(name)
    if runner is None:
        raise UnknownTheoremError(
            f"unknown theorem tag '{name}'. Valid tags: " + ", ".join(THEOREM_RUNNERS)
        )
    BasisSpec(n, cutoff)
    min_n, min_cutoff = _LIMITS.get(name, (1, 0))
    if n < min_n or cutoff < min_cutoff:
        raise ValueError(f"{name} needs n >= {min_n} and cutoff >= {min_cutoff}, got n={n}, cutoff={cutoff}")

    seed = config.DEFAULT_SEED if seed is None else seed
    trials = config.RANDOM_TRIALS if trials is None else trials
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")

    report = VerificationReport(
        name,
        n,
        cutoff,
        seed=seed if name in RANDOMIZED_TAGS else None,
        trials=trials if name in TRIAL_TAGS else None,
    )
    status(f"▶ Verifying {name} (n={n}, cutoff={cutoff})")
    started = time.time()
    runner(report, n=n, cutoff=cutoff, trials=trials, seed=seed)
    marker = "✅" if report.passed else "❌"
    status(f"{marker} {name}: {report.status} ({len(report.checks)} checks, {time.time() - started:.2f}s)")
    return report


def run_suite_from_yaml(
    yaml_path: Union[str, Path],
    seed: Optional[int] = None,
    use_cache: bool = False,
) -> List[VerificationReport]:
    """
    Run every check of a YAML suite in file order.

    Seed precedence: the check's own ``seed``, then ``seed``, then the
    suite's ``metadata.seed``, then ``DIVLIE_DEFAULT_SEED``.

    Raises:
        SuiteConfigError: the file fails schema validation
    """
    suite = BaseVerificationSuite.from_yaml(Path(yaml_path))
    status(f"▶ Suite: {suite.suite_name} ({len(suite.checks)} checks)")

    default_seed = seed if seed is not None else suite.seed
    if default_seed is None:
        default_seed = config.DEFAULT_SEED

    reports: List[VerificationReport] = []
    for check in suite.checks:
        name, n, cutoff = check["theorem"], check["n"], check["cutoff"]
        check_seed = check.get("seed", default_seed)
        trials = check.get("trials")
        cache_trials = (trials or config.RANDOM_TRIALS) if name in TRIAL_TAGS else None

        if use_cache:
            cached = get_cached_report(name, n, cutoff, check_seed, cache_trials)
            if cached is not None:
                reports.append(VerificationReport.from_dict(cached))
                continue

        report = verify_theorem(name, n, cutoff, trials=trials, seed=check_seed)
        if use_cache:
            save_cached_report(report.to_dict(), check_seed, cache_trials)
        reports.append(report)

    passed = sum(r.passed for r in reports)
    status(f"{'✅' if passed == len(reports) else '⚠️'} {passed}/{len(reports)} checks passed")
    return reports


__all__ = [
    "RANDOMIZED_TAGS",
    "THEOREM_RUNNERS",
    "run_suite_from_yaml",
    "verify_theorem",
]
