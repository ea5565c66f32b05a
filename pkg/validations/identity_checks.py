"""
Exhaustive checks of the closed-form bracket identities.

Each check walks every exponent vector of total degree ``<= max_degree``
(and every admissible index) over ``n`` variables, computes the bracket
with ``core.vecfield.bracket`` and compares it to the closed form. The
first mismatch is returned as the witness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from core.codec import format_derivation
from core.poly import Polynomial, monomials_up_to
from core.utils import status
from core.vecfield import (
    Derivation,
    bracket,
    classify,
    make_H,
    make_Hdiff,
    make_partial,
    phi,
    swap,
    theta,
    theta_ij,
)
from validations.base_validation import CheckResult


def _shift(exps: Sequence[int], *changes) -> Optional[tuple]:
    """``exps`` plus ``(index, delta)`` changes (1-based), or None if negative."""
    out = list(exps)
    for index, delta in changes:
        out[index - 1] += delta
    if min(out) < 0:
        return None
    return tuple(out)


def _field(n: int, exps: Optional[tuple], j: int, coeff=1) -> Derivation:
    """``coeff * x^exps d_j``; zero when the coefficient vanishes."""
    if not coeff:
        return Derivation.zero(n)
    if exps is None:
        raise ArithmeticError("negative exponent with nonzero coefficient")
    return Derivation.term(n, exps, j, coeff)


def _diag(n: int, exps: Optional[tuple], weights: Sequence) -> Derivation:
    """``x^exps * sum weights[k] H_k``."""
    if exps is None or not any(weights):
        return Derivation.zero(n)
    total = Derivation.zero(n)
    for k, w in enumerate(weights, start=1):
        if w:
            total = total + make_H(n, k) * Fraction(w)
    return total * Polynomial.monomial(n, exps)


def _unit_weights(n: int, k: int) -> List[int]:
    return [1 if i == k else 0 for i in range(1, n + 1)]


def _pair(weights: Sequence, exps: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, exps))


def _mismatch(name: str, lhs: Derivation, rhs: Derivation, **inputs) -> CheckResult:
    witness = {key: list(v) if isinstance(v, tuple) else v for key, v in inputs.items()}
    witness["computed"] = format_derivation(lhs)
    witness["expected"] = format_derivation(rhs)
    return CheckResult(name, False, witness)


# ----------------------------------------------------------------------
# Brackets of monomial fields
# ----------------------------------------------------------------------
def check_monomial_bracket(n: int, max_degree: int) -> CheckResult:
    """``[x^a d_i, x^b d_j] = b_i x^(a+b-e_i) d_j - a_j x^(a+b-e_j) d_i``."""
    name = "monomial-bracket"
    monos = monomials_up_to(n, max_degree)
    for a in monos:
        for i in range(1, n + 1):
            left = Derivation.term(n, a, i)
            for b in monos:
                total = tuple(x + y for x, y in zip(a, b))
                for j in range(1, n + 1):
                    lhs = bracket(left, Derivation.term(n, b, j))
                    rhs = _field(n, _shift(total, (i, -1)), j, b[i - 1]) - _field(
                        n, _shift(total, (j, -1)), i, a[j - 1]
                    )
                    if lhs != rhs:
                        return _mismatch(name, lhs, rhs, a=a, i=i, b=b, j=j)
    return CheckResult(name, True)


def check_euler_bracket(n: int, max_degree: int) -> CheckResult:
    """``[H_j, x^a d_i]`` is ``a_j x^a d_i`` for ``j != i`` and ``(a_i - 1) x^a d_i`` otherwise."""
    name = "euler-bracket"
    for a in monomials_up_to(n, max_degree):
        for i in range(1, n + 1):
            field = Derivation.term(n, a, i)
            for j in range(1, n + 1):
                factor = a[j - 1] - (1 if j == i else 0)
                lhs = bracket(make_H(n, j), field)
                rhs = field * factor
                if lhs != rhs:
                    return _mismatch(name, lhs, rhs, a=a, i=i, j=j)
    return CheckResult(name, True)


def check_partial_bracket(n: int, max_degree: int) -> CheckResult:
    """``[d_j, x^a d_i] = a_j x^(a-e_j) d_i``."""
    name = "partial-bracket"
    for a in monomials_up_to(n, max_degree):
        for i in range(1, n + 1):
            field = Derivation.term(n, a, i)
            for j in range(1, n + 1):
                lhs = bracket(make_partial(n, j), field)
                rhs = _field(n, _shift(a, (j, -1)), i, a[j - 1])
                if lhs != rhs:
                    return _mismatch(name, lhs, rhs, a=a, i=i, j=j)
    return CheckResult(name, True)


def check_free_bracket(n: int, max_degree: int) -> CheckResult:
    """Four-case bracket of ``x^a d_i`` (``a_i = 0``) with ``x^b d_j`` (``b_j = 0``)."""
    name = "free-bracket"
    monos = monomials_up_to(n, max_degree)
    for i in range(1, n + 1):
        for a in monos:
            if a[i - 1]:
                continue
            left = Derivation.term(n, a, i)
            for j in range(1, n + 1):
                for b in monos:
                    if b[j - 1]:
                        continue
                    total = tuple(x + y for x, y in zip(a, b))
                    lhs = bracket(left, Derivation.term(n, b, j))
                    if b[i - 1] and a[j - 1]:
                        rhs = phi(n, j, i, Polynomial.monomial(n, _shift(total, (i, -1), (j, -1))))
                    elif b[i - 1]:
                        rhs = _field(n, _shift(total, (i, -1)), j, b[i - 1])
                    elif a[j - 1]:
                        rhs = -_field(n, _shift(total, (j, -1)), i, a[j - 1])
                    else:
                        rhs = Derivation.zero(n)
                    if lhs != rhs:
                        return _mismatch(name, lhs, rhs, a=a, i=i, b=b, j=j)
    return CheckResult(name, True)


def check_diagonal_bracket(n: int, max_degree: int) -> CheckResult:
    """``[x^a H, x^c H'] = x^(a+c) ((H, c) H' - (H', a) H)`` for ``H, H'`` among the ``H_k``."""
    name = "diagonal-bracket"
    monos = monomials_up_to(n, max_degree)
    for a in monos:
        for s in range(1, n + 1):
            ws = _unit_weights(n, s)
            left = _diag(n, a, ws)
            for c in monos:
                total = tuple(x + y for x, y in zip(a, c))
                for t in range(1, n + 1):
                    wt = _unit_weights(n, t)
                    lhs = bracket(left, _diag(n, c, wt))
                    rhs = _diag(n, total, [_pair(ws, c) * y - _pair(wt, a) * x for x, y in zip(ws, wt)])
                    if lhs != rhs:
                        return _mismatch(name, lhs, rhs, a=a, s=s, c=c, t=t)
    return CheckResult(name, True)


def check_mixed_bracket(n: int, max_degree: int) -> CheckResult:
    """``[x^b d_i, x^a H] = a_i x^(a+b-e_i) H - (H, b - e_i) x^(a+b) d_i``.

    When ``a_i >= 1`` the right side is also checked in the rewritten form
    ``x^(a+b-e_i) (a_i H - (H, b - e_i) H_i)``.
    """
    name = "mixed-bracket"
    monos = monomials_up_to(n, max_degree)
    for b in monos:
        for i in range(1, n + 1):
            left = Derivation.term(n, b, i)
            grading = tuple(x - (1 if k == i else 0) for k, x in enumerate(b, start=1))
            for a in monos:
                total = tuple(x + y for x, y in zip(a, b))
                lowered = _shift(total, (i, -1))
                for k in range(1, n + 1):
                    w = _unit_weights(n, k)
                    lhs = bracket(left, _diag(n, a, w))
                    pairing = _pair(w, grading)
                    rhs = _diag(n, lowered, [a[i - 1] * x for x in w]) - _field(n, total, i, pairing)
                    if lhs != rhs:
                        return _mismatch(name, lhs, rhs, b=b, i=i, a=a, k=k)
                    if a[i - 1]:
                        weights = [a[i - 1] * x for x in w]
                        weights[i - 1] -= pairing
                        alt = _diag(n, lowered, weights)
                        if lhs != alt:
                            return _mismatch(name, lhs, alt, b=b, i=i, a=a, k=k, form="rewritten")
    return CheckResult(name, True)


# ----------------------------------------------------------------------
# phi and theta
# ----------------------------------------------------------------------
def check_phi_divergence(n: int, max_degree: int) -> CheckResult:
    """Every ``phi_ij(x^a)`` and ``theta_i^a`` is divergence-free."""
    name = "phi-divergence"
    for a in monomials_up_to(n, max_degree):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                d = theta_ij(n, i, j, a)
                if not classify(d).is_zero:
                    return CheckResult(name, False, {"a": list(a), "i": i, "j": j, "field": format_derivation(d)})
    return CheckResult(name, True)


def _theta_indices(n: int):
    return range(1, n)


def check_theta_lowering(n: int, max_degree: int, max_power: int = 3) -> CheckResult:
    """``[x_{i+1}^p d_i, theta_i^a] = (a_i + 1) theta_i^(a - e_i + p e_{i+1})`` for ``a_i >= 1``."""
    name = "theta-lowering"
    for i in _theta_indices(n):
        for a in monomials_up_to(n, max_degree):
            if a[i - 1] < 1:
                continue
            for p in range(0, max_power + 1):
                exps = [0] * n
                exps[i] = p
                lhs = bracket(Derivation.term(n, exps, i), theta(n, i, a))
                rhs = theta(n, i, _shift(a, (i, -1), (i + 1, p))) * (a[i - 1] + 1)
                if lhs != rhs:
                    return _mismatch(name, lhs, rhs, a=a, i=i, p=p)
    return CheckResult(name, True)


def check_theta_raising(n: int, max_degree: int, max_power: int = 3) -> CheckResult:
    """``[x_i^p d_{i+1}, theta_i^a] = (a_{i+1} + 1) theta_i^(a + p e_i - e_{i+1})`` for ``a_{i+1} >= 1``."""
    name = "theta-raising"
    for i in _theta_indices(n):
        for a in monomials_up_to(n, max_degree):
            if a[i] < 1:
                continue
            for p in range(0, max_power + 1):
                exps = [0] * n
                exps[i - 1] = p
                lhs = bracket(Derivation.term(n, exps, i + 1), theta(n, i, a))
                rhs = theta(n, i, _shift(a, (i, p), (i + 1, -1))) * (a[i] + 1)
                if lhs != rhs:
                    return _mismatch(name, lhs, rhs, a=a, i=i, p=p)
    return CheckResult(name, True)


def check_theta_seeds(n: int, max_degree: int = 0) -> CheckResult:
    """``[x_i^2 d_{i+1}, x_{i+1} d_i] = theta_i^(e_i)`` and ``[x_{i+1}^2 d_i, x_i d_{i+1}] = -theta_i^(e_{i+1})``."""
    name = "theta-seeds"
    for i in _theta_indices(n):
        sq_i = _shift((0,) * n, (i, 2))
        sq_next = _shift((0,) * n, (i + 1, 2))
        e_i = _shift((0,) * n, (i, 1))
        e_next = _shift((0,) * n, (i + 1, 1))
        lhs = bracket(Derivation.term(n, sq_i, i + 1), Derivation.term(n, e_next, i))
        rhs = theta(n, i, e_i)
        if lhs != rhs:
            return _mismatch(name, lhs, rhs, i=i, case="lower")
        lhs = bracket(Derivation.term(n, sq_next, i), Derivation.term(n, e_i, i + 1))
        rhs = -theta(n, i, e_next)
        if lhs != rhs:
            return _mismatch(name, lhs, rhs, i=i, case="upper")
    return CheckResult(name, True)


def check_theta_partials(n: int, max_degree: int) -> CheckResult:
    """Four-case formula for ``[d_j, theta_i^a]``."""
    name = "theta-partials"
    for i in _theta_indices(n):
        for a in monomials_up_to(n, max_degree):
            t = theta(n, i, a)
            for j in range(1, n + 1):
                lhs = bracket(make_partial(n, j), t)
                aj = a[j - 1]
                if j in (i, i + 1) and aj >= 1:
                    rhs = theta(n, i, _shift(a, (j, -1))) * (aj + 1)
                elif j == i:
                    rhs = Derivation.term(n, a, i, a[i] + 1)
                elif j == i + 1:
                    rhs = Derivation.term(n, a, i + 1, -(a[i - 1] + 1))
                elif aj:
                    rhs = theta(n, i, _shift(a, (j, -1))) * aj
                else:
                    rhs = Derivation.zero(n)
                if lhs != rhs:
                    return _mismatch(name, lhs, rhs, a=a, i=i, j=j)
    return CheckResult(name, True)


def check_theta_swap(n: int, max_degree: int) -> CheckResult:
    """Exchanging ``x_i, x_{i+1}`` sends ``theta_i^a`` to ``-theta_i^(s a)``."""
    name = "theta-swap"
    for i in _theta_indices(n):
        for a in monomials_up_to(n, max_degree):
            swapped = list(a)
            swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
            lhs = swap(theta(n, i, a), i)
            rhs = -theta(n, i, swapped)
            if lhs != rhs:
                return _mismatch(name, lhs, rhs, a=a, i=i)
    return CheckResult(name, True)


def check_phi_as_bracket(n: int, max_degree: int) -> CheckResult:
    """``phi_ij(x^a) = [x_i^(a_i+1) d_j, x^(a - a_i e_i + e_j) d_i]``."""
    name = "phi-as-bracket"
    for a in monomials_up_to(n, max_degree):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                power = _shift((0,) * n, (i, a[i - 1] + 1))
                rest = _shift(a, (i, -a[i - 1]), (j, 1))
                lhs = bracket(Derivation.term(n, power, j), Derivation.term(n, rest, i))
                rhs = theta_ij(n, i, j, a)
                if lhs != rhs:
                    return _mismatch(name, lhs, rhs, a=a, i=i, j=j)
    return CheckResult(name, True)


def check_phi_weight(n: int, max_degree: int) -> CheckResult:
    """``[H_s - H_t, phi_ij(x^a)] = (a_s - a_t) phi_ij(x^a)``."""
    name = "phi-weight"
    for a in monomials_up_to(n, max_degree):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                field = theta_ij(n, i, j, a)
                for s in range(1, n + 1):
                    for t in range(1, n + 1):
                        if s == t:
                            continue
                        lhs = bracket(make_Hdiff(n, s, t), field)
                        rhs = field * (a[s - 1] - a[t - 1])
                        if lhs != rhs:
                            return _mismatch(name, lhs, rhs, a=a, i=i, j=j, s=s, t=t)
    return CheckResult(name, True)


def check_phi_cartan_raise(n: int, max_degree: int = 0, max_power: int = 3) -> CheckResult:
    """``[x_j d_i, phi_ij(x^a)] = (p+2) phi_ij(theta^p)`` for ``a = p(1,..,1) + e_i - e_j``."""
    name = "phi-cartan-raise"
    for p in range(1, max_power + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                a = _shift((p,) * n, (i, 1), (j, -1))
                e_j = _shift((0,) * n, (j, 1))
                lhs = bracket(Derivation.term(n, e_j, i), theta_ij(n, i, j, a))
                rhs = phi(n, i, j, Polynomial.monomial(n, (p,) * n)) * (p + 2)
                if lhs != rhs:
                    return _mismatch(name, lhs, rhs, p=p, i=i, j=j)
    return CheckResult(name, True)


def check_antisymmetry(n: int, max_degree: int) -> CheckResult:
    """``[x^a d_i, x^b d_j] = -[x^b d_j, x^a d_i]``."""
    name = "antisymmetry"
    monos = monomials_up_to(n, max_degree)
    for index, a in enumerate(monos):
        for b in monos[index:]:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    d, e = Derivation.term(n, a, i), Derivation.term(n, b, j)
                    lhs, rhs = bracket(d, e), -bracket(e, d)
                    if lhs != rhs:
                        return _mismatch(name, lhs, rhs, a=a, i=i, b=b, j=j)
    return CheckResult(name, True)


IDENTITY_CHECKS: Dict[str, Callable[[int, int], CheckResult]] = {
    "monomial-bracket": check_monomial_bracket,
    "euler-bracket": check_euler_bracket,
    "partial-bracket": check_partial_bracket,
    "free-bracket": check_free_bracket,
    "diagonal-bracket": check_diagonal_bracket,
    "mixed-bracket": check_mixed_bracket,
    "antisymmetry": check_antisymmetry,
    "phi-divergence": check_phi_divergence,
    "theta-lowering": check_theta_lowering,
    "theta-raising": check_theta_raising,
    "theta-seeds": check_theta_seeds,
    "theta-partials": check_theta_partials,
    "theta-swap": check_theta_swap,
    "phi-as-bracket": check_phi_as_bracket,
    "phi-weight": check_phi_weight,
    "phi-cartan-raise": check_phi_cartan_raise,
}


def run_identity(name: str, n: int, max_degree: int) -> CheckResult:
    """Run one named identity check.

    Raises:
        KeyError: if the name is not registered
    """
    if name not in IDENTITY_CHECKS:
        raise KeyError(f"unknown identity '{name}'. Valid names: {', '.join(IDENTITY_CHECKS)}")
    result = IDENTITY_CHECKS[name](n, max_degree)
    result.detail = f"n={n}, max degree {max_degree}"
    return result


def run_identity_suite(n: int, max_degree: int, names: Optional[List[str]] = None) -> List[CheckResult]:
    """Run the identity checks for every variable count ``1..n``."""
    results = []
    for m in range(1, n + 1):
        for name in names or IDENTITY_CHECKS:
            status(f"▶ identity {name} (n={m}, max degree {max_degree})")
            result = run_identity(name, m, max_degree)
            result.check = f"{name}[n={m}]"
            results.append(result)
    return results


__all__ = [
    "IDENTITY_CHECKS",
    "run_identity",
    "run_identity_suite",
]
