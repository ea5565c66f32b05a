#!/usr/bin/env python3
"""
divlie command line
===================

Runs any library operation on text or JSON inputs and executes theorem
verification suites.

Usage:
    python scripts/divlie.py bracket "x1*d2" "x2*d1" --n 2
    python scripts/divlie.py div "H1" --n 2
    python scripts/divlie.py basis --n 2 --cutoff 2 --algebra divc
    python scripts/divlie.py act --auto sigma.json "d2" --n 2
    python scripts/divlie.py closure --gens gens.json --cutoff 4
    python scripts/divlie.py verify --theorem gen-div0 --n 2 --cutoff 4 --format json
    python scripts/divlie.py verify --suite verification_yaml/quick.yaml --cache
    python scripts/divlie.py identity --name theta-swap --n 3 --cutoff 4

Text inputs use x1..x9, d1..d9 and H1..H9. When --n is omitted it is the
largest index that appears in the inputs.

Exit codes:
    0 - Success, or every verification check passed
    1 - A verification check failed
    2 - Usage, parse or input error
"""

import argparse
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core import config  # noqa: E402
from core.autos import adjugate, conjugate, jacobian, jacobian_det  # noqa: E402
from core.closure import bracket_closure  # noqa: E402
from core.codec import (  # noqa: E402
    automorphism_from_json,
    derivation_to_json,
    dumps,
    format_derivation,
    format_polynomial,
    generators_from_json,
    generators_to_json,
    load_document,
    polynomial_to_json,
)
from core.constants import (  # noqa: E402
    ALGEBRA_DIV0,
    ALGEBRA_TAGS,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    THEOREM_TAGS,
)
from core.errors import DivlieError, SuiteConfigError  # noqa: E402
from core.expr import parse_derivation, parse_polynomial  # noqa: E402
from core.linspan import BasisSpec, enumerate_basis  # noqa: E402
from core.utils import fraction_to_text, status  # noqa: E402
from core.vecfield import apply, bracket, classify, decompose_weights, divergence  # noqa: E402
from validations.base_validation import BaseVerificationSuite  # noqa: E402
from validations.identity_checks import IDENTITY_CHECKS, run_identity  # noqa: E402
from validations.theorem_runner import run_suite_from_yaml, verify_theorem  # noqa: E402

_INDEX = re.compile(r"[xdH]([0-9]+)")


class UsageError(Exception):
    """Bad flag combination detected after argparse."""


def infer_n(texts: Sequence[str], explicit: Optional[int]) -> int:
    """``--n`` when given, otherwise the largest index used in ``texts`` (at least 1)."""
    if explicit is not None:
        if explicit < 1:
            raise UsageError(f"--n must be positive, got {explicit}")
        return explicit
    indices = [int(m) for text in texts for m in _INDEX.findall(text)]
    return max(indices, default=1)


def _emit(args, text: str, doc) -> None:
    print(dumps(doc) if args.format == "json" else text)


def _matrix_text(matrix) -> str:
    return "\n".join("[" + ", ".join(format_polynomial(p) for p in row) + "]" for row in matrix)


# =========================================================
# Subcommands
# =========================================================

def cmd_bracket(args) -> int:
    n = infer_n([args.a, args.b], args.n)
    result = bracket(parse_derivation(args.a, n), parse_derivation(args.b, n))
    _emit(args, format_derivation(result), derivation_to_json(result))
    return EXIT_OK


def cmd_div(args) -> int:
    n = infer_n([args.a], args.n)
    result = divergence(parse_derivation(args.a, n))
    _emit(args, format_polynomial(result), polynomial_to_json(result))
    return EXIT_OK


def cmd_classify(args) -> int:
    n = infer_n([args.a], args.n)
    div_class = classify(parse_derivation(args.a, n))
    doc = {"tag": div_class.tag}
    if div_class.is_constant:
        doc["value"] = fraction_to_text(div_class.value)
        text = f"{div_class.tag} {doc['value']}"
    elif div_class.polynomial is not None:
        doc["divergence"] = polynomial_to_json(div_class.polynomial)
        text = f"{div_class.tag} {format_polynomial(div_class.polynomial)}"
    else:
        text = div_class.tag
    _emit(args, text, doc)
    return EXIT_OK


def cmd_apply(args) -> int:
    n = infer_n([args.a, args.p], args.n)
    result = apply(parse_derivation(args.a, n), parse_polynomial(args.p, n))
    _emit(args, format_polynomial(result), polynomial_to_json(result))
    return EXIT_OK


def cmd_basis(args) -> int:
    if args.n is None:
        raise UsageError("basis requires --n")
    spec = BasisSpec(args.n, args.cutoff, args.algebra)
    basis = enumerate_basis(spec)
    doc = {
        "n": spec.n,
        "cutoff": spec.cutoff,
        "algebra": spec.algebra,
        "dim": len(basis),
        "basis": [derivation_to_json(b) for b in basis],
    }
    text = "\n".join([f"dim {len(basis)}"] + [format_derivation(b) for b in basis])
    _emit(args, text, doc)
    return EXIT_OK


def cmd_weights(args) -> int:
    n = infer_n([args.a], args.n)
    parts = decompose_weights(parse_derivation(args.a, n))
    doc = [{"weight": list(w.rep), "component": derivation_to_json(d)} for w, d in parts.items()]
    text = "\n".join(f"{list(w.rep)}: {format_derivation(d)}" for w, d in parts.items()) or "0"
    _emit(args, text, doc)
    return EXIT_OK


def _load_automorphism(args):
    sigma = automorphism_from_json(load_document(args.auto))
    if args.n is not None and args.n != sigma.n:
        raise UsageError(f"--n {args.n} does not match the automorphism's n={sigma.n}")
    return sigma


def cmd_act(args) -> int:
    sigma = _load_automorphism(args)
    result = conjugate(sigma, parse_derivation(args.a, sigma.n))
    _emit(args, format_derivation(result), derivation_to_json(result))
    return EXIT_OK


def cmd_jacobian(args) -> int:
    sigma = _load_automorphism(args)
    if args.det:
        det = jacobian_det(sigma)
        _emit(args, format_polynomial(det), polynomial_to_json(det))
        return EXIT_OK
    matrix = jacobian(sigma)
    doc = {"jacobian": [[polynomial_to_json(p) for p in row] for row in matrix]}
    if args.adjugate:
        adj = adjugate(matrix)
        doc["adjugate"] = [[polynomial_to_json(p) for p in row] for row in adj]
        _emit(args, _matrix_text(matrix) + "\nadjugate:\n" + _matrix_text(adj), doc)
    else:
        _emit(args, _matrix_text(matrix), doc)
    return EXIT_OK


def cmd_closure(args) -> int:
    gens = generators_from_json(load_document(args.gens))
    if not gens:
        raise UsageError("generator list is empty")
    result = bracket_closure(gens, args.cutoff, max_rounds=args.max_rounds)
    rows = result.space.rows
    doc = {
        "cutoff": result.cutoff,
        "dim": result.dim,
        "rounds": result.rounds,
        "saturated": result.saturated,
        **generators_to_json(rows, result.space.n),
    }
    header = f"dim {result.dim}, {result.rounds} rounds, saturated={result.saturated}"
    _emit(args, "\n".join([header] + [format_derivation(r) for r in rows]), doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite:
        reports = run_suite_from_yaml(args.suite, seed=args.seed, use_cache=args.cache)
        doc = {"reports": [r.to_dict() for r in reports]}
        _emit(args, "\n".join(r.to_text() for r in reports), doc)
        passed = all(r.passed for r in reports)
    else:
        if not args.theorem or args.n is None or args.cutoff is None:
            raise UsageError("verify needs --suite FILE, or --theorem, --n and --cutoff")
        report = verify_theorem(args.theorem, args.n, args.cutoff, trials=args.trials, seed=args.seed)
        _emit(args, report.to_text(), report.to_dict())
        passed = report.passed
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED


def cmd_identity(args) -> int:
    if args.n is None:
        raise UsageError("identity requires --n")
    result = run_identity(args.name, args.n, args.cutoff)
    text = f"[{result.status}] {result.check}" + (f" ({result.detail})" if result.detail else "")
    if result.witness is not None:
        text += f"\n  witness: {result.witness}"
    _emit(args, text, result.to_dict())
    return EXIT_OK if result.passed else EXIT_VERIFICATION_FAILED


def cmd_validate_suite(args) -> int:
    all_valid = True
    for path in args.files:
        try:
            suite = BaseVerificationSuite.from_yaml(Path(path))
        except SuiteConfigError as e:
            all_valid = False
            print(f"❌ {path}: {e}")
            continue
        print(f"✅ {path}: {suite.suite_name}, {len(suite.checks)} checks")
    return EXIT_OK if all_valid else EXIT_VERIFICATION_FAILED


# =========================================================
# Parser
# =========================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="Number of variables")
    common.add_argument("--format", choices=["text", "json"], default="text", help="Output format")
    common.add_argument("--seed", type=int, default=None,
                        help=f"Seed for randomized checks (default {config.DEFAULT_SEED})")

    parser = argparse.ArgumentParser(
        prog="divlie",
        description="Exact computations with divergence-constrained polynomial vector fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="Lie bracket [A, B]")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("div", parents=[common], help="Divergence of A")
    p.add_argument("a")
    p.set_defaults(func=cmd_div)

    p = sub.add_parser("classify", parents=[common], help="Zero, constant or non-constant divergence")
    p.add_argument("a")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("apply", parents=[common], help="Apply derivation A to polynomial P")
    p.add_argument("a")
    p.add_argument("p")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("basis", parents=[common], help="Truncated basis of div0 or divc")
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--algebra", choices=ALGEBRA_TAGS, default=ALGEBRA_DIV0)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("weights", parents=[common], help="Weight decomposition of A")
    p.add_argument("a")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("act", parents=[common], help="Conjugate A by an automorphism")
    p.add_argument("--auto", required=True, help="Automorphism JSON document")
    p.add_argument("a")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("jacobian", parents=[common], help="Jacobian matrix of an automorphism")
    p.add_argument("--auto", required=True, help="Automorphism JSON document")
    p.add_argument("--det", action="store_true", help="Print only the determinant")
    p.add_argument("--adjugate", action="store_true", help="Also print the adjugate matrix")
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("closure", parents=[common], help="Truncated bracket closure of a generator list")
    p.add_argument("--gens", required=True, help="Generators JSON document")
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--max-rounds", type=int, default=None)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("verify", parents=[common], help="Run a theorem check or a YAML suite")
    p.add_argument("--theorem", choices=THEOREM_TAGS)
    p.add_argument("--cutoff", type=int)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--suite", help="YAML verification suite")
    p.add_argument("--cache", action="store_true", help="Reuse and store cached reports (suites only)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identity", parents=[common], help="Run one closed-form identity check")
    p.add_argument("--name", required=True, choices=sorted(IDENTITY_CHECKS))
    p.add_argument("--cutoff", type=int, required=True, help="Largest exponent degree checked")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("validate-suite", help="Schema-check YAML verification suites")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_validate_suite, format="text")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        return args.func(args)
    except (DivlieError, UsageError, ValueError, KeyError, OSError) as e:
        status(f"❌ {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
