"""
JSON documents and text rendering for polynomials, derivations and
automorphisms.

Document shapes::

    polynomial    {"n": 2, "terms": [{"exps": [2, 0], "coeff": "3/2"}, ...]}
    derivation    {"n": 2, "coeffs": [<polynomial>, <polynomial>]}
    automorphism  {"n": 2, "word": [{"kind": "affine", "A": [[...]], "b": [...]},
                                    {"kind": "tri", "i": 1, "f": <polynomial>}]}
    generators    {"n": 2, "generators": [<derivation> | "x2^2*d1", ...]}

Rationals are written as ``"p/q"`` strings (integers as ``"p"``); integers
are accepted on input.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from core.autos import Affine, Automorphism, Triangular
from core.poly import Monomial, Polynomial, check_monomial
from core.utils import fraction_to_text, parse_fraction
from core.vecfield import Derivation


# ----------------------------------------------------------------------
# Text
# ----------------------------------------------------------------------
def _monomial_text(exps: Monomial) -> str:
    factors = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    return "*".join(factors)


def _join_terms(pieces: List[tuple]) -> str:
    """Join ``(coeff, body)`` pairs, ``body`` empty for a constant."""
    if not pieces:
        return "0"
    out = []
    for index, (coeff, body) in enumerate(pieces):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if not body:
            text = fraction_to_text(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{fraction_to_text(magnitude)}*{body}"
        if index == 0:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)


def format_polynomial(p: Polynomial) -> str:
    """Text in grlex-descending order, e.g. ``3*x1^2*x2 - x2 + 1/2``."""
    return _join_terms([(c, _monomial_text(exps)) for exps, c in p.sorted_terms()])


def format_derivation(d: Derivation) -> str:
    """Text grouped by direction, e.g. ``x1*d1 - x2*d2``."""
    pieces = []
    for j, a in enumerate(d.coeffs, start=1):
        for exps, c in a.sorted_terms():
            mono = _monomial_text(exps)
            pieces.append((c, f"{mono}*d{j}" if mono else f"d{j}"))
    return _join_terms(pieces)


def format_value(value) -> str:
    if isinstance(value, Derivation):
        return format_derivation(value)
    if isinstance(value, Polynomial):
        return format_polynomial(value)
    return str(value)


# ----------------------------------------------------------------------
# JSON documents
# ----------------------------------------------------------------------
def _require(doc: Dict[str, Any], key: str, what: str):
    if not isinstance(doc, dict):
        raise ValueError(f"{what} document must be an object")
    if key not in doc:
        raise ValueError(f"{what} document is missing '{key}'")
    return doc[key]


def _require_list(doc: Dict[str, Any], key: str, what: str) -> list:
    value = _require(doc, key, what)
    if not isinstance(value, list):
        raise ValueError(f"{what} '{key}' must be a list, got {type(value).__name__}")
    return value


def _as_list(value, what: str) -> list:
    if not isinstance(value, list):
        raise ValueError(f"{what} must be a list, got {type(value).__name__}")
    return value


def _require_int(doc: Dict[str, Any], key: str, what: str) -> int:
    value = _require(doc, key, what)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{what} '{key}' must be an integer, got {value!r}")
    return value


def _read_n(doc: Dict[str, Any], what: str) -> int:
    n = _require(doc, "n", what)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"{what} 'n' must be a positive integer, got {n!r}")
    return n


def polynomial_to_json(p: Polynomial) -> Dict[str, Any]:
    return {
        "n": p.n,
        "terms": [
            {"exps": list(exps), "coeff": fraction_to_text(c)}
            for exps, c in p.sorted_terms()
        ],
    }


def polynomial_from_json(doc: Dict[str, Any]) -> Polynomial:
    n = _read_n(doc, "polynomial")
    terms: Dict[Monomial, Fraction] = {}
    for entry in _require_list(doc, "terms", "polynomial"):
        exps = check_monomial(_require_list(entry, "exps", "term"), n)
        coeff = parse_fraction(_require(entry, "coeff", "term"))
        terms[exps] = terms.get(exps, 0) + coeff
    return Polynomial(n, terms)


def derivation_to_json(d: Derivation) -> Dict[str, Any]:
    return {"n": d.n, "coeffs": [polynomial_to_json(a) for a in d.coeffs]}


def derivation_from_json(doc: Dict[str, Any]) -> Derivation:
    n = _read_n(doc, "derivation")
    coeffs = [polynomial_from_json(c) for c in _require_list(doc, "coeffs", "derivation")]
    if len(coeffs) != n:
        raise ValueError(f"derivation has {len(coeffs)} coefficients, expected {n}")
    return Derivation(coeffs)


def automorphism_to_json(sigma: Automorphism) -> Dict[str, Any]:
    word = []
    for g in sigma.word:
        if isinstance(g, Affine):
            word.append({
                "kind": "affine",
                "A": [[fraction_to_text(v) for v in row] for row in g.A],
                "b": [fraction_to_text(v) for v in g.b],
            })
        else:
            word.append({"kind": "tri", "i": g.i, "f": polynomial_to_json(g.f)})
    return {"n": sigma.n, "word": word}


def automorphism_from_json(doc: Dict[str, Any]) -> Automorphism:
    n = _read_n(doc, "automorphism")
    word = []
    for index, entry in enumerate(_require_list(doc, "word", "automorphism"), start=1):
        kind = _require(entry, "kind", f"word entry {index}")
        if kind == "affine":
            A = [[parse_fraction(v) for v in _as_list(row, "affine row")] for row in _require_list(entry, "A", "affine")]
            b = [parse_fraction(v) for v in _as_list(entry.get("b", [0] * n), "affine 'b'")]
            word.append(Affine(A, b))
        elif kind == "tri":
            word.append(Triangular(_require_int(entry, "i", "tri"), polynomial_from_json(_require(entry, "f", "tri"))))
        else:
            raise ValueError(f"word entry {index}: unknown kind {kind!r} (expected 'affine' or 'tri')")
    return Automorphism(n, word)


def generators_from_json(doc: Dict[str, Any]) -> List[Derivation]:
    """Generator list; entries are derivation documents or text."""
    from core.expr import parse_derivation

    n = _read_n(doc, "generators")
    result = []
    for entry in _require_list(doc, "generators", "generators"):
        if isinstance(entry, str):
            result.append(parse_derivation(entry, n))
        else:
            result.append(derivation_from_json(entry))
    return result


def generators_to_json(gens: List[Derivation], n: Optional[int] = None) -> Dict[str, Any]:
    """Generator document; the result of a closure can be fed back as ``--gens``."""
    if n is None:
        n = gens[0].n if gens else 1
    return {"n": n, "generators": [derivation_to_json(g) for g in gens]}


def value_to_json(value) -> Union[Dict[str, Any], str]:
    if isinstance(value, Derivation):
        return derivation_to_json(value)
    if isinstance(value, Polynomial):
        return polynomial_to_json(value)
    if isinstance(value, Automorphism):
        return automorphism_to_json(value)
    raise TypeError(f"no JSON document for {type(value).__name__}")


def load_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a JSON document from disk."""
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def dumps(doc) -> str:
    """Stable JSON text (sorted keys, two-space indent)."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


__all__ = [
    "automorphism_from_json",
    "automorphism_to_json",
    "derivation_from_json",
    "derivation_to_json",
    "dumps",
    "format_derivation",
    "format_polynomial",
    "format_value",
    "generators_from_json",
    "generators_to_json",
    "load_document",
    "polynomial_from_json",
    "polynomial_to_json",
    "value_to_json",
]
