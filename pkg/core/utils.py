"""
Shared utility functions for the divlie toolkit.

This module consolidates common helpers used across the codebase
to ensure consistency and reduce duplication.
"""

import sys
from fractions import Fraction

import numpy as np

from core import config


def status(message: str) -> None:
    """Print a status line on stderr when verbose output is enabled."""
    if config.VERBOSE:
        print(message, file=sys.stderr, flush=True)


def fraction_to_text(value) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(value) -> Fraction:
    """
    Read a rational from JSON input.

    Accepts ints, ``"p/q"`` strings and integer strings. Floats are refused
    because they are not exact.

    Raises:
        ValueError: on floats, booleans or malformed strings
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"rational expected as int or 'p/q' string, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise ValueError(f"rational expected, got {type(value).__name__}")


def make_json_safe(value):
    """
    Convert numpy and Fraction values to JSON-friendly Python values.

    Args:
        value: Any value that may be a numpy type or a Fraction

    Returns:
        Native Python value suitable for JSON serialization
    """
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Fraction):
        return fraction_to_text(value)
    return value


def deep_make_json_safe(value):
    """
    Recursively convert non-JSON-serializable values (numpy scalars,
    Fractions, tuples) so ``json.dumps`` succeeds.
    """
    value = make_json_safe(value)

    if isinstance(value, dict):
        return {str(k): deep_make_json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [deep_make_json_safe(v) for v in value]
    return value


def make_rng(seed) -> np.random.Generator:
    """Seeded generator shared by every randomized routine."""
    return np.random.default_rng(seed)


def random_rational(rng: np.random.Generator, bound: int = 5, denominators=(1, 1, 2, 3)) -> Fraction:
    """Small random rational, mostly integral, in ``[-bound, bound]``."""
    numerator = int(rng.integers(-bound, bound + 1))
    denominator = int(denominators[int(rng.integers(0, len(denominators)))])
    return Fraction(numerator, denominator)

