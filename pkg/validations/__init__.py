"""
Validations package - truncated theorem verification.

Reports, YAML suite schema, the closed-form identity checks, seeded
property checks and the runner that dispatches verification tags.
"""

from validations.theorem_runner import run_suite_from_yaml, verify_theorem

__all__ = [
    "run_suite_from_yaml",
    "verify_theorem",
]
