"""
Application constants for the divlie toolkit.

This module contains static values that don't change based on environment
or configuration. For environment-specific settings, see config.py.
"""

import math

# Degree of the zero polynomial; compares below every integer degree
NEG_INFINITY = -math.inf

# The text grammar lexes x1..x9, d1..d9, H1..H9 as single tokens
MAX_TEXT_VARIABLES = 9

# Verification tags understood by validations.theorem_runner.verify_theorem
THEOREM_TAGS = [
    "basis-lemma",
    "gen-div0",
    "gen-divc",
    "minimality",
    "simplicity",
    "derived",
    "cartan",
    "equivariance",
    "module-simple",
    "identities",
    "bracket-oracle",
    "divergence",
    "weights",
]

# Algebra tags for truncated bases
ALGEBRA_DIV0 = "div0"
ALGEBRA_DIVC = "divc"
ALGEBRA_TAGS = [ALGEBRA_DIV0, ALGEBRA_DIVC]

# CLI exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

# Report statuses
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
