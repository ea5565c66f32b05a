#!/usr/bin/env python3
"""
Verification Suite Validator
============================

Checks YAML verification suites WITHOUT running any closure or property
check. Use this before launching a long suite.

Usage:
    python scripts/validate_yaml.py path/to/suite.yaml
    python scripts/validate_yaml.py verification_yaml/acceptance.yaml
    python scripts/validate_yaml.py verification_yaml/*.yaml  # Validate all

Exit codes:
    0 - All suites are valid
    1 - Schema errors found
    2 - File not found or read error
"""

import glob
import sys
from pathlib import Path

import yaml

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.constants import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED  # noqa: E402
from core.errors import SuiteConfigError  # noqa: E402
from validations.base_validation import BaseVerificationSuite  # noqa: E402


class SuiteReadError(Exception):
    """The suite file is missing or not parseable YAML."""


def validate_yaml_file(yaml_path: Path) -> tuple[bool, list[str], int]:
    """
    Validate one suite file.

    Returns:
        tuple: (is_valid, errors, check_count)

    Raises:
        SuiteReadError: file missing or unreadable
    """
    if not yaml_path.exists():
        raise SuiteReadError(f"File not found: {yaml_path}")

    try:
        with open(yaml_path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise SuiteReadError(f"YAML syntax error: {e}") from e
    except OSError as e:
        raise SuiteReadError(f"Error reading file: {e}") from e

    try:
        suite = BaseVerificationSuite(config, str(yaml_path))
    except SuiteConfigError as e:
        return False, str(e).split("; "), 0
    return True, [], len(suite.checks)


def expand_paths(args: list[str]) -> list[Path]:
    """Literal paths plus glob matches; raises SuiteReadError for an unmatched argument."""
    files: list[Path] = []
    for arg in args:
        path = Path(arg)
        if path.exists():
            files.append(path)
            continue
        matches = sorted(glob.glob(arg))
        if not matches:
            raise SuiteReadError(f"File not found: {arg}")
        files.extend(Path(m) for m in matches)
    return files


def main(argv: list[str] = None) -> int:
    args = sys.argv[1:] if argv is None else argv
    if not args:
        print(__doc__)
        return EXIT_USAGE

    try:
        files = expand_paths(args)
    except SuiteReadError as e:
        print(e)
        return EXIT_USAGE

    all_valid = True
    total_checks = 0

    for yaml_path in files:
        print(f"\n{'=' * 60}")
        print(f"Validating: {yaml_path}")
        print("=" * 60)

        try:
            is_valid, errors, count = validate_yaml_file(yaml_path)
        except SuiteReadError as e:
            print(f"  [ERROR] {e}")
            return EXIT_USAGE

        if is_valid:
            total_checks += count
            print(f"PASSED - {count} checks found")
        else:
            all_valid = False
            print("FAILED")
        for error in errors:
            print(f"  [ERROR] {error}")

    print(f"\n{'=' * 60}")
    print("SUMMARY")
    print("=" * 60)
    print(f"Files validated: {len(files)}")
    print(f"Total checks: {total_checks}")
    print(f"Status: {'ALL PASSED' if all_valid else 'ERRORS FOUND'}")

    return EXIT_OK if all_valid else EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
