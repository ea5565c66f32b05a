"""Report types and YAML suite validation for verification runs.

This module holds the small API surface that the CLI, the dashboard and
the tests share:
- ``CheckResult`` / ``VerificationReport`` (deterministic, JSON-ready)
- YAML schema validation for verification suites
- Converting reports into a reporting-friendly DataFrame
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
import yaml

from core.constants import MAX_TEXT_VARIABLES, STATUS_FAIL, STATUS_PASS, THEOREM_TAGS
from core.errors import SuiteConfigError
from core.utils import deep_make_json_safe


@dataclass
class CheckResult:
    """One sub-check of a verification run."""

    check: str
    passed: bool
    witness: Optional[Any] = None
    detail: Optional[str] = None

    @property
    def status(self) -> str:
        return STATUS_PASS if self.passed else STATUS_FAIL

    def to_dict(self) -> Dict[str, Any]:
        entry: Dict[str, Any] = {"check": self.check, "status": self.status}
        if self.detail:
            entry["detail"] = self.detail
        if self.witness is not None:
            entry["witness"] = deep_make_json_safe(self.witness)
        return entry


@dataclass
class VerificationReport:
    """All sub-checks of one ``verify_theorem`` call."""

    theorem: str
    n: int
    cutoff: int
    checks: List[CheckResult] = field(default_factory=list)
    seed: Optional[int] = None
    trials: Optional[int] = None

    def add(self, check: str, passed: bool, witness: Any = None, detail: Optional[str] = None) -> CheckResult:
        result = CheckResult(check, bool(passed), None if passed else witness, detail)
        self.checks.append(result)
        return result

    def extend(self, results: List[CheckResult]) -> None:
        self.checks.extend(results)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return STATUS_PASS if self.passed else STATUS_FAIL

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "theorem": self.theorem,
            "n": self.n,
            "cutoff": self.cutoff,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.seed is not None:
            doc["seed"] = self.seed
        if self.trials is not None:
            doc["trials"] = self.trials
        return doc

    def to_text(self) -> str:
        marker = "✅" if self.passed else "❌"
        lines = [f"{marker} {self.theorem} (n={self.n}, cutoff={self.cutoff}): {self.status}"]
        for c in self.checks:
            line = f"  [{c.status}] {c.check}"
            if c.detail:
                line += f" ({c.detail})"
            lines.append(line)
            if c.witness is not None:
                lines.append(f"      witness: {deep_make_json_safe(c.witness)}")
        return "\n".join(lines)

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "VerificationReport":
        report = cls(doc["theorem"], doc["n"], doc["cutoff"], seed=doc.get("seed"), trials=doc.get("trials"))
        for entry in doc.get("checks", []):
            report.checks.append(CheckResult(
                entry["check"],
                entry["status"] == STATUS_PASS,
                entry.get("witness"),
                entry.get("detail"),
            ))
        return report


class BaseVerificationSuite:
    """YAML suite loader and schema validator.

    A suite is a ``metadata`` mapping plus a non-empty ``checks`` list of
    ``{theorem, n, cutoff, trials?, seed?}`` entries.
    """

    SUPPORTED_THEOREMS: List[str] = list(THEOREM_TAGS)

    def __init__(self, config: Dict[str, Any], source: str = "<memory>"):
        self._validate_yaml_schema(config, source)
        self.source = source
        self.metadata: Dict[str, Any] = config["metadata"]
        self.checks: List[Dict[str, Any]] = config["checks"]

    @property
    def suite_name(self) -> str:
        return self.metadata["suite_name"]

    @property
    def seed(self) -> Optional[int]:
        return self.metadata.get("seed")

    # ------------------------------------------------------------------
    # YAML schema validation
    # ------------------------------------------------------------------
    @classmethod
    def from_yaml(cls, yaml_path: Path) -> "BaseVerificationSuite":
        """Load and validate a YAML suite file."""

        with open(yaml_path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)

        return cls(config, str(yaml_path))

    @classmethod
    def _validate_yaml_schema(cls, config: Any, yaml_path: str) -> None:
        """Validate the structure of a YAML verification suite."""

        errors: List[str] = []

        if not isinstance(config, dict):
            raise SuiteConfigError(
                f"YAML suite {yaml_path} must contain a mapping (dict), "
                f"got {type(config).__name__}"
            )

        metadata = config.get("metadata")
        if metadata is None:
            errors.append("Missing required 'metadata' section")
        elif not isinstance(metadata, dict):
            errors.append("'metadata' must be a mapping (dict)")
        else:
            if not metadata.get("suite_name"):
                errors.append("metadata.suite_name is required")
            seed = metadata.get("seed")
            if seed is not None and not _is_int(seed, minimum=0):
                errors.append("metadata.seed must be a non-negative integer")

        checks = config.get("checks")
        if checks is None:
            errors.append("Missing required 'checks' section")
        elif not isinstance(checks, list):
            errors.append("'checks' must be a list")
        elif len(checks) == 0:
            errors.append("'checks' list is empty - nothing to verify")
        else:
            for i, check in enumerate(checks):
                errors.extend(cls._validate_check(check, i))

        if errors:
            raise SuiteConfigError("; ".join(errors))

    @classmethod
    def _validate_check(cls, check: Any, index: int) -> List[str]:
        errors: List[str] = []
        prefix = f"checks[{index}]"

        if not isinstance(check, dict):
            return [f"{prefix}: must be a mapping, got {type(check).__name__}"]

        theorem = check.get("theorem")
        if not theorem:
            errors.append(f"{prefix}: missing required 'theorem' field")
        elif theorem not in cls.SUPPORTED_THEOREMS:
            errors.append(
                f"{prefix}: unknown theorem '{theorem}'. Valid tags: "
                + ", ".join(cls.SUPPORTED_THEOREMS)
            )

        if "n" not in check:
            errors.append(f"{prefix}: requires 'n' field")
        elif not _is_int(check["n"], minimum=1, maximum=MAX_TEXT_VARIABLES):
            errors.append(f"{prefix}: 'n' must be an integer between 1 and {MAX_TEXT_VARIABLES}")

        if "cutoff" not in check:
            errors.append(f"{prefix}: requires 'cutoff' field")
        elif not _is_int(check["cutoff"], minimum=0):
            errors.append(f"{prefix}: 'cutoff' must be a non-negative integer")

        if "trials" in check and not _is_int(check["trials"], minimum=1):
            errors.append(f"{prefix}: 'trials' must be a positive integer")

        if "seed" in check and not _is_int(check["seed"], minimum=0):
            errors.append(f"{prefix}: 'seed' must be a non-negative integer")

        unknown = sorted(set(check) - {"theorem", "n", "cutoff", "trials", "seed", "description"})
        if unknown:
            errors.append(f"{prefix}: unknown field(s) {', '.join(unknown)}")

        return errors


def _is_int(value: Any, minimum: Optional[int] = None, maximum: Optional[int] = None) -> bool:
    if isinstance(value, bool) or not isinstance(value, int):
        return False
    if minimum is not None and value < minimum:
        return False
    if maximum is not None and value > maximum:
        return False
    return True


def reports_to_dataframe(reports: List[VerificationReport]) -> pd.DataFrame:
    """One row per sub-check, for the dashboard tables."""

    rows: List[Dict[str, Any]] = []
    for report in reports or []:
        for check in report.checks:
            rows.append({
                "Theorem": report.theorem,
                "n": report.n,
                "Cutoff": report.cutoff,
                "Check": check.check,
                "Status": "Pass" if check.passed else "Fail",
                "Detail": check.detail or "",
                "Witness": "" if check.witness is None else str(deep_make_json_safe(check.witness)),
            })

    if not rows:
        return pd.DataFrame()

    return pd.DataFrame(rows)


__all__ = [
    "BaseVerificationSuite",
    "CheckResult",
    "VerificationReport",
    "reports_to_dataframe",
]
