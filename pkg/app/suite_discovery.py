"""
Suite discovery for the verification dashboard.

Scans the verification_yaml/ directory and parses suite metadata so the
dashboard lists suites without hardcoded references.
"""

from pathlib import Path
from typing import Dict, List, Optional

import yaml

from core import config


def discover_suites(yaml_dir: Path = None) -> List[Dict]:
    """
    Discover all verification suites from YAML files.

    Parameters
    ----------
    yaml_dir : Path, optional
        Directory containing YAML files. Defaults to ``config.SUITES_DIR``.

    Returns
    -------
    List[Dict]
        Suite summaries with keys:
        - suite_name: Display name (e.g., "Acceptance")
        - suite_key: Lowercase key (e.g., "acceptance")
        - yaml_path: Path to YAML file
        - description: Suite description
        - seed: Suite seed or None
        - check_count: Number of checks listed
    """
    yaml_dir = Path(yaml_dir) if yaml_dir is not None else config.SUITES_DIR

    if not yaml_dir.exists():
        return []

    suites = []
    for yaml_file in sorted(yaml_dir.glob("*.yaml")):
        try:
            suite_config = parse_suite_yaml(yaml_file)
            if suite_config:
                suites.append(suite_config)
        except (OSError, yaml.YAMLError) as e:
            print(f"⚠️ Failed to parse {yaml_file.name}: {e}")
            continue

    return suites


def parse_suite_yaml(yaml_path: Path) -> Optional[Dict]:
    """
    Parse the metadata of one suite file.

    Returns None when the file has no ``metadata.suite_name``; the full
    schema is checked later, when the suite runs.
    """
    with open(yaml_path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)

    if not isinstance(data, dict) or not isinstance(data.get("metadata"), dict):
        return None

    metadata = data["metadata"]
    suite_name = metadata.get("suite_name")
    if not suite_name:
        return None

    checks = data.get("checks")
    return {
        "suite_name": suite_name,
        "suite_key": suite_name.lower().replace(" ", "_"),
        "yaml_path": yaml_path,
        "description": metadata.get("description", ""),
        "seed": metadata.get("seed"),
        "check_count": len(checks) if isinstance(checks, list) else 0,
    }


def get_suite_by_name(suite_name: str, suites: List[Dict] = None) -> Optional[Dict]:
    """Suite summary by display name, or None."""
    if suites is None:
        suites = discover_suites()

    for suite in suites:
        if suite["suite_name"] == suite_name:
            return suite

    return None
